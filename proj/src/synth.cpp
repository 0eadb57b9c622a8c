#include "starburst/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace starburst {

cplx Rng::gaussian() {
  // (0, 1] keeps the log finite.
  const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

cplx Rng::qpsk() {
  constexpr double h = std::numbers::sqrt2 / 2.0;
  switch (gen_() & 3u) {
    case 0: return {h, h};
    case 1: return {h, -h};
    case 2: return {-h, h};
    default: return {-h, -h};
  }
}

std::vector<cplx> random_qpsk(std::size_t len, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> out(len);
  for (cplx& v : out) v = rng.qpsk();
  return out;
}

namespace {

// Burst content (sync then data) written into out at `start`, rotated by the
// burst's frequency offset with phase zero at the first burst sample.
void render_burst_into(std::vector<cplx>& out, std::size_t start, const SyncSequence& sync,
                       const std::vector<cplx>& data, double freq_offset, cplx gain,
                       double sample_rate) {
  const std::vector<cplx> rendered = sync.render();
  const double w = 2.0 * std::numbers::pi * freq_offset / sample_rate;
  std::size_t m = 0;
  for (const cplx& v : rendered) {
    out[start + m] += gain * v * std::polar(1.0, w * static_cast<double>(m));
    ++m;
  }
  for (const cplx& v : data) {
    out[start + m] += gain * v * std::polar(1.0, w * static_cast<double>(m));
    ++m;
  }
}

}  // namespace

IqSignal synthesize_burst(const BurstSpec& spec, double noise_variance, std::uint64_t seed) {
  if (noise_variance < 0.0) throw std::invalid_argument("synthesize_burst: negative noise variance");
  if (spec.sync.subseq_len() == 0) throw std::invalid_argument("synthesize_burst: empty sync sequence");

  const std::size_t n_total =
      spec.guard_before + spec.sync.total_len() + spec.data_len + spec.guard_after;

  IqSignal out;
  out.sample_rate = spec.sync.sample_rate;
  out.samples.assign(n_total, cplx{0.0, 0.0});

  Rng rng(seed);
  std::vector<cplx> data(spec.data_len);
  for (cplx& v : data) v = rng.qpsk();

  render_burst_into(out.samples, spec.guard_before, spec.sync, data, spec.freq_offset, spec.gain,
                    out.sample_rate);

  if (noise_variance > 0.0) {
    const double scale = std::sqrt(noise_variance);
    for (cplx& v : out.samples) v += scale * rng.gaussian();
  }
  return out;
}

IqSignal synthesize_train(const TrainSpec& spec, double noise_variance, std::uint64_t seed,
                          TrainTruth* truth) {
  if (spec.count == 0) throw std::invalid_argument("synthesize_train: zero bursts");
  if (noise_variance < 0.0) throw std::invalid_argument("synthesize_train: negative noise variance");
  const double fs = spec.sync.sample_rate;
  const auto spacing = static_cast<std::size_t>(std::llround(spec.burst_interval * fs));
  const std::size_t burst_len = spec.sync.total_len() + spec.data_len;
  if (spec.count > 1 && spacing < burst_len) {
    throw std::invalid_argument("synthesize_train: burst interval shorter than the burst");
  }

  const std::size_t n_total =
      spec.guard_before + (spec.count - 1) * spacing + burst_len + spec.guard_after;

  IqSignal out;
  out.sample_rate = fs;
  out.samples.assign(n_total, cplx{0.0, 0.0});

  if (truth) {
    truth->offsets.clear();
    truth->freq_offsets.clear();
  }

  Rng rng(seed);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::size_t start = spec.guard_before + i * spacing;
    const double df =
        spec.freq_offsets.empty() ? 0.0 : spec.freq_offsets[i % spec.freq_offsets.size()];
    std::vector<cplx> data(spec.data_len);
    for (cplx& v : data) v = rng.qpsk();
    render_burst_into(out.samples, start, spec.sync, data, df, spec.gain, fs);
    if (truth) {
      truth->offsets.push_back(static_cast<std::int64_t>(start));
      truth->freq_offsets.push_back(df);
    }
  }

  if (noise_variance > 0.0) {
    const double scale = std::sqrt(noise_variance);
    for (cplx& v : out.samples) v += scale * rng.gaussian();
  }
  return out;
}

}  // namespace starburst
