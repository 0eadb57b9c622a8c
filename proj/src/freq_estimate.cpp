#include "starburst/freq_estimate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace starburst {

std::vector<double> FrequencyGrid::points() const {
  std::vector<double> pts;
  if (f_max < f_min) return pts;
  if (f_max == f_min) {
    pts.push_back(f_min);
    return pts;
  }
  if (!(step > 0.0)) return pts;
  const auto n = static_cast<std::size_t>(std::floor((f_max - f_min) / step + 1e-9)) + 1;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(f_min + static_cast<double>(i) * step);
  return pts;
}

double coarse_estimate(const IqSignal& s, const SyncSequence& eps, std::int64_t sample_index,
                       const FrequencyGrid& grid) {
  const std::vector<double> pts = grid.points();
  if (pts.empty()) throw std::invalid_argument("coarse_estimate: empty frequency grid");
  if (s.sample_rate != eps.sample_rate) {
    throw std::invalid_argument("coarse_estimate: sample rates differ");
  }

  // p[m] = s[sample_index + m] * conj(template[m]); the correlation against a
  // frequency-shifted template is then the spectrum of p evaluated at the
  // shift, so only the product sequence is needed once.
  const std::vector<cplx> rendered = eps.render();
  const auto n = static_cast<std::int64_t>(s.size());
  std::vector<cplx> p(rendered.size(), cplx{0.0, 0.0});
  for (std::size_t m = 0; m < rendered.size(); ++m) {
    const std::int64_t idx = sample_index + static_cast<std::int64_t>(m);
    if (idx >= 0 && idx < n) p[m] = s.samples[idx] * std::conj(rendered[m]);
  }

  const double ts = 1.0 / s.sample_rate;
  double best_val = -1.0;
  double best_f = 0.0;
  for (double f : pts) {
    const double w = -2.0 * std::numbers::pi * f * ts;
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < p.size(); ++m) {
      acc += p[m] * std::polar(1.0, w * static_cast<double>(m));
    }
    const double val = std::abs(acc);
    const bool better =
        val > best_val ||
        (val == best_val &&
         (std::abs(f) < std::abs(best_f) || (std::abs(f) == std::abs(best_f) && f < best_f)));
    if (better) {
      best_val = val;
      best_f = f;
    }
  }
  return best_f;
}

FrequencyEstimate fine_estimate(const DetectionEvent& event, double coarse_hz,
                                std::size_t subseq_len, double sample_rate) {
  if (subseq_len == 0 || !(sample_rate > 0.0)) {
    throw std::invalid_argument("fine_estimate: invalid subsequence length or sample rate");
  }

  double scale = 0.0;
  for (const cplx& p : event.partials) scale = std::max(scale, std::abs(p));
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * scale;
  for (const cplx& p : event.partials) {
    if (!(std::abs(p) > floor)) {
      throw std::runtime_error("fine_estimate: partial correlation below the numerical floor");
    }
  }

  cplx acc{0.0, 0.0};
  for (std::size_t k = 1; k < 8; ++k) {
    acc += event.partials[k - 1] * std::conj(event.partials[k]);
  }

  // One subsequence of delay per product term; the phase sum measures
  // -2*pi*f*subseq_len*Ts, so the sign flips to make a positive carrier
  // offset give a positive estimate.
  const double span = static_cast<double>(subseq_len) / sample_rate;  // s
  const double raw = -std::arg(acc) / (2.0 * std::numbers::pi * span);
  const auto wraps = static_cast<long long>(std::llround((coarse_hz - raw) * span));
  const double fine = raw + static_cast<double>(wraps) / span;

  FrequencyEstimate est;
  est.sample_index = event.sample_index;
  est.coarse_hz = coarse_hz;
  est.fine_hz = fine;
  est.ambiguity_index = static_cast<int>(wraps);
  return est;
}

EstimateBatch estimate_all(const IqSignal& s, const SyncSequence& eps,
                           std::span<const DetectionEvent> events, const FrequencyGrid& grid) {
  EstimateBatch batch;
  for (std::size_t i = 0; i < events.size(); ++i) {
    try {
      const double coarse = coarse_estimate(s, eps, events[i].sample_index, grid);
      batch.estimates.push_back(
          fine_estimate(events[i], coarse, eps.subseq_len(), eps.sample_rate));
    } catch (const std::exception& e) {
      batch.errors.emplace_back(i, e.what());
    }
  }
  return batch;
}

}  // namespace starburst
