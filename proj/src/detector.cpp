#include "starburst/detector.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "starburst/fft.hpp"

namespace starburst {

namespace {

void check_inputs(const IqSignal& s, const SyncSequence& eps) {
  if (eps.subseq_len() == 0) throw std::invalid_argument("detector: empty representative");
  if (eps.subseq_energy() == 0.0) throw std::invalid_argument("detector: zero-energy representative");
  if (s.sample_rate != eps.sample_rate) throw std::invalid_argument("detector: sample rates differ");
  if (s.size() < eps.total_len()) {
    throw std::invalid_argument("detector: signal shorter than the sync sequence");
  }
}

// Signal energy over [start, start + len), zero outside the record.
double slice_energy(const IqSignal& s, std::int64_t start, std::size_t len) {
  const auto n = static_cast<std::int64_t>(s.size());
  double e = 0.0;
  for (std::int64_t i = std::max<std::int64_t>(start, 0);
       i < std::min<std::int64_t>(start + static_cast<std::int64_t>(len), n); ++i) {
    e += std::norm(s.samples[i]);
  }
  return e;
}

// Normalization divisor anchored at `lag`: sum_k sqrt(E(s slice k) * E(subseq)).
double normalization_at(const IqSignal& s, const SyncSequence& eps, std::int64_t lag) {
  const double sub_energy = eps.subseq_energy();
  double d = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    const std::int64_t start = lag + static_cast<std::int64_t>(eps.repetition_offset(k));
    d += std::sqrt(slice_energy(s, start, eps.subseq_len()) * sub_energy);
  }
  return d;
}

bool near_edge(const IqSignal& s, const SyncSequence& eps, std::int64_t lag) {
  const auto lc = static_cast<std::int64_t>(eps.total_len());
  return lag < lc || lag + 2 * lc > static_cast<std::int64_t>(s.size());
}

// Strict window maximum picker. Emits every index whose value exceeds the
// threshold and is the maximum over [i - half, i + half]; on ties the smaller
// index wins. Values are compared as double.
template <typename V, typename Emit>
void scan_window_maxima(const V& values, double threshold, std::int64_t window, Emit&& emit) {
  const auto n = static_cast<std::int64_t>(values.size());
  const std::int64_t half = window / 2;
  std::deque<std::int64_t> deq;  // indices, values strictly decreasing front to back
  for (std::int64_t edge = 0; edge < n + half; ++edge) {
    if (edge < n) {
      while (!deq.empty() && static_cast<double>(values[deq.back()]) < static_cast<double>(values[edge])) {
        deq.pop_back();
      }
      deq.push_back(edge);
    }
    const std::int64_t center = edge - half;
    if (center < 0) continue;
    while (deq.front() < center - half) deq.pop_front();
    if (deq.front() == center && static_cast<double>(values[center]) > threshold) {
      emit(center);
    }
  }
}

}  // namespace

LagRange full_lag_range(const IqSignal& s, const SyncSequence& eps) {
  check_inputs(s, eps);
  return LagRange{0, s.size() - eps.total_len() + 1};
}

std::array<cplx, 8> partials_at(const IqSignal& s, const SyncSequence& eps, std::int64_t lag) {
  const auto n = static_cast<std::int64_t>(s.size());
  const auto len = static_cast<std::int64_t>(eps.subseq_len());
  std::array<cplx, 8> out{};
  for (std::size_t k = 0; k < 8; ++k) {
    const std::int64_t start = lag + static_cast<std::int64_t>(eps.repetition_offset(k));
    cplx acc{0.0, 0.0};
    const std::int64_t m0 = std::max<std::int64_t>(0, -start);
    const std::int64_t m1 = std::min<std::int64_t>(len, n - start);
    for (std::int64_t m = m0; m < m1; ++m) {
      acc += s.samples[start + m] * std::conj(eps.subsequence[m]);
    }
    out[k] = static_cast<double>(eps.sign_pattern[k]) * acc;
  }
  return out;
}

std::array<CorrelationSeries, 8> partial_correlations(const IqSignal& s, const SyncSequence& eps,
                                                      LagRange range) {
  check_inputs(s, eps);
  if (range.count == 0) throw std::invalid_argument("partial_correlations: empty lag range");

  const auto len = static_cast<std::int64_t>(eps.subseq_len());
  // One sliding correlation against the bare subsequence serves all eight
  // repetitions; repetition k reads it at offset prefix + k * len.
  const std::int64_t q0 = range.first + static_cast<std::int64_t>(eps.repetition_offset(0));
  const std::size_t q_count = range.count + 7 * eps.subseq_len();
  std::vector<cplx> q(q_count);
  sliding_dot(s.samples, eps.subsequence, q0, q_count, q.data());

  std::array<CorrelationSeries, 8> out;
  for (std::size_t k = 0; k < 8; ++k) {
    out[k].lag_origin = range.first;
    out[k].normalized = false;
    out[k].values.resize(range.count);
    const double sign = static_cast<double>(eps.sign_pattern[k]);
    const std::size_t base = k * static_cast<std::size_t>(len);
    for (std::size_t i = 0; i < range.count; ++i) out[k].values[i] = sign * q[base + i];
  }
  return out;
}

StatisticSeries detection_statistic(const IqSignal& s, const SyncSequence& eps, LagRange range) {
  check_inputs(s, eps);
  if (range.count == 0) throw std::invalid_argument("detection_statistic: empty lag range");

  const std::size_t len = eps.subseq_len();
  const std::int64_t q0 = range.first + static_cast<std::int64_t>(eps.repetition_offset(0));
  const std::size_t q_count = range.count + 7 * len;
  std::vector<cplx> q(q_count);
  sliding_dot(s.samples, eps.subsequence, q0, q_count, q.data());

  std::vector<double> mag(q_count);
  for (std::size_t i = 0; i < q_count; ++i) mag[i] = std::abs(q[i]);

  StatisticSeries out;
  out.lag_origin = range.first;
  out.values.resize(range.count);
  std::size_t peak = 0;
  double peak_val = -1.0;
  for (std::size_t i = 0; i < range.count; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 8; ++k) sum += mag[i + k * len];
    out.values[i] = sum;
    if (sum > peak_val) {
      peak_val = sum;
      peak = i;
    }
  }

  out.peak_lag = range.first + static_cast<std::int64_t>(peak);
  out.norm_factor = normalization_at(s, eps, out.peak_lag);
  if (out.norm_factor > 0.0) {
    const double inv = 1.0 / out.norm_factor;
    for (double& v : out.values) v *= inv;
  }
  return out;
}

namespace {

std::vector<DetectionEvent> events_from_candidates(const std::vector<std::int64_t>& lags,
                                                   const IqSignal& s, const SyncSequence& eps,
                                                   double norm) {
  std::vector<DetectionEvent> events;
  events.reserve(lags.size());
  for (std::int64_t lag : lags) {
    DetectionEvent ev;
    ev.sample_index = lag;
    ev.partials = partials_at(s, eps, lag);
    double sum = 0.0;
    for (const cplx& p : ev.partials) sum += std::abs(p);
    ev.statistic = norm > 0.0 ? sum / norm : 0.0;
    ev.low_confidence = near_edge(s, eps, lag);
    ev.representative_id = eps.id;
    events.push_back(std::move(ev));
  }
  return events;
}

void check_picker_args(const SyncSequence& eps, double threshold, std::int64_t window) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("detector: threshold must lie in (0, 1)");
  }
  if (window <= static_cast<std::int64_t>(eps.total_len())) {
    throw std::invalid_argument("detector: window must exceed the sync sequence length");
  }
}

}  // namespace

std::vector<DetectionEvent> detect_bursts(const StatisticSeries& stat, const IqSignal& s,
                                          const SyncSequence& eps, double threshold,
                                          std::int64_t window) {
  check_picker_args(eps, threshold, window);
  std::vector<std::int64_t> lags;
  scan_window_maxima(stat.values, threshold, window,
                     [&](std::int64_t i) { lags.push_back(stat.lag_origin + i); });
  return events_from_candidates(lags, s, eps, stat.norm_factor);
}

std::vector<DetectionEvent> detect(const IqSignal& s, const SyncSequence& eps, double threshold,
                                   std::int64_t window) {
  check_inputs(s, eps);
  check_picker_args(eps, threshold, window);

  const std::size_t len = eps.subseq_len();
  const std::size_t count = s.size() - eps.total_len() + 1;
  const std::int64_t q0 = static_cast<std::int64_t>(eps.repetition_offset(0));
  const std::int64_t q_end = q0 + static_cast<std::int64_t>(count + 7 * len);

  // The unnormalized statistic is kept as one float per lag; magnitudes of
  // the sliding correlation live in a ring sized for one block plus the
  // repetition span.
  std::vector<float> stat(count);
  SlidingDotStream stream(s.samples, eps.subsequence, q0, q_end);
  const std::size_t span = 7 * len + 1;
  const std::size_t ring_size = next_pow2(stream.max_block() + span);
  const std::size_t mask = ring_size - 1;
  std::vector<double> ring(ring_size, 0.0);
  std::vector<cplx> block(stream.max_block());

  std::size_t next_lag = 0;
  std::size_t peak = 0;
  double peak_val = -1.0;
  while (true) {
    const std::int64_t block_start = stream.position();
    const std::size_t k = stream.next(block.data());
    if (k == 0) break;
    for (std::size_t j = 0; j < k; ++j) {
      ring[(static_cast<std::size_t>(block_start) + j) & mask] = std::abs(block[j]);
    }
    // Lags are complete once their last repetition offset has been produced.
    const auto produced_end = static_cast<std::size_t>(block_start) + k;  // q index past end
    while (next_lag < count && next_lag + static_cast<std::size_t>(q0) + 7 * len < produced_end) {
      const std::size_t base = next_lag + static_cast<std::size_t>(q0);
      double sum = 0.0;
      for (std::size_t r = 0; r < 8; ++r) sum += ring[(base + r * len) & mask];
      stat[next_lag] = static_cast<float>(sum);
      if (sum > peak_val) {
        peak_val = sum;
        peak = next_lag;
      }
      ++next_lag;
    }
  }

  const double norm = normalization_at(s, eps, static_cast<std::int64_t>(peak));
  if (norm <= 0.0) return {};
  const double abs_threshold = threshold * norm;

  std::vector<std::int64_t> lags;
  scan_window_maxima(stat, abs_threshold, window, [&](std::int64_t i) { lags.push_back(i); });
  return events_from_candidates(lags, s, eps, norm);
}

}  // namespace starburst
