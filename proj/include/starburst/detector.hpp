#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "starburst/correlate.hpp"
#include "starburst/signal.hpp"
#include "starburst/sync.hpp"

namespace starburst {

// Detected burst: start sample, normalized statistic, and the eight complex
// partial correlations evaluated at that sample (consumed by the fine
// frequency estimator).
struct DetectionEvent {
  std::int64_t sample_index = 0;
  double statistic = 0.0;
  std::array<cplx, 8> partials{};
  bool low_confidence = false;  // within one sequence length of a record edge
  std::string representative_id;
};

// Normalized partial-correlation sum per lag, values in [0, 1].
struct StatisticSeries {
  std::vector<double> values;
  std::int64_t lag_origin = 0;
  double norm_factor = 0.0;   // D; 0 when the series is identically zero
  std::int64_t peak_lag = 0;  // lag anchoring the normalization
};

// Partial correlation of s against repetition k of the representative, for
// each k in 0..7:
//   d_k[l] = sum_m s[l + offset(k) + m] * conj(sign[k] * subseq[m])
// Values are unnormalized. Lags may run past the signal bounds; the signal is
// treated as zero there.
std::array<CorrelationSeries, 8> partial_correlations(const IqSignal& s, const SyncSequence& eps,
                                                      LagRange range);

// Direct evaluation of the eight partials at a single lag.
std::array<cplx, 8> partials_at(const IqSignal& s, const SyncSequence& eps, std::int64_t lag);

// Detection statistic d[l] = (1/D) * sum_k |d_k[l]|. The divisor
// D = sum_k sqrt(E(s slice k) * E(subseq)) takes the signal slices at the lag
// where the unnormalized sum peaks within the computed range, which bounds
// the whole series by 1.
StatisticSeries detection_statistic(const IqSignal& s, const SyncSequence& eps, LagRange range);

// Full-range detection statistic lags: [0, len(s) - total_len].
LagRange full_lag_range(const IqSignal& s, const SyncSequence& eps);

// Picks every lag whose statistic exceeds the threshold and is the strict
// maximum within a window of `window` samples centered on it (ties resolve
// toward the smaller index). Each event carries its partials, re-evaluated
// directly at the detected lag.
std::vector<DetectionEvent> detect_bursts(const StatisticSeries& stat, const IqSignal& s,
                                          const SyncSequence& eps, double threshold,
                                          std::int64_t window);

// One-shot detector over the full record. Equivalent to detection_statistic +
// detect_bursts but streams the statistic in blocks, so memory stays at one
// float per lag plus the signal itself.
std::vector<DetectionEvent> detect(const IqSignal& s, const SyncSequence& eps, double threshold,
                                   std::int64_t window);

}  // namespace starburst
