#pragma once

#include <cstdint>
#include <vector>

#include "starburst/signal.hpp"

namespace starburst {

// Lags [first, first + count).
struct LagRange {
  std::int64_t first = 0;
  std::size_t count = 0;
};

struct CorrelationSeries {
  std::vector<cplx> values;
  std::int64_t lag_origin = 0;  // lag of values[0]
  bool normalized = false;
  double norm_factor = 0.0;  // divisor applied when normalized (0 for an all-zero series)

  std::int64_t peak_lag() const;  // lag of the largest magnitude (first on ties)
  double peak_magnitude() const;
};

// Normalized cross-correlation of y1 against a shorter template y2 over the
// fully-contained lags [0, len(y1) - len(y2)]:
//   r[l] = (1/A) * sum_n y1[n] * conj(y2[n - l])
// The divisor A = sqrt(E(y1 slice) * E(y2)) takes the y1 slice at the lag
// where the unnormalized magnitude peaks, so every value has magnitude <= 1.
// Transform-based; cost is O(N log B) independent of the template length.
CorrelationSeries xcorr_normalized(const IqSignal& y1, const IqSignal& y2);

}  // namespace starburst
