#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "starburst/detector.hpp"
#include "starburst/signal.hpp"
#include "starburst/sync.hpp"

namespace starburst {

// Search grid f_min, f_min + step, ..., up to f_max (inclusive when on-grid).
struct FrequencyGrid {
  double f_min = 0.0;
  double f_max = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

struct FrequencyEstimate {
  std::int64_t sample_index = 0;
  double coarse_hz = 0.0;
  double fine_hz = 0.0;
  int ambiguity_index = 0;  // integer number of 1/(subseq_len*Ts) wraps applied
};

// Coarse carrier offset: the grid frequency maximizing the magnitude of the
// correlation between s (at the detected lag) and the representative shifted
// by that frequency. Ties resolve toward the smaller |frequency|.
double coarse_estimate(const IqSignal& s, const SyncSequence& eps, std::int64_t sample_index,
                       const FrequencyGrid& grid);

// Fine estimate from the phase progression of consecutive partial
// correlations. The phase-difference sum is unambiguous only within
// +-1/(2*subseq_len*Ts); the coarse estimate selects the wrap branch.
FrequencyEstimate fine_estimate(const DetectionEvent& event, double coarse_hz,
                                std::size_t subseq_len, double sample_rate);

struct EstimateBatch {
  std::vector<FrequencyEstimate> estimates;
  // (index into the input event list, message) for events whose estimate failed
  std::vector<std::pair<std::size_t, std::string>> errors;
};

// Coarse + fine estimation for every detection; order preserved, per-event
// failures collected rather than thrown.
EstimateBatch estimate_all(const IqSignal& s, const SyncSequence& eps,
                           std::span<const DetectionEvent> events, const FrequencyGrid& grid);

}  // namespace starburst
