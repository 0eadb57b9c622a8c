#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "starburst/signal.hpp"

namespace starburst {

// One repetition is sign-flipped relative to the other seven.
inline constexpr std::array<int, 8> kDefaultSignPattern = {-1, 1, 1, 1, 1, 1, 1, 1};

// Structured synchronization waveform: a cyclic prefix followed by eight
// sign-weighted repetitions of a single subsequence. The prefix repeats the
// tail of the first (sign-weighted) repetition.
struct SyncSequence {
  std::vector<cplx> subsequence;  // one repetition period
  std::size_t prefix_len = 0;     // samples; prefix_fraction * subseq_len
  std::array<int, 8> sign_pattern = kDefaultSignPattern;
  double sample_rate = 0.0;  // Hz
  std::string id;            // identifier carried into detection events

  std::size_t subseq_len() const { return subsequence.size(); }
  std::size_t total_len() const { return prefix_len + 8 * subsequence.size(); }
  double prefix_fraction() const {
    return static_cast<double>(prefix_len) / static_cast<double>(subsequence.size());
  }
  double subseq_energy() const;

  // Sample offset of repetition k relative to the start of the rendered
  // sequence (the prefix occupies [0, prefix_len)).
  std::size_t repetition_offset(std::size_t k) const { return prefix_len + k * subsequence.size(); }

  // Full waveform: prefix, then sign_pattern[k] * subsequence for k = 0..7.
  std::vector<cplx> render() const;
};

// Validates and assembles a SyncSequence. prefix_fraction * len(subsequence)
// must be an integer number of samples; sign_pattern entries must be +1/-1.
SyncSequence build_sync_sequence(std::vector<cplx> subsequence, double prefix_fraction,
                                 const std::array<int, 8>& sign_pattern = kDefaultSignPattern,
                                 double sample_rate = 1.0);

// Same, with the prefix length given directly in samples.
SyncSequence build_sync_sequence_prefix_len(std::vector<cplx> subsequence, std::size_t prefix_len,
                                            const std::array<int, 8>& sign_pattern = kDefaultSignPattern,
                                            double sample_rate = 1.0);

// Structural constants of the user uplink signal.
struct UplinkProfile {
  static constexpr std::size_t subseq_len = 1200;   // samples per repetition
  static constexpr std::size_t prefix_len = 220;    // samples
  static constexpr double sample_rate = 562.5e6;    // Hz
  static constexpr double subchannel_bandwidth = 62.5e6;   // Hz
  static constexpr double burst_duration_step = 17.87e-6;  // s
  // Observed burst repetition intervals, seconds.
  static constexpr std::array<double, 6> bri_set = {6.67e-3, 8.00e-3, 9.33e-3,
                                                    10.67e-3, 16.00e-3, 18.67e-3};
  static constexpr std::size_t total_len = prefix_len + 8 * subseq_len;
};

// Structural constants of the user downlink signal.
struct DownlinkProfile {
  static constexpr double subseq_duration = 4.27e-6;  // s
  static constexpr int symbols_per_subseq = 127;
  static constexpr double prefix_fraction = 1.0 / 32.0;
  static constexpr double bandwidth = 240e6;        // Hz, one subchannel
  static constexpr double frame_period = 1.0 / 750.0;  // s
  static constexpr double symbol_duration = 4.17e-9;   // s
  static constexpr int observed_symbols = 8 * 127;
};

}  // namespace starburst
