#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "starburst/signal.hpp"
#include "starburst/sync.hpp"

namespace starburst {

// Deterministic generator used for all synthesis. Gaussian and QPSK draws are
// built explicitly on top of mt19937_64 so that identical seeds give
// bit-identical sample streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Circularly symmetric complex Gaussian with E|z|^2 = 1 (Box-Muller).
  cplx gaussian();

  // Unit-magnitude QPSK point, (+-1 +- j)/sqrt(2).
  cplx qpsk();

 private:
  std::mt19937_64 gen_;
};

// Seeded unit-power QPSK vector; the default subsequence content when no
// recorded waveform is supplied.
std::vector<cplx> random_qpsk(std::size_t len, std::uint64_t seed);

// One burst: sync sequence, then data_len samples of filled-spectrum data,
// the whole content scaled by gain and rotated by freq_offset. Guards are
// noise-only padding.
struct BurstSpec {
  SyncSequence sync;
  std::size_t data_len = 0;
  double freq_offset = 0.0;  // Hz; aggregate carrier + Doppler offset
  cplx gain = {1.0, 0.0};
  std::size_t guard_before = 0;
  std::size_t guard_after = 0;
};

// Renders the burst and adds complex white Gaussian noise of the given
// per-sample variance everywhere. The phase ramp starts at the first burst
// sample (after guard_before). Identical (spec, noise_variance, seed) give
// bit-identical output; the seed feeds only the data and noise samples.
IqSignal synthesize_burst(const BurstSpec& spec, double noise_variance, std::uint64_t seed);

// Burst train with fixed spacing. freq_offsets are applied per burst and
// cycled when shorter than count.
struct TrainSpec {
  SyncSequence sync;
  std::size_t count = 1;
  double burst_interval = UplinkProfile::bri_set[0];  // s
  std::size_t data_len = 0;
  std::vector<double> freq_offsets;  // Hz; empty means all zero
  cplx gain = {1.0, 0.0};
  std::size_t guard_before = 0;
  std::size_t guard_after = 0;
};

struct TrainTruth {
  std::vector<std::int64_t> offsets;      // burst start sample indices
  std::vector<double> freq_offsets;       // Hz actually applied
};

IqSignal synthesize_train(const TrainSpec& spec, double noise_variance, std::uint64_t seed,
                          TrainTruth* truth = nullptr);

}  // namespace starburst
