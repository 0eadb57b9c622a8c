#include "starburst/sync.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace starburst {

double SyncSequence::subseq_energy() const {
  double e = 0.0;
  for (const cplx& v : subsequence) e += std::norm(v);
  return e;
}

std::vector<cplx> SyncSequence::render() const {
  const std::size_t len = subsequence.size();
  std::vector<cplx> out;
  out.reserve(total_len());
  // Cyclic prefix: the tail of the first sign-weighted repetition.
  for (std::size_t i = len - prefix_len; i < len; ++i) {
    out.push_back(static_cast<double>(sign_pattern[0]) * subsequence[i]);
  }
  for (int sign : sign_pattern) {
    for (const cplx& v : subsequence) out.push_back(static_cast<double>(sign) * v);
  }
  return out;
}

namespace {

void validate(const std::vector<cplx>& subsequence, std::size_t prefix_len,
              const std::array<int, 8>& sign_pattern, double sample_rate) {
  if (subsequence.empty()) throw std::invalid_argument("sync sequence: empty subsequence");
  if (prefix_len > subsequence.size()) {
    throw std::invalid_argument("sync sequence: prefix longer than the subsequence");
  }
  for (int s : sign_pattern) {
    if (s != 1 && s != -1) throw std::invalid_argument("sync sequence: sign pattern entries must be +1 or -1");
  }
  if (!(sample_rate > 0.0)) throw std::invalid_argument("sync sequence: sample rate must be positive");
}

}  // namespace

SyncSequence build_sync_sequence(std::vector<cplx> subsequence, double prefix_fraction,
                                 const std::array<int, 8>& sign_pattern, double sample_rate) {
  if (subsequence.empty()) throw std::invalid_argument("sync sequence: empty subsequence");
  if (prefix_fraction < 0.0) throw std::invalid_argument("sync sequence: negative prefix fraction");
  const double exact = prefix_fraction * static_cast<double>(subsequence.size());
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9) {
    throw std::invalid_argument("sync sequence: prefix_fraction * subsequence length = " +
                                std::to_string(exact) +
                                " is not an integer number of samples");
  }
  return build_sync_sequence_prefix_len(std::move(subsequence),
                                        static_cast<std::size_t>(rounded), sign_pattern,
                                        sample_rate);
}

SyncSequence build_sync_sequence_prefix_len(std::vector<cplx> subsequence, std::size_t prefix_len,
                                            const std::array<int, 8>& sign_pattern,
                                            double sample_rate) {
  validate(subsequence, prefix_len, sign_pattern, sample_rate);
  SyncSequence seq;
  seq.subsequence = std::move(subsequence);
  seq.prefix_len = prefix_len;
  seq.sign_pattern = sign_pattern;
  seq.sample_rate = sample_rate;
  return seq;
}

}  // namespace starburst
