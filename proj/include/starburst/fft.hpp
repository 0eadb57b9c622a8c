#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "starburst/signal.hpp"

namespace starburst {

// Fixed-size complex DFT pair backed by FFTW (ESTIMATE planning, so plan
// selection is reproducible). Transforms are unnormalized; callers scale by
// 1/n after an inverse. The plan owns an aligned work buffer and copies data
// through it, which keeps SIMD kernels usable for arbitrary caller arrays.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return n_; }
  void forward(const cplx* in, cplx* out) const;
  void inverse(const cplx* in, cplx* out) const;

 private:
  std::size_t n_;
  void* fwd_ = nullptr;  // fftw_plan
  void* inv_ = nullptr;  // fftw_plan
  cplx* buf_ = nullptr;  // fftw-aligned, length n_
};

std::size_t next_pow2(std::size_t n);

// Streaming overlap-save evaluation of the sliding dot product
//   q[u] = sum_m x[u + m] * conj(t[m]),  m in [0, len(t)),
// with x treated as zero outside its bounds. Blocks of consecutive u are
// produced in order over [u_begin, u_end).
class SlidingDotStream {
 public:
  SlidingDotStream(std::span<const cplx> x, std::span<const cplx> t, std::int64_t u_begin,
                   std::int64_t u_end);

  // Largest number of values a single next() call can produce.
  std::size_t max_block() const { return block_; }
  // Position of the first value the next call will produce.
  std::int64_t position() const { return pos_; }
  // Fills out[0..k) with q[position() .. position()+k) and advances; returns
  // k, or 0 when the range is exhausted.
  std::size_t next(cplx* out);

 private:
  std::span<const cplx> x_;
  std::int64_t pos_;
  std::int64_t end_;
  std::size_t fft_len_;
  std::size_t block_;
  FftPlan plan_;
  std::vector<cplx> template_spectrum_;  // conj(FFT(t)) pre-applied at multiply time
  std::vector<cplx> seg_;
};

// One-shot form of the above: out[i] = q[u0 + i] for i in [0, count).
void sliding_dot(std::span<const cplx> x, std::span<const cplx> t, std::int64_t u0,
                 std::size_t count, cplx* out);

}  // namespace starburst
