#include "starburst/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace starburst {

namespace {
// The FFTW planner has global state; executing plans is thread-safe, making
// and destroying them is not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("FftPlan: zero length");
  buf_ = reinterpret_cast<cplx*>(fftw_alloc_complex(n));
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  {
    const std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!fwd_ || !inv_) throw std::runtime_error("FftPlan: planner failed");
}

FftPlan::~FftPlan() {
  const std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_));
  fftw_free(buf_);
}

void FftPlan::forward(const cplx* in, cplx* out) const {
  std::memcpy(buf_, in, n_ * sizeof(cplx));
  fftw_execute(static_cast<fftw_plan>(fwd_));
  std::memcpy(out, buf_, n_ * sizeof(cplx));
}

void FftPlan::inverse(const cplx* in, cplx* out) const {
  std::memcpy(buf_, in, n_ * sizeof(cplx));
  fftw_execute(static_cast<fftw_plan>(inv_));
  std::memcpy(out, buf_, n_ * sizeof(cplx));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

std::size_t choose_fft_len(std::size_t template_len) {
  return std::clamp(next_pow2(4 * template_len), std::size_t{8192}, std::size_t{1} << 21);
}

}  // namespace

SlidingDotStream::SlidingDotStream(std::span<const cplx> x, std::span<const cplx> t,
                                   std::int64_t u_begin, std::int64_t u_end)
    : x_(x),
      pos_(u_begin),
      end_(u_end),
      fft_len_(choose_fft_len(t.size())),
      block_(fft_len_ - t.size() + 1),
      plan_(fft_len_),
      template_spectrum_(fft_len_),
      seg_(fft_len_) {
  if (t.empty()) throw std::invalid_argument("SlidingDotStream: empty template");
  if (t.size() > fft_len_) throw std::invalid_argument("SlidingDotStream: template too long");
  std::vector<cplx> padded(fft_len_, cplx{0.0, 0.0});
  std::copy(t.begin(), t.end(), padded.begin());
  plan_.forward(padded.data(), template_spectrum_.data());
  for (cplx& v : template_spectrum_) v = std::conj(v);
}

std::size_t SlidingDotStream::next(cplx* out) {
  if (pos_ >= end_) return 0;
  const std::size_t k =
      std::min<std::size_t>(block_, static_cast<std::size_t>(end_ - pos_));

  // seg = x[pos .. pos + fft_len), zero outside the signal.
  const auto nx = static_cast<std::int64_t>(x_.size());
  const std::int64_t lo = std::clamp<std::int64_t>(pos_, 0, nx);
  const std::int64_t hi = std::clamp<std::int64_t>(pos_ + static_cast<std::int64_t>(fft_len_), 0, nx);
  std::fill(seg_.begin(), seg_.end(), cplx{0.0, 0.0});
  if (hi > lo) std::copy(x_.begin() + lo, x_.begin() + hi, seg_.begin() + (lo - pos_));

  plan_.forward(seg_.data(), seg_.data());
  for (std::size_t f = 0; f < fft_len_; ++f) seg_[f] *= template_spectrum_[f];
  plan_.inverse(seg_.data(), seg_.data());

  const double scale = 1.0 / static_cast<double>(fft_len_);
  for (std::size_t j = 0; j < k; ++j) out[j] = seg_[j] * scale;
  pos_ += static_cast<std::int64_t>(k);
  return k;
}

void sliding_dot(std::span<const cplx> x, std::span<const cplx> t, std::int64_t u0,
                 std::size_t count, cplx* out) {
  if (count == 0) return;
  SlidingDotStream stream(x, t, u0, u0 + static_cast<std::int64_t>(count));
  std::size_t written = 0;
  while (std::size_t k = stream.next(out + written)) written += k;
}

}  // namespace starburst
