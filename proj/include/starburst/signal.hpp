#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace starburst {

using cplx = std::complex<double>;

// Complex baseband sample vector together with its sample rate. This is the
// carrier of every DSP operation in the library.
struct IqSignal {
  std::vector<cplx> samples;
  double sample_rate = 0.0;  // Hz

  std::size_t size() const { return samples.size(); }
  double sample_period() const { return 1.0 / sample_rate; }
};

// Multiplies sample n by exp(j*2*pi*delta_f*Ts*n). Length and sample rate are
// preserved; a shift by an integer multiple of the sample rate is the identity.
IqSignal apply_frequency_shift(const IqSignal& in, double delta_f);

void apply_frequency_shift_inplace(IqSignal& sig, double delta_f);

}  // namespace starburst
