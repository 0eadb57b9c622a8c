#include "starburst/signal.hpp"

#include <cmath>
#include <numbers>

namespace starburst {

void apply_frequency_shift_inplace(IqSignal& sig, double delta_f) {
  const double w = 2.0 * std::numbers::pi * delta_f / sig.sample_rate;
  for (std::size_t n = 0; n < sig.samples.size(); ++n) {
    sig.samples[n] *= std::polar(1.0, w * static_cast<double>(n));
  }
}

IqSignal apply_frequency_shift(const IqSignal& in, double delta_f) {
  IqSignal out = in;
  apply_frequency_shift_inplace(out, delta_f);
  return out;
}

}  // namespace starburst
