#include "starburst/correlate.hpp"

#include <cmath>
#include <stdexcept>

#include "starburst/fft.hpp"

namespace starburst {

std::int64_t CorrelationSeries::peak_lag() const {
  double best = -1.0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double m = std::abs(values[i]);
    if (m > best) {
      best = m;
      idx = i;
    }
  }
  return lag_origin + static_cast<std::int64_t>(idx);
}

double CorrelationSeries::peak_magnitude() const {
  double best = 0.0;
  for (const cplx& v : values) best = std::max(best, std::abs(v));
  return best;
}

CorrelationSeries xcorr_normalized(const IqSignal& y1, const IqSignal& y2) {
  if (y2.size() == 0) throw std::invalid_argument("xcorr: empty template");
  if (y2.size() >= y1.size()) {
    throw std::invalid_argument("xcorr: template must be shorter than the signal");
  }
  if (y1.sample_rate != y2.sample_rate) {
    throw std::invalid_argument("xcorr: sample rates differ");
  }

  double template_energy = 0.0;
  for (const cplx& v : y2.samples) template_energy += std::norm(v);
  if (template_energy == 0.0) throw std::invalid_argument("xcorr: zero-energy template");

  CorrelationSeries out;
  out.lag_origin = 0;
  out.values.resize(y1.size() - y2.size() + 1);
  sliding_dot(y1.samples, y2.samples, 0, out.values.size(), out.values.data());

  // Anchor the normalization at the strongest lag so the whole series stays
  // bounded by 1 (Cauchy-Schwarz on the anchored slice).
  std::size_t peak = 0;
  double peak_mag = -1.0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double m = std::abs(out.values[i]);
    if (m > peak_mag) {
      peak_mag = m;
      peak = i;
    }
  }

  double slice_energy = 0.0;
  for (std::size_t n = peak; n < peak + y2.size(); ++n) slice_energy += std::norm(y1.samples[n]);

  const double a = std::sqrt(slice_energy * template_energy);
  out.normalized = true;
  out.norm_factor = a;
  if (a > 0.0) {
    const double inv = 1.0 / a;
    for (cplx& v : out.values) v *= inv;
  }
  // a == 0 only when the signal is zero wherever the template overlaps it, in
  // which case every value is already zero.
  return out;
}

}  // namespace starburst
