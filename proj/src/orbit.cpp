#include "starburst/orbit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace starburst {

double OverflightScenario::angular_rate() const {
  const double a = orbit_radius();
  return std::sqrt(gravitational_parameter / (a * a * a));
}

double OverflightScenario::orbital_speed() const {
  return std::sqrt(gravitational_parameter / orbit_radius());
}

double OverflightScenario::orbital_period() const {
  return 2.0 * std::numbers::pi / angular_rate();
}

double ReceiverPosition::longitude() const { return along_track / kEarthRadius; }
double ReceiverPosition::latitude() const { return cross_track / kEarthRadius; }

ReceiverPosition ReceiverPosition::from_geodetic(double lon_rad, double lat_rad, double altitude_m,
                                                 double earth_radius) {
  return ReceiverPosition{lon_rad * earth_radius, lat_rad * earth_radius, altitude_m};
}

SatelliteState satellite_state(const OverflightScenario& scn, double t) {
  if (!(scn.orbit_height > 0.0)) throw std::invalid_argument("scenario: orbit height must be positive");
  const double a = scn.orbit_radius();
  const double w = scn.angular_rate();
  const double th = w * (t - scn.closest_approach_time);
  const double c = std::cos(th);
  const double s = std::sin(th);
  // Orbit in the equatorial plane of the scenario frame; the sub-satellite
  // point crosses the origin's zenith at the closest-approach time.
  return SatelliteState{{a * c, a * s, 0.0}, {-a * w * s, a * w * c, 0.0}};
}

std::array<double, 3> receiver_ecef(const OverflightScenario& scn, const ReceiverPosition& rx) {
  const double lon = rx.along_track / scn.earth_radius;
  const double lat = rx.cross_track / scn.earth_radius;
  if (std::abs(lat) >= std::numbers::pi / 2.0) {
    throw std::invalid_argument("receiver: cross-track offset beyond a quarter circumference");
  }
  const double r = scn.earth_radius + rx.altitude;
  return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon),
          r * std::sin(lat)};
}

namespace {

double range_rate_state(const SatelliteState& sat, const std::array<double, 3>& rx) {
  const double dx = sat.position[0] - rx[0];
  const double dy = sat.position[1] - rx[1];
  const double dz = sat.position[2] - rx[2];
  const double range = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (range == 0.0) throw std::invalid_argument("receiver coincident with the satellite");
  return (dx * sat.velocity[0] + dy * sat.velocity[1] + dz * sat.velocity[2]) / range;
}

}  // namespace

double range_rate(const OverflightScenario& scn, const ReceiverPosition& rx, double t) {
  return range_rate_state(satellite_state(scn, t), receiver_ecef(scn, rx));
}

double doppler_shift(const OverflightScenario& scn, const ReceiverPosition& rx, double t) {
  if (!(scn.carrier_freq > 0.0)) throw std::invalid_argument("scenario: carrier frequency must be positive");
  return -scn.carrier_freq * range_rate(scn, rx, t) / kSpeedOfLight;
}

double received_frequency(const OverflightScenario& scn, const ReceiverPosition& rx, double t) {
  return scn.carrier_freq + doppler_shift(scn, rx, t);
}

std::vector<DopplerSample> doppler_curve(const OverflightScenario& scn,
                                         std::span<const double> cross_tracks,
                                         std::span<const double> times) {
  if (cross_tracks.empty() || times.empty()) {
    throw std::invalid_argument("doppler_curve: empty grid");
  }
  std::vector<DopplerSample> out;
  out.reserve(cross_tracks.size() * times.size());
  for (double xc : cross_tracks) {
    const ReceiverPosition rx{0.0, xc, 0.0};
    const std::array<double, 3> rx_ecef = receiver_ecef(scn, rx);
    for (double t : times) {
      const double rr = range_rate_state(satellite_state(scn, t), rx_ecef);
      out.push_back({xc, t, scn.carrier_freq * (1.0 - rr / kSpeedOfLight)});
    }
  }
  return out;
}

}  // namespace starburst
