#pragma once

#include <array>
#include <span>
#include <vector>

namespace starburst {

inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
inline constexpr double kEarthRadius = 6371000.0;           // m
inline constexpr double kEarthMu = 3.986004418e14;          // m^3/s^2

// Circular orbit over a non-rotating spherical earth, passing the zenith of
// the scenario origin at closest_approach_time. The ground track runs along
// the equator of the scenario frame.
struct OverflightScenario {
  double orbit_height = 550e3;        // m
  double carrier_freq = 11.7e9;       // Hz
  double earth_radius = kEarthRadius; // m
  double gravitational_parameter = kEarthMu;
  double closest_approach_time = 0.0; // s

  double orbit_radius() const { return earth_radius + orbit_height; }
  double angular_rate() const;        // rad/s
  double orbital_speed() const;       // m/s
  double orbital_period() const;      // s
};

// Static receiver given in ground-track coordinates: along_track parallel to
// the ground track, cross_track perpendicular to it on the surface, altitude
// above the sphere. Equivalently geodetic (longitude along, latitude across).
struct ReceiverPosition {
  double along_track = 0.0;  // m
  double cross_track = 0.0;  // m
  double altitude = 0.0;     // m

  double longitude() const;  // rad
  double latitude() const;   // rad
  static ReceiverPosition from_geodetic(double lon_rad, double lat_rad, double altitude_m,
                                        double earth_radius = kEarthRadius);
};

struct SatelliteState {
  std::array<double, 3> position;  // m
  std::array<double, 3> velocity;  // m/s
};

SatelliteState satellite_state(const OverflightScenario& scn, double t);

std::array<double, 3> receiver_ecef(const OverflightScenario& scn, const ReceiverPosition& rx);

// First-order Doppler: f_r = f_c * (1 - range_rate / c).
double received_frequency(const OverflightScenario& scn, const ReceiverPosition& rx, double t);

// The Doppler term f_r - f_c on its own. At an 11.7 GHz carrier one double
// ULP is about 2e-6 Hz, so symmetry properties of the shift are only visible
// when it is computed without passing through the full received frequency.
double doppler_shift(const OverflightScenario& scn, const ReceiverPosition& rx, double t);

// Range rate from satellite to the (static) receiver, m/s.
double range_rate(const OverflightScenario& scn, const ReceiverPosition& rx, double t);

struct DopplerSample {
  double cross_track;  // m
  double time;         // s
  double frequency;    // Hz
};

// Received-frequency curves for a family of cross-track offsets, row-major
// over (cross_track, time).
std::vector<DopplerSample> doppler_curve(const OverflightScenario& scn,
                                         std::span<const double> cross_tracks,
                                         std::span<const double> times);

}  // namespace starburst
