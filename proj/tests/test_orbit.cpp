#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "starburst/orbit.hpp"

using namespace starburst;

namespace {

double vec_norm(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double range_to(const OverflightScenario& scn, const ReceiverPosition& rx, double t) {
  const SatelliteState st = satellite_state(scn, t);
  const std::array<double, 3> r = receiver_ecef(scn, rx);
  const double dx = st.position[0] - r[0];
  const double dy = st.position[1] - r[1];
  const double dz = st.position[2] - r[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

TEST_CASE("default scenario geometry") {
  const OverflightScenario scn;
  const SatelliteState at0 = satellite_state(scn, 0.0);
  CHECK(vec_norm(at0.position) == doctest::Approx(6921000.0).epsilon(1e-12));

  const double expected_speed = std::sqrt(scn.gravitational_parameter / scn.orbit_radius());
  for (double t : {-400.0, -31.0, 0.0, 7.7, 123.0, 2000.0}) {
    const SatelliteState st = satellite_state(scn, t);
    CHECK(vec_norm(st.velocity) == doctest::Approx(expected_speed).epsilon(1e-9));
    // Circular orbit: velocity stays perpendicular to the radius vector.
    const double dot = st.position[0] * st.velocity[0] + st.position[1] * st.velocity[1] +
                       st.position[2] * st.velocity[2];
    CHECK(std::abs(dot) / (vec_norm(st.position) * vec_norm(st.velocity)) < 1e-12);
  }
  CHECK(expected_speed == doctest::Approx(7589.0).epsilon(1e-3));
}

TEST_CASE("orbital period closes the orbit") {
  const OverflightScenario scn;
  const double period = scn.orbital_period();
  CHECK(period == doctest::Approx(2.0 * std::numbers::pi *
                                  std::sqrt(std::pow(scn.orbit_radius(), 3) /
                                            scn.gravitational_parameter))
                      .epsilon(1e-12));
  const SatelliteState a = satellite_state(scn, 13.0);
  const SatelliteState b = satellite_state(scn, 13.0 + period);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(a.position[i] - b.position[i]) < 1e-3);
}

TEST_CASE("zenith pass pins the received frequency to the carrier") {
  const OverflightScenario scn;
  const ReceiverPosition origin{0.0, 0.0, 0.0};
  CHECK(received_frequency(scn, origin, 0.0) == scn.carrier_freq);

  // Odd symmetry around the closest approach on the ground track.
  for (double t : {5.0, 60.0, 180.0, 300.0}) {
    const double up = doppler_shift(scn, origin, t);
    const double down = doppler_shift(scn, origin, -t);
    CHECK(std::abs(up + down) < 1e-6);
  }
}

TEST_CASE("cross-track mirror symmetry") {
  const OverflightScenario scn;
  for (double xc : {50e3, 200e3, 800e3}) {
    for (double t : {-120.0, 0.0, 90.0}) {
      const double plus = received_frequency(scn, {0.0, xc, 0.0}, t);
      const double minus = received_frequency(scn, {0.0, -xc, 0.0}, t);
      CHECK(std::abs(plus - minus) < 1e-9);
    }
  }
}

TEST_CASE("received frequency never strays past the speed-ratio band") {
  const OverflightScenario scn;
  const double cap = scn.carrier_freq * scn.orbital_speed() / kSpeedOfLight;
  for (double xc : {0.0, 100e3, 400e3, 1000e3}) {
    for (double t = -600.0; t <= 600.0; t += 7.0) {
      const double df = doppler_shift(scn, {0.0, xc, 0.0}, t);
      CHECK(std::abs(df) <= cap * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("range rate agrees with the finite difference of range") {
  const OverflightScenario scn;
  const ReceiverPosition rx{120e3, 350e3, 0.0};
  for (double t : {-200.0, -50.0, 0.0, 90.0, 240.0}) {
    const double analytic = range_rate(scn, rx, t);
    const double numeric = (range_to(scn, rx, t + 1e-3) - range_to(scn, rx, t - 1e-3)) / 2e-3;
    CHECK(std::abs(analytic - numeric) < 1e-4);
  }
}

TEST_CASE("on-track frequency decreases monotonically through the pass") {
  const OverflightScenario scn;
  const ReceiverPosition origin{0.0, 0.0, 0.0};
  double prev = received_frequency(scn, origin, -300.0);
  for (double t = -299.0; t <= 300.0; t += 1.0) {
    const double f = received_frequency(scn, origin, t);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("along-track displacement time-shifts the curve") {
  const OverflightScenario scn;
  const double xa = 250e3;
  // Ground speed of the sub-satellite point: earth radius times angular rate.
  const double shift = xa / (scn.earth_radius * scn.angular_rate());
  const ReceiverPosition moved{xa, 90e3, 0.0};
  const ReceiverPosition base{0.0, 90e3, 0.0};
  for (double t : {-100.0, 0.0, 100.0}) {
    const double a = received_frequency(scn, moved, t + shift);
    const double b = received_frequency(scn, base, t);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("doppler curve family: slopes flatten with distance") {
  const OverflightScenario scn;
  std::vector<double> xcs{0.0, 200e3, 400e3, 800e3};
  std::vector<double> times;
  for (double t = -300.0; t <= 300.0; t += 1.0) times.push_back(t);
  const auto curve = doppler_curve(scn, xcs, times);
  REQUIRE(curve.size() == xcs.size() * times.size());

  // Zero cross-track curve crosses the carrier at t = 0.
  const std::size_t mid = times.size() / 2;
  CHECK(curve[mid].time == 0.0);
  CHECK(curve[mid].frequency == scn.carrier_freq);

  double prev_slope = 1e18;
  for (std::size_t c = 0; c < xcs.size(); ++c) {
    double max_slope = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double df = curve[c * times.size() + i].frequency -
                        curve[c * times.size() + i - 1].frequency;
      max_slope = std::max(max_slope, std::abs(df));
    }
    CHECK(max_slope < prev_slope);
    prev_slope = max_slope;
  }
}

TEST_CASE("degenerate geometry inputs are rejected") {
  const OverflightScenario scn;
  CHECK_THROWS_AS(doppler_curve(scn, {}, std::vector<double>{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(doppler_curve(scn, std::vector<double>{0.0}, {}), std::invalid_argument);
  // Receiver lifted into the satellite itself.
  CHECK_THROWS_AS(received_frequency(scn, {0.0, 0.0, scn.orbit_height}, 0.0),
                  std::invalid_argument);
  // Quarter-circumference cross-track offsets leave the chart.
  CHECK_THROWS_AS(received_frequency(scn, {0.0, 1.01e7, 0.0}, 0.0), std::invalid_argument);
}
