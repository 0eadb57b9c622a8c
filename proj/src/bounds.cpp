#include "starburst/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace starburst {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double flux_from_db_w_m2_mhz(double db) { return db_to_linear(db - 60.0); }

double snr_at_receiver(const LinkBudget& lb) {
  if (!(lb.flux_density > 0.0 && lb.carrier_wavelength > 0.0 && lb.rx_gain > 0.0 &&
        lb.noise_temperature > 0.0)) {
    throw std::invalid_argument("link budget: all quantities must be positive in linear units");
  }
  return lb.flux_density * lb.carrier_wavelength * lb.carrier_wavelength * lb.rx_gain /
         (4.0 * std::numbers::pi * lb.boltzmann * lb.noise_temperature);
}

double mcrb_frequency(double symbol_duration, double observed_symbols, double snr_linear) {
  if (!(symbol_duration > 0.0 && observed_symbols > 0.0 && snr_linear > 0.0)) {
    throw std::invalid_argument("mcrb_frequency: all arguments must be positive");
  }
  const double l3 = observed_symbols * observed_symbols * observed_symbols;
  return 3.0 / (symbol_duration * symbol_duration * 2.0 * std::numbers::pi * l3 * snr_linear);
}

MeasurementSchedule MeasurementSchedule::regular(double tracking_span, double frame_period) {
  if (!(tracking_span > 0.0 && frame_period > 0.0)) {
    throw std::invalid_argument("schedule: tracking span and frame period must be positive");
  }
  const auto n = static_cast<std::size_t>(std::llround(tracking_span / frame_period));
  if (n == 0) throw std::invalid_argument("schedule: tracking span shorter than one frame");
  MeasurementSchedule sched;
  sched.frame_period = frame_period;
  sched.tracking_span = tracking_span;
  sched.times.resize(n);
  const double center = (static_cast<double>(n) - 1.0) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    sched.times[i] = (static_cast<double>(i) - center) * frame_period;
  }
  return sched;
}

namespace {

double frequency_from_state(const SatelliteState& sat, const std::array<double, 3>& rx,
                            double carrier_freq) {
  const double dx = sat.position[0] - rx[0];
  const double dy = sat.position[1] - rx[1];
  const double dz = sat.position[2] - rx[2];
  const double range = std::sqrt(dx * dx + dy * dy + dz * dz);
  const double rr = (dx * sat.velocity[0] + dy * sat.velocity[1] + dz * sat.velocity[2]) / range;
  return carrier_freq * (1.0 - rr / kSpeedOfLight);
}

struct SensitivityProbe {
  // Receiver displaced by +-step in each geodetic coordinate, precomputed in
  // the scenario frame; the receiver is static so this is shared by all times.
  std::array<double, 3> east_plus, east_minus, north_plus, north_minus;
  double east_scale;   // 1 / (2 * step * R * cos(lat))
  double north_scale;  // 1 / (2 * step * R)

  SensitivityProbe(const OverflightScenario& scn, const ReceiverPosition& rx, double step_rad) {
    const double lon = rx.along_track / scn.earth_radius;
    const double lat = rx.cross_track / scn.earth_radius;
    const double re = scn.earth_radius;
    const auto ecef = [&](double lo, double la) {
      return receiver_ecef(scn, ReceiverPosition::from_geodetic(lo, la, rx.altitude, re));
    };
    east_plus = ecef(lon + step_rad, lat);
    east_minus = ecef(lon - step_rad, lat);
    north_plus = ecef(lon, lat + step_rad);
    north_minus = ecef(lon, lat - step_rad);
    east_scale = 1.0 / (2.0 * step_rad * re * std::cos(lat));
    north_scale = 1.0 / (2.0 * step_rad * re);
  }

  std::array<double, 2> row(const SatelliteState& sat, double carrier_freq) const {
    const double fe =
        (frequency_from_state(sat, east_plus, carrier_freq) -
         frequency_from_state(sat, east_minus, carrier_freq)) * east_scale;
    const double fn =
        (frequency_from_state(sat, north_plus, carrier_freq) -
         frequency_from_state(sat, north_minus, carrier_freq)) * north_scale;
    return {fe, fn};
  }
};

void check_rank(const InformationMatrix& info) {
  const double trace = info.a + info.c;
  const double det = info.a * info.c - info.b * info.b;
  if (!(det > trace * trace * 1e-24)) {
    throw DegenerateGeometryError(
        "degenerate geometry: frequency measurements do not resolve both coordinates");
  }
}

}  // namespace

Jacobian jacobian(const OverflightScenario& scn, const ReceiverPosition& rx,
                  const MeasurementSchedule& sched, double step_rad) {
  if (sched.size() < 2) throw std::invalid_argument("jacobian: at least two measurements needed");
  if (!(step_rad > 0.0)) throw std::invalid_argument("jacobian: step must be positive");

  const SensitivityProbe probe(scn, rx, step_rad);
  Jacobian h;
  h.rows.reserve(sched.size());
  InformationMatrix info;
  for (double t : sched.times) {
    const std::array<double, 2> row = probe.row(satellite_state(scn, t), scn.carrier_freq);
    info.accumulate(row[0], row[1]);
    h.rows.push_back(row);
  }
  check_rank(info);
  return h;
}

InformationMatrix accumulate_information(const OverflightScenario& scn, const ReceiverPosition& rx,
                                         const MeasurementSchedule& sched, double step_rad) {
  if (!(step_rad > 0.0)) throw std::invalid_argument("information: step must be positive");
  const SensitivityProbe probe(scn, rx, step_rad);
  InformationMatrix info;
  for (double t : sched.times) {
    const std::array<double, 2> row = probe.row(satellite_state(scn, t), scn.carrier_freq);
    info.accumulate(row[0], row[1]);
  }
  return info;
}

double positioning_crb(double sigma2, const InformationMatrix& info) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("positioning_crb: variance must be positive");
  check_rank(info);
  const double det = info.a * info.c - info.b * info.b;
  return sigma2 * (info.a + info.c) / det;
}

double positioning_crb(double sigma2, const Jacobian& h) {
  InformationMatrix info;
  for (const auto& row : h.rows) info.accumulate(row[0], row[1]);
  return positioning_crb(sigma2, info);
}

AccuracyMap accuracy_map(const OverflightScenario& scn, const LinkBudget& base,
                         std::span<const MapCase> cases, std::span<const double> distances,
                         double symbol_duration, double observed_symbols, double frame_period) {
  if (cases.empty() || distances.empty()) throw std::invalid_argument("accuracy_map: empty grid");

  AccuracyMap map;
  map.cells.reserve(cases.size() * distances.size());
  for (const MapCase& mc : cases) {
    LinkBudget lb = base;
    lb.rx_gain = mc.rx_gain;
    const double snr = snr_at_receiver(lb);
    const double sigma2 = mcrb_frequency(symbol_duration, observed_symbols, snr);
    const MeasurementSchedule sched = MeasurementSchedule::regular(mc.tracking_span, frame_period);
    for (double dist : distances) {
      AccuracyCell cell;
      cell.cross_track_distance = dist;
      cell.rx_gain_db = linear_to_db(mc.rx_gain);
      cell.tracking_span = mc.tracking_span;
      cell.sigma_freq = std::sqrt(sigma2);
      try {
        const ReceiverPosition rx{0.0, dist, 0.0};
        const InformationMatrix info = accumulate_information(scn, rx, sched);
        cell.bound = std::sqrt(positioning_crb(sigma2, info));
      } catch (const DegenerateGeometryError&) {
        cell.bound = std::numeric_limits<double>::infinity();
      }
      map.cells.push_back(cell);
    }
  }
  return map;
}

}  // namespace starburst
