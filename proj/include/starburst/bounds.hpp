#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "starburst/orbit.hpp"

namespace starburst {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

double db_to_linear(double db);
double linear_to_db(double x);

// dB(W/m^2/MHz) -> W/m^2/Hz. The per-MHz reference sits 60 dB above per-Hz.
double flux_from_db_w_m2_mhz(double db);

// Receiver-side link budget, all fields in linear SI units.
struct LinkBudget {
  double flux_density = flux_from_db_w_m2_mhz(-122.0);  // W/m^2/Hz
  double carrier_wavelength = kSpeedOfLight / 11.7e9;   // m
  double rx_gain = db_to_linear(8.0);                   // linear
  double noise_temperature = 290.0;                     // K
  double boltzmann = kBoltzmann;
};

// SNR at the antenna output: flux * wavelength^2 * gain / (4*pi*kB*T).
double snr_at_receiver(const LinkBudget& lb);

// Variance lower bound for a carrier-frequency estimate from observed_symbols
// symbols of duration symbol_duration at the given linear SNR, Hz^2.
double mcrb_frequency(double symbol_duration, double observed_symbols, double snr_linear);

// Measurement instants t = q * frame_period with q symmetric about zero.
struct MeasurementSchedule {
  std::vector<double> times;  // s
  double frame_period = 1.0 / 750.0;
  double tracking_span = 0.0;  // s

  static MeasurementSchedule regular(double tracking_span, double frame_period = 1.0 / 750.0);
  std::size_t size() const { return times.size(); }
};

class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// N x 2 matrix of received-frequency sensitivities to east/north receiver
// displacement, Hz per meter. Central finite differences in geodetic
// coordinates, scaled to meters on the sphere at the receiver latitude.
struct Jacobian {
  std::vector<std::array<double, 2>> rows;
  std::size_t size() const { return rows.size(); }
};

Jacobian jacobian(const OverflightScenario& scn, const ReceiverPosition& rx,
                  const MeasurementSchedule& sched, double step_rad = 1e-7);

// 2x2 normal matrix accumulated row by row; lets the accuracy map run without
// materializing the N x 2 Jacobian.
struct InformationMatrix {
  double a = 0.0;  // sum h_e^2
  double b = 0.0;  // sum h_e * h_n
  double c = 0.0;  // sum h_n^2

  void accumulate(double h_east, double h_north) {
    a += h_east * h_east;
    b += h_east * h_north;
    c += h_north * h_north;
  }
};

InformationMatrix accumulate_information(const OverflightScenario& scn, const ReceiverPosition& rx,
                                         const MeasurementSchedule& sched, double step_rad = 1e-7);

// Position-error variance bound sigma^2 * tr((H^T H)^-1), m^2.
double positioning_crb(double sigma2, const Jacobian& h);
double positioning_crb(double sigma2, const InformationMatrix& info);

// One accuracy-map configuration: receiver gain and tracking span.
struct MapCase {
  double rx_gain = db_to_linear(8.0);  // linear
  double tracking_span = 240.0;        // s
};

struct AccuracyCell {
  double cross_track_distance = 0.0;  // m
  double rx_gain_db = 0.0;
  double tracking_span = 0.0;  // s
  double sigma_freq = 0.0;     // Hz, sqrt of the per-measurement variance bound
  double bound = 0.0;          // m, sqrt of the positioning variance bound
};

struct AccuracyMap {
  std::vector<AccuracyCell> cells;  // row-major over (case, distance)
};

// Full accuracy chain per (case, distance) cell: link-budget SNR, frequency
// MCRB, streamed information matrix, positioning bound. Degenerate cells
// (receiver on the ground track) record an infinite bound instead of failing.
AccuracyMap accuracy_map(const OverflightScenario& scn, const LinkBudget& base,
                         std::span<const MapCase> cases, std::span<const double> distances,
                         double symbol_duration = 4.17e-9, double observed_symbols = 8.0 * 127.0,
                         double frame_period = 1.0 / 750.0);

}  // namespace starburst
