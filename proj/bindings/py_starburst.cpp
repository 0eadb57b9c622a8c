#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "starburst/bounds.hpp"
#include "starburst/correlate.hpp"
#include "starburst/detector.hpp"
#include "starburst/freq_estimate.hpp"
#include "starburst/io.hpp"
#include "starburst/orbit.hpp"
#include "starburst/synth.hpp"

namespace py = pybind11;
using namespace starburst;

namespace {

std::vector<cplx> to_vector(const py::array_t<std::complex<double>>& arr) {
  const auto buf = arr.request();
  if (buf.ndim != 1) throw std::invalid_argument("expected a 1-d complex array");
  const auto* data = static_cast<const std::complex<double>*>(buf.ptr);
  const auto stride = buf.strides[0] / static_cast<py::ssize_t>(sizeof(std::complex<double>));
  std::vector<cplx> out(static_cast<std::size_t>(buf.shape[0]));
  for (py::ssize_t i = 0; i < buf.shape[0]; ++i) out[static_cast<std::size_t>(i)] = data[i * stride];
  return out;
}

py::array_t<std::complex<double>> to_array(const std::vector<cplx>& v) {
  py::array_t<std::complex<double>> arr(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), static_cast<std::complex<double>*>(arr.request().ptr));
  return arr;
}

py::array_t<double> to_array_real(const std::vector<double>& v) {
  py::array_t<double> arr(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), static_cast<double*>(arr.request().ptr));
  return arr;
}

std::array<int, 8> to_signs(const std::vector<int>& v) {
  if (v.size() != 8) throw std::invalid_argument("sign pattern needs exactly 8 entries");
  std::array<int, 8> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

FrequencyGrid make_grid(double f_min, double f_max, double step) {
  return FrequencyGrid{f_min, f_max, step};
}

}  // namespace

PYBIND11_MODULE(_starburst, m) {
  m.doc() = "Burst detection, carrier-frequency estimation, and Doppler positioning bounds "
            "for LEO communication signals";

  py::class_<IqSignal>(m, "IqSignal")
      .def(py::init([](const py::array_t<std::complex<double>>& samples, double sample_rate) {
             IqSignal sig;
             sig.samples = to_vector(samples);
             sig.sample_rate = sample_rate;
             return sig;
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_property_readonly("samples", [](const IqSignal& s) { return to_array(s.samples); })
      .def_readonly("sample_rate", &IqSignal::sample_rate)
      .def("__len__", &IqSignal::size);

  py::class_<SyncSequence>(m, "SyncSequence")
      .def_property_readonly("subsequence",
                             [](const SyncSequence& s) { return to_array(s.subsequence); })
      .def_readonly("prefix_len", &SyncSequence::prefix_len)
      .def_readonly("sample_rate", &SyncSequence::sample_rate)
      .def_readwrite("id", &SyncSequence::id)
      .def_property_readonly("sign_pattern",
                             [](const SyncSequence& s) {
                               return std::vector<int>(s.sign_pattern.begin(), s.sign_pattern.end());
                             })
      .def_property_readonly("subseq_len", &SyncSequence::subseq_len)
      .def_property_readonly("total_len", &SyncSequence::total_len)
      .def_property_readonly("prefix_fraction", &SyncSequence::prefix_fraction)
      .def("render", [](const SyncSequence& s) { return to_array(s.render()); });

  m.def(
      "build_sync_sequence",
      [](const py::array_t<std::complex<double>>& subseq, double prefix_fraction,
         const std::vector<int>& signs, double sample_rate, const std::string& id) {
        SyncSequence s = build_sync_sequence(to_vector(subseq), prefix_fraction, to_signs(signs),
                                             sample_rate);
        s.id = id;
        return s;
      },
      py::arg("subsequence"), py::arg("prefix_fraction"),
      py::arg("sign_pattern") = std::vector<int>{-1, 1, 1, 1, 1, 1, 1, 1},
      py::arg("sample_rate") = 1.0, py::arg("id") = "");

  m.def("random_qpsk",
        [](std::size_t n, std::uint64_t seed) { return to_array(random_qpsk(n, seed)); },
        py::arg("n"), py::arg("seed"));

  m.def(
      "synthesize_burst",
      [](const SyncSequence& sync, std::size_t data_len, double freq_offset,
         std::complex<double> gain, std::size_t guard_before, std::size_t guard_after,
         double noise_variance, std::uint64_t seed) {
        BurstSpec spec{sync, data_len, freq_offset, gain, guard_before, guard_after};
        return synthesize_burst(spec, noise_variance, seed);
      },
      py::arg("sync"), py::arg("data_len") = 0, py::arg("freq_offset") = 0.0,
      py::arg("gain") = std::complex<double>{1.0, 0.0}, py::arg("guard_before") = 0,
      py::arg("guard_after") = 0, py::arg("noise_variance") = 0.0, py::arg("seed") = 1);

  m.def(
      "synthesize_train",
      [](const SyncSequence& sync, std::size_t count, double burst_interval, std::size_t data_len,
         const std::vector<double>& freq_offsets, std::complex<double> gain,
         std::size_t guard_before, std::size_t guard_after, double noise_variance,
         std::uint64_t seed) {
        TrainSpec spec{sync,          count,       burst_interval, data_len,
                       freq_offsets,  gain,        guard_before,   guard_after};
        TrainTruth truth;
        IqSignal sig = synthesize_train(spec, noise_variance, seed, &truth);
        return py::make_tuple(std::move(sig), truth.offsets, truth.freq_offsets);
      },
      py::arg("sync"), py::arg("count"), py::arg("burst_interval"), py::arg("data_len") = 0,
      py::arg("freq_offsets") = std::vector<double>{}, py::arg("gain") = std::complex<double>{1.0, 0.0},
      py::arg("guard_before") = 0, py::arg("guard_after") = 0, py::arg("noise_variance") = 0.0,
      py::arg("seed") = 1);

  m.def("apply_frequency_shift", &apply_frequency_shift, py::arg("signal"), py::arg("delta_f"));

  py::class_<CorrelationSeries>(m, "CorrelationSeries")
      .def_property_readonly("values",
                             [](const CorrelationSeries& s) { return to_array(s.values); })
      .def_readonly("lag_origin", &CorrelationSeries::lag_origin)
      .def_readonly("normalized", &CorrelationSeries::normalized)
      .def_readonly("norm_factor", &CorrelationSeries::norm_factor)
      .def("peak_lag", &CorrelationSeries::peak_lag)
      .def("peak_magnitude", &CorrelationSeries::peak_magnitude);

  m.def("xcorr_normalized", &xcorr_normalized, py::arg("y1"), py::arg("y2"));

  py::class_<StatisticSeries>(m, "StatisticSeries")
      .def_property_readonly("values",
                             [](const StatisticSeries& s) { return to_array_real(s.values); })
      .def_readonly("lag_origin", &StatisticSeries::lag_origin)
      .def_readonly("norm_factor", &StatisticSeries::norm_factor)
      .def_readonly("peak_lag", &StatisticSeries::peak_lag);

  py::class_<DetectionEvent>(m, "DetectionEvent")
      .def(py::init([](std::int64_t sample_index,
                       const py::array_t<std::complex<double>>& partials) {
             DetectionEvent ev;
             ev.sample_index = sample_index;
             const std::vector<cplx> p = to_vector(partials);
             if (p.size() != 8) throw std::invalid_argument("eight partials expected");
             std::copy(p.begin(), p.end(), ev.partials.begin());
             return ev;
           }),
           py::arg("sample_index"), py::arg("partials"))
      .def_readonly("sample_index", &DetectionEvent::sample_index)
      .def_readonly("statistic", &DetectionEvent::statistic)
      .def_readonly("low_confidence", &DetectionEvent::low_confidence)
      .def_readonly("representative_id", &DetectionEvent::representative_id)
      .def_property_readonly("partials", [](const DetectionEvent& ev) {
        return to_array(std::vector<cplx>(ev.partials.begin(), ev.partials.end()));
      });

  m.def(
      "partial_correlations",
      [](const IqSignal& s, const SyncSequence& eps, std::int64_t first, std::size_t count) {
        auto series = partial_correlations(s, eps, LagRange{first, count});
        py::list out;
        for (auto& sr : series) out.append(std::move(sr));
        return out;
      },
      py::arg("signal"), py::arg("sync"), py::arg("first"), py::arg("count"));

  m.def("partials_at",
        [](const IqSignal& s, const SyncSequence& eps, std::int64_t lag) {
          const auto p = partials_at(s, eps, lag);
          return to_array(std::vector<cplx>(p.begin(), p.end()));
        },
        py::arg("signal"), py::arg("sync"), py::arg("lag"));

  m.def(
      "detection_statistic",
      [](const IqSignal& s, const SyncSequence& eps, std::optional<std::int64_t> first,
         std::optional<std::size_t> count) {
        LagRange range = full_lag_range(s, eps);
        if (first) range.first = *first;
        if (count) range.count = *count;
        return detection_statistic(s, eps, range);
      },
      py::arg("signal"), py::arg("sync"), py::arg("first") = std::nullopt,
      py::arg("count") = std::nullopt);

  m.def("detect_bursts", &detect_bursts, py::arg("statistic"), py::arg("signal"), py::arg("sync"),
        py::arg("threshold"), py::arg("window"));
  m.def("detect", &detect, py::arg("signal"), py::arg("sync"), py::arg("threshold"),
        py::arg("window"));

  py::class_<FrequencyEstimate>(m, "FrequencyEstimate")
      .def_readonly("sample_index", &FrequencyEstimate::sample_index)
      .def_readonly("coarse_hz", &FrequencyEstimate::coarse_hz)
      .def_readonly("fine_hz", &FrequencyEstimate::fine_hz)
      .def_readonly("ambiguity_index", &FrequencyEstimate::ambiguity_index);

  m.def(
      "coarse_estimate",
      [](const IqSignal& s, const SyncSequence& eps, std::int64_t sample_index, double f_min,
         double f_max, double step) {
        return coarse_estimate(s, eps, sample_index, make_grid(f_min, f_max, step));
      },
      py::arg("signal"), py::arg("sync"), py::arg("sample_index"), py::arg("f_min"),
      py::arg("f_max"), py::arg("step"));

  m.def("fine_estimate", &fine_estimate, py::arg("event"), py::arg("coarse_hz"),
        py::arg("subseq_len"), py::arg("sample_rate"));

  m.def(
      "estimate_all",
      [](const IqSignal& s, const SyncSequence& eps, const std::vector<DetectionEvent>& events,
         double f_min, double f_max, double step) {
        const EstimateBatch batch = estimate_all(s, eps, events, make_grid(f_min, f_max, step));
        return py::make_tuple(batch.estimates, batch.errors);
      },
      py::arg("signal"), py::arg("sync"), py::arg("events"), py::arg("f_min"), py::arg("f_max"),
      py::arg("step"));

  py::class_<OverflightScenario>(m, "OverflightScenario")
      .def(py::init([](double orbit_height, double carrier_freq, double earth_radius,
                       double gravitational_parameter, double closest_approach_time) {
             return OverflightScenario{orbit_height, carrier_freq, earth_radius,
                                       gravitational_parameter, closest_approach_time};
           }),
           py::arg("orbit_height") = 550e3, py::arg("carrier_freq") = 11.7e9,
           py::arg("earth_radius") = kEarthRadius, py::arg("gravitational_parameter") = kEarthMu,
           py::arg("closest_approach_time") = 0.0)
      .def_readwrite("orbit_height", &OverflightScenario::orbit_height)
      .def_readwrite("carrier_freq", &OverflightScenario::carrier_freq)
      .def_readwrite("earth_radius", &OverflightScenario::earth_radius)
      .def_readwrite("closest_approach_time", &OverflightScenario::closest_approach_time)
      .def_property_readonly("orbital_speed", &OverflightScenario::orbital_speed)
      .def_property_readonly("orbital_period", &OverflightScenario::orbital_period);

  py::class_<ReceiverPosition>(m, "ReceiverPosition")
      .def(py::init([](double along_track, double cross_track, double altitude) {
             return ReceiverPosition{along_track, cross_track, altitude};
           }),
           py::arg("along_track") = 0.0, py::arg("cross_track") = 0.0, py::arg("altitude") = 0.0)
      .def_readwrite("along_track", &ReceiverPosition::along_track)
      .def_readwrite("cross_track", &ReceiverPosition::cross_track)
      .def_readwrite("altitude", &ReceiverPosition::altitude);

  m.def("satellite_state",
        [](const OverflightScenario& scn, double t) {
          const SatelliteState st = satellite_state(scn, t);
          return py::make_tuple(st.position, st.velocity);
        },
        py::arg("scenario"), py::arg("t"));
  m.def("received_frequency", &received_frequency, py::arg("scenario"), py::arg("receiver"),
        py::arg("t"));
  m.def("doppler_shift", &doppler_shift, py::arg("scenario"), py::arg("receiver"), py::arg("t"));
  m.def("range_rate", &range_rate, py::arg("scenario"), py::arg("receiver"), py::arg("t"));

  m.def(
      "doppler_curve",
      [](const OverflightScenario& scn, const std::vector<double>& cross_tracks,
         const std::vector<double>& times) {
        const auto curve = doppler_curve(scn, cross_tracks, times);
        py::array_t<double> out({static_cast<py::ssize_t>(curve.size()), py::ssize_t{3}});
        auto* p = static_cast<double*>(out.request().ptr);
        for (std::size_t i = 0; i < curve.size(); ++i) {
          p[3 * i] = curve[i].cross_track;
          p[3 * i + 1] = curve[i].time;
          p[3 * i + 2] = curve[i].frequency;
        }
        return out;
      },
      py::arg("scenario"), py::arg("cross_tracks"), py::arg("times"));

  m.def("db_to_linear", &db_to_linear);
  m.def("linear_to_db", &linear_to_db);
  m.def("flux_from_db_w_m2_mhz", &flux_from_db_w_m2_mhz);

  py::class_<LinkBudget>(m, "LinkBudget")
      .def(py::init([](double flux_density, double carrier_wavelength, double rx_gain,
                       double noise_temperature) {
             LinkBudget lb;
             lb.flux_density = flux_density;
             lb.carrier_wavelength = carrier_wavelength;
             lb.rx_gain = rx_gain;
             lb.noise_temperature = noise_temperature;
             return lb;
           }),
           py::arg("flux_density") = flux_from_db_w_m2_mhz(-122.0),
           py::arg("carrier_wavelength") = kSpeedOfLight / 11.7e9,
           py::arg("rx_gain") = db_to_linear(8.0), py::arg("noise_temperature") = 290.0)
      .def_readwrite("flux_density", &LinkBudget::flux_density)
      .def_readwrite("carrier_wavelength", &LinkBudget::carrier_wavelength)
      .def_readwrite("rx_gain", &LinkBudget::rx_gain)
      .def_readwrite("noise_temperature", &LinkBudget::noise_temperature);

  m.def("snr_at_receiver", &snr_at_receiver, py::arg("link_budget"));
  m.def("mcrb_frequency", &mcrb_frequency, py::arg("symbol_duration"),
        py::arg("observed_symbols"), py::arg("snr_linear"));

  m.def(
      "measurement_times",
      [](double tracking_span, double frame_period) {
        return MeasurementSchedule::regular(tracking_span, frame_period).times;
      },
      py::arg("tracking_span"), py::arg("frame_period") = 1.0 / 750.0);

  m.def(
      "jacobian",
      [](const OverflightScenario& scn, const ReceiverPosition& rx,
         const std::vector<double>& times, double step_rad) {
        MeasurementSchedule sched;
        sched.times = times;
        const Jacobian h = jacobian(scn, rx, sched, step_rad);
        py::array_t<double> out({static_cast<py::ssize_t>(h.size()), py::ssize_t{2}});
        auto* p = static_cast<double*>(out.request().ptr);
        for (std::size_t i = 0; i < h.size(); ++i) {
          p[2 * i] = h.rows[i][0];
          p[2 * i + 1] = h.rows[i][1];
        }
        return out;
      },
      py::arg("scenario"), py::arg("receiver"), py::arg("times"), py::arg("step_rad") = 1e-7);

  m.def(
      "positioning_crb",
      [](double sigma2, const py::array_t<double>& h_arr) {
        const auto buf = h_arr.request();
        if (buf.ndim != 2 || buf.shape[1] != 2) throw std::invalid_argument("H must be N x 2");
        Jacobian h;
        const auto* p = static_cast<const double*>(buf.ptr);
        for (py::ssize_t i = 0; i < buf.shape[0]; ++i) {
          h.rows.push_back({p[2 * i], p[2 * i + 1]});
        }
        return positioning_crb(sigma2, h);
      },
      py::arg("sigma2"), py::arg("jacobian"));

  m.def(
      "accuracy_map",
      [](const OverflightScenario& scn, const LinkBudget& lb,
         const std::vector<std::pair<double, double>>& cases, const std::vector<double>& distances,
         double symbol_duration, double observed_symbols, double frame_period) {
        std::vector<MapCase> mc;
        for (const auto& [gain, span] : cases) mc.push_back({gain, span});
        const AccuracyMap map = accuracy_map(scn, lb, mc, distances, symbol_duration,
                                             observed_symbols, frame_period);
        py::array_t<double> out({static_cast<py::ssize_t>(map.cells.size()), py::ssize_t{5}});
        auto* p = static_cast<double*>(out.request().ptr);
        for (std::size_t i = 0; i < map.cells.size(); ++i) {
          const AccuracyCell& c = map.cells[i];
          p[5 * i] = c.cross_track_distance;
          p[5 * i + 1] = c.rx_gain_db;
          p[5 * i + 2] = c.tracking_span;
          p[5 * i + 3] = c.sigma_freq;
          p[5 * i + 4] = c.bound;
        }
        return out;
      },
      py::arg("scenario"), py::arg("link_budget"), py::arg("cases"), py::arg("distances"),
      py::arg("symbol_duration") = 4.17e-9, py::arg("observed_symbols") = 8.0 * 127.0,
      py::arg("frame_period") = 1.0 / 750.0,
      "Rows of (cross_track_m, rx_gain_db, tracking_span_s, sigma_freq_hz, bound_m); cases are "
      "(rx_gain_linear, tracking_span_s) pairs");

  m.def("read_iq", &read_iq, py::arg("path"));
  m.def(
      "write_iq",
      [](const IqSignal& sig, const std::filesystem::path& path, const std::string& format,
         double center_frequency_hz, const std::string& description) {
        write_iq(sig, path, sample_format_from_string(format), center_frequency_hz, description);
      },
      py::arg("signal"), py::arg("path"), py::arg("format") = "cf32le",
      py::arg("center_frequency_hz") = 0.0, py::arg("description") = "");

  auto uplink = m.def_submodule("uplink_profile", "Structural constants of the uplink signal");
  uplink.attr("subseq_len") = UplinkProfile::subseq_len;
  uplink.attr("prefix_len") = UplinkProfile::prefix_len;
  uplink.attr("sample_rate") = UplinkProfile::sample_rate;
  uplink.attr("subchannel_bandwidth") = UplinkProfile::subchannel_bandwidth;
  uplink.attr("burst_duration_step") = UplinkProfile::burst_duration_step;
  uplink.attr("bri_set") =
      std::vector<double>(UplinkProfile::bri_set.begin(), UplinkProfile::bri_set.end());
  uplink.attr("total_len") = UplinkProfile::total_len;

  auto downlink = m.def_submodule("downlink_profile", "Structural constants of the downlink signal");
  downlink.attr("subseq_duration") = DownlinkProfile::subseq_duration;
  downlink.attr("symbols_per_subseq") = DownlinkProfile::symbols_per_subseq;
  downlink.attr("prefix_fraction") = DownlinkProfile::prefix_fraction;
  downlink.attr("bandwidth") = DownlinkProfile::bandwidth;
  downlink.attr("frame_period") = DownlinkProfile::frame_period;
  downlink.attr("symbol_duration") = DownlinkProfile::symbol_duration;
  downlink.attr("observed_symbols") = DownlinkProfile::observed_symbols;

  m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;
  m.attr("EARTH_RADIUS") = kEarthRadius;
  m.attr("EARTH_MU") = kEarthMu;
  m.attr("BOLTZMANN") = kBoltzmann;
}
