// Command-line front end: every pipeline stage is one subcommand emitting an
// IQ file or a CSV table.

#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starburst/bounds.hpp"
#include "starburst/detector.hpp"
#include "starburst/freq_estimate.hpp"
#include "starburst/io.hpp"
#include "starburst/orbit.hpp"
#include "starburst/synth.hpp"

namespace {

using namespace starburst;

std::array<int, 8> parse_sign_pattern(const std::string& s) {
  if (s.size() != 8) throw CLI::ValidationError("sign pattern must have exactly 8 entries of + or -");
  std::array<int, 8> out{};
  for (std::size_t i = 0; i < 8; ++i) {
    if (s[i] == '+') out[i] = 1;
    else if (s[i] == '-') out[i] = -1;
    else throw CLI::ValidationError("sign pattern entries must be + or -");
  }
  return out;
}

SyncSequence load_representative(const std::string& path, std::size_t prefix_len,
                                 const std::string& sign_pattern) {
  const IqSignal subseq = read_iq(path);
  SyncSequence sync = build_sync_sequence_prefix_len(subseq.samples, prefix_len,
                                                     parse_sign_pattern(sign_pattern),
                                                     subseq.sample_rate);
  sync.id = std::filesystem::path(path).stem().string();
  return sync;
}

struct SynthArgs {
  std::string out;
  std::string rep_out;
  std::string truth_out;
  std::string format = "cf32le";
  std::size_t bursts = 5;
  double bri_ms = 6.67;
  std::size_t data_len = 10052;
  std::size_t guard = 20000;
  std::vector<double> freq_offsets;
  double freq_offset_random = 0.0;  // uniform +- this, per burst, when nonzero
  double snr_db = 1e9;              // effectively noiseless by default
  std::size_t subseq_len = UplinkProfile::subseq_len;
  std::size_t prefix_len = UplinkProfile::prefix_len;
  double sample_rate = UplinkProfile::sample_rate;
  std::string sign_pattern = "-+++++++";
  std::uint64_t seed = 1;
  std::uint64_t sync_seed = 7;
};

int run_synth(const SynthArgs& a) {
  SyncSequence sync = build_sync_sequence_prefix_len(random_qpsk(a.subseq_len, a.sync_seed),
                                                     a.prefix_len, parse_sign_pattern(a.sign_pattern),
                                                     a.sample_rate);
  sync.id = "synthetic";

  TrainSpec spec;
  spec.sync = sync;
  spec.count = a.bursts;
  spec.burst_interval = a.bri_ms * 1e-3;
  spec.data_len = a.data_len;
  spec.guard_before = a.guard;
  spec.guard_after = a.guard;
  if (!a.freq_offsets.empty()) {
    spec.freq_offsets = a.freq_offsets;
  } else if (a.freq_offset_random > 0.0) {
    Rng rng(a.seed ^ 0x9e3779b97f4a7c15ull);
    spec.freq_offsets.resize(a.bursts);
    for (double& f : spec.freq_offsets) f = rng.uniform(-a.freq_offset_random, a.freq_offset_random);
  }

  const double noise_variance = a.snr_db >= 1e9 ? 0.0 : db_to_linear(-a.snr_db);
  TrainTruth truth;
  const IqSignal sig = synthesize_train(spec, noise_variance, a.seed, &truth);
  write_iq(sig, a.out, sample_format_from_string(a.format), 0.0, "synthetic burst train");

  if (!a.rep_out.empty()) {
    IqSignal rep;
    rep.sample_rate = a.sample_rate;
    rep.samples = sync.subsequence;
    write_iq(rep, a.rep_out, SampleFormat::cf32le, 0.0, "sync subsequence");
  }
  if (!a.truth_out.empty()) {
    Table t;
    t.columns = {"sample_index", "freq_offset_hz"};
    for (std::size_t i = 0; i < truth.offsets.size(); ++i) {
      t.rows.push_back({static_cast<double>(truth.offsets[i]), truth.freq_offsets[i]});
    }
    write_csv(t, a.truth_out);
  }
  std::cout << "wrote " << sig.size() << " samples to " << a.out << "\n";
  return 0;
}

struct DetectArgs {
  std::string in;
  std::string rep;
  std::string out;
  std::size_t prefix_len = UplinkProfile::prefix_len;
  std::string sign_pattern = "-+++++++";
  double threshold = 0.35;
  double window_s = 1e-3;
};

int run_detect(const DetectArgs& a) {
  const SyncSequence sync = load_representative(a.rep, a.prefix_len, a.sign_pattern);
  const IqSignal sig = read_iq(a.in);
  const auto window = static_cast<std::int64_t>(std::llround(a.window_s * sig.sample_rate));
  const std::vector<DetectionEvent> events = detect(sig, sync, a.threshold, window);

  Table t;
  t.columns = {"sample_index", "statistic"};
  for (int k = 0; k < 8; ++k) {
    t.columns.push_back("partial" + std::to_string(k) + "_re");
    t.columns.push_back("partial" + std::to_string(k) + "_im");
  }
  t.columns.push_back("low_confidence");
  for (const DetectionEvent& ev : events) {
    std::vector<double> row{static_cast<double>(ev.sample_index), ev.statistic};
    for (const cplx& p : ev.partials) {
      row.push_back(p.real());
      row.push_back(p.imag());
    }
    row.push_back(ev.low_confidence ? 1.0 : 0.0);
    t.rows.push_back(std::move(row));
  }
  write_csv(t, a.out);
  std::cout << "detected " << events.size() << " bursts\n";
  return 0;
}

struct EstimateArgs {
  std::string in;
  std::string rep;
  std::string events;
  std::string out;
  std::size_t prefix_len = UplinkProfile::prefix_len;
  std::string sign_pattern = "-+++++++";
  double grid_min = -600e3;
  double grid_max = 600e3;
  double grid_step = 0.0;  // 0: derived from the sequence length
};

int run_estimate(const EstimateArgs& a) {
  const SyncSequence sync = load_representative(a.rep, a.prefix_len, a.sign_pattern);
  const IqSignal sig = read_iq(a.in);

  const Table in_events = read_csv(a.events);
  std::vector<DetectionEvent> events;
  {
    // Columns as written by `detect`.
    const auto col = [&](const std::string& name) {
      for (std::size_t i = 0; i < in_events.columns.size(); ++i) {
        if (in_events.columns[i] == name) return i;
      }
      throw std::runtime_error("events CSV misses column " + name);
    };
    const std::size_t idx = col("sample_index");
    const std::size_t stat = col("statistic");
    std::array<std::pair<std::size_t, std::size_t>, 8> pcols{};
    for (int k = 0; k < 8; ++k) {
      pcols[k] = {col("partial" + std::to_string(k) + "_re"),
                  col("partial" + std::to_string(k) + "_im")};
    }
    for (const auto& row : in_events.rows) {
      DetectionEvent ev;
      ev.sample_index = static_cast<std::int64_t>(row[idx]);
      ev.statistic = row[stat];
      for (int k = 0; k < 8; ++k) ev.partials[k] = cplx{row[pcols[k].first], row[pcols[k].second]};
      events.push_back(std::move(ev));
    }
  }

  FrequencyGrid grid;
  grid.f_min = a.grid_min;
  grid.f_max = a.grid_max;
  grid.step = a.grid_step > 0.0
                  ? a.grid_step
                  : sync.sample_rate / (4.0 * static_cast<double>(sync.total_len()));
  const EstimateBatch batch = estimate_all(sig, sync, events, grid);

  Table t;
  t.columns = {"sample_index", "coarse_hz", "fine_hz", "ambiguity_index"};
  for (const FrequencyEstimate& est : batch.estimates) {
    t.rows.push_back({static_cast<double>(est.sample_index), est.coarse_hz, est.fine_hz,
                      static_cast<double>(est.ambiguity_index)});
  }
  write_csv(t, a.out);
  for (const auto& [i, msg] : batch.errors) {
    std::cerr << "event " << i << ": " << msg << "\n";
  }
  std::cout << "estimated " << batch.estimates.size() << " of " << events.size() << " events\n";
  return batch.errors.empty() ? 0 : 1;
}

struct DopplerArgs {
  std::string out;
  double height_km = 550.0;
  double carrier_ghz = 11.7;
  std::vector<double> cross_track_km{0.0, 200.0, 400.0, 800.0};
  double t_start = -300.0;
  double t_end = 300.0;
  double t_step = 1.0;
};

int run_doppler(const DopplerArgs& a) {
  OverflightScenario scn;
  scn.orbit_height = a.height_km * 1e3;
  scn.carrier_freq = a.carrier_ghz * 1e9;

  std::vector<double> xcs;
  for (double km : a.cross_track_km) xcs.push_back(km * 1e3);
  std::vector<double> times;
  for (double t = a.t_start; t <= a.t_end + 1e-12; t += a.t_step) times.push_back(t);

  const std::vector<DopplerSample> curve = doppler_curve(scn, xcs, times);
  Table t;
  t.columns = {"cross_track_m", "time_s", "received_frequency_hz"};
  for (const DopplerSample& s : curve) t.rows.push_back({s.cross_track, s.time, s.frequency});
  write_csv(t, a.out);
  std::cout << "wrote " << curve.size() << " doppler samples\n";
  return 0;
}

struct CrbArgs {
  std::string out;
  double height_km = 550.0;
  double carrier_ghz = 11.7;
  double flux_db = -122.0;  // dB(W/m^2/MHz)
  double noise_temp = 290.0;
  std::vector<double> gains_db{8.0};
  std::vector<double> spans_s{240.0};
  double dist_min_km = 2.0;
  double dist_max_km = 1000.0;
  std::size_t dist_count = 100;
  double symbol_duration = DownlinkProfile::symbol_duration;
  double observed_symbols = DownlinkProfile::observed_symbols;
};

int run_crb(const CrbArgs& a) {
  OverflightScenario scn;
  scn.orbit_height = a.height_km * 1e3;
  scn.carrier_freq = a.carrier_ghz * 1e9;

  LinkBudget lb;
  lb.flux_density = flux_from_db_w_m2_mhz(a.flux_db);
  lb.carrier_wavelength = kSpeedOfLight / scn.carrier_freq;
  lb.noise_temperature = a.noise_temp;

  std::vector<MapCase> cases;
  for (double g : a.gains_db) {
    for (double span : a.spans_s) cases.push_back({db_to_linear(g), span});
  }
  std::vector<double> distances(a.dist_count);
  const double ratio = std::pow(a.dist_max_km / a.dist_min_km,
                                1.0 / static_cast<double>(a.dist_count - 1));
  double d = a.dist_min_km;
  for (std::size_t i = 0; i < a.dist_count; ++i, d *= ratio) distances[i] = d * 1e3;

  const AccuracyMap map = accuracy_map(scn, lb, cases, distances, a.symbol_duration,
                                       a.observed_symbols, DownlinkProfile::frame_period);
  Table t;
  t.columns = {"cross_track_m", "rx_gain_db", "tracking_span_s", "sigma_freq_hz", "bound_m"};
  for (const AccuracyCell& c : map.cells) {
    t.rows.push_back({c.cross_track_distance, c.rx_gain_db, c.tracking_span, c.sigma_freq, c.bound});
  }
  write_csv(t, a.out);
  std::cout << "wrote " << map.cells.size() << " accuracy cells\n";
  return 0;
}

struct SnrArgs {
  double flux_db = -122.0;
  double carrier_ghz = 11.7;
  double gain_db = 8.0;
  double noise_temp = 290.0;
  double symbol_duration = DownlinkProfile::symbol_duration;
  double observed_symbols = DownlinkProfile::observed_symbols;
};

int run_snr(const SnrArgs& a) {
  LinkBudget lb;
  lb.flux_density = flux_from_db_w_m2_mhz(a.flux_db);
  lb.carrier_wavelength = kSpeedOfLight / (a.carrier_ghz * 1e9);
  lb.rx_gain = db_to_linear(a.gain_db);
  lb.noise_temperature = a.noise_temp;
  const double snr = snr_at_receiver(lb);
  const double sigma = std::sqrt(mcrb_frequency(a.symbol_duration, a.observed_symbols, snr));
  std::cout << "snr_db=" << format_double(linear_to_db(snr)) << " snr_linear=" << format_double(snr)
            << " sigma_freq_hz=" << format_double(sigma) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Burst detection, carrier estimation, and Doppler positioning bounds for LEO comm signals"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* cs = app.add_subcommand("synth", "Synthesize a burst train IQ file");
  cs->add_option("--out", synth.out, "Output IQ path")->required();
  cs->add_option("--rep-out", synth.rep_out, "Also write the sync subsequence IQ here");
  cs->add_option("--truth-out", synth.truth_out, "Also write true offsets/frequencies CSV here");
  cs->add_option("--format", synth.format, "cf32le or ci16le");
  cs->add_option("--bursts", synth.bursts, "Number of bursts");
  cs->add_option("--bri-ms", synth.bri_ms, "Burst repetition interval, ms");
  cs->add_option("--data-len", synth.data_len, "Data samples after each sync sequence");
  cs->add_option("--guard", synth.guard, "Noise-only samples before and after the train");
  cs->add_option("--freq-offsets", synth.freq_offsets, "Per-burst carrier offsets, Hz (cycled)");
  cs->add_option("--freq-offset-random", synth.freq_offset_random,
                 "Draw per-burst offsets uniformly from +- this, Hz");
  cs->add_option("--snr-db", synth.snr_db, "Per-sample SNR for unit signal power, dB");
  cs->add_option("--subseq-len", synth.subseq_len, "Subsequence length, samples");
  cs->add_option("--prefix-len", synth.prefix_len, "Cyclic prefix length, samples");
  cs->add_option("--sample-rate", synth.sample_rate, "Sample rate, Hz");
  cs->add_option("--sign-pattern", synth.sign_pattern, "8 chars of + or -");
  cs->add_option("--seed", synth.seed, "Noise and data seed");
  cs->add_option("--sync-seed", synth.sync_seed, "Subsequence content seed");

  DetectArgs det;
  CLI::App* cd = app.add_subcommand("detect", "Detect bursts in an IQ file");
  cd->add_option("--in", det.in, "Input IQ path")->required();
  cd->add_option("--rep", det.rep, "Representative subsequence IQ path")->required();
  cd->add_option("--out", det.out, "Events CSV path")->required();
  cd->add_option("--prefix-len", det.prefix_len, "Cyclic prefix length, samples");
  cd->add_option("--sign-pattern", det.sign_pattern, "8 chars of + or -");
  cd->add_option("--threshold", det.threshold, "Detection threshold in (0,1)")
      ->check(CLI::Range(0.0, 1.0));
  cd->add_option("--window-s", det.window_s, "Window for the local-maximum rule, s")
      ->check(CLI::PositiveNumber);

  EstimateArgs est;
  CLI::App* ce = app.add_subcommand("estimate", "Estimate carrier offsets of detected bursts");
  ce->add_option("--in", est.in, "Input IQ path")->required();
  ce->add_option("--rep", est.rep, "Representative subsequence IQ path")->required();
  ce->add_option("--events", est.events, "Events CSV from detect")->required();
  ce->add_option("--out", est.out, "Frequencies CSV path")->required();
  ce->add_option("--prefix-len", est.prefix_len, "Cyclic prefix length, samples");
  ce->add_option("--sign-pattern", est.sign_pattern, "8 chars of + or -");
  ce->add_option("--grid-min", est.grid_min, "Coarse grid start, Hz");
  ce->add_option("--grid-max", est.grid_max, "Coarse grid end, Hz");
  ce->add_option("--grid-step", est.grid_step, "Coarse grid step, Hz (default fs/(4*Lc))");

  DopplerArgs dop;
  CLI::App* cdo = app.add_subcommand("doppler", "Received-frequency curves over a pass");
  cdo->add_option("--out", dop.out, "Curve CSV path")->required();
  cdo->add_option("--height-km", dop.height_km, "Orbit height, km");
  cdo->add_option("--carrier-ghz", dop.carrier_ghz, "Carrier frequency, GHz");
  cdo->add_option("--cross-track-km", dop.cross_track_km, "Cross-track offsets, km");
  cdo->add_option("--t-start", dop.t_start, "First time, s");
  cdo->add_option("--t-end", dop.t_end, "Last time, s");
  cdo->add_option("--t-step", dop.t_step, "Time step, s");

  CrbArgs crb;
  CLI::App* cc = app.add_subcommand("crb", "Positioning accuracy lower-bound map");
  cc->add_option("--out", crb.out, "Map CSV path")->required();
  cc->add_option("--height-km", crb.height_km, "Orbit height, km");
  cc->add_option("--carrier-ghz", crb.carrier_ghz, "Carrier frequency, GHz");
  cc->add_option("--flux-db", crb.flux_db, "Spectral flux density, dB(W/m^2/MHz)");
  cc->add_option("--noise-temp", crb.noise_temp, "Receiver noise temperature, K");
  cc->add_option("--gains-db", crb.gains_db, "Receiver gains, dB");
  cc->add_option("--spans-s", crb.spans_s, "Tracking spans, s");
  cc->add_option("--dist-min-km", crb.dist_min_km, "Smallest cross-track distance, km");
  cc->add_option("--dist-max-km", crb.dist_max_km, "Largest cross-track distance, km");
  cc->add_option("--dist-count", crb.dist_count, "Number of distances (geometric)");
  cc->add_option("--symbol-duration", crb.symbol_duration, "Symbol duration, s");
  cc->add_option("--observed-symbols", crb.observed_symbols, "Symbols per measurement");

  SnrArgs snr;
  CLI::App* csn = app.add_subcommand("snr", "Link-budget SNR and frequency-error floor");
  csn->add_option("--flux-db", snr.flux_db, "Spectral flux density, dB(W/m^2/MHz)");
  csn->add_option("--carrier-ghz", snr.carrier_ghz, "Carrier frequency, GHz");
  csn->add_option("--gain-db", snr.gain_db, "Receiver gain, dB");
  csn->add_option("--noise-temp", snr.noise_temp, "Receiver noise temperature, K");
  csn->add_option("--symbol-duration", snr.symbol_duration, "Symbol duration, s");
  csn->add_option("--observed-symbols", snr.observed_symbols, "Symbols per measurement");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cs->parsed()) return run_synth(synth);
    if (cd->parsed()) return run_detect(det);
    if (ce->parsed()) return run_estimate(est);
    if (cdo->parsed()) return run_doppler(dop);
    if (cc->parsed()) return run_crb(crb);
    if (csn->parsed()) return run_snr(snr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
