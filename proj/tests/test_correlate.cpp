#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "starburst/correlate.hpp"
#include "starburst/synth.hpp"

using namespace starburst;

namespace {

IqSignal make_signal(std::vector<cplx> samples, double fs = 1e6) {
  IqSignal sig;
  sig.sample_rate = fs;
  sig.samples = std::move(samples);
  return sig;
}

}  // namespace

TEST_CASE("embedded copy correlates to exactly one at its offset") {
  const std::vector<cplx> y = random_qpsk(256, 21);
  std::vector<cplx> long_sig(2048, cplx{0.0, 0.0});
  const std::size_t offset = 700;
  for (std::size_t i = 0; i < y.size(); ++i) long_sig[offset + i] = y[i];

  const CorrelationSeries r = xcorr_normalized(make_signal(long_sig), make_signal(y));
  CHECK(r.peak_lag() == static_cast<std::int64_t>(offset));
  CHECK(std::abs(r.values[offset]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("carrier offset attenuates the aligned peak like the closed form") {
  const double fs = UplinkProfile::sample_rate;
  const std::size_t len = 4096;
  const std::vector<cplx> tpl = random_qpsk(len, 33);

  for (double cycles : {0.2, 0.5, 0.8}) {
    const double df = cycles / (static_cast<double>(len) / fs);
    std::vector<cplx> sig(3 * len, cplx{0.0, 0.0});
    const double w = 2.0 * std::numbers::pi * df / fs;
    for (std::size_t i = 0; i < len; ++i) {
      sig[len + i] = tpl[i] * std::polar(1.0, w * static_cast<double>(i));
    }
    const CorrelationSeries r = xcorr_normalized(make_signal(sig, fs), make_signal(tpl, fs));
    const double expected = oracles::dirichlet_peak(len, df, 1.0 / fs);
    CHECK(std::abs(r.values[len]) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("transform-based correlation matches the direct sum to 1e-9 relative") {
  Rng rng(4711);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 200 + static_cast<std::size_t>(rng.uniform() * 3800.0);
    const std::size_t l = 8 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n / 4));
    std::vector<cplx> y1(n), y2(l);
    for (cplx& v : y1) v = rng.gaussian();
    for (cplx& v : y2) v = rng.gaussian();

    const CorrelationSeries fast = xcorr_normalized(make_signal(y1), make_signal(y2));
    const std::vector<cplx> direct = oracles::xcorr_direct_normalized(y1, y2);
    REQUIRE(fast.values.size() == direct.size());

    double scale = 0.0;
    for (const cplx& v : direct) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i) {
      worst = std::max(worst, std::abs(fast.values[i] - direct[i]));
    }
    CHECK(worst / scale < 1e-9);
  }
}

TEST_CASE("normalized values never exceed one") {
  Rng rng(99);
  std::vector<cplx> y1(5000), y2(300);
  for (cplx& v : y1) v = rng.gaussian();
  for (cplx& v : y2) v = rng.gaussian();
  // Embed a strong copy so the peak is genuine.
  for (std::size_t i = 0; i < y2.size(); ++i) y1[1000 + i] += 5.0 * y2[i];

  const CorrelationSeries r = xcorr_normalized(make_signal(y1), make_signal(y2));
  CHECK(r.normalized);
  for (const cplx& v : r.values) CHECK(std::abs(v) <= 1.0 + 1e-9);
}

TEST_CASE("invalid inputs are rejected") {
  const std::vector<cplx> a = random_qpsk(64, 1);
  const std::vector<cplx> b = random_qpsk(128, 2);
  CHECK_THROWS_AS(xcorr_normalized(make_signal(a), make_signal(b)), std::invalid_argument);
  CHECK_THROWS_AS(xcorr_normalized(make_signal(a), make_signal(a)), std::invalid_argument);
  CHECK_THROWS_AS(xcorr_normalized(make_signal(b), make_signal({})), std::invalid_argument);
  CHECK_THROWS_AS(
      xcorr_normalized(make_signal(b), make_signal(std::vector<cplx>(16, cplx{0.0, 0.0}))),
      std::invalid_argument);
  CHECK_THROWS_AS(xcorr_normalized(make_signal(b, 1e6), make_signal(a, 2e6)),
                  std::invalid_argument);
}

TEST_CASE("all-zero signal yields an all-zero series") {
  const std::vector<cplx> tpl = random_qpsk(32, 3);
  const CorrelationSeries r =
      xcorr_normalized(make_signal(std::vector<cplx>(256, cplx{0.0, 0.0})), make_signal(tpl));
  CHECK(r.norm_factor == 0.0);
  for (const cplx& v : r.values) CHECK(std::abs(v) == 0.0);
}
