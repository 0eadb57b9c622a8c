#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <clocale>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "starburst/io.hpp"
#include "starburst/synth.hpp"

using namespace starburst;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("starburst-io-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

IqSignal random_signal(std::size_t n, std::uint64_t seed) {
  IqSignal sig;
  sig.sample_rate = 562.5e6;
  sig.samples.resize(n);
  Rng rng(seed);
  for (cplx& v : sig.samples) v = 0.5 * rng.gaussian();
  return sig;
}

}  // namespace

TEST_CASE("cf32le round trip is exact at float precision") {
  TempDir tmp;
  const fs::path p = tmp.path / "a.iq";
  const IqSignal sig = random_signal(10000, 1);
  write_iq(sig, p, SampleFormat::cf32le, 14.0e9, "capture");

  const IqSignal back = read_iq(p);
  REQUIRE(back.size() == sig.size());
  CHECK(back.sample_rate == sig.sample_rate);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    CHECK(back.samples[i].real() == static_cast<double>(static_cast<float>(sig.samples[i].real())));
    CHECK(back.samples[i].imag() == static_cast<double>(static_cast<float>(sig.samples[i].imag())));
  }

  // A second pass through the format reproduces itself bit for bit.
  const fs::path p2 = tmp.path / "b.iq";
  write_iq(back, p2, SampleFormat::cf32le);
  const IqSignal again = read_iq(p2);
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(again.samples[i] == back.samples[i]);

  const IqFileHeader h = read_iq_header(p);
  CHECK(h.center_frequency_hz == 14.0e9);
  CHECK(h.num_samples == 10000);
  CHECK(h.sample_format == "cf32le");
  CHECK(h.description == "capture");
}

TEST_CASE("ci16le round trip stays within one quantization step") {
  TempDir tmp;
  const fs::path p = tmp.path / "q.iq";
  IqSignal sig;
  sig.sample_rate = 562.5e6;
  sig.samples.resize(5000);
  Rng rng(2);
  for (cplx& v : sig.samples) {
    v = cplx{rng.uniform(-0.999, 0.999), rng.uniform(-0.999, 0.999)};
  }
  write_iq(sig, p, SampleFormat::ci16le);
  const IqSignal back = read_iq(p);
  REQUIRE(back.size() == sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    CHECK(std::abs(back.samples[i].real() - sig.samples[i].real()) <= 1.0 / 32768.0);
    CHECK(std::abs(back.samples[i].imag() - sig.samples[i].imag()) <= 1.0 / 32768.0);
  }
}

TEST_CASE("empty signals are valid files") {
  TempDir tmp;
  const fs::path p = tmp.path / "empty.iq";
  IqSignal sig;
  sig.sample_rate = 1e6;
  write_iq(sig, p);
  const IqSignal back = read_iq(p);
  CHECK(back.size() == 0);
  CHECK(back.sample_rate == 1e6);
}

TEST_CASE("payload and sidecar inconsistencies are reported") {
  TempDir tmp;
  const fs::path p = tmp.path / "bad.iq";
  write_iq(random_signal(100, 3), p);

  SUBCASE("truncated payload") {
    fs::resize_file(p, 96);
    CHECK_THROWS_WITH_AS(read_iq(p), doctest::Contains("length mismatch"), std::runtime_error);
  }
  SUBCASE("unknown sample format") {
    std::ofstream side(p.string() + ".json", std::ios::trunc);
    side << R"({"sample_rate_hz": 1e6, "sample_format": "cs8", "num_samples": 100})";
    side.close();
    CHECK_THROWS_AS(read_iq(p), std::invalid_argument);
  }
  SUBCASE("missing sidecar") {
    fs::remove(p.string() + ".json");
    CHECK_THROWS_WITH_AS(read_iq(p), doctest::Contains("sidecar"), std::runtime_error);
  }
}

TEST_CASE("csv values survive a round trip unchanged") {
  TempDir tmp;
  const fs::path p = tmp.path / "t.csv";
  Table t;
  t.columns = {"a", "b", "c"};
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    t.rows.push_back({rng.uniform(-1e9, 1e9), rng.gaussian().real() * 1e-7,
                      static_cast<double>(i)});
  }
  t.rows.push_back({1.0 / 3.0, -0.1, 562500000.0});
  write_csv(t, p);

  const Table back = read_csv(p);
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < 3; ++c) CHECK(back.rows[r][c] == t.rows[r][c]);
  }
}

TEST_CASE("empty tables produce a header-only file") {
  TempDir tmp;
  const fs::path p = tmp.path / "h.csv";
  Table t;
  t.columns = {"x", "y"};
  write_csv(t, p);
  std::ifstream in(p);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "x,y");
  CHECK(!std::getline(in, line));
}

TEST_CASE("formatting ignores the global locale") {
  const char* previous = std::setlocale(LC_ALL, nullptr);
  const std::string saved = previous ? previous : "C";
  if (std::setlocale(LC_ALL, "de_DE.UTF-8") != nullptr) {
    CHECK(format_double(0.5).find(',') == std::string::npos);
    CHECK(format_double(0.5) == "0.5");
  }
  std::setlocale(LC_ALL, saved.c_str());
  CHECK(format_double(42.0) == "42");
}

TEST_CASE("17 significant digits round-trip doubles exactly") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}
