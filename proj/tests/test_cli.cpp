// Exercises the installed command-line surface end to end. The binary path
// arrives through the STARBURST_CLI environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "starburst/io.hpp"

using namespace starburst;
namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* p = std::getenv("STARBURST_CLI");
  REQUIRE_MESSAGE(p != nullptr, "STARBURST_CLI must point at the binary");
  return p;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("starburst-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run(const std::string& args, const fs::path& stdout_to = {}) {
  std::string cmd = cli() + " " + args;
  if (!stdout_to.empty()) cmd += " > " + stdout_to.string() + " 2>/dev/null";
  else cmd += " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("synth-detect-estimate pipeline recovers the truth") {
  TempDir tmp;
  const fs::path iq = tmp.path / "train.iq";
  const fs::path rep = tmp.path / "rep.iq";
  const fs::path truth = tmp.path / "truth.csv";
  const fs::path events = tmp.path / "events.csv";
  const fs::path freqs = tmp.path / "freqs.csv";

  REQUIRE(run("synth --out " + iq.string() + " --rep-out " + rep.string() + " --truth-out " +
              truth.string() +
              " --bursts 3 --seed 5 --snr-db -5 --freq-offsets 40000 -120000 250000 "
              "--guard 30000 --data-len 4000") == 0);
  REQUIRE(run("detect --in " + iq.string() + " --rep " + rep.string() + " --out " +
              events.string() + " --threshold 0.2") == 0);

  const Table tt = read_csv(truth);
  const Table ev = read_csv(events);
  REQUIRE(ev.rows.size() == tt.rows.size());
  for (std::size_t i = 0; i < ev.rows.size(); ++i) {
    CHECK(ev.rows[i][0] == tt.rows[i][0]);  // sample_index
    CHECK(ev.rows[i][1] > 0.2);             // statistic
  }

  REQUIRE(run("estimate --in " + iq.string() + " --rep " + rep.string() + " --events " +
              events.string() + " --out " + freqs.string()) == 0);
  const Table fr = read_csv(freqs);
  REQUIRE(fr.rows.size() == tt.rows.size());
  REQUIRE(fr.columns ==
          std::vector<std::string>{"sample_index", "coarse_hz", "fine_hz", "ambiguity_index"});
  for (std::size_t i = 0; i < fr.rows.size(); ++i) {
    CHECK(std::abs(fr.rows[i][2] - tt.rows[i][1]) < 5e3);  // fine vs truth, ~5 sigma at -5 dB
  }
}

TEST_CASE("every subcommand is byte-deterministic under a fixed seed") {
  TempDir tmp;
  const auto once = [&](const std::string& tag) {
    const fs::path dir = tmp.path / tag;
    fs::create_directories(dir);
    const std::string iq = (dir / "t.iq").string();
    const std::string rep = (dir / "r.iq").string();
    REQUIRE(run("synth --out " + iq + " --rep-out " + rep + " --truth-out " +
                (dir / "truth.csv").string() +
                " --bursts 2 --seed 9 --snr-db -5 --freq-offset-random 100000 --guard 5000 "
                "--data-len 2000") == 0);
    REQUIRE(run("detect --in " + iq + " --rep " + rep + " --out " + (dir / "ev.csv").string() +
                " --threshold 0.2") == 0);
    REQUIRE(run("estimate --in " + iq + " --rep " + rep + " --events " +
                (dir / "ev.csv").string() + " --out " + (dir / "fr.csv").string()) == 0);
    REQUIRE(run("doppler --out " + (dir / "dop.csv").string() +
                " --cross-track-km 0 250 700 --t-step 10") == 0);
    REQUIRE(run("crb --out " + (dir / "crb.csv").string() +
                " --gains-db 8 --spans-s 30 --dist-min-km 100 --dist-max-km 600 "
                "--dist-count 6") == 0);
    REQUIRE(run("snr", dir / "snr.txt") == 0);
  };
  once("a");
  once("b");
  for (const char* name : {"t.iq", "t.iq.json", "r.iq", "truth.csv", "ev.csv", "fr.csv",
                           "dop.csv", "crb.csv", "snr.txt"}) {
    CAPTURE(name);
    CHECK(slurp(tmp.path / "a" / name) == slurp(tmp.path / "b" / name));
  }
}

TEST_CASE("malformed requests fail without writing results") {
  TempDir tmp;
  const fs::path iq = tmp.path / "t.iq";
  const fs::path rep = tmp.path / "r.iq";
  REQUIRE(run("synth --out " + iq.string() + " --rep-out " + rep.string() +
              " --bursts 1 --guard 2000") == 0);

  SUBCASE("threshold outside (0,1)") {
    const fs::path out = tmp.path / "ev.csv";
    CHECK(run("detect --in " + iq.string() + " --rep " + rep.string() + " --out " + out.string() +
              " --threshold 1.1") != 0);
    CHECK(!fs::exists(out));
  }
  SUBCASE("unknown flag") {
    CHECK(run("detect --in " + iq.string() + " --rep " + rep.string() +
              " --out x.csv --no-such-flag 1") != 0);
  }
  SUBCASE("missing subcommand") { CHECK(run("") != 0); }
}

TEST_CASE("high threshold yields a header-only estimate chain") {
  TempDir tmp;
  const std::string iq = (tmp.path / "t.iq").string();
  const std::string rep = (tmp.path / "r.iq").string();
  REQUIRE(run("synth --out " + iq + " --rep-out " + rep + " --bursts 1 --snr-db -25 --guard 3000 "
              "--seed 2") == 0);
  REQUIRE(run("detect --in " + iq + " --rep " + rep + " --out " + (tmp.path / "ev.csv").string() +
              " --threshold 0.9") == 0);
  const Table ev = read_csv(tmp.path / "ev.csv");
  CHECK(ev.rows.empty());
  REQUIRE(run("estimate --in " + iq + " --rep " + rep + " --events " +
              (tmp.path / "ev.csv").string() + " --out " + (tmp.path / "fr.csv").string()) == 0);
  const Table fr = read_csv(tmp.path / "fr.csv");
  CHECK(fr.rows.empty());
  CHECK(fr.columns.size() == 4);
}
