#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "starburst/sync.hpp"
#include "starburst/synth.hpp"

using namespace starburst;

TEST_CASE("uplink-sized sequence renders to the expected length") {
  const auto sync = build_sync_sequence(random_qpsk(1200, 1), 220.0 / 1200.0, kDefaultSignPattern,
                                        UplinkProfile::sample_rate);
  CHECK(sync.prefix_len == 220);
  CHECK(sync.total_len() == 9820);
  CHECK(sync.render().size() == 9820);
  CHECK(sync.prefix_fraction() == doctest::Approx(220.0 / 1200.0));
}

TEST_CASE("unit subsequence with no prefix renders to eight ones") {
  const std::array<int, 8> all_plus = {1, 1, 1, 1, 1, 1, 1, 1};
  const auto sync = build_sync_sequence({cplx{1.0, 0.0}}, 0.0, all_plus, 1.0);
  const auto rendered = sync.render();
  REQUIRE(rendered.size() == 8);
  for (const cplx& v : rendered) CHECK(v == cplx{1.0, 0.0});
}

TEST_CASE("1/32 prefix on a 32-divisible subsequence") {
  const std::size_t len = 127 * 32;
  const auto sync = build_sync_sequence(random_qpsk(len, 3), 1.0 / 32.0, kDefaultSignPattern, 240e6);
  CHECK(sync.prefix_len == len / 32);
  CHECK(sync.total_len() == 8 * len + len / 32);
}

TEST_CASE("prefix is cyclic: it repeats the tail of the first repetition") {
  const auto sync = build_sync_sequence(random_qpsk(1200, 5), 220.0 / 1200.0);
  const auto rendered = sync.render();
  for (std::size_t i = 0; i < sync.prefix_len; ++i) {
    CHECK(rendered[i] == rendered[i + sync.subseq_len()]);
  }
}

TEST_CASE("default sign pattern flips only the first repetition") {
  const auto sync = build_sync_sequence(random_qpsk(64, 9), 0.25);
  const auto rendered = sync.render();
  const std::size_t base = sync.prefix_len;
  for (std::size_t k = 1; k < 8; ++k) {
    for (std::size_t m = 0; m < 64; ++m) {
      CHECK(rendered[base + k * 64 + m] == -rendered[base + m]);
    }
  }
}

TEST_CASE("rejects invalid construction") {
  CHECK_THROWS_AS(build_sync_sequence({}, 0.0), std::invalid_argument);
  // 0.1 * 127 samples is not an integer prefix
  CHECK_THROWS_AS(build_sync_sequence(random_qpsk(127, 1), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_sync_sequence(random_qpsk(8, 1), 2.0), std::invalid_argument);
  std::array<int, 8> bad = {1, 1, 0, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(build_sync_sequence(random_qpsk(8, 1), 0.0, bad), std::invalid_argument);
  CHECK_THROWS_AS(build_sync_sequence(random_qpsk(8, 1), 0.0, kDefaultSignPattern, 0.0),
                  std::invalid_argument);
}

TEST_CASE("profile constants are consistent") {
  CHECK(UplinkProfile::prefix_len * 1.0 / UplinkProfile::subseq_len ==
        doctest::Approx(220.0 / 1200.0));
  CHECK(UplinkProfile::total_len == 9820);
  for (double bri : UplinkProfile::bri_set) CHECK(bri > 0.0);
  CHECK(DownlinkProfile::observed_symbols == 1016);
  CHECK(DownlinkProfile::frame_period == doctest::Approx(1.0 / 750.0));
}
