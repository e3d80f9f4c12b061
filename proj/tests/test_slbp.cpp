#include <doctest.h>

#include "eegsel/rng.hpp"
#include "eegsel/slbp.hpp"

#include "oracles.hpp"

using namespace eegsel;

TEST_CASE("slbp spot values") {
  SlbpConfig cfg;  // L = 4
  SUBCASE("constant signal codes 30 everywhere") {
    const std::vector<double> x(32, 5.0);
    for (std::size_t n = 4; n + 4 < x.size(); ++n) CHECK(slbp_code(x, n, cfg) == 30);
  }
  SUBCASE("strict local maximum codes 0") {
    std::vector<double> x = {1, 2, 3, 4, 9, 4, 3, 2, 1};
    CHECK(slbp_code(x, 4, cfg) == 0);
  }
  SUBCASE("hand-evaluated mixed neighborhood") {
    const std::vector<double> x = {5, 3, 8, 1, 9, 2, 7, 4, 6};
    CHECK(slbp_code(x, 4, cfg) == 0);  // all eight neighbors below x[4] = 9
    CHECK(slbp_code(x, 4, cfg) == oracle::slbp_code(x, 4, 4));
  }
  SUBCASE("strictly increasing signal codes 15") {
    std::vector<double> x(20);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
    for (std::size_t n = 4; n + 4 < x.size(); ++n) CHECK(slbp_code(x, n, cfg) == 15);
  }
  SUBCASE("out-of-range center errors") {
    const std::vector<double> x(16, 0.0);
    CHECK_THROWS_AS(slbp_code(x, 3, cfg), data_error);
    CHECK_THROWS_AS(slbp_code(x, 12, cfg), data_error);
  }
}

TEST_CASE("slbp histogram shapes and mass") {
  SlbpConfig cfg;
  SUBCASE("constant length-2048 signal: all mass in bin 30") {
    const std::vector<double> x(2048, 1.0);
    const SlbpHistogram h = slbp_histogram(x, cfg);
    REQUIRE(h.counts.size() == 31);
    CHECK(h.counts[30] == 2040);
    CHECK(h.n_coded == 2040);
    for (std::size_t b = 0; b < 30; ++b) CHECK(h.counts[b] == 0);
  }
  SUBCASE("monotone signal: all mass in bin 15") {
    std::vector<double> x(300);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.1 * static_cast<double>(i);
    const SlbpHistogram h = slbp_histogram(x, cfg);
    CHECK(h.counts[15] == x.size() - 8);
  }
  SUBCASE("mass always equals len - 2L") {
    Rng rng(1);
    for (const std::size_t n : {9u, 10u, 57u, 333u}) {
      std::vector<double> x(n);
      for (double& v : x) v = rng.normal();
      const SlbpHistogram h = slbp_histogram(x, cfg);
      std::uint64_t total = 0;
      for (const auto c : h.counts) total += c;
      CHECK(total == n - 8);
    }
  }
  SUBCASE("too short errors") {
    CHECK_THROWS_AS(slbp_histogram(std::vector<double>(8, 0.0), cfg), data_error);
  }
}

TEST_CASE("slbp equals the double-loop oracle on 1000 random signals") {
  SlbpConfig cfg;
  Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 9 + rng.bounded(120);
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    // keep ties in play: quantize a third of the signals
    if (trial % 3 == 0)
      for (double& v : x) v = std::round(v * 4.0) / 4.0;
    const SlbpHistogram h = slbp_histogram(x, cfg);
    CHECK(h.counts == oracle::slbp_histogram(x, 4));
  }
}

TEST_CASE("slbp scale and offset invariance") {
  SlbpConfig cfg;
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(64);
    for (double& v : x) v = rng.normal();
    std::vector<double> scaled(64), shifted(64);
    const double a = 0.001 + 10.0 * rng.uniform();
    const double b = rng.normal() * 50.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      scaled[i] = a * x[i];
      shifted[i] = x[i] + b;
    }
    const auto h0 = slbp_histogram(x, cfg);
    CHECK(slbp_histogram(scaled, cfg).counts == h0.counts);
    CHECK(slbp_histogram(shifted, cfg).counts == h0.counts);
  }
}

TEST_CASE("all emitted codes stay within [0, 2*(2^L - 1)]") {
  Rng rng(13);
  for (const int L : {1, 2, 4, 6}) {
    SlbpConfig cfg{L};
    std::vector<double> x(256);
    for (double& v : x) v = rng.normal();
    const SlbpHistogram h = slbp_histogram(x, cfg);
    CHECK(h.counts.size() == static_cast<std::size_t>(2 * ((1 << L) - 1) + 1));
    std::uint64_t total = 0;
    for (const auto c : h.counts) total += c;
    CHECK(total == x.size() - 2 * static_cast<std::size_t>(L));
  }
}
