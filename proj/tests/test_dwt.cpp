#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eegsel/dwt.hpp"
#include "eegsel/rng.hpp"

#include "oracles.hpp"

using namespace eegsel;

namespace {

std::vector<double> random_signal(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  return x;
}

std::array<double, 8> dec_lo() {
  const auto& h = db4_scaling_filter();
  std::array<double, 8> d;
  for (int m = 0; m < 8; ++m) d[static_cast<std::size_t>(m)] = h[static_cast<std::size_t>(7 - m)];
  return d;
}

std::array<double, 8> dec_hi() {
  const auto& h = db4_scaling_filter();
  std::array<double, 8> g;  // g[k] = (-1)^k h[7-k], then reverse
  for (int k = 0; k < 8; ++k)
    g[static_cast<std::size_t>(7 - k)] =
        ((k % 2) ? -1.0 : 1.0) * h[static_cast<std::size_t>(7 - k)];
  return g;
}

}  // namespace

TEST_CASE("db4 filter identities") {
  const auto& h = db4_scaling_filter();
  double sum = 0, sumsq = 0;
  for (const double v : h) {
    sum += v;
    sumsq += v * v;
  }
  CHECK(std::abs(sum - std::numbers::sqrt2) <= 1e-12);
  CHECK(std::abs(sumsq - 1.0) <= 1e-12);
  // orthogonality of even shifts
  for (int s = 1; s <= 3; ++s) {
    double o = 0;
    for (int k = 0; k + 2 * s < 8; ++k)
      o += h[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(k + 2 * s)];
    CHECK(std::abs(o) <= 1e-12);
  }
  // four vanishing moments of the wavelet filter
  for (int p = 0; p < 4; ++p) {
    double vm = 0;
    for (int k = 0; k < 8; ++k) {
      const double g = ((k % 2) ? -1.0 : 1.0) * h[static_cast<std::size_t>(7 - k)];
      vm += std::pow(static_cast<double>(k), p) * g;
    }
    CHECK(std::abs(vm) <= 1e-10);
  }
}

TEST_CASE("zero input yields all-zero subbands") {
  const std::vector<double> zeros(2048, 0.0);
  const auto dec = dwt_multilevel(zeros, 3);
  REQUIRE(dec.subbands.size() == 4);
  for (const auto& sb : dec.subbands)
    for (const double v : sb) CHECK(v == 0.0);
}

TEST_CASE("subband lengths follow floor((n + 7) / 2) per level") {
  const auto dec = dwt_multilevel(random_signal(1, 2048), 3);
  CHECK(dec.subbands[0].size() == 262);  // cA3
  CHECK(dec.subbands[1].size() == 262);  // cD3
  CHECK(dec.subbands[2].size() == 517);  // cD2
  CHECK(dec.subbands[3].size() == 1027); // cD1
  CHECK(dec.input_lengths == std::vector<std::size_t>{2048, 1027, 517});
}

TEST_CASE("single level matches the naive convolution oracle") {
  const auto lo = dec_lo();
  const auto hi = dec_hi();
  SUBCASE("unit impulse") {
    std::vector<double> x(64, 0.0);
    x[30] = 1.0;
    std::vector<double> a, d;
    dwt_single(x, a, d);
    const auto ra = oracle::analysis_band(x, lo);
    const auto rd = oracle::analysis_band(x, hi);
    REQUIRE(a.size() == ra.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i] - ra[i]) <= 1e-14);
      CHECK(std::abs(d[i] - rd[i]) <= 1e-14);
    }
  }
  SUBCASE("white noise, multiple lengths") {
    for (const std::size_t n : {16u, 33u, 500u, 2048u}) {
      const auto x = random_signal(n, n);
      std::vector<double> a, d;
      dwt_single(x, a, d);
      const auto ra = oracle::analysis_band(x, lo);
      const auto rd = oracle::analysis_band(x, hi);
      REQUIRE(a.size() == ra.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i] - ra[i]) <= 1e-10);
        CHECK(std::abs(d[i] - rd[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("multilevel matches a cascaded oracle elementwise") {
  const auto lo = dec_lo();
  const auto hi = dec_hi();
  const auto x = random_signal(77, 2048);
  const auto dec = dwt_multilevel(x, 3);
  std::vector<double> approx(x.begin(), x.end());
  std::vector<std::vector<double>> details;
  for (int l = 0; l < 3; ++l) {
    details.push_back(oracle::analysis_band(approx, hi));
    approx = oracle::analysis_band(approx, lo);
  }
  for (std::size_t i = 0; i < approx.size(); ++i)
    CHECK(std::abs(dec.subbands[0][i] - approx[i]) <= 1e-10);
  for (int l = 0; l < 3; ++l) {
    const auto& mine = dec.subbands[static_cast<std::size_t>(3 - l)];
    REQUIRE(mine.size() == details[static_cast<std::size_t>(l)].size());
    for (std::size_t i = 0; i < mine.size(); ++i)
      CHECK(std::abs(mine[i] - details[static_cast<std::size_t>(l)][i]) <= 1e-10);
  }
}

TEST_CASE("round-trip reconstruction within 1e-8") {
  SUBCASE("zero vector") {
    const std::vector<double> zeros(512, 0.0);
    const auto back = idwt_multilevel(dwt_multilevel(zeros, 3), 512);
    for (const double v : back) CHECK(v == 0.0);
  }
  SUBCASE("100 random signals of length 2048") {
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto x = random_signal(seed, 2048);
      const auto back = idwt_multilevel(dwt_multilevel(x, 3), 2048);
      REQUIRE(back.size() == x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, std::abs(back[i] - x[i]));
    }
    CHECK(worst <= 1e-8);
  }
  SUBCASE("pure sinusoid") {
    std::vector<double> x(2048);
    for (std::size_t t = 0; t < x.size(); ++t)
      x[t] = std::sin(2 * std::numbers::pi * 8.0 * static_cast<double>(t) / 128.0);
    const auto back = idwt_multilevel(dwt_multilevel(x, 3), 2048);
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(back[i] - x[i]));
    CHECK(worst <= 1e-8);
  }
  SUBCASE("odd and awkward lengths") {
    for (const std::size_t n : {17u, 33u, 100u, 1027u}) {
      const auto x = random_signal(n + 5, n);
      const auto back = idwt_multilevel(dwt_multilevel(x, 3), n);
      double worst = 0;
      for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(back[i] - x[i]));
      CHECK(worst <= 1e-8);
    }
  }
}

TEST_CASE("linearity of the transform") {
  const auto x = random_signal(5, 700);
  const auto y = random_signal(6, 700);
  std::vector<double> combo(700);
  for (std::size_t i = 0; i < 700; ++i) combo[i] = 2.5 * x[i] - 0.75 * y[i];
  const auto dx = dwt_multilevel(x, 3);
  const auto dy = dwt_multilevel(y, 3);
  const auto dc = dwt_multilevel(combo, 3);
  for (std::size_t sb = 0; sb < dc.subbands.size(); ++sb)
    for (std::size_t i = 0; i < dc.subbands[sb].size(); ++i)
      CHECK(std::abs(dc.subbands[sb][i] -
                     (2.5 * dx.subbands[sb][i] - 0.75 * dy.subbands[sb][i])) <=
            1e-10);
}

TEST_CASE("dwt error paths") {
  CHECK_THROWS_AS(dwt_multilevel(std::vector<double>(4, 1.0), 3), data_error);
  CHECK_THROWS_AS(dwt_multilevel(std::vector<double>{1.0, std::nan(""), 0.0, 0.0,
                                                     1.0, 2.0, 3.0, 4.0},
                                 3),
                  data_error);
  auto dec = dwt_multilevel(random_signal(1, 512), 3);
  CHECK_THROWS_AS(idwt_multilevel(dec, 511), data_error);
  dec.subbands[1].pop_back();
  CHECK_THROWS_AS(idwt_multilevel(dec, 512), data_error);
}
