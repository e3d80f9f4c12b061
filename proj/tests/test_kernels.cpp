#include <doctest.h>

#include <cmath>
#include <vector>

#include "eegsel/kernels.hpp"
#include "eegsel/rng.hpp"

using namespace eegsel;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

}  // namespace

TEST_CASE("scalar and simd kernel variants agree") {
  if (!kernels::cpu_supports_avx2()) {
    MESSAGE("avx2 unavailable; equivalence suite skipped");
    return;
  }
  const auto& sc = kernels::table_for(kernels::Backend::scalar);
  const auto& vx = kernels::table_for(kernels::Backend::avx2);
  Rng rng(99);
  // deliberately awkward lengths to cover the vector remainders
  for (const std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1000u, 2048u, 2053u}) {
    const auto x = random_vec(rng, n, 3.0);
    const auto y = random_vec(rng, n, 2.0);
    CHECK(close_rel(sc.sum(x.data(), n), vx.sum(x.data(), n), 1e-12));
    CHECK(close_rel(sc.sumsq(x.data(), n), vx.sumsq(x.data(), n), 1e-12));
    CHECK(close_rel(sc.sumsq_off(x.data(), n, 0.7), vx.sumsq_off(x.data(), n, 0.7), 1e-12));
    CHECK(close_rel(sc.dot(x.data(), y.data(), n), vx.dot(x.data(), y.data(), n), 1e-12));
    CHECK(close_rel(sc.sq_dist(x.data(), y.data(), n), vx.sq_dist(x.data(), y.data(), n), 1e-12));
    double lo_s, hi_s, lo_v, hi_v;
    sc.minmax(x.data(), n, &lo_s, &hi_s);
    vx.minmax(x.data(), n, &lo_v, &hi_v);
    CHECK(lo_s == lo_v);
    CHECK(hi_s == hi_v);
  }
}

TEST_CASE("fir_down2 variants agree on strided correlations") {
  if (!kernels::cpu_supports_avx2()) return;
  const auto& sc = kernels::table_for(kernels::Backend::scalar);
  const auto& vx = kernels::table_for(kernels::Backend::avx2);
  Rng rng(7);
  for (const std::size_t n_out : {1u, 2u, 3u, 4u, 5u, 13u, 100u, 1027u}) {
    const std::size_t n_src = 2 * n_out + 8 + 2;
    const auto src = random_vec(rng, n_src);
    const auto taps = random_vec(rng, 8);
    std::vector<double> a(n_out), b(n_out);
    sc.fir_down2(src.data(), taps.data(), 8, a.data(), n_out);
    vx.fir_down2(src.data(), taps.data(), 8, b.data(), n_out);
    for (std::size_t i = 0; i < n_out; ++i) CHECK(close_rel(a[i], b[i], 1e-13));
  }
}

TEST_CASE("slbp code variants agree exactly") {
  if (!kernels::cpu_supports_avx2()) return;
  const auto& sc = kernels::table_for(kernels::Backend::scalar);
  const auto& vx = kernels::table_for(kernels::Backend::avx2);
  Rng rng(11);
  for (const std::size_t n : {9u, 10u, 12u, 100u, 2048u, 2051u}) {
    const auto x = random_vec(rng, n);
    const std::size_t n_codes = n - 8;
    std::vector<std::int32_t> a(n_codes), b(n_codes);
    sc.slbp_codes(x.data(), n, 4, a.data());
    vx.slbp_codes(x.data(), n, 4, b.data());
    CHECK(a == b);  // integer codes must match bit for bit
  }
  // ties at equality: repeated values hit the >= branch
  std::vector<double> flat(64, 1.5);
  std::vector<std::int32_t> a(flat.size() - 8), b(flat.size() - 8);
  sc.slbp_codes(flat.data(), flat.size(), 4, a.data());
  vx.slbp_codes(flat.data(), flat.size(), 4, b.data());
  CHECK(a == b);
  CHECK(a[0] == 30);
}

TEST_CASE("backend forcing is reversible") {
  const auto initial = kernels::active_backend();
  kernels::force_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  kernels::reset_backend();
  CHECK(kernels::active_backend() == initial);
}
