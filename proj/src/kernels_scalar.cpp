#include "eegsel/kernels.hpp"

namespace eegsel::kernels {
namespace {

double sum_s(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sumsq_s(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double sumsq_off_s(const double* x, std::size_t n, double c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - c;
    acc += d * d;
  }
  return acc;
}

double dot_s(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sq_dist_s(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

void minmax_s(const double* x, std::size_t n, double* lo, double* hi) {
  double mn = x[0], mx = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] < mn) mn = x[i];
    if (x[i] > mx) mx = x[i];
  }
  *lo = mn;
  *hi = mx;
}

void fir_down2_s(const double* src, const double* taps, std::size_t n_taps,
                 double* out, std::size_t n_out) {
  for (std::size_t i = 0; i < n_out; ++i) {
    const double* s = src + 2 * i;
    double acc = 0.0;
    for (std::size_t m = 0; m < n_taps; ++m) acc += s[m] * taps[m];
    out[i] = acc;
  }
}

void slbp_codes_s(const double* x, std::size_t n, int half_width,
                  std::int32_t* codes) {
  const int L = half_width;
  const std::size_t n_codes = n - 2 * static_cast<std::size_t>(L);
  for (std::size_t i = 0; i < n_codes; ++i) {
    const std::size_t c = i + static_cast<std::size_t>(L);
    const double center = x[c];
    std::int32_t code = 0;
    // left neighborhood, weights 2^(L-1)..2^0 moving toward the center
    for (int m = 0; m < L; ++m)
      if (x[c + m - L] >= center) code += 1 << (L - 1 - m);
    // right neighborhood, weights 2^0..2^(L-1) moving away from the center
    for (int m = 0; m < L; ++m)
      if (x[c + m + 1] >= center) code += 1 << m;
    codes[i] = code;
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table = {
    sum_s, sumsq_s, sumsq_off_s, dot_s, sq_dist_s, minmax_s, fir_down2_s,
    slbp_codes_s,
};
}  // namespace detail

}  // namespace eegsel::kernels
