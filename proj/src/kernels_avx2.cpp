// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after the runtime CPUID check.

#include <immintrin.h>

#include "eegsel/kernels.hpp"

namespace eegsel::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_v(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i];
  return r;
}

double sumsq_v(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double sumsq_off_v(const double* x, std::size_t n, double c) {
  const __m256d cv = _mm256_set1_pd(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), cv);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - c;
    r += d * d;
  }
  return r;
}

double dot_v(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

double sq_dist_v(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    r += d * d;
  }
  return r;
}

void minmax_v(const double* x, std::size_t n, double* lo, double* hi) {
  if (n < 8) {
    double mn = x[0], mx = x[0];
    for (std::size_t i = 1; i < n; ++i) {
      if (x[i] < mn) mn = x[i];
      if (x[i] > mx) mx = x[i];
    }
    *lo = mn;
    *hi = mx;
    return;
  }
  __m256d vmn = _mm256_loadu_pd(x);
  __m256d vmx = vmn;
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    vmn = _mm256_min_pd(vmn, v);
    vmx = _mm256_max_pd(vmx, v);
  }
  double mn[4], mx[4];
  _mm256_storeu_pd(mn, vmn);
  _mm256_storeu_pd(mx, vmx);
  double rmn = mn[0], rmx = mx[0];
  for (int k = 1; k < 4; ++k) {
    if (mn[k] < rmn) rmn = mn[k];
    if (mx[k] > rmx) rmx = mx[k];
  }
  for (; i < n; ++i) {
    if (x[i] < rmn) rmn = x[i];
    if (x[i] > rmx) rmx = x[i];
  }
  *lo = rmn;
  *hi = rmx;
}

// Gathers src[p], src[p+2], src[p+4], src[p+6] into one vector.
inline __m256d load_stride2(const double* p) {
  const __m256d a = _mm256_loadu_pd(p);
  const __m256d b = _mm256_loadu_pd(p + 4);
  return _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), 0b11011000);
}

void fir_down2_v(const double* src, const double* taps, std::size_t n_taps,
                 double* out, std::size_t n_out) {
  std::size_t i = 0;
  for (; i + 4 <= n_out; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    const double* base = src + 2 * i;
    for (std::size_t m = 0; m < n_taps; ++m)
      acc = _mm256_fmadd_pd(load_stride2(base + m), _mm256_set1_pd(taps[m]), acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n_out; ++i) {
    const double* s = src + 2 * i;
    double acc = 0.0;
    for (std::size_t m = 0; m < n_taps; ++m) acc += s[m] * taps[m];
    out[i] = acc;
  }
}

void slbp_codes_v(const double* x, std::size_t n, int half_width,
                  std::int32_t* codes) {
  const int L = half_width;
  const std::size_t n_codes = n - 2 * static_cast<std::size_t>(L);
  std::size_t i = 0;
  if (L == 4) {
    // offsets relative to the center and their weights
    static constexpr int off[8] = {-4, -3, -2, -1, 1, 2, 3, 4};
    static constexpr double wgt[8] = {8, 4, 2, 1, 1, 2, 4, 8};
    for (; i + 4 <= n_codes; i += 4) {
      const double* c = x + i + 4;
      const __m256d center = _mm256_loadu_pd(c);
      __m256d acc = _mm256_setzero_pd();
      for (int k = 0; k < 8; ++k) {
        const __m256d nb = _mm256_loadu_pd(c + off[k]);
        const __m256d ge = _mm256_cmp_pd(nb, center, _CMP_GE_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(ge, _mm256_set1_pd(wgt[k])));
      }
      const __m128i q = _mm256_cvttpd_epi32(acc);
      _mm_storeu_si128(reinterpret_cast<__m128i*>(codes + i), q);
    }
  }
  // generic tail / generic L
  for (; i < n_codes; ++i) {
    const std::size_t c = i + static_cast<std::size_t>(L);
    const double center = x[c];
    std::int32_t code = 0;
    for (int m = 0; m < L; ++m)
      if (x[c + m - L] >= center) code += 1 << (L - 1 - m);
    for (int m = 0; m < L; ++m)
      if (x[c + m + 1] >= center) code += 1 << m;
    codes[i] = code;
  }
}

}  // namespace

namespace detail {
const KernelTable avx2_table = {
    sum_v, sumsq_v, sumsq_off_v, dot_v, sq_dist_v, minmax_v, fir_down2_v,
    slbp_codes_v,
};
}  // namespace detail

}  // namespace eegsel::kernels
