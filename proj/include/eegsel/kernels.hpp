#pragma once

#include <cstddef>
#include <cstdint>

// Numeric inner loops used across the pipeline (reductions, strided FIR for
// the wavelet transform, squared distances for the classifiers, local binary
// pattern coding). Each kernel has a scalar reference implementation and an
// AVX2 variant; the active set is chosen once at runtime from CPUID and can
// be forced for equivalence testing.

namespace eegsel::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
  double (*sum)(const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  // sum of (x[i] - c)^2, the centered second moment pass
  double (*sumsq_off)(const double*, std::size_t, double);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sq_dist)(const double*, const double*, std::size_t);
  void (*minmax)(const double*, std::size_t, double*, double*);
  // out[i] = sum_m src[2*i + m] * taps[m], i in [0, n_out)
  void (*fir_down2)(const double* src, const double* taps, std::size_t n_taps,
                    double* out, std::size_t n_out);
  // codes for centers c in [half_width, n - half_width); one code per center
  void (*slbp_codes)(const double* x, std::size_t n, int half_width,
                     std::int32_t* codes);
};

bool cpu_supports_avx2();
Backend active_backend();
// Throws eegsel::config_error if the backend is unavailable on this host.
void force_backend(Backend b);
void reset_backend();  // back to auto-detection

const KernelTable& active();
const KernelTable& table_for(Backend b);

inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double sumsq(const double* x, std::size_t n) { return active().sumsq(x, n); }
inline double sumsq_off(const double* x, std::size_t n, double c) {
  return active().sumsq_off(x, n, c);
}
inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline double sq_dist(const double* x, const double* y, std::size_t n) {
  return active().sq_dist(x, y, n);
}
inline void minmax(const double* x, std::size_t n, double& lo, double& hi) {
  active().minmax(x, n, &lo, &hi);
}
inline void fir_down2(const double* src, const double* taps, std::size_t n_taps,
                      double* out, std::size_t n_out) {
  active().fir_down2(src, taps, n_taps, out, n_out);
}
inline void slbp_codes(const double* x, std::size_t n, int half_width,
                       std::int32_t* codes) {
  active().slbp_codes(x, n, half_width, codes);
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(EEGSEL_AVX2_TU)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace eegsel::kernels
