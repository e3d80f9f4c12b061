#include "eegsel/dwt.hpp"

#include <cmath>
#include <string>

#include "eegsel/kernels.hpp"

namespace eegsel {

const std::array<double, 8>& db4_scaling_filter() {
  static const std::array<double, 8> h = {
      0.23037781330889650,   0.71484657055291565,  0.63088076792985891,
      -0.027983769416859854, -0.18703481171909308, 0.030841381835560764,
      0.032883011666885200,  -0.010597401785069032};
  return h;
}

namespace {

constexpr std::size_t kTaps = 8;
constexpr std::size_t kPad = kTaps - 1;

struct FilterBank {
  std::array<double, 8> dec_lo;
  std::array<double, 8> dec_hi;
};

const FilterBank& filters() {
  static const FilterBank fb = [] {
    FilterBank f{};
    const auto& h = db4_scaling_filter();
    // wavelet filter g[k] = (-1)^k h[7-k]; decomposition filters are the
    // time-reversed pair
    for (std::size_t m = 0; m < kTaps; ++m) {
      f.dec_lo[m] = h[kTaps - 1 - m];
      const std::size_t k = kTaps - 1 - m;
      f.dec_hi[m] = ((k % 2) ? -1.0 : 1.0) * h[kTaps - 1 - k];
    }
    return f;
  }();
  return fb;
}

// Half-point symmetric index: ... x2 x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} ...
std::size_t reflect(long long v, std::size_t n) {
  const long long N = static_cast<long long>(n);
  while (v < 0 || v >= N) {
    if (v < 0) v = -v - 1;
    if (v >= N) v = 2 * N - 1 - v;
  }
  return static_cast<std::size_t>(v);
}

// Extended copy with 2 slack doubles at the end: the vectorized stride-2
// loads read one lane past the last used element.
std::vector<double> extend(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> e(n + 2 * kPad + 2, 0.0);
  for (std::size_t i = 0; i < kPad; ++i) {
    e[i] = x[reflect(static_cast<long long>(i) - static_cast<long long>(kPad), n)];
    e[kPad + n + i] = x[reflect(static_cast<long long>(n + i), n)];
  }
  for (std::size_t i = 0; i < n; ++i) e[kPad + i] = x[i];
  return e;
}

void check_finite(std::span<const double> x) {
  for (const double v : x)
    if (!std::isfinite(v)) throw data_error("dwt: non-finite input sample");
}

}  // namespace

void dwt_single(std::span<const double> x, std::vector<double>& approx,
                std::vector<double>& detail) {
  const std::size_t n = x.size();
  if (n < 2) throw data_error("dwt: signal too short");
  const std::vector<double> e = extend(x);
  const std::size_t n_out = (n + kTaps - 1) / 2;
  approx.resize(n_out);
  detail.resize(n_out);
  const FilterBank& fb = filters();
  // downsample phase: keep odd positions of the valid correlation
  kernels::fir_down2(e.data() + 1, fb.dec_lo.data(), kTaps, approx.data(), n_out);
  kernels::fir_down2(e.data() + 1, fb.dec_hi.data(), kTaps, detail.data(), n_out);
}

WaveletDecomposition dwt_multilevel(std::span<const double> signal, int levels) {
  if (levels < 1) throw config_error("dwt: levels must be >= 1");
  if (signal.size() < (std::size_t{1} << levels))
    throw data_error("dwt: signal shorter than 2^levels");
  check_finite(signal);

  WaveletDecomposition dec;
  dec.levels = levels;
  dec.subbands.resize(static_cast<std::size_t>(levels) + 1);
  std::vector<double> a(signal.begin(), signal.end());
  for (int lvl = 1; lvl <= levels; ++lvl) {
    dec.input_lengths.push_back(a.size());
    std::vector<double> next_a, d;
    dwt_single(a, next_a, d);
    dec.subbands[static_cast<std::size_t>(levels - lvl) + 1] = std::move(d);
    a = std::move(next_a);
  }
  dec.subbands[0] = std::move(a);
  return dec;
}

std::vector<double> idwt_single(std::span<const double> approx,
                                std::span<const double> detail,
                                std::size_t out_len) {
  if (approx.size() != detail.size())
    throw data_error("idwt: inconsistent subband lengths");
  const std::size_t la = approx.size();
  if (out_len > 2 * la)
    throw data_error("idwt: output length too long for subband size");
  const FilterBank& fb = filters();
  // upsample-by-2 then full convolution with the decomposition filters;
  // the reconstruction window starts at offset taps-2
  std::vector<double> s(2 * la + kTaps - 2, 0.0);
  for (std::size_t i = 0; i < la; ++i) {
    const double av = approx[i];
    const double dv = detail[i];
    double* dst = s.data() + 2 * i;
    for (std::size_t m = 0; m < kTaps; ++m)
      dst[m] += av * fb.dec_lo[m] + dv * fb.dec_hi[m];
  }
  std::vector<double> out(out_len);
  for (std::size_t j = 0; j < out_len; ++j) out[j] = s[j + kTaps - 2];
  return out;
}

std::vector<double> idwt_multilevel(const WaveletDecomposition& dec,
                                    std::size_t original_len) {
  if (dec.subbands.size() != static_cast<std::size_t>(dec.levels) + 1 ||
      dec.input_lengths.size() != static_cast<std::size_t>(dec.levels))
    throw data_error("idwt: malformed decomposition");
  if (original_len != dec.input_lengths.front())
    throw data_error("idwt: original_len does not match the decomposition");
  std::vector<double> a = dec.subbands[0];
  for (int lvl = dec.levels; lvl >= 1; --lvl) {
    const std::size_t out_len =
        dec.input_lengths[static_cast<std::size_t>(lvl) - 1];
    const auto& d = dec.subbands[static_cast<std::size_t>(dec.levels - lvl) + 1];
    a = idwt_single(a, d, out_len);
  }
  return a;
}

std::vector<std::string> subband_names(int levels) {
  std::vector<std::string> names;
  names.push_back("ca" + std::to_string(levels));
  for (int l = levels; l >= 1; --l) names.push_back("cd" + std::to_string(l));
  return names;
}

}  // namespace eegsel
