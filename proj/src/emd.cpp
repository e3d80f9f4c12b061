#include "eegsel/emd.hpp"

#include <algorithm>
#include <cmath>

#include "eegsel/spline.hpp"

namespace eegsel {

// ---- extrema ----

ExtremaLists find_extrema(std::span<const double> x) {
  ExtremaLists ext;
  const std::size_t n = x.size();
  if (n < 3) return ext;
  // first nonzero difference
  std::size_t k = 0;
  while (k + 1 < n && x[k + 1] == x[k]) ++k;
  if (k + 1 >= n) return ext;  // constant signal
  int prev_sign = x[k + 1] > x[k] ? 1 : -1;
  std::size_t i = k + 1;
  while (i + 1 < n) {
    if (x[i + 1] == x[i]) {
      // plateau: a single extremum at its midpoint if the slope flips across
      std::size_t j = i;
      while (j + 1 < n && x[j + 1] == x[j]) ++j;
      if (j + 1 < n) {
        const int s = x[j + 1] > x[j] ? 1 : -1;
        if (s != prev_sign) {
          const std::size_t mid = (i + j) / 2;
          (prev_sign > 0 ? ext.maxima : ext.minima).push_back(mid);
          prev_sign = s;
        }
      }
      i = j;
      continue;
    }
    const int s = x[i + 1] > x[i] ? 1 : -1;
    if (s != prev_sign) {
      (prev_sign > 0 ? ext.maxima : ext.minima).push_back(i);
      prev_sign = s;
    }
    ++i;
  }
  return ext;
}

std::size_t count_zero_crossings(std::span<const double> x) {
  std::size_t count = 0;
  int prev = 0;
  for (const double v : x) {
    const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

namespace {

bool is_monotone(std::span<const double> x) {
  bool up = true, down = true;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < x[i - 1]) up = false;
    if (x[i] > x[i - 1]) down = false;
  }
  return up || down;
}

// Envelope through the extrema at `idx`, with up to two extrema mirrored
// about each end so the spline stays anchored over [0, n-1].
void envelope(std::span<const double> x, const std::vector<std::size_t>& idx,
              std::vector<double>& out) {
  const std::size_t n = x.size();
  std::vector<double> ts, vs;
  ts.reserve(idx.size() + 4);
  vs.reserve(idx.size() + 4);
  const std::size_t m = std::min<std::size_t>(2, idx.size());
  for (std::size_t k = m; k >= 1; --k) {
    ts.push_back(-static_cast<double>(idx[k - 1]));
    vs.push_back(x[idx[k - 1]]);
  }
  for (const std::size_t i : idx) {
    ts.push_back(static_cast<double>(i));
    vs.push_back(x[i]);
  }
  const double edge = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t src = idx[idx.size() - 1 - k];
    const double t = 2.0 * edge - static_cast<double>(src);
    ts.push_back(t);
    vs.push_back(x[src]);
  }
  // drop duplicate abscissae introduced by extrema sitting on the ends
  std::vector<double> tt, vv;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!tt.empty() && !(ts[i] > tt.back())) continue;
    tt.push_back(ts[i]);
    vv.push_back(vs[i]);
  }
  out.resize(n);
  CubicSpline(tt, vv).eval_grid(out.data(), n);
}

}  // namespace

// One sifting pass extracts a single IMF.
//
// Stop rule (Rilling et al. defaults): with m the envelope mean and
// a the envelope half-amplitude, let sx = |m|/|a|; stop when
// fraction(sx > theta1) < alpha, all sx < theta2, and the extrema /
// zero-crossing counts differ by at most one.
std::vector<double> sift_imf(std::span<const double> signal,
                             const SiftConfig& cfg) {
  std::vector<double> h(signal.begin(), signal.end());
  std::vector<double> upper, lower;
  for (int it = 0; it < cfg.max_sift_iters; ++it) {
    const ExtremaLists ext = find_extrema(h);
    if (ext.maxima.size() < 2 || ext.minima.size() < 2) break;
    envelope(h, ext.maxima, upper);
    envelope(h, ext.minima, lower);

    std::size_t n_exceed1 = 0;
    bool under2 = true;
    for (std::size_t t = 0; t < h.size(); ++t) {
      const double mean = 0.5 * (upper[t] + lower[t]);
      const double amp = 0.5 * std::abs(upper[t] - lower[t]);
      const double sx = std::abs(mean) / (amp > 1e-300 ? amp : 1e-300);
      if (sx > cfg.theta1) ++n_exceed1;
      if (sx >= cfg.theta2) under2 = false;
    }
    const double frac = static_cast<double>(n_exceed1) / static_cast<double>(h.size());
    const std::size_t n_extrema = ext.maxima.size() + ext.minima.size();
    const std::size_t n_zc = count_zero_crossings(h);
    const bool zc_ok =
        (n_extrema > n_zc ? n_extrema - n_zc : n_zc - n_extrema) <= 1;
    if (frac < cfg.alpha && under2 && zc_ok) break;

    for (std::size_t t = 0; t < h.size(); ++t)
      h[t] -= 0.5 * (upper[t] + lower[t]);
  }
  return h;
}

EmdResult emd_decompose(std::span<const double> signal, int n_imfs,
                        const SiftConfig& cfg) {
  if (signal.size() < 16) throw data_error("emd: signal too short (< 16 samples)");
  if (n_imfs < 1) throw config_error("emd: n_imfs must be >= 1");
  for (const double v : signal)
    if (!std::isfinite(v)) throw data_error("emd: non-finite input sample");

  EmdResult res;
  res.config = cfg;
  res.requested = n_imfs;
  res.residue.assign(signal.begin(), signal.end());
  for (int k = 0; k < n_imfs; ++k) {
    const ExtremaLists ext = find_extrema(res.residue);
    if (ext.maxima.size() < 2 || ext.minima.size() < 2 || is_monotone(res.residue))
      break;
    std::vector<double> imf = sift_imf(res.residue, cfg);
    for (std::size_t t = 0; t < res.residue.size(); ++t) res.residue[t] -= imf[t];
    res.imfs.push_back(std::move(imf));
  }
  return res;
}

}  // namespace eegsel
