#pragma once

// Independent brute-force reference implementations used only by the tests.
// These deliberately re-derive results with the most literal possible code
// and share nothing with the library's implementation paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace oracle {

// ---- histogram / entropy ----

inline std::vector<double> histogram_pmf(std::span<const double> xs, int bins) {
  double lo = xs[0], hi = xs[0];
  for (const double v : xs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> pmf(static_cast<std::size_t>(bins), 0.0);
  for (const double v : xs) {
    std::size_t b = 0;
    if (hi > lo) {
      b = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
      if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;
    }
    pmf[b] += 1.0;
  }
  for (double& p : pmf) p /= static_cast<double>(xs.size());
  return pmf;
}

inline double entropy_bits(std::span<const double> pmf) {
  double h = 0.0;
  for (const double p : pmf)
    if (p > 0) h -= p * std::log2(p);
  return h;
}

// ---- DWT: literal extension + convolution + downsample ----

inline std::vector<double> symmetric_extend(std::span<const double> x, int pad) {
  std::vector<double> e;
  const long long n = static_cast<long long>(x.size());
  for (long long v = -pad; v < n + pad; ++v) {
    long long t = v;
    while (t < 0 || t >= n) {
      if (t < 0) t = -t - 1;
      if (t >= n) t = 2 * n - 1 - t;
    }
    e.push_back(x[static_cast<std::size_t>(t)]);
  }
  return e;
}

// correlation of the extended signal with an 8-tap filter, keeping odd
// positions of the valid part
inline std::vector<double> analysis_band(std::span<const double> x,
                                         std::span<const double> dec_filter) {
  const int F = static_cast<int>(dec_filter.size());
  const std::vector<double> e = symmetric_extend(x, F - 1);
  const std::size_t n_out = (x.size() + static_cast<std::size_t>(F) - 1) / 2;
  std::vector<double> out(n_out, 0.0);
  for (std::size_t i = 0; i < n_out; ++i)
    for (int m = 0; m < F; ++m)
      out[i] += e[2 * i + 1 + static_cast<std::size_t>(m)] *
                dec_filter[static_cast<std::size_t>(m)];
  return out;
}

// ---- SLBP: literal double loop over both neighborhoods ----

inline int slbp_code(std::span<const double> x, std::size_t n, int L) {
  auto f = [](double v) { return v >= 0.0 ? 1 : 0; };
  int lhs = 0, rhs = 0;
  for (int m = 0; m < L; ++m)
    lhs += f(x[n + static_cast<std::size_t>(m) - static_cast<std::size_t>(L)] -
             x[n]) *
           (1 << (L - 1 - m));
  for (int m = 0; m < L; ++m)
    rhs += f(x[n + static_cast<std::size_t>(m) + 1] - x[n]) * (1 << m);
  return lhs + rhs;
}

inline std::vector<std::uint64_t> slbp_histogram(std::span<const double> x, int L) {
  std::vector<std::uint64_t> h(2 * ((1u << L) - 1) + 1, 0);
  for (std::size_t n = static_cast<std::size_t>(L); n + static_cast<std::size_t>(L) < x.size(); ++n)
    ++h[static_cast<std::size_t>(slbp_code(x, n, L))];
  return h;
}

// ---- kNN: exhaustive scan with full sort ----

// returns (label_is_positive, vote_fraction); mirrors the documented tie rules
inline std::pair<bool, double> knn_scan(const std::vector<std::vector<double>>& train,
                                        const std::vector<bool>& positive,
                                        std::span<const double> q, int k) {
  struct Entry {
    double d2;
    std::size_t idx;
  };
  std::vector<Entry> all;
  for (std::size_t i = 0; i < train.size(); ++i) {
    double d2 = 0;
    for (std::size_t c = 0; c < q.size(); ++c) {
      const double d = train[i][c] - q[c];
      d2 += d * d;
    }
    all.push_back({d2, i});
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    return a.idx < b.idx;
  });
  int pos = 0;
  double dsum_pos = 0, dsum_neg = 0;
  for (int i = 0; i < k; ++i) {
    if (positive[all[static_cast<std::size_t>(i)].idx]) {
      ++pos;
      dsum_pos += std::sqrt(all[static_cast<std::size_t>(i)].d2);
    } else {
      dsum_neg += std::sqrt(all[static_cast<std::size_t>(i)].d2);
    }
  }
  const int neg = k - pos;
  bool label;
  if (pos != neg) label = pos > neg;
  else if (dsum_pos != dsum_neg) label = dsum_pos < dsum_neg;
  else label = true;
  return {label, static_cast<double>(pos) / k};
}

// ---- chi-square from a literal contingency build ----

inline double chi_square(const std::vector<std::vector<std::uint64_t>>& obs) {
  const std::size_t rows = obs.size(), cols = obs[0].size();
  std::vector<double> rsum(rows, 0), csum(cols, 0);
  double total = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      rsum[r] += static_cast<double>(obs[r][c]);
      csum[c] += static_cast<double>(obs[r][c]);
      total += static_cast<double>(obs[r][c]);
    }
  double chi = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double e = rsum[r] * csum[c] / total;
      if (e > 0) {
        const double d = static_cast<double>(obs[r][c]) - e;
        chi += d * d / e;
      }
    }
  return chi;
}

// ---- dense dual QP for small SVM problems ----
//
// Projected gradient on min 1/2 a'Qa - e'a over {0 <= a <= C, y'a = 0};
// the projection onto box-and-hyperplane is exact via bisection on the
// multiplier. Slow and only for desk-scale problems.
struct QpResult {
  std::vector<double> alpha;
  double objective;
};

inline QpResult svm_dual_qp(const std::vector<std::vector<double>>& K,
                            const std::vector<double>& y, double C,
                            int iters = 200000) {
  const std::size_t n = y.size();
  std::vector<double> a(n, 0.0);
  auto project = [&](std::vector<double>& z) {
    double lo = -1e6, hi = 1e6;
    for (int it = 0; it < 200; ++it) {
      const double lam = 0.5 * (lo + hi);
      double s = 0;
      for (std::size_t i = 0; i < n; ++i)
        s += y[i] * std::clamp(z[i] - lam * y[i], 0.0, C);
      if (s > 0) lo = lam;
      else hi = lam;
    }
    const double lam = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::clamp(z[i] - lam * y[i], 0.0, C);
  };
  double lmax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(y[i] * y[j] * K[i][j]);
    lmax = std::max(lmax, row);
  }
  const double eta = 1.0 / std::max(lmax, 1.0);
  std::vector<double> g(n), z(n);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = -1.0;
      for (std::size_t j = 0; j < n; ++j) g[i] += y[i] * y[j] * K[i][j] * a[j];
      z[i] = a[i] - eta * g[i];
    }
    project(z);
    a.swap(z);
  }
  double obj = 0;
  for (std::size_t i = 0; i < n; ++i) {
    obj -= a[i];
    for (std::size_t j = 0; j < n; ++j)
      obj += 0.5 * a[i] * a[j] * y[i] * y[j] * K[i][j];
  }
  return {a, obj};
}

}  // namespace oracle
