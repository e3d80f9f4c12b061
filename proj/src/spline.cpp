#include "eegsel/spline.hpp"

#include <algorithm>

namespace eegsel {

CubicSpline::CubicSpline(std::span<const double> xs, std::span<const double> ys)
    : xs_(xs.begin(), xs.end()), ys_(ys.begin(), ys.end()) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n)
    throw data_error("spline: need >= 2 knots and matching lengths");
  for (std::size_t i = 1; i < n; ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw data_error("spline: knot abscissae must be strictly increasing");
  m2_.assign(n, 0.0);
  if (n == 2) return;

  // Thomas solve for the natural-boundary tridiagonal system.
  std::vector<double> cp(n, 0.0), dp(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = xs_[i] - xs_[i - 1];
    const double hr = xs_[i + 1] - xs_[i];
    const double rhs =
        6.0 * ((ys_[i + 1] - ys_[i]) / hr - (ys_[i] - ys_[i - 1]) / hl);
    const double denom = 2.0 * (hl + hr) - hl * cp[i - 1];
    cp[i] = hr / denom;
    dp[i] = (rhs - hl * dp[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) m2_[i] = dp[i] - cp[i] * m2_[i + 1];
}

double CubicSpline::operator()(double x) const {
  const std::size_t n = xs_.size();
  std::size_t j = static_cast<std::size_t>(
      std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  if (j == 0) j = 1;
  if (j >= n) j = n - 1;
  const std::size_t i = j - 1;
  const double h = xs_[j] - xs_[i];
  const double a = (xs_[j] - x) / h;
  const double b = (x - xs_[i]) / h;
  return a * ys_[i] + b * ys_[j] +
         ((a * a * a - a) * m2_[i] + (b * b * b - b) * m2_[j]) * h * h / 6.0;
}

void CubicSpline::eval_grid(double* out, std::size_t n) const {
  std::size_t seg = 0;
  const std::size_t last = xs_.size() - 2;
  for (std::size_t t = 0; t < n; ++t) {
    const double x = static_cast<double>(t);
    while (seg < last && x > xs_[seg + 1]) ++seg;
    const double h = xs_[seg + 1] - xs_[seg];
    const double a = (xs_[seg + 1] - x) / h;
    const double b = (x - xs_[seg]) / h;
    out[t] = a * ys_[seg] + b * ys_[seg + 1] +
             ((a * a * a - a) * m2_[seg] + (b * b * b - b) * m2_[seg + 1]) * h *
                 h / 6.0;
  }
}

}  // namespace eegsel
