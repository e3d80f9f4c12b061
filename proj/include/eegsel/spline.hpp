#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eegsel/common.hpp"

namespace eegsel {

// Natural cubic spline through (xs, ys); xs strictly increasing. With two
// knots it degrades to linear interpolation.
class CubicSpline {
public:
  CubicSpline(std::span<const double> xs, std::span<const double> ys);

  double operator()(double x) const;

  // Evaluates at x = 0, 1, ..., n-1 in one left-to-right sweep.
  void eval_grid(double* out, std::size_t n) const;

private:
  std::vector<double> xs_, ys_, m2_;  // knots and second derivatives
};

}  // namespace eegsel
