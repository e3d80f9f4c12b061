#include <algorithm>
#include <cmath>
#include <limits>

#include "eegsel/classifiers.hpp"
#include "eegsel/kernels.hpp"

namespace eegsel {

// Soft-margin dual:
//   min_a  W(a) = 1/2 a'Qa - e'a,  Q_ij = y_i y_j K(x_i, x_j),
//   s.t.   y'a = 0,  0 <= a_i <= C,
// with K the RBF kernel. Solved by repeated analytic optimization of the
// maximal violating pair (Keerthi's working-set rule); the gradient is kept
// incrementally, so each update is O(n) after the kernel row lookups.

namespace {

constexpr double kTau = 1e-12;
constexpr double kSvEps = 1e-8;  // alpha above this counts as a support vector

struct Problem {
  std::size_t n = 0;
  std::size_t dim = 0;
  const double* rows = nullptr;
  std::vector<double> y;       // +1 ADHD, -1 HC
  std::vector<double> kernel;  // full n x n matrix
  double gamma = 1.0;

  double q(std::size_t i, std::size_t j) const {
    return y[i] * y[j] * kernel[i * n + j];
  }
};

double auto_gamma(const FeatureMatrix& X) {
  // 1 / (dim * mean per-feature population variance)
  const double n = static_cast<double>(X.n_rows);
  double var_sum = 0.0;
  for (std::size_t c = 0; c < X.n_cols; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < X.n_rows; ++r) mean += X.values[r * X.n_cols + c];
    mean /= n;
    double v = 0.0;
    for (std::size_t r = 0; r < X.n_rows; ++r) {
      const double d = X.values[r * X.n_cols + c] - mean;
      v += d * d;
    }
    var_sum += v / n;
  }
  const double mean_var = var_sum / static_cast<double>(X.n_cols);
  const double denom = static_cast<double>(X.n_cols) * std::max(mean_var, 1e-12);
  return 1.0 / denom;
}

}  // namespace

SvmModel svm_train(const FeatureMatrix& X, const SvmParams& p, SvmTrainInfo* info) {
  const std::size_t n = X.n_rows;
  if (n == 0) throw data_error("svm_train: empty matrix");
  if (X.count(ClassLabel::ADHD) == 0 || X.count(ClassLabel::HC) == 0)
    throw data_error("svm_train: both classes must be present");
  if (!(p.C > 0)) throw config_error("svm_train: C must be positive");
  if (n > 16384) throw config_error("svm_train: training set too large for the dense kernel cache");

  Problem pb;
  pb.n = n;
  pb.dim = X.n_cols;
  pb.rows = X.values.data();
  pb.gamma = p.gamma > 0 ? p.gamma : auto_gamma(X);
  pb.y.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    pb.y[i] = X.labels[i] == ClassLabel::ADHD ? 1.0 : -1.0;
  pb.kernel.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    pb.kernel[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = kernels::sq_dist(pb.rows + i * pb.dim,
                                         pb.rows + j * pb.dim, pb.dim);
      const double k = std::exp(-pb.gamma * d2);
      pb.kernel[i * n + j] = k;
      pb.kernel[j * n + i] = k;
    }
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // G = Qa - e, a = 0 initially
  const double C = p.C;

  std::size_t updates = 0;
  bool converged = false;
  if (info) {
    info->objective.clear();
    if (p.track_objective) info->objective.push_back(0.0);
  }

  while (updates < p.max_pair_updates) {
    // working-set selection: i maximizes -y G over I_up, j minimizes over I_low
    double up_val = -std::numeric_limits<double>::infinity();
    double low_val = std::numeric_limits<double>::infinity();
    std::size_t i = n, j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const bool in_up = (pb.y[t] > 0 && alpha[t] < C) || (pb.y[t] < 0 && alpha[t] > 0);
      const bool in_low = (pb.y[t] > 0 && alpha[t] > 0) || (pb.y[t] < 0 && alpha[t] < C);
      const double v = -pb.y[t] * grad[t];
      if (in_up && v > up_val) {
        up_val = v;
        i = t;
      }
      if (in_low && v < low_val) {
        low_val = v;
        j = t;
      }
    }
    if (i >= n || j >= n || up_val - low_val <= p.tol) {
      converged = true;
      break;
    }

    const double old_ai = alpha[i], old_aj = alpha[j];
    if (pb.y[i] != pb.y[j]) {
      const double quad = std::max(pb.q(i, i) + pb.q(j, j) + 2.0 * pb.q(i, j), kTau);
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
      } else {
        if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = -diff; }
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
      }
    } else {
      const double quad = std::max(pb.q(i, i) + pb.q(j, j) - 2.0 * pb.q(i, j), kTau);
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
      } else {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
        if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t)
      grad[t] += pb.q(t, i) * dai + pb.q(t, j) * daj;
    ++updates;
    if (info && p.track_objective) {
      // W = 1/2 a'G - 1/2 e'a  (since G = Qa - e)
      double w = 0.0;
      for (std::size_t t = 0; t < n; ++t) w += alpha[t] * (grad[t] - 1.0);
      info->objective.push_back(0.5 * w);
    }
  }

  if (info) {
    info->pair_updates = updates;
    info->converged = converged;
  }
  if (!converged)
    throw numeric_error("svm_train: no convergence after " +
                        std::to_string(updates) + " pair updates (tol = " +
                        std::to_string(p.tol) + ")");

  SvmModel m;
  m.gamma = pb.gamma;
  m.C = C;
  m.dim = pb.dim;
  // bias: average the KKT value over free support vectors, else the midpoint
  // of the violating-pair bounds
  double b_sum = 0.0;
  std::size_t b_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > kSvEps && alpha[t] < C - kSvEps) {
      double f = 0.0;
      for (std::size_t s = 0; s < n; ++s)
        f += alpha[s] * pb.y[s] * pb.kernel[t * n + s];
      b_sum += pb.y[t] - f;
      ++b_count;
    }
  }
  if (b_count > 0) {
    m.bias = b_sum / static_cast<double>(b_count);
  } else {
    double up_val = -std::numeric_limits<double>::infinity();
    double low_val = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const bool in_up = (pb.y[t] > 0 && alpha[t] < C) || (pb.y[t] < 0 && alpha[t] > 0);
      const bool in_low = (pb.y[t] > 0 && alpha[t] > 0) || (pb.y[t] < 0 && alpha[t] < C);
      const double v = -pb.y[t] * grad[t];
      if (in_up) up_val = std::max(up_val, v);
      if (in_low) low_val = std::min(low_val, v);
    }
    m.bias = (up_val + low_val) / 2.0;
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > kSvEps) {
      m.coefficients.push_back(alpha[t] * pb.y[t]);
      m.support_vectors.insert(m.support_vectors.end(), pb.rows + t * pb.dim,
                               pb.rows + (t + 1) * pb.dim);
    }
  }
  return m;
}

double svm_decision(const SvmModel& m, std::span<const double> x) {
  if (x.size() != m.dim) throw data_error("svm_predict: dimension mismatch");
  double f = m.bias;
  const std::size_t n_sv = m.coefficients.size();
  for (std::size_t i = 0; i < n_sv; ++i) {
    const double d2 =
        kernels::sq_dist(m.support_vectors.data() + i * m.dim, x.data(), m.dim);
    f += m.coefficients[i] * std::exp(-m.gamma * d2);
  }
  return f;
}

Prediction svm_predict(const SvmModel& m, std::span<const double> x) {
  const double f = svm_decision(m, x);
  return {f >= 0 ? ClassLabel::ADHD : ClassLabel::HC, f};
}

}  // namespace eegsel
