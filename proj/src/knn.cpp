#include <algorithm>
#include <cmath>

#include "eegsel/classifiers.hpp"
#include "eegsel/kernels.hpp"

namespace eegsel {

const char* to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::KNN: return "KNN";
    case ClassifierKind::SVM: return "SVM";
    default: return "ENS";
  }
}

ClassifierKind classifier_from_string(const std::string& s) {
  if (s == "KNN" || s == "knn" || s == "k-NN") return ClassifierKind::KNN;
  if (s == "SVM" || s == "svm") return ClassifierKind::SVM;
  if (s == "ENS" || s == "ens") return ClassifierKind::ENS;
  throw config_error("unknown classifier: '" + s + "' (expected KNN, SVM or ENS)");
}

KnnModel knn_train(const FeatureMatrix& X, const KnnParams& p) {
  if (X.n_rows == 0) throw data_error("knn_train: empty matrix");
  if (p.k < 1 || static_cast<std::size_t>(p.k) > X.n_rows)
    throw config_error("knn_train: k out of range [1, n_train]");
  KnnModel m;
  m.k = p.k;
  m.dim = X.n_cols;
  m.train = X.values;
  m.labels = X.labels;
  return m;
}

Prediction knn_predict(const KnnModel& m, std::span<const double> x) {
  if (x.size() != m.dim) throw data_error("knn_predict: dimension mismatch");
  const std::size_t n = m.labels.size();
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i)
    dist[i] = {kernels::sq_dist(m.train.data() + i * m.dim, x.data(), m.dim), i};
  const std::size_t k = static_cast<std::size_t>(m.k);
  // distance ties broken by training-row index
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                    dist.end());
  std::size_t votes_adhd = 0;
  double dsum_adhd = 0.0, dsum_hc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = std::sqrt(dist[i].first);
    if (m.labels[dist[i].second] == ClassLabel::ADHD) {
      ++votes_adhd;
      dsum_adhd += d;
    } else {
      dsum_hc += d;
    }
  }
  Prediction pred;
  pred.score = static_cast<double>(votes_adhd) / static_cast<double>(k);
  const std::size_t votes_hc = k - votes_adhd;
  if (votes_adhd != votes_hc) {
    pred.label = votes_adhd > votes_hc ? ClassLabel::ADHD : ClassLabel::HC;
  } else if (dsum_adhd != dsum_hc) {
    // vote tie: the class closer in summed distance wins
    pred.label = dsum_adhd < dsum_hc ? ClassLabel::ADHD : ClassLabel::HC;
  } else {
    pred.label = ClassLabel::ADHD;  // documented final tie rule
  }
  return pred;
}

}  // namespace eegsel
