#include <algorithm>
#include <cmath>

#include "eegsel/classifiers.hpp"
#include "eegsel/parallel.hpp"
#include "eegsel/rng.hpp"

namespace eegsel {

// Bagging over CART-style trees: per tree a size-n bootstrap sample (seeded
// deterministically per tree, so results do not depend on the worker count),
// Gini-impurity splits over all features, grown to max_depth or purity.

namespace {

struct Builder {
  const FeatureMatrix* X = nullptr;
  int max_depth = 10;
  std::vector<TreeNode>* nodes = nullptr;

  ClassLabel majority(const std::vector<std::size_t>& rows) const {
    std::size_t adhd = 0;
    for (const std::size_t r : rows)
      adhd += X->labels[r] == ClassLabel::ADHD ? 1u : 0u;
    const std::size_t hc = rows.size() - adhd;
    if (adhd == hc) return ClassLabel::ADHD;  // documented tie rule
    return adhd > hc ? ClassLabel::ADHD : ClassLabel::HC;
  }

  std::int32_t leaf(const std::vector<std::size_t>& rows) {
    TreeNode node;
    node.feature = -1;
    node.leaf = majority(rows);
    nodes->push_back(node);
    return static_cast<std::int32_t>(nodes->size() - 1);
  }

  std::int32_t grow(std::vector<std::size_t> rows, int depth) {
    std::size_t adhd = 0;
    for (const std::size_t r : rows)
      adhd += X->labels[r] == ClassLabel::ADHD ? 1u : 0u;
    if (depth >= max_depth || rows.size() < 2 || adhd == 0 || adhd == rows.size())
      return leaf(rows);

    const std::size_t n = rows.size();
    const double total = static_cast<double>(n);
    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;

    const double parent_gini =
        1.0 - (static_cast<double>(adhd) / total) * (static_cast<double>(adhd) / total) -
        (static_cast<double>(n - adhd) / total) * (static_cast<double>(n - adhd) / total);

    std::vector<std::pair<double, std::size_t>> order(n);
    for (std::size_t f = 0; f < X->n_cols; ++f) {
      for (std::size_t i = 0; i < n; ++i)
        order[i] = {X->values[rows[i] * X->n_cols + f], rows[i]};
      std::sort(order.begin(), order.end());
      std::size_t left_adhd = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_adhd += X->labels[order[i].second] == ClassLabel::ADHD ? 1u : 0u;
        if (order[i].first == order[i + 1].first) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = total - nl;
        const double pl = static_cast<double>(left_adhd) / nl;
        const double pr = static_cast<double>(adhd - left_adhd) / nr;
        const double gini_l = 1.0 - pl * pl - (1.0 - pl) * (1.0 - pl);
        const double gini_r = 1.0 - pr * pr - (1.0 - pr) * (1.0 - pr);
        const double gain = parent_gini - (nl * gini_l + nr * gini_r) / total;
        // strict improvement; ties keep the first (feature asc, threshold asc)
        if (gain > best_gain + 1e-15) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = 0.5 * (order[i].first + order[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return leaf(rows);

    std::vector<std::size_t> left_rows, right_rows;
    for (const std::size_t r : rows) {
      if (X->values[r * X->n_cols + static_cast<std::size_t>(best_feature)] <=
          best_threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    if (left_rows.empty() || right_rows.empty()) return leaf(rows);

    const std::int32_t self = static_cast<std::int32_t>(nodes->size());
    nodes->push_back(TreeNode{best_feature, best_threshold, -1, -1, ClassLabel::HC});
    const std::int32_t l = grow(std::move(left_rows), depth + 1);
    const std::int32_t r = grow(std::move(right_rows), depth + 1);
    (*nodes)[static_cast<std::size_t>(self)].left = l;
    (*nodes)[static_cast<std::size_t>(self)].right = r;
    return self;
  }
};

ClassLabel tree_predict(const DecisionTree& t, std::span<const double> x) {
  std::int32_t i = 0;
  for (;;) {
    const TreeNode& node = t.nodes[static_cast<std::size_t>(i)];
    if (node.feature < 0) return node.leaf;
    i = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                    : node.right;
  }
}

}  // namespace

std::vector<std::size_t> bootstrap_indices(std::uint64_t tree_seed, std::size_t n) {
  Rng rng(tree_seed);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i)
    idx[i] = static_cast<std::size_t>(rng.bounded(n));
  return idx;
}

EnsembleModel ens_train(const FeatureMatrix& X, const EnsParams& p, int workers) {
  if (X.n_rows == 0) throw data_error("ens_train: empty matrix");
  if (X.count(ClassLabel::ADHD) == 0 || X.count(ClassLabel::HC) == 0)
    throw data_error("ens_train: both classes must be present");
  if (p.n_trees < 1) throw config_error("ens_train: n_trees must be >= 1");
  if (p.max_depth < 1) throw config_error("ens_train: max_depth must be >= 1");

  EnsembleModel m;
  m.max_depth = p.max_depth;
  m.seed = p.seed;
  m.dim = X.n_cols;
  m.n_train = X.n_rows;
  m.trees.resize(static_cast<std::size_t>(p.n_trees));
  parallel_for(m.trees.size(), workers, [&](std::size_t t) {
    DecisionTree tree;
    tree.bootstrap_seed = mix_seed(p.seed, t);
    std::vector<std::size_t> rows = bootstrap_indices(tree.bootstrap_seed, X.n_rows);
    std::sort(rows.begin(), rows.end());
    Builder b{&X, p.max_depth, &tree.nodes};
    b.grow(std::move(rows), 0);
    m.trees[t] = std::move(tree);
  });
  return m;
}

Prediction ens_predict(const EnsembleModel& m, std::span<const double> x) {
  if (x.size() != m.dim) throw data_error("ens_predict: dimension mismatch");
  std::size_t adhd = 0;
  for (const DecisionTree& t : m.trees)
    adhd += tree_predict(t, x) == ClassLabel::ADHD ? 1u : 0u;
  const std::size_t hc = m.trees.size() - adhd;
  Prediction p;
  p.score = static_cast<double>(adhd) / static_cast<double>(m.trees.size());
  p.label = adhd >= hc ? ClassLabel::ADHD : ClassLabel::HC;  // tie favors ADHD
  return p;
}

double ens_oob_accuracy(const EnsembleModel& m, const FeatureMatrix& X) {
  if (X.n_rows != m.n_train || X.n_cols != m.dim)
    throw data_error("ens_oob_accuracy: matrix does not match the trained model");
  std::size_t evaluated = 0, correct = 0;
  std::vector<std::vector<std::uint8_t>> in_bag(m.trees.size());
  for (std::size_t t = 0; t < m.trees.size(); ++t) {
    in_bag[t].assign(X.n_rows, 0);
    for (const std::size_t r : bootstrap_indices(m.trees[t].bootstrap_seed, m.n_train))
      in_bag[t][r] = 1;
  }
  for (std::size_t r = 0; r < X.n_rows; ++r) {
    std::size_t votes = 0, adhd = 0;
    for (std::size_t t = 0; t < m.trees.size(); ++t) {
      if (in_bag[t][r]) continue;
      ++votes;
      adhd += tree_predict(m.trees[t], X.row(r)) == ClassLabel::ADHD ? 1u : 0u;
    }
    if (votes == 0) continue;
    const ClassLabel pred =
        2 * adhd >= votes ? ClassLabel::ADHD : ClassLabel::HC;
    ++evaluated;
    correct += pred == X.labels[r] ? 1u : 0u;
  }
  if (evaluated == 0) throw data_error("ens_oob_accuracy: no out-of-bag rows");
  return static_cast<double>(correct) / static_cast<double>(evaluated);
}

ClassifierKind kind_of(const TrainedModel& m) {
  if (std::holds_alternative<KnnModel>(m)) return ClassifierKind::KNN;
  if (std::holds_alternative<SvmModel>(m)) return ClassifierKind::SVM;
  return ClassifierKind::ENS;
}

Prediction predict(const TrainedModel& m, std::span<const double> x) {
  return std::visit(
      [&](const auto& model) {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, KnnModel>) return knn_predict(model, x);
        else if constexpr (std::is_same_v<T, SvmModel>) return svm_predict(model, x);
        else return ens_predict(model, x);
      },
      m);
}

}  // namespace eegsel
