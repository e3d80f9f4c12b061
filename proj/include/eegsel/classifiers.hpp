#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eegsel/features.hpp"

namespace eegsel {

enum class ClassifierKind { KNN, SVM, ENS };

const char* to_string(ClassifierKind k);
ClassifierKind classifier_from_string(const std::string& s);

struct Prediction {
  ClassLabel label = ClassLabel::HC;
  // signed decision value for SVM (ADHD positive), ADHD vote fraction for
  // kNN / ENS
  double score = 0.0;
};

// ---- k-nearest neighbor ----

struct KnnParams {
  int k = 5;
};

struct KnnModel {
  int k = 1;
  std::size_t dim = 0;
  std::vector<double> train;        // row-major
  std::vector<ClassLabel> labels;
};

KnnModel knn_train(const FeatureMatrix& X, const KnnParams& p);
Prediction knn_predict(const KnnModel& m, std::span<const double> x);

// ---- RBF-kernel SVM ----

struct SvmParams {
  double C = 1.0;
  double gamma = 0.0;  // 0 = auto: 1 / (dim * mean per-feature variance)
  double tol = 1e-3;
  std::size_t max_pair_updates = 1'000'000;
  bool track_objective = false;
};

struct SvmModel {
  double gamma = 1.0;
  double C = 1.0;
  double bias = 0.0;
  std::size_t dim = 0;
  std::vector<double> support_vectors;  // row-major n_sv x dim
  std::vector<double> coefficients;     // alpha_i * y_i per support vector
};

struct SvmTrainInfo {
  std::size_t pair_updates = 0;
  bool converged = false;
  std::vector<double> objective;  // dual objective after each update (optional)
};

// Sequential pairwise optimization of the soft-margin dual (maximal-violating-
// pair working set). Throws numeric_error when the update cap is reached
// before the KKT conditions hold within tol.
SvmModel svm_train(const FeatureMatrix& X, const SvmParams& p,
                   SvmTrainInfo* info = nullptr);
Prediction svm_predict(const SvmModel& m, std::span<const double> x);
double svm_decision(const SvmModel& m, std::span<const double> x);

// ---- bagged decision trees ----

struct EnsParams {
  int n_trees = 100;
  int max_depth = 10;
  std::uint64_t seed = 0;
};

struct TreeNode {
  // leaf when feature < 0
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  ClassLabel leaf = ClassLabel::HC;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;
  std::uint64_t bootstrap_seed = 0;
};

struct EnsembleModel {
  std::vector<DecisionTree> trees;
  int max_depth = 10;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::size_t n_train = 0;
};

EnsembleModel ens_train(const FeatureMatrix& X, const EnsParams& p,
                        int workers = 1);
Prediction ens_predict(const EnsembleModel& m, std::span<const double> x);

// Bootstrap row indices of one tree, regenerated from its recorded seed.
std::vector<std::size_t> bootstrap_indices(std::uint64_t tree_seed, std::size_t n);

// Out-of-bag accuracy over the training matrix the model was fitted on.
double ens_oob_accuracy(const EnsembleModel& m, const FeatureMatrix& X);

// ---- uniform interface ----

using TrainedModel = std::variant<KnnModel, SvmModel, EnsembleModel>;

ClassifierKind kind_of(const TrainedModel& m);
Prediction predict(const TrainedModel& m, std::span<const double> x);

// Versioned JSON document; a load round-trip reproduces identical predictions.
std::string model_to_json(const TrainedModel& m);
TrainedModel model_from_json(const std::string& text);

}  // namespace eegsel
