#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eegsel/classifiers.hpp"
#include "eegsel/ranking.hpp"

namespace eegsel {

enum class SplitStrategy { Chrono7030, RandomRepeated7030, KFold };
enum class SplitUnit { Segment, Subject };

const char* to_string(SplitStrategy s);
SplitStrategy strategy_from_string(const std::string& s);
const char* to_string(SplitUnit u);
SplitUnit unit_from_string(const std::string& s);

struct SplitPlan {
  SplitStrategy strategy = SplitStrategy::KFold;
  int repeats = 10;  // RandomRepeated7030
  int folds = 10;    // KFold
  std::uint64_t seed = 0;
  SplitUnit unit = SplitUnit::Segment;
};

// Train/test partition expressed as segment indices into ds.segments().
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

std::vector<Split> make_splits(const Dataset& ds, const SplitPlan& plan);

struct ConfusionCounts {
  std::uint64_t tp = 0, fn = 0, tn = 0, fp = 0;

  std::uint64_t total() const { return tp + fn + tn + fp; }
};

struct Metrics {
  double accuracy = 0.0;
  std::optional<double> sensitivity;  // undefined when no positives tested
  std::optional<double> specificity;  // undefined when no negatives tested
};

Metrics compute_metrics(const ConfusionCounts& c);

struct PipelineConfig {
  RankingMethod ranking = RankingMethod::EntropyDifference;
  std::size_t n_channels = 3;
  Extractor extractor = Extractor::SLBP;
  ClassifierKind classifier = ClassifierKind::KNN;
  int pmf_bins = 256;
  int chi2_bins = 10;
  double keep_fraction = 0.5;
  ExtractionConfig extraction;
  KnnParams knn;
  SvmParams svm;
  EnsParams ens;
  std::uint64_t seed = 0;
};

// Everything fitted on one split's training half, recorded for provenance
// and for the leakage assertions.
struct SplitResult {
  ConfusionCounts counts;
  Metrics metrics;
  std::vector<ChannelScore> ranking;       // full training-data ranking
  std::vector<std::size_t> selected_channels;
  std::vector<std::size_t> mask_kept;
  std::vector<double> standardizer_mean;
  std::vector<double> standardizer_std;
};

struct EvaluationRow {
  PipelineConfig cfg;
  SplitPlan plan;
  Metrics mean_metrics;  // arithmetic mean of the per-split metrics
  std::vector<SplitResult> splits;
};

// Rank on train only, select top N, extract on the selected channels,
// standardize and chi-square-select (fit on train), classify the test half.
EvaluationRow run_pipeline(const Dataset& ds, const SplitPlan& plan,
                           const PipelineConfig& cfg,
                           const FeatureCache* cache = nullptr, int workers = 1);

struct SweepRow {
  RankingMethod method;
  Extractor extractor;
  ClassifierKind classifier;
  std::size_t n_channels;
  double accuracy;
};

// Accuracy against the number of selected channels, N = 1..n_channels, for
// both ranking methods.
std::vector<SweepRow> sweep_channels(const Dataset& ds, const SplitPlan& plan,
                                     const PipelineConfig& cfg,
                                     std::size_t max_channels = 0,
                                     const FeatureCache* cache = nullptr,
                                     int workers = 1);

// Report serialization used by the CLI and the determinism tests.
std::string report_to_json(const std::vector<EvaluationRow>& rows);
std::string report_to_csv(const std::vector<EvaluationRow>& rows);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace eegsel
