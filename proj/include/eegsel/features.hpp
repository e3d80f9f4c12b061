#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eegsel/emd.hpp"
#include "eegsel/signal.hpp"
#include "eegsel/slbp.hpp"

namespace eegsel {

enum class Extractor { EMD, DWT, SLBP };

const char* to_string(Extractor e);
Extractor extractor_from_string(const std::string& s);

struct ExtractionConfig {
  int dwt_levels = 3;
  int n_imfs = 3;
  SiftConfig sift;
  SlbpConfig slbp;
};

// Features per selected channel: EMD 3x4=12, DWT 4x4=16, SLBP 31 (for the
// default configuration).
std::size_t features_per_channel(Extractor e, const ExtractionConfig& cfg);

// (shannon_entropy, mean, variance, energy) of one coefficient vector.
// Entropy uses the energy-normalized distribution p_i = x_i^2 / sum x_j^2;
// variance is the population (1/n) form; an all-zero vector yields zeros.
struct StatFeatures {
  double entropy = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double energy = 0.0;
};

StatFeatures stat_features(std::span<const double> component);

struct FeatureMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::string> names;   // size n_cols
  std::vector<double> values;       // row-major
  std::vector<ClassLabel> labels;   // size n_rows

  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * n_cols, n_cols};
  }
  std::span<double> row(std::size_t r) {
    return {values.data() + r * n_cols, n_cols};
  }
  std::size_t count(ClassLabel l) const;
};

// Split-independent per-(segment, channel) feature blocks, shared across
// pipeline configurations so expensive decompositions run once.
class FeatureCache {
public:
  void build(const Dataset& ds, std::span<const Extractor> extractors,
             const ExtractionConfig& cfg, int workers);
  bool has(Extractor e) const;
  std::span<const double> block(Extractor e, std::size_t segment,
                                std::size_t channel) const;

private:
  struct Store {
    bool built = false;
    std::size_t width = 0;
    std::size_t n_channels = 0;
    std::vector<double> values;
  };
  Store stores_[3];
};

// Per-(segment, channel) feature block in the canonical column layout; the
// workhorse behind extract_features and the cache.
void compute_feature_block(const Dataset& ds, std::size_t segment,
                           std::size_t channel, Extractor e,
                           const ExtractionConfig& cfg, double* out);

// One row per segment; channel blocks concatenated in selection order.
FeatureMatrix extract_features(const Dataset& ds,
                               std::span<const std::size_t> segment_indices,
                               std::span<const std::size_t> channels, Extractor e,
                               const ExtractionConfig& cfg = {},
                               const FeatureCache* cache = nullptr,
                               int workers = 1);

// Per-feature z-scoring fitted on training rows; degenerate (constant)
// features are flagged and passed through with std := 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<std::uint8_t> degenerate;
  std::vector<std::string> fitted_names;
};

Standardizer fit_standardizer(const FeatureMatrix& train);
FeatureMatrix apply_standardizer(const Standardizer& s, const FeatureMatrix& m);

// Chi-square feature ranking: each feature is discretized into equal-frequency
// bins (edges from training rows only), a bins-by-classes contingency table is
// formed and scored; the top ceil(keep_fraction * d) features are kept.
struct SelectionMask {
  std::vector<std::size_t> kept_indices;  // strictly increasing
  std::vector<double> statistics;         // per original feature
  int n_bins = 10;
  double keep_fraction = 0.5;
  std::vector<std::string> fitted_names;
};

SelectionMask chi_square_select(const FeatureMatrix& train, int n_bins,
                                double keep_fraction);
FeatureMatrix apply_mask(const SelectionMask& mask, const FeatureMatrix& m);

// Chi-square statistic of an observed bins-by-2 contingency table; cells with
// zero expected count contribute nothing.
double chi_square_statistic(std::span<const std::array<std::uint64_t, 2>> table);

}  // namespace eegsel
