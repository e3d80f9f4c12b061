#pragma once

#include <span>
#include <vector>

#include "eegsel/common.hpp"

namespace eegsel {

struct SiftConfig {
  int max_sift_iters = 100;
  // Rilling et al. stopping thresholds
  double theta1 = 0.05;
  double theta2 = 0.5;
  double alpha = 0.05;
};

struct EmdResult {
  std::vector<std::vector<double>> imfs;  // natural modes only, most oscillatory first
  std::vector<double> residue;
  SiftConfig config;
  int requested = 0;

  bool padded() const { return static_cast<int>(imfs.size()) < requested; }
};

struct ExtremaLists {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
};

// Strict sign change of the first difference; a plateau contributes one
// extremum at its midpoint.
ExtremaLists find_extrema(std::span<const double> x);

// Sign changes between consecutive nonzero samples.
std::size_t count_zero_crossings(std::span<const double> x);

std::vector<double> sift_imf(std::span<const double> signal, const SiftConfig& cfg);

// Extracts up to n_imfs intrinsic mode functions. Extraction stops early when
// the residue is monotone or has fewer than two maxima or minima; the sum of
// IMFs plus the residue reproduces the input exactly by construction.
EmdResult emd_decompose(std::span<const double> signal, int n_imfs,
                        const SiftConfig& cfg = {});

}  // namespace eegsel
