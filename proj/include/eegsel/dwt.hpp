#pragma once

#include <array>
#include <span>
#include <vector>

#include "eegsel/common.hpp"

namespace eegsel {

// Daubechies-4 scaling filter (8 taps, 4 vanishing moments), orthonormal:
// sum h = sqrt(2), sum h^2 = 1.
const std::array<double, 8>& db4_scaling_filter();

// Multilevel pyramid decomposition with the db4 wavelet.
//
// Per level: half-point symmetric extension by 7 on each side, correlation
// with the decomposition filters, downsample keeping odd positions of the
// valid part. Output length per level: floor((n + 7) / 2). Subbands are
// ordered [cA_L, cD_L, ..., cD_1].
struct WaveletDecomposition {
  int levels = 0;
  std::vector<std::vector<double>> subbands;
  std::vector<std::size_t> input_lengths;  // length fed to each level
};

WaveletDecomposition dwt_multilevel(std::span<const double> signal, int levels);

// Inverse transform; exact up to floating-point rounding (the per-level
// transform is slightly expansive, so the boundary information is retained).
std::vector<double> idwt_multilevel(const WaveletDecomposition& dec,
                                    std::size_t original_len);

// Single-level building blocks (also used by the tests).
void dwt_single(std::span<const double> x, std::vector<double>& approx,
                std::vector<double>& detail);
std::vector<double> idwt_single(std::span<const double> approx,
                                std::span<const double> detail,
                                std::size_t out_len);

// Canonical subband names for level-3 decompositions: cA3, cD3, cD2, cD1.
std::vector<std::string> subband_names(int levels);

}  // namespace eegsel
