#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eegsel/common.hpp"

namespace eegsel {

// Symmetrically-weighted local binary pattern over a 1-D signal. Each sample
// is compared against L neighbors on each side; the left comparisons carry
// weights 2^(L-1)..2^0 (approaching the center) and the right comparisons
// 2^0..2^(L-1) (leaving the center), so the code range is [0, 2*(2^L - 1)]
// and L = 4 yields a 31-bin histogram.
struct SlbpConfig {
  int half_width = 4;  // L
};

inline int slbp_code_max(const SlbpConfig& cfg) {
  return 2 * ((1 << cfg.half_width) - 1);
}

// Code at center index n; valid for L <= n <= len-L-1.
int slbp_code(std::span<const double> signal, std::size_t n, const SlbpConfig& cfg);

struct SlbpHistogram {
  std::vector<std::uint64_t> counts;  // size 2*(2^L - 1) + 1
  std::uint64_t n_coded = 0;          // == len - 2L
};

// Histogram of codes over every sample with a complete neighborhood;
// boundary samples are skipped, counts are raw (unnormalized).
SlbpHistogram slbp_histogram(std::span<const double> signal, const SlbpConfig& cfg);

}  // namespace eegsel
