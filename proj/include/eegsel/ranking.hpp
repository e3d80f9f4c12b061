#pragma once

#include <span>
#include <string>
#include <vector>

#include "eegsel/signal.hpp"

namespace eegsel {

enum class RankingMethod { Entropy, EntropyDifference };

const char* to_string(RankingMethod m);
RankingMethod ranking_method_from_string(const std::string& s);

struct ChannelScore {
  std::size_t channel_index = 0;
  std::string channel_name;
  double score = 0.0;  // bits
};

struct ChannelRanking {
  RankingMethod method = RankingMethod::Entropy;
  int n_bins = 256;
  std::vector<ChannelScore> scores;  // descending; ties by ascending index
};

// Equal-width histogram over [min, max] of the samples; a constant sequence
// puts all mass in bin 0. Sums to 1 within 1e-12.
std::vector<double> estimate_pmf(std::span<const double> samples, int n_bins);

// H = -sum p_i log2 p_i with 0 log2 0 := 0.
double shannon_entropy_bits(std::span<const double> pmf);
double channel_entropy(std::span<const double> samples, int n_bins);

// Pooled-sample entropy per channel over the given segments (both classes).
ChannelRanking rank_by_entropy(const Dataset& ds,
                               std::span<const std::size_t> segment_indices,
                               int n_bins);

// |H_ADHD - H_HC| per channel, each entropy over that class's pooled
// training samples.
ChannelRanking rank_by_entropy_difference(const Dataset& ds,
                                          std::span<const std::size_t> segment_indices,
                                          int n_bins);

ChannelRanking rank_channels(RankingMethod method, const Dataset& ds,
                             std::span<const std::size_t> segment_indices,
                             int n_bins);

// First n entries of the ranking; the same list is applied unchanged to test
// data.
std::vector<std::size_t> select_channels(const ChannelRanking& ranking,
                                         std::size_t n);

}  // namespace eegsel
