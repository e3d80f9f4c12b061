#include "eegsel/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eegsel/kernels.hpp"

namespace eegsel {

const char* to_string(RankingMethod m) {
  return m == RankingMethod::Entropy ? "En" : "EnD";
}

RankingMethod ranking_method_from_string(const std::string& s) {
  if (s == "En" || s == "entropy") return RankingMethod::Entropy;
  if (s == "EnD" || s == "entropy-difference") return RankingMethod::EntropyDifference;
  throw config_error("unknown ranking method: '" + s + "' (expected En or EnD)");
}

namespace {

void check_samples(std::span<const double> samples, int n_bins) {
  if (samples.empty()) throw data_error("pmf estimation: empty sample sequence");
  if (n_bins < 2) throw config_error("pmf estimation: n_bins must be >= 2");
  for (const double v : samples)
    if (!std::isfinite(v)) throw data_error("pmf estimation: non-finite sample");
}

void accumulate_hist(std::span<const double> samples, double lo, double hi,
                     std::vector<std::uint64_t>& counts) {
  const int n_bins = static_cast<int>(counts.size());
  if (lo == hi) {
    counts[0] += samples.size();
    return;
  }
  const double scale = n_bins / (hi - lo);
  for (const double v : samples) {
    int idx = static_cast<int>((v - lo) * scale);
    if (idx < 0) idx = 0;
    if (idx >= n_bins) idx = n_bins - 1;
    ++counts[idx];
  }
}

double entropy_from_counts(const std::vector<std::uint64_t>& counts,
                           std::uint64_t total) {
  double h = 0.0;
  const double n = static_cast<double>(total);
  for (const std::uint64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

// Entropy of one channel pooled across a set of segments, without
// materializing the concatenation: a min/max pass then a histogram pass.
double pooled_entropy(const Dataset& ds, std::span<const std::size_t> segs,
                      std::size_t ch, int n_bins) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::uint64_t total = 0;
  for (const std::size_t s : segs) {
    const auto x = ds.segment_channel(s, ch);
    double slo, shi;
    kernels::minmax(x.data(), x.size(), slo, shi);
    lo = std::min(lo, slo);
    hi = std::max(hi, shi);
    total += x.size();
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n_bins), 0);
  for (const std::size_t s : segs)
    accumulate_hist(ds.segment_channel(s, ch), lo, hi, counts);
  return entropy_from_counts(counts, total);
}

ChannelRanking sorted_ranking(RankingMethod method, int n_bins,
                              const Dataset& ds, std::vector<double> raw) {
  ChannelRanking r;
  r.method = method;
  r.n_bins = n_bins;
  r.scores.resize(raw.size());
  for (std::size_t c = 0; c < raw.size(); ++c)
    r.scores[c] = {c, ds.channels()[c], raw[c]};
  std::stable_sort(r.scores.begin(), r.scores.end(),
                   [](const ChannelScore& a, const ChannelScore& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.channel_index < b.channel_index;
                   });
  return r;
}

}  // namespace

std::vector<double> estimate_pmf(std::span<const double> samples, int n_bins) {
  check_samples(samples, n_bins);
  double lo, hi;
  kernels::minmax(samples.data(), samples.size(), lo, hi);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n_bins), 0);
  accumulate_hist(samples, lo, hi, counts);
  std::vector<double> pmf(counts.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    pmf[i] = static_cast<double>(counts[i]) / n;
  return pmf;
}

double shannon_entropy_bits(std::span<const double> pmf) {
  double h = 0.0;
  for (const double p : pmf)
    if (p > 0.0) h -= p * std::log2(p);
  return h < 0.0 ? 0.0 : h;
}

double channel_entropy(std::span<const double> samples, int n_bins) {
  check_samples(samples, n_bins);
  double lo, hi;
  kernels::minmax(samples.data(), samples.size(), lo, hi);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n_bins), 0);
  accumulate_hist(samples, lo, hi, counts);
  return entropy_from_counts(counts, samples.size());
}

ChannelRanking rank_by_entropy(const Dataset& ds,
                               std::span<const std::size_t> segment_indices,
                               int n_bins) {
  if (segment_indices.empty())
    throw data_error("rank_by_entropy: empty training set");
  std::vector<std::size_t> segs(segment_indices.begin(), segment_indices.end());
  std::vector<double> scores(ds.n_channels());
  for (std::size_t ch = 0; ch < scores.size(); ++ch)
    scores[ch] = pooled_entropy(ds, segs, ch, n_bins);
  return sorted_ranking(RankingMethod::Entropy, n_bins, ds, std::move(scores));
}

ChannelRanking rank_by_entropy_difference(
    const Dataset& ds, std::span<const std::size_t> segment_indices, int n_bins) {
  std::vector<std::size_t> adhd, hc;
  for (const std::size_t s : segment_indices) {
    (ds.segments()[s].label == ClassLabel::ADHD ? adhd : hc).push_back(s);
  }
  if (adhd.empty() || hc.empty())
    throw data_error("rank_by_entropy_difference: a class has no training segments");
  std::vector<double> scores(ds.n_channels());
  for (std::size_t ch = 0; ch < scores.size(); ++ch) {
    const double ha = pooled_entropy(ds, adhd, ch, n_bins);
    const double hh = pooled_entropy(ds, hc, ch, n_bins);
    scores[ch] = std::abs(ha - hh);
  }
  return sorted_ranking(RankingMethod::EntropyDifference, n_bins, ds,
                        std::move(scores));
}

ChannelRanking rank_channels(RankingMethod method, const Dataset& ds,
                             std::span<const std::size_t> segment_indices,
                             int n_bins) {
  return method == RankingMethod::Entropy
             ? rank_by_entropy(ds, segment_indices, n_bins)
             : rank_by_entropy_difference(ds, segment_indices, n_bins);
}

std::vector<std::size_t> select_channels(const ChannelRanking& ranking,
                                         std::size_t n) {
  if (n < 1 || n > ranking.scores.size())
    throw config_error("select_channels: n out of range");
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ranking.scores[i].channel_index;
  return out;
}

}  // namespace eegsel
