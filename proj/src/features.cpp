#include "eegsel/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "eegsel/dwt.hpp"
#include "eegsel/kernels.hpp"
#include "eegsel/parallel.hpp"

namespace eegsel {

const char* to_string(Extractor e) {
  switch (e) {
    case Extractor::EMD: return "EMD";
    case Extractor::DWT: return "DWT";
    default: return "SLBP";
  }
}

Extractor extractor_from_string(const std::string& s) {
  if (s == "EMD" || s == "emd") return Extractor::EMD;
  if (s == "DWT" || s == "dwt") return Extractor::DWT;
  if (s == "SLBP" || s == "slbp") return Extractor::SLBP;
  throw config_error("unknown extractor: '" + s + "' (expected EMD, DWT or SLBP)");
}

std::size_t features_per_channel(Extractor e, const ExtractionConfig& cfg) {
  switch (e) {
    case Extractor::EMD: return 4 * static_cast<std::size_t>(cfg.n_imfs);
    case Extractor::DWT: return 4 * (static_cast<std::size_t>(cfg.dwt_levels) + 1);
    default: return static_cast<std::size_t>(slbp_code_max(cfg.slbp)) + 1;
  }
}

StatFeatures stat_features(std::span<const double> component) {
  if (component.empty()) throw data_error("stat_features: empty component");
  const std::size_t n = component.size();
  StatFeatures f;
  f.energy = kernels::sumsq(component.data(), n);
  f.mean = kernels::sum(component.data(), n) / static_cast<double>(n);
  f.variance = kernels::sumsq_off(component.data(), n, f.mean) / static_cast<double>(n);
  if (f.energy > 0.0) {
    double h = 0.0;
    for (const double v : component) {
      const double p = v * v / f.energy;
      if (p > 0.0) h -= p * std::log2(p);
    }
    f.entropy = h < 0.0 ? 0.0 : h;
  }
  return f;
}

std::size_t FeatureMatrix::count(ClassLabel l) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

namespace {

void append_stat_names(std::vector<std::string>& names, const std::string& prefix) {
  for (const char* s : {"entropy", "mean", "variance", "energy"})
    names.push_back(prefix + "/" + s);
}

std::vector<std::string> block_names(const std::string& channel, Extractor e,
                                     const ExtractionConfig& cfg) {
  std::vector<std::string> names;
  switch (e) {
    case Extractor::EMD:
      for (int k = 1; k <= cfg.n_imfs; ++k)
        append_stat_names(names, channel + "/emd/imf" + std::to_string(k));
      break;
    case Extractor::DWT:
      for (const auto& sb : subband_names(cfg.dwt_levels))
        append_stat_names(names, channel + "/dwt/" + sb);
      break;
    case Extractor::SLBP: {
      const int bins = slbp_code_max(cfg.slbp) + 1;
      for (int b = 0; b < bins; ++b) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "bin%02d", b);
        names.push_back(channel + "/slbp/hist/" + buf);
      }
      break;
    }
  }
  return names;
}

void write_stats(const StatFeatures& f, double*& out) {
  *out++ = f.entropy;
  *out++ = f.mean;
  *out++ = f.variance;
  *out++ = f.energy;
}

}  // namespace

void compute_feature_block(const Dataset& ds, std::size_t segment,
                           std::size_t channel, Extractor e,
                           const ExtractionConfig& cfg, double* out) {
  const auto x = ds.segment_channel(segment, channel);
  switch (e) {
    case Extractor::EMD: {
      const EmdResult r = emd_decompose(x, cfg.n_imfs, cfg.sift);
      for (int k = 0; k < cfg.n_imfs; ++k) {
        if (k < static_cast<int>(r.imfs.size())) {
          write_stats(stat_features(r.imfs[static_cast<std::size_t>(k)]), out);
        } else {
          // missing natural mode: an all-zero component
          write_stats(StatFeatures{}, out);
        }
      }
      break;
    }
    case Extractor::DWT: {
      const WaveletDecomposition dec = dwt_multilevel(x, cfg.dwt_levels);
      for (const auto& sb : dec.subbands) write_stats(stat_features(sb), out);
      break;
    }
    case Extractor::SLBP: {
      const SlbpHistogram h = slbp_histogram(x, cfg.slbp);
      for (const std::uint64_t c : h.counts) *out++ = static_cast<double>(c);
      break;
    }
  }
}

void FeatureCache::build(const Dataset& ds, std::span<const Extractor> extractors,
                         const ExtractionConfig& cfg, int workers) {
  const std::size_t n_segs = ds.segments().size();
  const std::size_t n_ch = ds.n_channels();
  for (const Extractor e : extractors) {
    Store& st = stores_[static_cast<int>(e)];
    st.width = features_per_channel(e, cfg);
    st.n_channels = n_ch;
    st.values.assign(n_segs * n_ch * st.width, 0.0);
    parallel_for(n_segs * n_ch, workers, [&](std::size_t i) {
      const std::size_t seg = i / n_ch;
      const std::size_t ch = i % n_ch;
      compute_feature_block(ds, seg, ch, e, cfg,
                            st.values.data() + i * st.width);
    });
    st.built = true;
  }
}

bool FeatureCache::has(Extractor e) const {
  return stores_[static_cast<int>(e)].built;
}

std::span<const double> FeatureCache::block(Extractor e, std::size_t segment,
                                            std::size_t channel) const {
  const Store& st = stores_[static_cast<int>(e)];
  return {st.values.data() + (segment * st.n_channels + channel) * st.width,
          st.width};
}

FeatureMatrix extract_features(const Dataset& ds,
                               std::span<const std::size_t> segment_indices,
                               std::span<const std::size_t> channels, Extractor e,
                               const ExtractionConfig& cfg,
                               const FeatureCache* cache, int workers) {
  if (segment_indices.empty()) throw data_error("extract_features: no segments");
  if (channels.empty()) throw data_error("extract_features: no channels");
  for (const std::size_t ch : channels)
    if (ch >= ds.n_channels())
      throw config_error("extract_features: channel index out of range");

  const std::size_t width = features_per_channel(e, cfg);
  FeatureMatrix m;
  m.n_rows = segment_indices.size();
  m.n_cols = width * channels.size();
  m.values.assign(m.n_rows * m.n_cols, 0.0);
  m.labels.resize(m.n_rows);
  for (const std::size_t ch : channels) {
    const auto names = block_names(ds.channels()[ch], e, cfg);
    m.names.insert(m.names.end(), names.begin(), names.end());
  }

  const bool cached = cache && cache->has(e);
  parallel_for(m.n_rows, workers, [&](std::size_t r) {
    const std::size_t seg = segment_indices[r];
    m.labels[r] = ds.segments()[seg].label;
    double* dst = m.values.data() + r * m.n_cols;
    for (std::size_t c = 0; c < channels.size(); ++c, dst += width) {
      try {
        if (cached) {
          const auto blk = cache->block(e, seg, channels[c]);
          std::copy(blk.begin(), blk.end(), dst);
        } else {
          compute_feature_block(ds, seg, channels[c], e, cfg, dst);
        }
      } catch (const std::exception& ex) {
        throw data_error("extract_features: segment " + std::to_string(seg) +
                         ", channel " + ds.channels()[channels[c]] + ": " +
                         ex.what());
      }
    }
  });
  return m;
}

Standardizer fit_standardizer(const FeatureMatrix& train) {
  if (train.n_rows == 0) throw data_error("fit_standardizer: empty matrix");
  Standardizer s;
  s.mean.assign(train.n_cols, 0.0);
  s.stddev.assign(train.n_cols, 1.0);
  s.degenerate.assign(train.n_cols, 0);
  s.fitted_names = train.names;
  const double n = static_cast<double>(train.n_rows);
  for (std::size_t r = 0; r < train.n_rows; ++r) {
    const auto row = train.row(r);
    for (std::size_t c = 0; c < train.n_cols; ++c) s.mean[c] += row[c];
  }
  for (std::size_t c = 0; c < train.n_cols; ++c) s.mean[c] /= n;
  std::vector<double> var(train.n_cols, 0.0);
  for (std::size_t r = 0; r < train.n_rows; ++r) {
    const auto row = train.row(r);
    for (std::size_t c = 0; c < train.n_cols; ++c) {
      const double d = row[c] - s.mean[c];
      var[c] += d * d;
    }
  }
  for (std::size_t c = 0; c < train.n_cols; ++c) {
    const double sd = std::sqrt(var[c] / n);
    if (sd > 0.0) {
      s.stddev[c] = sd;
    } else {
      s.stddev[c] = 1.0;
      s.degenerate[c] = 1;
    }
  }
  return s;
}

FeatureMatrix apply_standardizer(const Standardizer& s, const FeatureMatrix& m) {
  if (s.fitted_names != m.names)
    throw data_error("apply_standardizer: feature names do not match the fit");
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.n_rows; ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < out.n_cols; ++c)
      row[c] = (row[c] - s.mean[c]) / s.stddev[c];
  }
  return out;
}

double chi_square_statistic(std::span<const std::array<std::uint64_t, 2>> table) {
  std::uint64_t col[2] = {0, 0};
  std::uint64_t total = 0;
  std::vector<std::uint64_t> row(table.size(), 0);
  for (std::size_t b = 0; b < table.size(); ++b) {
    row[b] = table[b][0] + table[b][1];
    col[0] += table[b][0];
    col[1] += table[b][1];
    total += row[b];
  }
  if (total == 0) return 0.0;
  double chi2 = 0.0;
  for (std::size_t b = 0; b < table.size(); ++b) {
    for (int k = 0; k < 2; ++k) {
      const double expected = static_cast<double>(row[b]) *
                              static_cast<double>(col[k]) /
                              static_cast<double>(total);
      if (expected <= 0.0) continue;
      const double d = static_cast<double>(table[b][k]) - expected;
      chi2 += d * d / expected;
    }
  }
  return chi2;
}

SelectionMask chi_square_select(const FeatureMatrix& train, int n_bins,
                                double keep_fraction) {
  if (n_bins < 2) throw config_error("chi_square_select: n_bins must be >= 2");
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
    throw config_error("chi_square_select: keep_fraction must be in (0, 1]");
  if (train.count(ClassLabel::ADHD) == 0 || train.count(ClassLabel::HC) == 0)
    throw data_error("chi_square_select: a class is absent from training rows");

  SelectionMask mask;
  mask.n_bins = n_bins;
  mask.keep_fraction = keep_fraction;
  mask.fitted_names = train.names;
  mask.statistics.assign(train.n_cols, 0.0);

  const std::size_t n = train.n_rows;
  std::vector<double> column(n);
  std::vector<double> sorted(n);
  for (std::size_t c = 0; c < train.n_cols; ++c) {
    for (std::size_t r = 0; r < n; ++r) column[r] = train.values[r * train.n_cols + c];
    sorted = column;
    std::sort(sorted.begin(), sorted.end());
    // equal-frequency edges: bin assignment depends only on ranks, making the
    // statistic invariant under strictly monotone feature transforms
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(n_bins) - 1);
    for (int b = 1; b < n_bins; ++b) {
      const std::size_t pos = b * n / static_cast<std::size_t>(n_bins);
      edges.push_back(sorted[std::min(pos, n - 1)]);
    }
    std::vector<std::array<std::uint64_t, 2>> table(
        static_cast<std::size_t>(n_bins), {0, 0});
    for (std::size_t r = 0; r < n; ++r) {
      // bin = number of edges <= x, so assignments depend only on ranks
      const std::size_t bin = static_cast<std::size_t>(
          std::upper_bound(edges.begin(), edges.end(), column[r]) - edges.begin());
      ++table[bin][train.labels[r] == ClassLabel::ADHD ? 0 : 1];
    }
    mask.statistics[c] = chi_square_statistic(table);
  }

  const std::size_t keep = static_cast<std::size_t>(
      std::ceil(keep_fraction * static_cast<double>(train.n_cols)));
  std::vector<std::size_t> order(train.n_cols);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (mask.statistics[a] != mask.statistics[b])
      return mask.statistics[a] > mask.statistics[b];
    return a < b;
  });
  order.resize(std::max<std::size_t>(1, std::min(keep, train.n_cols)));
  std::sort(order.begin(), order.end());
  mask.kept_indices = std::move(order);
  return mask;
}

FeatureMatrix apply_mask(const SelectionMask& mask, const FeatureMatrix& m) {
  if (mask.fitted_names != m.names)
    throw data_error("apply_mask: feature names do not match the fit");
  FeatureMatrix out;
  out.n_rows = m.n_rows;
  out.n_cols = mask.kept_indices.size();
  out.labels = m.labels;
  out.names.reserve(out.n_cols);
  for (const std::size_t c : mask.kept_indices) out.names.push_back(m.names[c]);
  out.values.resize(out.n_rows * out.n_cols);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const auto src = m.row(r);
    double* dst = out.values.data() + r * out.n_cols;
    for (std::size_t i = 0; i < out.n_cols; ++i) dst[i] = src[mask.kept_indices[i]];
  }
  return out;
}

}  // namespace eegsel
