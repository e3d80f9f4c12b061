#include "eegsel/signal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "eegsel/io.hpp"
#include "eegsel/parallel.hpp"
#include "eegsel/rng.hpp"

namespace eegsel {

using json = nlohmann::json;

const std::vector<std::string>& standard_montage() {
  static const std::vector<std::string> names = {
      "Fz", "Cz", "Pz", "C3", "T7", "C4", "T8", "Fp1", "Fp2", "F3",
      "F4", "F7", "F8", "P3", "P4", "P7", "P8", "O1",  "O2"};
  return names;
}

std::string canonical_channel_name(const std::string& name) {
  static const std::map<std::string, std::string> aliases = {
      {"T3", "T7"}, {"T4", "T8"}, {"T5", "P7"}, {"T6", "P8"}};
  const auto it = aliases.find(name);
  return it == aliases.end() ? name : it->second;
}

namespace {

void validate_recording(const Recording& r) {
  if (r.channels.empty()) throw data_error(r.subject_id + ": no channels");
  if (r.n_samples < 1) throw data_error(r.subject_id + ": no samples");
  if (r.samples.size() != r.channels.size() * r.n_samples)
    throw data_error(r.subject_id + ": sample buffer size mismatch");
  if (!(r.sample_rate_hz > 0))
    throw data_error(r.subject_id + ": sample_rate_hz must be positive");
  std::set<std::string> uniq(r.channels.begin(), r.channels.end());
  if (uniq.size() != r.channels.size())
    throw data_error(r.subject_id + ": duplicate channel names");
  for (const double v : r.samples)
    if (!std::isfinite(v))
      throw data_error(r.subject_id + ": non-finite sample value");
}

}  // namespace

Dataset::Dataset(std::vector<Recording> recordings)
    : recordings_(std::move(recordings)) {
  std::set<std::string> ids;
  for (const Recording& r : recordings_) {
    validate_recording(r);
    if (!ids.insert(r.subject_id).second)
      throw data_error("duplicate subject_id: " + r.subject_id);
    if (r.channels != recordings_.front().channels)
      throw data_error(r.subject_id + ": channel list differs from dataset order");
  }
}

const std::vector<std::string>& Dataset::channels() const {
  static const std::vector<std::string> empty;
  return recordings_.empty() ? empty : recordings_.front().channels;
}

std::size_t Dataset::count_recordings(ClassLabel l) const {
  return static_cast<std::size_t>(std::count_if(
      recordings_.begin(), recordings_.end(),
      [l](const Recording& r) { return r.label == l; }));
}

std::size_t Dataset::count_segments(ClassLabel l) const {
  return static_cast<std::size_t>(
      std::count_if(segments_.begin(), segments_.end(),
                    [l](const Segment& s) { return s.label == l; }));
}

Dataset load_dataset(const std::filesystem::path& manifest_path) {
  json doc;
  try {
    doc = json::parse(read_text_file(manifest_path));
  } catch (const json::exception& e) {
    throw data_error(manifest_path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("channels") || !doc.contains("recordings"))
    throw data_error(manifest_path.string() +
                     ": manifest must name channels and recordings");
  const double rate = doc.value("sample_rate_hz", 128.0);
  if (!(rate > 0))
    throw data_error(manifest_path.string() + ": sample_rate_hz must be positive");

  std::vector<std::string> names;
  for (const auto& c : doc.at("channels"))
    names.push_back(canonical_channel_name(c.get<std::string>()));
  if (names.empty()) throw data_error(manifest_path.string() + ": empty channel list");
  {
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size())
      throw data_error(manifest_path.string() +
                       ": duplicate channel names after alias normalization");
  }

  // Column permutation: montage manifests are reordered to the canonical
  // montage order; a manifest mixing montage and unknown names is rejected;
  // fully non-montage manifests (synthetic data) keep their own order.
  const auto& montage = standard_montage();
  std::size_t known = 0;
  for (const auto& n : names)
    known += std::count(montage.begin(), montage.end(), n) ? 1u : 0u;
  std::vector<std::size_t> col_order(names.size());
  std::vector<std::string> canonical = names;
  if (known == names.size()) {
    std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (montage pos, col)
    for (std::size_t c = 0; c < names.size(); ++c) {
      const auto it = std::find(montage.begin(), montage.end(), names[c]);
      keyed.emplace_back(static_cast<std::size_t>(it - montage.begin()), c);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      col_order[i] = keyed[i].second;
      canonical[i] = names[keyed[i].second];
    }
  } else if (known != 0) {
    for (const auto& n : names)
      if (!std::count(montage.begin(), montage.end(), n))
        throw data_error(manifest_path.string() + ": unknown channel name '" + n +
                         "' in a montage manifest");
  } else {
    for (std::size_t c = 0; c < names.size(); ++c) col_order[c] = c;
  }

  const auto base_dir = manifest_path.parent_path();
  const auto& recs = doc.at("recordings");
  if (!recs.is_array() || recs.empty())
    throw data_error(manifest_path.string() + ": recordings must be a non-empty array");

  std::vector<Recording> out(recs.size());
  parallel_for(recs.size(), 4, [&](std::size_t i) {
    const auto& entry = recs.at(i);
    Recording r;
    r.subject_id = entry.at("subject_id").get<std::string>();
    r.label = label_from_string(entry.at("label").get<std::string>());
    r.sample_rate_hz = rate;
    r.channels = canonical;
    const auto path = base_dir / entry.at("path").get<std::string>();
    const CsvMatrix m = read_csv_matrix(path);
    if (m.n_cols != names.size())
      throw data_error(path.string() + ": has " + std::to_string(m.n_cols) +
                       " columns, manifest declares " + std::to_string(names.size()));
    r.n_samples = m.n_rows;
    r.samples.resize(m.n_rows * m.n_cols);
    for (std::size_t ch = 0; ch < names.size(); ++ch) {
      const std::size_t src_col = col_order[ch];
      double* dst = r.samples.data() + ch * r.n_samples;
      for (std::size_t t = 0; t < m.n_rows; ++t) dst[t] = m.at(t, src_col);
    }
    out[i] = std::move(r);
  });
  return Dataset(std::move(out));
}

void save_dataset(const Dataset& ds, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir / "data");
  json manifest;
  manifest["sample_rate_hz"] = ds.recordings().front().sample_rate_hz;
  manifest["channels"] = ds.channels();
  json recs = json::array();
  const std::size_t n_ch = ds.n_channels();
  for (const Recording& r : ds.recordings()) {
    const std::string rel = "data/" + r.subject_id + ".csv";
    // transpose back to row-per-sample
    std::vector<double> rows(r.n_samples * n_ch);
    for (std::size_t ch = 0; ch < n_ch; ++ch)
      for (std::size_t t = 0; t < r.n_samples; ++t)
        rows[t * n_ch + ch] = r.samples[ch * r.n_samples + t];
    write_csv_matrix(out_dir / rel, r.n_samples, n_ch, rows.data());
    recs.push_back({{"subject_id", r.subject_id},
                    {"label", to_string(r.label)},
                    {"path", rel}});
  }
  manifest["recordings"] = std::move(recs);
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

Dataset segment_dataset(Dataset ds, std::size_t window_len) {
  if (window_len < 2) throw config_error("window_len must be >= 2");
  ds.segments_.clear();
  for (std::size_t ri = 0; ri < ds.recordings_.size(); ++ri) {
    const Recording& r = ds.recordings_[ri];
    const std::size_t n_windows = r.n_samples / window_len;
    for (std::size_t w = 0; w < n_windows; ++w)
      ds.segments_.push_back({ri, r.label, w * window_len, window_len});
  }
  return ds;
}

namespace {

bool is_planted(const SynthesisSpec& spec, std::size_t channel) {
  return std::find(spec.planted_channels.begin(), spec.planted_channels.end(),
                   channel) != spec.planted_channels.end();
}

}  // namespace

double synthesis_spike_prob(const SynthesisSpec& spec, ClassLabel label,
                            std::size_t channel) {
  if (is_planted(spec, channel)) {
    const double delta = 0.08 * spec.effect_size;
    const double q = 0.15 + (label == ClassLabel::ADHD ? delta : -delta);
    return std::clamp(q, 0.01, 0.49);
  }
  // Deterministic ladder over the non-planted channels: spreads baseline
  // entropies so pooled (class-blind) entropy does not single out planted
  // channels, whose baseline sits mid-ladder.
  std::size_t pos = 0, count = 0;
  for (std::size_t c = 0; c < spec.n_channels; ++c) {
    if (is_planted(spec, c)) continue;
    if (c == channel) pos = count;
    ++count;
  }
  const double r = count > 1 ? static_cast<double>(pos) / (count - 1) : 0.5;
  return 0.05 + 0.20 * r;
}

double synthesis_smoothing(const SynthesisSpec& spec, ClassLabel label,
                           std::size_t channel) {
  if (is_planted(spec, channel)) {
    const double delta = 0.35 * spec.effect_size;
    const double k = 0.5 + (label == ClassLabel::ADHD ? delta : -delta);
    return std::clamp(k, 0.0, 1.5);
  }
  return 0.5;
}

Dataset synthesize_dataset(const SynthesisSpec& spec, std::uint64_t seed) {
  if (spec.n_per_class < 1) throw config_error("n_per_class must be >= 1");
  if (spec.n_samples < 1) throw config_error("n_samples must be >= 1");
  if (spec.n_channels < 1) throw config_error("n_channels must be >= 1");
  for (const std::size_t c : spec.planted_channels)
    if (c >= spec.n_channels)
      throw config_error("planted channel index " + std::to_string(c) +
                         " out of range (n_channels = " +
                         std::to_string(spec.n_channels) + ")");

  std::vector<std::string> names(spec.n_channels);
  for (std::size_t c = 0; c < spec.n_channels; ++c) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "ch%02zu", c);
    names[c] = buf;
  }

  constexpr double kSpikeAmp = 6.0;
  const std::size_t total = 2 * spec.n_per_class;
  std::vector<Recording> recs(total);
  parallel_for(total, 4, [&](std::size_t idx) {
    const ClassLabel label = idx < spec.n_per_class ? ClassLabel::ADHD : ClassLabel::HC;
    const std::size_t subject = idx % spec.n_per_class;
    Recording r;
    char id[32];
    std::snprintf(id, sizeof(id), "%s%03zu",
                  label == ClassLabel::ADHD ? "adhd" : "hc", subject);
    r.subject_id = id;
    r.label = label;
    r.sample_rate_hz = 128.0;
    r.channels = names;
    r.n_samples = spec.n_samples;
    r.samples.resize(spec.n_channels * spec.n_samples);
    std::vector<double> base(spec.n_samples + 2);
    for (std::size_t ch = 0; ch < spec.n_channels; ++ch) {
      // private substream per (class, subject, channel): generation order and
      // thread count cannot perturb the data
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(label), subject, ch));
      const double q = synthesis_spike_prob(spec, label, ch);
      const double kappa = synthesis_smoothing(spec, label, ch);
      const double norm = std::sqrt(1.0 + 2.0 * kappa * kappa);
      for (double& v : base) v = rng.normal();
      double* dst = r.samples.data() + ch * spec.n_samples;
      for (std::size_t t = 0; t < spec.n_samples; ++t) {
        if (rng.uniform() < q) {
          dst[t] = rng.uniform(-kSpikeAmp, kSpikeAmp);
        } else {
          // normalized 3-tap moving average: still exactly Gaussian, so the
          // amplitude histogram is independent of kappa
          dst[t] = (base[t + 1] + kappa * (base[t] + base[t + 2])) / norm;
        }
      }
    }
    recs[idx] = std::move(r);
  });
  return Dataset(std::move(recs));
}

}  // namespace eegsel
