#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "eegsel/common.hpp"

namespace eegsel {

// One subject's multi-channel recording. Samples are stored channel-major so
// every downstream per-channel pass works on a contiguous span.
struct Recording {
  std::string subject_id;
  ClassLabel label = ClassLabel::HC;
  double sample_rate_hz = 128.0;
  std::vector<std::string> channels;  // canonical column order
  std::size_t n_samples = 0;
  std::vector<double> samples;  // [ch * n_samples + t]

  std::span<const double> channel(std::size_t ch) const {
    return {samples.data() + ch * n_samples, n_samples};
  }
};

// Fixed-length window of one recording across all channels. Views into the
// parent recording; the owning Dataset provides the sample access.
struct Segment {
  std::size_t recording_index = 0;
  ClassLabel label = ClassLabel::HC;
  std::size_t start_sample = 0;
  std::size_t length = 0;
};

class Dataset {
public:
  Dataset() = default;
  explicit Dataset(std::vector<Recording> recordings);

  const std::vector<Recording>& recordings() const { return recordings_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<std::string>& channels() const;
  std::size_t n_channels() const { return channels().size(); }

  std::span<const double> segment_channel(const Segment& s, std::size_t ch) const {
    const Recording& r = recordings_[s.recording_index];
    return {r.samples.data() + ch * r.n_samples + s.start_sample, s.length};
  }
  std::span<const double> segment_channel(std::size_t seg, std::size_t ch) const {
    return segment_channel(segments_[seg], ch);
  }
  const std::string& subject_of(const Segment& s) const {
    return recordings_[s.recording_index].subject_id;
  }

  std::size_t count_recordings(ClassLabel l) const;
  std::size_t count_segments(ClassLabel l) const;

  friend Dataset segment_dataset(Dataset ds, std::size_t window_len);

private:
  std::vector<Recording> recordings_;
  std::vector<Segment> segments_;
};

// The 19-channel 10-20 montage in canonical column order. Older T3/T4/T5/T6
// names are accepted as aliases for T7/T8/P7/P8.
const std::vector<std::string>& standard_montage();
std::string canonical_channel_name(const std::string& name);

// Manifest format: one JSON document naming sample_rate_hz, channels and the
// per-recording CSV files (see README). Columns are reordered to the standard
// montage when every channel name belongs to it.
Dataset load_dataset(const std::filesystem::path& manifest_path);

// Writes <out_dir>/manifest.json plus one CSV per recording under
// <out_dir>/data/. Numeric payload round-trips bit-identically.
void save_dataset(const Dataset& ds, const std::filesystem::path& out_dir);

// Non-overlapping windows from sample 0; the trailing partial window is
// discarded. Segment order: recording order, then start_sample ascending.
Dataset segment_dataset(Dataset ds, std::size_t window_len);

struct SynthesisSpec {
  std::size_t n_per_class = 10;
  std::size_t n_samples = 8192;
  std::size_t n_channels = 19;
  std::vector<std::size_t> planted_channels;
  double effect_size = 1.0;
};

// Class-conditional generator parameters of a channel. Non-planted channels
// get the same values for both classes.
//
// spike_prob: per-sample probability of a bounded Uniform(-6,6) excursion
// replacing the Gaussian background; it shapes the amplitude histogram, so a
// class gap here creates an entropy gap.
// smoothing: 3-tap moving-average coefficient of the Gaussian background; it
// shapes the autocorrelation (local sample orderings, subband energies)
// without changing the amplitude distribution, so classifiers can separate
// the classes while non-planted entropies stay put.
double synthesis_spike_prob(const SynthesisSpec& spec, ClassLabel label,
                            std::size_t channel);
double synthesis_smoothing(const SynthesisSpec& spec, ClassLabel label,
                           std::size_t channel);

Dataset synthesize_dataset(const SynthesisSpec& spec, std::uint64_t seed);

}  // namespace eegsel
