#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eegsel/ranking.hpp"
#include "eegsel/rng.hpp"
#include "eegsel/signal.hpp"

#include "oracles.hpp"

using namespace eegsel;

namespace {

Dataset dataset_from_channels(const std::vector<std::vector<double>>& adhd_ch,
                              const std::vector<std::vector<double>>& hc_ch) {
  // one recording per class; channels given as columns
  auto make = [](const std::string& id, ClassLabel l,
                 const std::vector<std::vector<double>>& ch) {
    Recording r;
    r.subject_id = id;
    r.label = l;
    r.sample_rate_hz = 128;
    r.n_samples = ch[0].size();
    for (std::size_t c = 0; c < ch.size(); ++c) {
      r.channels.push_back("ch" + std::to_string(c));
      r.samples.insert(r.samples.end(), ch[c].begin(), ch[c].end());
    }
    return r;
  };
  std::vector<Recording> recs;
  recs.push_back(make("a", ClassLabel::ADHD, adhd_ch));
  recs.push_back(make("h", ClassLabel::HC, hc_ch));
  return segment_dataset(Dataset(std::move(recs)), adhd_ch[0].size());
}

std::vector<std::size_t> all_segments(const Dataset& ds) {
  std::vector<std::size_t> v(ds.segments().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("estimate_pmf basics") {
  SUBCASE("constant signal concentrates in one bin") {
    const std::vector<double> x(4, 1.0);
    const auto pmf = estimate_pmf(x, 8);
    CHECK(pmf[0] == 1.0);
    for (std::size_t i = 1; i < pmf.size(); ++i) CHECK(pmf[i] == 0.0);
  }
  SUBCASE("one sample per bin gives the uniform pmf") {
    const std::vector<double> x = {0, 1, 2, 3, 4, 5, 6, 7};
    const auto pmf = estimate_pmf(x, 8);
    for (const double p : pmf) CHECK(p == doctest::Approx(0.125).epsilon(1e-12));
  }
  SUBCASE("mass sums to one") {
    Rng rng(3);
    std::vector<double> x(4096);
    for (double& v : x) v = rng.normal();
    const auto pmf = estimate_pmf(x, 256);
    double s = 0;
    for (const double p : pmf) s += p;
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
  SUBCASE("matches the independent histogram oracle bin for bin") {
    Rng rng(17);
    std::vector<double> x(100000);
    for (double& v : x) v = rng.normal();
    const auto pmf = estimate_pmf(x, 256);
    const auto ref = oracle::histogram_pmf(x, 256);
    REQUIRE(pmf.size() == ref.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) CHECK(pmf[i] == ref[i]);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(estimate_pmf(std::vector<double>{}, 8), data_error);
    CHECK_THROWS_AS(estimate_pmf(std::vector<double>{1.0}, 1), config_error);
    CHECK_THROWS_AS(estimate_pmf(std::vector<double>{1.0, std::nan("")}, 8),
                    data_error);
  }
}

TEST_CASE("channel entropy hand values") {
  CHECK(channel_entropy(std::vector<double>(100, 3.25), 256) == 0.0);
  // exactly uniform 256-bin pmf -> 8 bits
  std::vector<double> x(256);
  for (std::size_t i = 0; i < 256; ++i) x[i] = static_cast<double>(i);
  CHECK(channel_entropy(x, 256) == doctest::Approx(8.0).epsilon(1e-12));
  // hand-computed pmf {0.5, 0.25, 0.25} -> 1.5 bits
  CHECK(shannon_entropy_bits(std::vector<double>{0.5, 0.25, 0.25}) ==
        doctest::Approx(1.5).epsilon(1e-12));
  // bound: entropy <= log2(n_bins)
  Rng rng(5);
  std::vector<double> noise(10000);
  for (double& v : noise) v = rng.normal();
  CHECK(channel_entropy(noise, 64) <= 6.0 + 1e-12);
}

TEST_CASE("rank_by_entropy orders noisy above constant") {
  const std::size_t n = 512;
  std::vector<double> flat(n, 2.0), noisy(n);
  Rng rng(8);
  for (double& v : noisy) v = rng.normal();
  const Dataset ds = dataset_from_channels({flat, noisy}, {flat, noisy});
  const auto r = rank_by_entropy(ds, all_segments(ds), 64);
  CHECK(r.scores[0].channel_index == 1);
  CHECK(r.scores[1].score == 0.0);

  SUBCASE("single channel dataset") {
    const Dataset one = dataset_from_channels({noisy}, {noisy});
    const auto r1 = rank_by_entropy(one, all_segments(one), 64);
    REQUIRE(r1.scores.size() == 1);
    CHECK(r1.scores[0].channel_index == 0);
  }
  SUBCASE("empty training set") {
    CHECK_THROWS_AS(rank_by_entropy(ds, std::vector<std::size_t>{}, 64), data_error);
  }
}

TEST_CASE("entropy difference: identical channels score near zero") {
  Rng rng(12);
  const std::size_t n = 2048;
  std::vector<double> a(n), h(n), planted_a(n), planted_h(n);
  for (double& v : a) v = rng.normal();
  for (double& v : h) v = rng.normal();
  // planted channel: heavy bounded excursions for one class only
  for (std::size_t t = 0; t < n; ++t) {
    planted_a[t] = (t % 4 == 0) ? rng.uniform(-6, 6) : rng.normal();
    planted_h[t] = rng.normal();
  }
  const Dataset ds = dataset_from_channels({a, planted_a}, {h, planted_h});
  const auto r = rank_by_entropy_difference(ds, all_segments(ds), 256);
  CHECK(r.scores[0].channel_index == 1);
  CHECK(r.scores[1].score < r.scores[0].score);

  SUBCASE("a class with zero training segments errors") {
    std::vector<std::size_t> only_adhd;
    for (std::size_t i = 0; i < ds.segments().size(); ++i)
      if (ds.segments()[i].label == ClassLabel::ADHD) only_adhd.push_back(i);
    CHECK_THROWS_AS(rank_by_entropy_difference(ds, only_adhd, 256), data_error);
  }
}

TEST_CASE("ranking properties") {
  SynthesisSpec spec;
  spec.n_per_class = 4;
  spec.n_samples = 2048;
  spec.n_channels = 7;
  spec.planted_channels = {2, 4};
  Dataset ds = segment_dataset(synthesize_dataset(spec, 33), 1024);
  const auto segs = all_segments(ds);

  SUBCASE("affine invariance of both rankings") {
    std::vector<Recording> scaled = ds.recordings();
    for (Recording& r : scaled)
      for (double& v : r.samples) v = 3.5 * v + 11.0;
    Dataset ds2 = segment_dataset(Dataset(std::move(scaled)), 1024);
    for (const RankingMethod m :
         {RankingMethod::Entropy, RankingMethod::EntropyDifference}) {
      const auto r1 = rank_channels(m, ds, segs, 256);
      const auto r2 = rank_channels(m, ds2, segs, 256);
      for (std::size_t i = 0; i < r1.scores.size(); ++i) {
        CHECK(r1.scores[i].channel_index == r2.scores[i].channel_index);
        CHECK(r1.scores[i].score == doctest::Approx(r2.scores[i].score).epsilon(1e-12));
      }
    }
  }

  SUBCASE("EnD is symmetric under label swap") {
    std::vector<Recording> swapped = ds.recordings();
    for (Recording& r : swapped) r.label = opposite(r.label);
    Dataset ds2 = segment_dataset(Dataset(std::move(swapped)), 1024);
    const auto r1 = rank_by_entropy_difference(ds, segs, 256);
    const auto r2 = rank_by_entropy_difference(ds2, segs, 256);
    for (std::size_t i = 0; i < r1.scores.size(); ++i) {
      CHECK(r1.scores[i].channel_index == r2.scores[i].channel_index);
      CHECK(r1.scores[i].score == r2.scores[i].score);
    }
  }

  SUBCASE("determinism including tie order") {
    const auto r1 = rank_by_entropy(ds, segs, 256);
    const auto r2 = rank_by_entropy(ds, segs, 256);
    for (std::size_t i = 0; i < r1.scores.size(); ++i)
      CHECK(r1.scores[i].channel_index == r2.scores[i].channel_index);
  }

  SUBCASE("ties break by ascending channel index") {
    // two identical channels tie exactly
    std::vector<double> x(512);
    Rng rng(3);
    for (double& v : x) v = rng.normal();
    const Dataset tied = dataset_from_channels({x, x}, {x, x});
    const auto r = rank_by_entropy(tied, all_segments(tied), 64);
    CHECK(r.scores[0].score == r.scores[1].score);
    CHECK(r.scores[0].channel_index == 0);
    CHECK(r.scores[1].channel_index == 1);
  }
}

TEST_CASE("select_channels returns ranking prefixes") {
  SynthesisSpec spec;
  spec.n_per_class = 2;
  spec.n_samples = 1024;
  spec.n_channels = 5;
  Dataset ds = segment_dataset(synthesize_dataset(spec, 2), 512);
  const auto segs = all_segments(ds);
  const auto r = rank_by_entropy(ds, segs, 64);
  const auto full = select_channels(r, 5);
  CHECK(full.size() == 5);
  std::vector<std::size_t> sorted = full;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4});  // a permutation
  const auto one = select_channels(r, 1);
  CHECK(one[0] == r.scores[0].channel_index);
  CHECK_THROWS_AS(select_channels(r, 0), config_error);
  CHECK_THROWS_AS(select_channels(r, 6), config_error);
}
