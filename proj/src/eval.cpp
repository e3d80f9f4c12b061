#include "eegsel/eval.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "eegsel/io.hpp"
#include "eegsel/parallel.hpp"
#include "eegsel/rng.hpp"

namespace eegsel {

using json = nlohmann::ordered_json;

const char* to_string(SplitStrategy s) {
  switch (s) {
    case SplitStrategy::Chrono7030: return "chrono";
    case SplitStrategy::RandomRepeated7030: return "random";
    default: return "kfold";
  }
}

SplitStrategy strategy_from_string(const std::string& s) {
  if (s == "chrono") return SplitStrategy::Chrono7030;
  if (s == "random") return SplitStrategy::RandomRepeated7030;
  if (s == "kfold") return SplitStrategy::KFold;
  throw config_error("unknown strategy: '" + s +
                     "' (expected chrono, random or kfold)");
}

const char* to_string(SplitUnit u) {
  return u == SplitUnit::Segment ? "segment" : "subject";
}

SplitUnit unit_from_string(const std::string& s) {
  if (s == "segment") return SplitUnit::Segment;
  if (s == "subject") return SplitUnit::Subject;
  throw config_error("unknown split unit: '" + s + "'");
}

namespace {

// A unit is either one segment or one subject (all of a recording's
// segments). Units keep the canonical order: recording order, then
// start_sample.
struct Units {
  // unit index -> segment indices
  std::vector<std::vector<std::size_t>> members;
  std::vector<ClassLabel> labels;
};

Units collect_units(const Dataset& ds, SplitUnit unit) {
  Units u;
  if (unit == SplitUnit::Segment) {
    u.members.resize(ds.segments().size());
    u.labels.resize(ds.segments().size());
    for (std::size_t s = 0; s < ds.segments().size(); ++s) {
      u.members[s] = {s};
      u.labels[s] = ds.segments()[s].label;
    }
  } else {
    u.members.resize(ds.recordings().size());
    u.labels.resize(ds.recordings().size());
    for (std::size_t r = 0; r < ds.recordings().size(); ++r)
      u.labels[r] = ds.recordings()[r].label;
    for (std::size_t s = 0; s < ds.segments().size(); ++s)
      u.members[ds.segments()[s].recording_index].push_back(s);
  }
  return u;
}

Split to_split(const Units& u, const std::vector<std::size_t>& train_units,
               const std::vector<std::size_t>& test_units) {
  Split sp;
  for (const std::size_t i : train_units)
    sp.train.insert(sp.train.end(), u.members[i].begin(), u.members[i].end());
  for (const std::size_t i : test_units)
    sp.test.insert(sp.test.end(), u.members[i].begin(), u.members[i].end());
  std::sort(sp.train.begin(), sp.train.end());
  std::sort(sp.test.begin(), sp.test.end());
  return sp;
}

std::vector<std::size_t> per_class_units(const Units& u, ClassLabel l) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < u.labels.size(); ++i)
    if (u.labels[i] == l) out.push_back(i);
  return out;
}

}  // namespace

std::vector<Split> make_splits(const Dataset& ds, const SplitPlan& plan) {
  const Units u = collect_units(ds, plan.unit);
  const std::size_t n = u.members.size();
  if (n < 2) throw data_error("make_splits: fewer than 2 units");

  std::vector<Split> out;
  switch (plan.strategy) {
    case SplitStrategy::Chrono7030: {
      const std::size_t cut =
          static_cast<std::size_t>(std::floor(0.7 * static_cast<double>(n)));
      std::vector<std::size_t> train_units, test_units;
      for (std::size_t i = 0; i < n; ++i)
        (i < cut ? train_units : test_units).push_back(i);
      if (train_units.empty() || test_units.empty())
        throw data_error("make_splits: degenerate 70/30 split");
      out.push_back(to_split(u, train_units, test_units));
      break;
    }
    case SplitStrategy::RandomRepeated7030: {
      if (plan.repeats < 1) throw config_error("make_splits: repeats must be >= 1");
      const auto adhd = per_class_units(u, ClassLabel::ADHD);
      const auto hc = per_class_units(u, ClassLabel::HC);
      if (adhd.size() < 2 || hc.size() < 2)
        throw data_error("make_splits: class too small to stratify");
      for (int r = 0; r < plan.repeats; ++r) {
        Rng rng(mix_seed(plan.seed, 0x7030, static_cast<std::uint64_t>(r)));
        std::vector<std::size_t> train_units, test_units;
        for (const auto* cls : {&adhd, &hc}) {
          std::vector<std::size_t> shuffled = *cls;
          rng.shuffle(shuffled);
          const std::size_t cut = static_cast<std::size_t>(
              std::floor(0.7 * static_cast<double>(shuffled.size())));
          for (std::size_t i = 0; i < shuffled.size(); ++i)
            (i < cut ? train_units : test_units).push_back(shuffled[i]);
        }
        out.push_back(to_split(u, train_units, test_units));
      }
      break;
    }
    case SplitStrategy::KFold: {
      if (plan.folds < 2) throw config_error("make_splits: folds must be >= 2");
      const std::size_t k = static_cast<std::size_t>(plan.folds);
      const auto adhd = per_class_units(u, ClassLabel::ADHD);
      const auto hc = per_class_units(u, ClassLabel::HC);
      if (adhd.size() < k || hc.size() < k)
        throw data_error("make_splits: folds exceed the per-class unit count");
      std::vector<std::vector<std::size_t>> folds(k);
      Rng rng(mix_seed(plan.seed, 0xf01d));
      for (const auto* cls : {&adhd, &hc}) {
        std::vector<std::size_t> shuffled = *cls;
        rng.shuffle(shuffled);
        for (std::size_t i = 0; i < shuffled.size(); ++i)
          folds[i % k].push_back(shuffled[i]);
      }
      for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train_units;
        for (std::size_t g = 0; g < k; ++g)
          if (g != f)
            train_units.insert(train_units.end(), folds[g].begin(), folds[g].end());
        out.push_back(to_split(u, train_units, folds[f]));
      }
      break;
    }
  }
  return out;
}

Metrics compute_metrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw data_error("compute_metrics: all-zero counts");
  Metrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fn > 0)
    m.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (c.tn + c.fp > 0)
    m.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  return m;
}

namespace {

TrainedModel train_classifier(const PipelineConfig& cfg, const FeatureMatrix& X,
                              std::uint64_t split_seed) {
  switch (cfg.classifier) {
    case ClassifierKind::KNN: {
      KnnParams p = cfg.knn;
      p.k = std::min<int>(p.k, static_cast<int>(X.n_rows));
      return knn_train(X, p);
    }
    case ClassifierKind::SVM:
      return svm_train(X, cfg.svm);
    default: {
      EnsParams p = cfg.ens;
      p.seed = split_seed;
      return ens_train(X, p);
    }
  }
}

SplitResult run_one_split(const Dataset& ds, const PipelineConfig& cfg,
                          const Split& split, std::size_t split_index,
                          const FeatureCache* cache) {
  SplitResult res;
  const ChannelRanking ranking =
      rank_channels(cfg.ranking, ds, split.train, cfg.pmf_bins);
  res.ranking = ranking.scores;
  res.selected_channels = select_channels(ranking, cfg.n_channels);

  FeatureMatrix train_x =
      extract_features(ds, split.train, res.selected_channels, cfg.extractor,
                       cfg.extraction, cache);
  FeatureMatrix test_x =
      extract_features(ds, split.test, res.selected_channels, cfg.extractor,
                       cfg.extraction, cache);

  const Standardizer st = fit_standardizer(train_x);
  res.standardizer_mean = st.mean;
  res.standardizer_std = st.stddev;
  train_x = apply_standardizer(st, train_x);
  test_x = apply_standardizer(st, test_x);

  const SelectionMask mask =
      chi_square_select(train_x, cfg.chi2_bins, cfg.keep_fraction);
  res.mask_kept = mask.kept_indices;
  train_x = apply_mask(mask, train_x);
  test_x = apply_mask(mask, test_x);

  const TrainedModel model =
      train_classifier(cfg, train_x, mix_seed(cfg.seed, split_index));
  for (std::size_t r = 0; r < test_x.n_rows; ++r) {
    const Prediction p = predict(model, test_x.row(r));
    const bool actual_pos = test_x.labels[r] == ClassLabel::ADHD;
    const bool pred_pos = p.label == ClassLabel::ADHD;
    if (actual_pos && pred_pos) ++res.counts.tp;
    else if (actual_pos) ++res.counts.fn;
    else if (pred_pos) ++res.counts.fp;
    else ++res.counts.tn;
  }
  res.metrics = compute_metrics(res.counts);
  return res;
}

Metrics mean_of(const std::vector<SplitResult>& splits) {
  Metrics m;
  double acc = 0.0, sn = 0.0, sp = 0.0;
  std::size_t n_sn = 0, n_sp = 0;
  for (const SplitResult& s : splits) {
    acc += s.metrics.accuracy;
    if (s.metrics.sensitivity) {
      sn += *s.metrics.sensitivity;
      ++n_sn;
    }
    if (s.metrics.specificity) {
      sp += *s.metrics.specificity;
      ++n_sp;
    }
  }
  m.accuracy = acc / static_cast<double>(splits.size());
  if (n_sn) m.sensitivity = sn / static_cast<double>(n_sn);
  if (n_sp) m.specificity = sp / static_cast<double>(n_sp);
  return m;
}

}  // namespace

EvaluationRow run_pipeline(const Dataset& ds, const SplitPlan& plan,
                           const PipelineConfig& cfg, const FeatureCache* cache,
                           int workers) {
  if (cfg.n_channels < 1 || cfg.n_channels > ds.n_channels())
    throw config_error("run_pipeline: n_channels out of range");
  const std::vector<Split> splits = make_splits(ds, plan);
  EvaluationRow row;
  row.cfg = cfg;
  row.plan = plan;
  row.splits.resize(splits.size());
  parallel_for(splits.size(), workers, [&](std::size_t i) {
    row.splits[i] = run_one_split(ds, cfg, splits[i], i, cache);
  });
  row.mean_metrics = mean_of(row.splits);
  return row;
}

std::vector<SweepRow> sweep_channels(const Dataset& ds, const SplitPlan& plan,
                                     const PipelineConfig& cfg,
                                     std::size_t max_channels,
                                     const FeatureCache* cache, int workers) {
  const std::size_t n_max =
      max_channels == 0 ? ds.n_channels() : std::min(max_channels, ds.n_channels());
  std::vector<SweepRow> rows;
  for (const RankingMethod method :
       {RankingMethod::Entropy, RankingMethod::EntropyDifference}) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      PipelineConfig c = cfg;
      c.ranking = method;
      c.n_channels = n;
      const EvaluationRow r = run_pipeline(ds, plan, c, cache, workers);
      rows.push_back({method, cfg.extractor, cfg.classifier, n,
                      r.mean_metrics.accuracy});
    }
  }
  return rows;
}

namespace {

json metrics_to_json(const Metrics& m) {
  json j;
  j["accuracy"] = m.accuracy;
  j["sensitivity"] = m.sensitivity ? json(*m.sensitivity) : json();
  j["specificity"] = m.specificity ? json(*m.specificity) : json();
  return j;
}

std::string opt_str(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

}  // namespace

std::string report_to_json(const std::vector<EvaluationRow>& rows) {
  json out = json::array();
  for (const EvaluationRow& row : rows) {
    json r;
    r["ranking"] = to_string(row.cfg.ranking);
    r["extractor"] = to_string(row.cfg.extractor);
    r["classifier"] = to_string(row.cfg.classifier);
    r["n_channels"] = row.cfg.n_channels;
    r["strategy"] = to_string(row.plan.strategy);
    r["unit"] = to_string(row.plan.unit);
    r["seed"] = row.plan.seed;
    r["keep_fraction"] = row.cfg.keep_fraction;
    r["mean"] = metrics_to_json(row.mean_metrics);
    json splits = json::array();
    for (const SplitResult& s : row.splits) {
      json sj;
      sj["confusion"] = {{"tp", s.counts.tp},
                         {"fn", s.counts.fn},
                         {"tn", s.counts.tn},
                         {"fp", s.counts.fp}};
      sj["metrics"] = metrics_to_json(s.metrics);
      sj["selected_channels"] = s.selected_channels;
      json rk = json::array();
      for (const ChannelScore& c : s.ranking)
        rk.push_back({{"channel", c.channel_name}, {"score", c.score}});
      sj["ranking"] = std::move(rk);
      sj["mask_kept"] = s.mask_kept;
      sj["standardizer_mean"] = s.standardizer_mean;
      sj["standardizer_std"] = s.standardizer_std;
      splits.push_back(std::move(sj));
    }
    r["splits"] = std::move(splits);
    out.push_back(std::move(r));
  }
  return out.dump(2) + "\n";
}

std::string report_to_csv(const std::vector<EvaluationRow>& rows) {
  std::string out =
      "ranking,extractor,classifier,n_channels,strategy,n_splits,accuracy,"
      "sensitivity,specificity\n";
  for (const EvaluationRow& row : rows) {
    out += to_string(row.cfg.ranking);
    out += ',';
    out += to_string(row.cfg.extractor);
    out += ',';
    out += to_string(row.cfg.classifier);
    out += ',';
    out += std::to_string(row.cfg.n_channels);
    out += ',';
    out += to_string(row.plan.strategy);
    out += ',';
    out += std::to_string(row.splits.size());
    out += ',';
    out += format_double(row.mean_metrics.accuracy);
    out += ',';
    out += opt_str(row.mean_metrics.sensitivity);
    out += ',';
    out += opt_str(row.mean_metrics.specificity);
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "method,extractor,classifier,n_channels,accuracy\n";
  for (const SweepRow& r : rows) {
    out += to_string(r.method);
    out += ',';
    out += to_string(r.extractor);
    out += ',';
    out += to_string(r.classifier);
    out += ',';
    out += std::to_string(r.n_channels);
    out += ',';
    out += format_double(r.accuracy);
    out += '\n';
  }
  return out;
}

}  // namespace eegsel
