// eegsel: EEG channel selection and classification pipeline CLI.
//
// Subcommands: synth, rank, extract, run, sweep. Configuration comes from a
// JSON file; command-line flags override file values. Exit codes: 0 success,
// 2 configuration error, 3 data error, 4 numerical non-convergence.

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eegsel/eval.hpp"
#include "eegsel/io.hpp"
#include "eegsel/kernels.hpp"
#include "eegsel/rng.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace eegsel;

namespace {

const std::set<std::string> kConfigKeys = {
    "manifest",     "synth",        "window_len",  "split_unit",
    "ranking",      "n_channels",   "extractor",   "classifier",
    "strategy",     "repeats",      "folds",       "pmf_bins",
    "chi2_bins",    "keep_fraction", "knn_k",       "svm_c",
    "svm_gamma",    "svm_tol",      "ens_trees",   "ens_depth",
    "seed",         "write_features", "sweep_max_channels"};

const std::set<std::string> kSynthKeys = {"n_per_class", "n_samples", "n_channels",
                                          "planted_channels", "effect_size"};

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  int workers = 1;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const data_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(path + ": " + e.what());
  }
  if (!doc.is_object()) throw config_error(path + ": config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kConfigKeys.count(key))
      throw config_error(path + ": unknown config key '" + key + "'");
  }
  if (doc.contains("synth"))
    for (const auto& [key, value] : doc.at("synth").items()) {
      (void)value;
      if (!kSynthKeys.count(key))
        throw config_error(path + ": unknown synth key '" + key + "'");
    }
  return doc;
}

SynthesisSpec parse_synth(const json& j) {
  SynthesisSpec spec;
  spec.n_per_class = j.value("n_per_class", spec.n_per_class);
  spec.n_samples = j.value("n_samples", spec.n_samples);
  spec.n_channels = j.value("n_channels", spec.n_channels);
  if (j.contains("planted_channels"))
    spec.planted_channels = j.at("planted_channels").get<std::vector<std::size_t>>();
  spec.effect_size = j.value("effect_size", spec.effect_size);
  return spec;
}

// Scalar-or-array config values expand to the experiment grid.
template <typename Parse>
auto list_of(const json& cfg, const std::string& key, const char* fallback,
             Parse parse) {
  using T = decltype(parse(std::string{}));
  std::vector<T> out;
  if (!cfg.contains(key)) {
    out.push_back(parse(fallback));
    return out;
  }
  const json& v = cfg.at(key);
  if (v.is_array())
    for (const auto& e : v) out.push_back(parse(e.get<std::string>()));
  else
    out.push_back(parse(v.get<std::string>()));
  if (out.empty()) throw config_error("config key '" + key + "' must not be empty");
  return out;
}

std::vector<std::size_t> channel_counts(const json& cfg) {
  std::vector<std::size_t> out;
  if (!cfg.contains("n_channels")) return {3};
  const json& v = cfg.at("n_channels");
  if (v.is_array())
    for (const auto& e : v) out.push_back(e.get<std::size_t>());
  else
    out.push_back(v.get<std::size_t>());
  if (out.empty()) throw config_error("config key 'n_channels' must not be empty");
  return out;
}

struct ResolvedConfig {
  json doc;  // echoed to the output directory
  std::uint64_t seed = 42;
  std::size_t window_len = 2048;
  SplitUnit unit = SplitUnit::Segment;
  int repeats = 10;
  int folds = 10;
  PipelineConfig base;
  std::vector<RankingMethod> rankings;
  std::vector<Extractor> extractors;
  std::vector<ClassifierKind> classifiers;
  std::vector<SplitStrategy> strategies;
  std::vector<std::size_t> n_channels;
  bool write_features = false;
  std::size_t sweep_max_channels = 0;
};

ResolvedConfig resolve(const json& cfg, const CliOptions& cli) {
  ResolvedConfig r;
  r.doc = cfg;
  r.seed = cfg.value("seed", std::uint64_t{42});
  if (cli.seed_override) r.seed = *cli.seed_override;
  r.doc["seed"] = r.seed;
  r.window_len = cfg.value("window_len", std::size_t{2048});
  r.unit = unit_from_string(cfg.value("split_unit", "segment"));
  r.repeats = cfg.value("repeats", 10);
  r.folds = cfg.value("folds", 10);

  r.base.pmf_bins = cfg.value("pmf_bins", 256);
  r.base.chi2_bins = cfg.value("chi2_bins", 10);
  r.base.keep_fraction = cfg.value("keep_fraction", 0.5);
  r.base.knn.k = cfg.value("knn_k", 5);
  r.base.svm.C = cfg.value("svm_c", 1.0);
  r.base.svm.gamma = cfg.value("svm_gamma", 0.0);
  r.base.svm.tol = cfg.value("svm_tol", 1e-3);
  r.base.ens.n_trees = cfg.value("ens_trees", 100);
  r.base.ens.max_depth = cfg.value("ens_depth", 10);
  r.base.seed = mix_seed(r.seed, 3);

  r.rankings = list_of(cfg, "ranking", "EnD", ranking_method_from_string);
  r.extractors = list_of(cfg, "extractor", "SLBP", extractor_from_string);
  r.classifiers = list_of(cfg, "classifier", "KNN", classifier_from_string);
  r.strategies = list_of(cfg, "strategy", "kfold", strategy_from_string);
  r.n_channels = channel_counts(cfg);
  r.write_features = cfg.value("write_features", false);
  r.sweep_max_channels = cfg.value("sweep_max_channels", std::size_t{0});
  return r;
}

Dataset load_input_dataset(const json& cfg, const ResolvedConfig& rc,
                           const std::string& config_path) {
  if (cfg.contains("manifest") && cfg.contains("synth"))
    throw config_error("config names both 'manifest' and 'synth'");
  Dataset ds;
  if (cfg.contains("manifest")) {
    fs::path p = cfg.at("manifest").get<std::string>();
    if (p.is_relative() && !config_path.empty())
      p = fs::path(config_path).parent_path() / p;
    ds = load_dataset(p);
  } else if (cfg.contains("synth")) {
    ds = synthesize_dataset(parse_synth(cfg.at("synth")), mix_seed(rc.seed, 1));
  } else {
    throw config_error("config must name either 'manifest' or 'synth'");
  }
  return segment_dataset(std::move(ds), rc.window_len);
}

void write_config_echo(const ResolvedConfig& rc, const fs::path& out) {
  fs::create_directories(out);
  write_text_file(out / "config.json", rc.doc.dump(2) + "\n");
}

std::string ranking_to_csv(const ChannelRanking& r) {
  std::string out = "rank,channel\n";
  for (std::size_t i = 0; i < r.scores.size(); ++i)
    out += std::to_string(i + 1) + "," + r.scores[i].channel_name + "\n";
  return out;
}

std::string ranking_to_json_text(const ChannelRanking& r) {
  json j;
  j["method"] = to_string(r.method);
  j["n_bins"] = r.n_bins;
  json scores = json::array();
  for (const ChannelScore& s : r.scores)
    scores.push_back({{"channel", s.channel_name},
                      {"channel_index", s.channel_index},
                      {"score", s.score}});
  j["scores"] = std::move(scores);
  return j.dump(2) + "\n";
}

std::vector<std::size_t> all_segments(const Dataset& ds) {
  std::vector<std::size_t> idx(ds.segments().size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

void write_feature_csv(const fs::path& path, const FeatureMatrix& m) {
  std::string out;
  for (const auto& n : m.names) {
    out += n;
    out += ',';
  }
  out += "label\n";
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const auto row = m.row(r);
    for (const double v : row) {
      out += format_double(v);
      out += ',';
    }
    out += to_string(m.labels[r]);
    out += '\n';
  }
  write_text_file(path, out);
}

// ---- subcommands ----

int cmd_synth(const CliOptions& cli, const std::string& spec_path) {
  json spec_doc;
  try {
    spec_doc = json::parse(read_text_file(spec_path));
  } catch (const data_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(spec_path + ": " + e.what());
  }
  for (const auto& [key, value] : spec_doc.items()) {
    (void)value;
    if (!kSynthKeys.count(key))
      throw config_error(spec_path + ": unknown synth key '" + key + "'");
  }
  const SynthesisSpec spec = parse_synth(spec_doc);
  const std::uint64_t seed = cli.seed_override.value_or(42);
  const Dataset ds = synthesize_dataset(spec, seed);

  const fs::path out(cli.out_dir);
  fs::create_directories(out);
  save_dataset(ds, out);
  json truth;
  truth["seed"] = seed;
  truth["planted_channels"] = spec.planted_channels;
  truth["effect_size"] = spec.effect_size;
  json params = json::object();
  for (std::size_t c = 0; c < spec.n_channels; ++c) {
    params[ds.channels()[c]] = {
        {"spike_prob_ADHD", synthesis_spike_prob(spec, ClassLabel::ADHD, c)},
        {"spike_prob_HC", synthesis_spike_prob(spec, ClassLabel::HC, c)},
        {"smoothing_ADHD", synthesis_smoothing(spec, ClassLabel::ADHD, c)},
        {"smoothing_HC", synthesis_smoothing(spec, ClassLabel::HC, c)}};
  }
  truth["channel_params"] = std::move(params);
  write_text_file(out / "truth.json", truth.dump(2) + "\n");
  spec_doc["seed"] = seed;
  write_text_file(out / "config.json", spec_doc.dump(2) + "\n");
  std::cout << "wrote " << ds.recordings().size() << " recordings to "
            << out.string() << "\n";
  return 0;
}

int cmd_rank(const CliOptions& cli) {
  const json cfg = load_config(cli.config_path);
  const ResolvedConfig rc = resolve(cfg, cli);
  const Dataset ds = load_input_dataset(cfg, rc, cli.config_path);
  if (ds.segments().empty()) throw data_error("rank: dataset has no segments");
  const auto segs = all_segments(ds);
  const fs::path out(cli.out_dir);
  write_config_echo(rc, out);
  const ChannelRanking en = rank_by_entropy(ds, segs, rc.base.pmf_bins);
  const ChannelRanking end = rank_by_entropy_difference(ds, segs, rc.base.pmf_bins);
  write_text_file(out / "ranking_en.csv", ranking_to_csv(en));
  write_text_file(out / "ranking_end.csv", ranking_to_csv(end));
  write_text_file(out / "ranking_en.json", ranking_to_json_text(en));
  write_text_file(out / "ranking_end.json", ranking_to_json_text(end));
  std::cout << "rank: " << en.scores.size() << " channels, " << ds.segments().size()
            << " segments\n";
  return 0;
}

int cmd_extract(const CliOptions& cli) {
  const json cfg = load_config(cli.config_path);
  const ResolvedConfig rc = resolve(cfg, cli);
  const Dataset ds = load_input_dataset(cfg, rc, cli.config_path);
  if (ds.segments().empty()) throw data_error("extract: dataset has no segments");
  const auto segs = all_segments(ds);
  const fs::path out(cli.out_dir);
  write_config_echo(rc, out);
  // ranking over the whole dataset; extract is a standalone stage
  const ChannelRanking ranking =
      rank_channels(rc.rankings.front(), ds, segs, rc.base.pmf_bins);
  const auto sel = select_channels(ranking, rc.n_channels.front());
  for (const Extractor e : rc.extractors) {
    const FeatureMatrix m = extract_features(ds, segs, sel, e, rc.base.extraction,
                                             nullptr, cli.workers);
    std::string name = "features_";
    name += to_string(e);
    for (auto& ch : name) ch = static_cast<char>(std::tolower(ch));
    write_feature_csv(out / (name + ".csv"), m);
    std::cout << "extract: " << to_string(e) << " " << m.n_rows << "x" << m.n_cols
              << "\n";
  }
  return 0;
}

int cmd_run(const CliOptions& cli) {
  const json cfg = load_config(cli.config_path);
  const ResolvedConfig rc = resolve(cfg, cli);
  const Dataset ds = load_input_dataset(cfg, rc, cli.config_path);
  if (ds.segments().empty()) throw data_error("run: dataset has no segments");
  const fs::path out(cli.out_dir);
  write_config_echo(rc, out);

  FeatureCache cache;
  cache.build(ds, rc.extractors, rc.base.extraction, cli.workers);

  std::vector<EvaluationRow> rows;
  for (const RankingMethod rk : rc.rankings)
    for (const Extractor ex : rc.extractors)
      for (const ClassifierKind cl : rc.classifiers)
        for (const std::size_t n : rc.n_channels)
          for (const SplitStrategy st : rc.strategies) {
            PipelineConfig pc = rc.base;
            pc.ranking = rk;
            pc.extractor = ex;
            pc.classifier = cl;
            pc.n_channels = n;
            SplitPlan plan;
            plan.strategy = st;
            plan.repeats = rc.repeats;
            plan.folds = rc.folds;
            plan.unit = rc.unit;
            plan.seed = mix_seed(rc.seed, 2);
            rows.push_back(run_pipeline(ds, plan, pc, &cache, cli.workers));
          }
  write_text_file(out / "report.csv", report_to_csv(rows));
  write_text_file(out / "report.json", report_to_json(rows));
  if (rc.write_features) {
    const auto segs = all_segments(ds);
    const ChannelRanking ranking =
        rank_channels(rc.rankings.front(), ds, segs, rc.base.pmf_bins);
    const auto sel = select_channels(ranking, rc.n_channels.front());
    for (const Extractor e : rc.extractors) {
      const FeatureMatrix m =
          extract_features(ds, segs, sel, e, rc.base.extraction, &cache, cli.workers);
      std::string name = "features_";
      name += to_string(e);
      for (auto& ch : name) ch = static_cast<char>(std::tolower(ch));
      write_feature_csv(out / (name + ".csv"), m);
    }
  }
  std::cout << "run: " << rows.size() << " config rows\n";
  return 0;
}

int cmd_sweep(const CliOptions& cli) {
  const json cfg = load_config(cli.config_path);
  const ResolvedConfig rc = resolve(cfg, cli);
  const Dataset ds = load_input_dataset(cfg, rc, cli.config_path);
  if (ds.segments().empty()) throw data_error("sweep: dataset has no segments");
  const fs::path out(cli.out_dir);
  write_config_echo(rc, out);

  FeatureCache cache;
  cache.build(ds, rc.extractors, rc.base.extraction, cli.workers);

  std::vector<SweepRow> rows;
  for (const Extractor ex : rc.extractors)
    for (const ClassifierKind cl : rc.classifiers) {
      PipelineConfig pc = rc.base;
      pc.extractor = ex;
      pc.classifier = cl;
      SplitPlan plan;
      plan.strategy = rc.strategies.front();
      plan.repeats = rc.repeats;
      plan.folds = rc.folds;
      plan.unit = rc.unit;
      plan.seed = mix_seed(rc.seed, 2);
      const auto part =
          sweep_channels(ds, plan, pc, rc.sweep_max_channels, &cache, cli.workers);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  write_text_file(out / "sweep.csv", sweep_to_csv(rows));
  std::cout << "sweep: " << rows.size() << " rows\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG channel selection and classification pipeline"};
  app.require_subcommand(1);

  CliOptions cli;
  std::uint64_t seed_flag = 0;
  app.add_option("--config", cli.config_path, "JSON config file")
      ->envname("EEGSEL_CONFIG");
  auto* seed_opt = app.add_option("--seed", seed_flag, "master seed override");
  app.add_option("--out", cli.out_dir, "output directory")->required();
  app.add_option("--workers", cli.workers, "worker thread count")
      ->check(CLI::Range(1, 256));

  std::string synth_spec;
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--spec", synth_spec, "synthesis spec JSON")->required();
  auto* rank = app.add_subcommand("rank", "channel rankings (En and EnD)");
  auto* extract = app.add_subcommand("extract", "feature matrices as CSV");
  auto* run = app.add_subcommand("run", "evaluate the configured grid");
  auto* sweep = app.add_subcommand("sweep", "accuracy vs channel count");
  for (auto* sub : {synth, rank, extract, run, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
    if (seed_opt->count()) cli.seed_override = seed_flag;
    if (synth->parsed()) return cmd_synth(cli, synth_spec);
    if (rank->parsed()) return cmd_rank(cli);
    if (extract->parsed()) return cmd_extract(cli);
    if (run->parsed()) return cmd_run(cli);
    if (sweep->parsed()) return cmd_sweep(cli);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
