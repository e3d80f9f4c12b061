#include <nlohmann/json.hpp>

#include "eegsel/classifiers.hpp"

namespace eegsel {

using json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

json labels_to_json(const std::vector<ClassLabel>& labels) {
  json a = json::array();
  for (const ClassLabel l : labels) a.push_back(to_string(l));
  return a;
}

std::vector<ClassLabel> labels_from_json(const json& a) {
  std::vector<ClassLabel> out;
  for (const auto& v : a) out.push_back(label_from_string(v.get<std::string>()));
  return out;
}

}  // namespace

std::string model_to_json(const TrainedModel& m) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = to_string(kind_of(m));
  std::visit(
      [&](const auto& model) {
        using T = std::decay_t<decltype(model)>;
        json& p = doc["parameters"];
        if constexpr (std::is_same_v<T, KnnModel>) {
          p["k"] = model.k;
          p["dim"] = model.dim;
          p["train"] = model.train;
          p["labels"] = labels_to_json(model.labels);
        } else if constexpr (std::is_same_v<T, SvmModel>) {
          p["gamma"] = model.gamma;
          p["C"] = model.C;
          p["bias"] = model.bias;
          p["dim"] = model.dim;
          p["support_vectors"] = model.support_vectors;
          p["coefficients"] = model.coefficients;
        } else {
          p["max_depth"] = model.max_depth;
          p["seed"] = model.seed;
          p["dim"] = model.dim;
          p["n_train"] = model.n_train;
          json trees = json::array();
          for (const DecisionTree& t : model.trees) {
            json nodes = json::array();
            for (const TreeNode& n : t.nodes)
              nodes.push_back({n.feature, n.threshold, n.left, n.right,
                               n.leaf == ClassLabel::ADHD ? 0 : 1});
            trees.push_back({{"bootstrap_seed", t.bootstrap_seed},
                             {"nodes", std::move(nodes)}});
          }
          p["trees"] = std::move(trees);
        }
      },
      m);
  return doc.dump();
}

TrainedModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw data_error(std::string("model_from_json: ") + e.what());
  }
  if (doc.value("format_version", -1) != kFormatVersion)
    throw data_error("model_from_json: unsupported format_version");
  const ClassifierKind kind = classifier_from_string(doc.at("kind").get<std::string>());
  const json& p = doc.at("parameters");
  switch (kind) {
    case ClassifierKind::KNN: {
      KnnModel m;
      m.k = p.at("k").get<int>();
      m.dim = p.at("dim").get<std::size_t>();
      m.train = p.at("train").get<std::vector<double>>();
      m.labels = labels_from_json(p.at("labels"));
      return m;
    }
    case ClassifierKind::SVM: {
      SvmModel m;
      m.gamma = p.at("gamma").get<double>();
      m.C = p.at("C").get<double>();
      m.bias = p.at("bias").get<double>();
      m.dim = p.at("dim").get<std::size_t>();
      m.support_vectors = p.at("support_vectors").get<std::vector<double>>();
      m.coefficients = p.at("coefficients").get<std::vector<double>>();
      return m;
    }
    default: {
      EnsembleModel m;
      m.max_depth = p.at("max_depth").get<int>();
      m.seed = p.at("seed").get<std::uint64_t>();
      m.dim = p.at("dim").get<std::size_t>();
      m.n_train = p.at("n_train").get<std::size_t>();
      for (const auto& tj : p.at("trees")) {
        DecisionTree t;
        t.bootstrap_seed = tj.at("bootstrap_seed").get<std::uint64_t>();
        for (const auto& nj : tj.at("nodes")) {
          TreeNode n;
          n.feature = nj.at(0).get<int>();
          n.threshold = nj.at(1).get<double>();
          n.left = nj.at(2).get<std::int32_t>();
          n.right = nj.at(3).get<std::int32_t>();
          n.leaf = nj.at(4).get<int>() == 0 ? ClassLabel::ADHD : ClassLabel::HC;
          t.nodes.push_back(n);
        }
        m.trees.push_back(std::move(t));
      }
      return m;
    }
  }
}

}  // namespace eegsel
