#include "ctsd/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace ctsd {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kModelSchemaVersion = 1;

void reject_unknown(const ordered_json& obj, const std::set<std::string>& known,
                    const std::string& pointer) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      throw Error(errc::schema_violation, "unknown field " + pointer + "/" + key);
    }
  }
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& pointer) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(errc::schema_violation, "missing field " + pointer + "/" + key);
  }
  return *it;
}

ordered_json tree_to_json(const DecisionTree& tree) {
  ordered_json nodes = ordered_json::array();
  for (const TreeNode& n : tree.nodes) {
    ordered_json j;
    j["feature"] = n.feature;
    if (!n.is_leaf()) {
      j["threshold"] = n.threshold;
      j["left"] = n.left;
      j["right"] = n.right;
    }
    j["n0"] = n.n0;
    j["n1"] = n.n1;
    nodes.push_back(std::move(j));
  }
  return nodes;
}

DecisionTree tree_from_json(const ordered_json& nodes, const std::string& pointer) {
  if (!nodes.is_array() || nodes.empty()) {
    throw Error(errc::schema_violation, pointer + " must be a non-empty array");
  }
  DecisionTree tree;
  tree.nodes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string np = pointer + "/" + std::to_string(i);
    const auto& j = nodes[i];
    reject_unknown(j, {"feature", "threshold", "left", "right", "n0", "n1"}, np);
    TreeNode n;
    n.feature = require(j, "feature", np).get<int>();
    n.n0 = require(j, "n0", np).get<std::int64_t>();
    n.n1 = require(j, "n1", np).get<std::int64_t>();
    if (n.feature >= 0) {
      n.threshold = require(j, "threshold", np).get<double>();
      n.left = require(j, "left", np).get<int>();
      n.right = require(j, "right", np).get<int>();
      if (n.left < 0 || n.right < 0 || n.left >= static_cast<int>(nodes.size()) ||
          n.right >= static_cast<int>(nodes.size())) {
        throw Error(errc::schema_violation, np + " child index out of range");
      }
    }
    tree.nodes.push_back(n);
  }
  return tree;
}

std::vector<std::string> names_from_json(const ordered_json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) {
    throw Error(errc::schema_violation, pointer + " must be a non-empty array");
  }
  std::vector<std::string> names;
  for (const auto& name : j) names.push_back(name.get<std::string>());
  return names;
}

std::vector<double> doubles_from_json(const ordered_json& j, const std::string& pointer) {
  if (!j.is_array()) {
    throw Error(errc::schema_violation, pointer + " must be an array");
  }
  std::vector<double> values;
  for (const auto& v : j) values.push_back(v.get<double>());
  return values;
}

}  // namespace

const char* DiagnosticModel::kind_name() const {
  if (is_forest()) return "random_forest";
  return linear().kind == LinearModel::Kind::logistic ? "logistic_regression" : "linear_svm";
}

const std::vector<std::string>& DiagnosticModel::feature_names() const {
  if (is_forest()) return forest().feature_names();
  return linear().feature_names;
}

double DiagnosticModel::probability(std::span<const double> features) const {
  if (is_forest()) return rf_predict_proba(forest(), features);
  return linear().probability(features);
}

int DiagnosticModel::classify(std::span<const double> features, double threshold) const {
  if (threshold < 0.0 || threshold > 1.0) {
    throw Error(errc::invalid_argument, "threshold must lie in [0,1]");
  }
  return probability(features) >= threshold ? 1 : 0;
}

void save_model(const DiagnosticModel& model, const std::filesystem::path& path) {
  ordered_json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["kind"] = model.kind_name();
  doc["feature_names"] = model.feature_names();

  if (model.is_forest()) {
    const RandomForestModel& rf = model.forest();
    const RfHyperparams& hp = rf.hyperparams();
    ordered_json hj;
    hj["n_trees"] = hp.n_trees;
    hj["max_depth"] = hp.max_depth;
    hj["min_samples_split"] = hp.min_samples_split;
    hj["min_samples_leaf"] = hp.min_samples_leaf;
    hj["max_features"] = "log2";
    hj["criterion"] = "gini";
    hj["seed"] = hp.seed;
    doc["hyperparams"] = std::move(hj);
    ordered_json trees = ordered_json::array();
    for (const DecisionTree& tree : rf.trees()) trees.push_back(tree_to_json(tree));
    doc["trees"] = std::move(trees);
  } else {
    const LinearModel& lm = model.linear();
    doc["weights"] = lm.weights;
    doc["bias"] = lm.bias;
    ordered_json std_j;
    std_j["means"] = lm.means;
    std_j["stds"] = lm.stds;
    doc["standardization"] = std::move(std_j);
  }

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw Error(errc::io_error, "failed writing " + path.string());
  }
}

DiagnosticModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::io_error, "cannot open " + path.string());
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(errc::schema_violation, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw Error(errc::schema_violation, "model root must be an object");
  }

  const auto& version = require(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kModelSchemaVersion) {
    throw Error(errc::schema_violation,
                "unsupported schema_version " + version.dump() + " (reader supports 1)");
  }
  const std::string kind = require(doc, "kind", "").get<std::string>();

  if (kind == "random_forest") {
    reject_unknown(doc, {"schema_version", "kind", "feature_names", "hyperparams", "trees"}, "");
    const auto names = names_from_json(require(doc, "feature_names", ""), "/feature_names");

    const auto& hj = require(doc, "hyperparams", "");
    reject_unknown(hj,
                   {"n_trees", "max_depth", "min_samples_split", "min_samples_leaf",
                    "max_features", "criterion", "seed"},
                   "/hyperparams");
    RfHyperparams hp;
    hp.n_trees = require(hj, "n_trees", "/hyperparams").get<int>();
    hp.max_depth = require(hj, "max_depth", "/hyperparams").get<int>();
    hp.min_samples_split = require(hj, "min_samples_split", "/hyperparams").get<int>();
    hp.min_samples_leaf = require(hj, "min_samples_leaf", "/hyperparams").get<int>();
    hp.seed = require(hj, "seed", "/hyperparams").get<std::uint64_t>();
    hp.validate();

    const auto& trees_j = require(doc, "trees", "");
    if (!trees_j.is_array() || trees_j.size() != static_cast<std::size_t>(hp.n_trees)) {
      throw Error(errc::schema_violation, "/trees length must equal n_trees");
    }
    std::vector<DecisionTree> trees;
    trees.reserve(trees_j.size());
    for (std::size_t t = 0; t < trees_j.size(); ++t) {
      trees.push_back(tree_from_json(trees_j[t], "/trees/" + std::to_string(t)));
    }
    return DiagnosticModel(RandomForestModel(std::move(trees), hp, names));
  }

  if (kind == "logistic_regression" || kind == "linear_svm") {
    reject_unknown(doc,
                   {"schema_version", "kind", "feature_names", "weights", "bias",
                    "standardization"},
                   "");
    LinearModel lm;
    lm.kind = kind == "logistic_regression" ? LinearModel::Kind::logistic
                                            : LinearModel::Kind::svm;
    lm.feature_names = names_from_json(require(doc, "feature_names", ""), "/feature_names");
    lm.weights = doubles_from_json(require(doc, "weights", ""), "/weights");
    lm.bias = require(doc, "bias", "").get<double>();
    const auto& std_j = require(doc, "standardization", "");
    reject_unknown(std_j, {"means", "stds"}, "/standardization");
    lm.means = doubles_from_json(require(std_j, "means", "/standardization"), "/means");
    lm.stds = doubles_from_json(require(std_j, "stds", "/standardization"), "/stds");
    if (lm.weights.size() != lm.feature_names.size() || lm.means.size() != lm.weights.size() ||
        lm.stds.size() != lm.weights.size()) {
      throw Error(errc::schema_violation, "weights/means/stds/feature_names lengths differ");
    }
    return DiagnosticModel(std::move(lm));
  }

  throw Error(errc::schema_violation, "unknown model kind '" + kind + "'");
}

std::string file_hash_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(errc::io_error, "cannot open " + path.string());
  }
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

}  // namespace ctsd
