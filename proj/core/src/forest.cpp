#include "ctsd/forest.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ctsd/biometrics.hpp"
#include "ctsd/prng.hpp"

namespace ctsd {

namespace {

using u128 = unsigned __int128;

/// Weighted child Gini impurity as an exact rational, up to the constant
/// factor 2/n: value = (n0l*n1l*nr + n0r*n1r*nl) / (nl*nr). Exact integer
/// comparison keeps split tie-breaking platform-independent.
struct SplitScore {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool less_than(const SplitScore& other) const {
    return static_cast<u128>(num) * static_cast<u128>(other.den) <
           static_cast<u128>(other.num) * static_cast<u128>(den);
  }
};

struct BestSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  SplitScore score;
};

struct TreeBuilder {
  const FeatureMatrix& data;
  const RfHyperparams& hp;
  int n_features;
  int max_features;
  SplitMix64 rng;
  std::vector<TreeNode> nodes;

  // scratch reused across nodes
  std::vector<std::pair<double, int>> sorted;

  explicit TreeBuilder(const FeatureMatrix& d, const RfHyperparams& h, std::uint64_t tree_index)
      : data(d),
        hp(h),
        n_features(static_cast<int>(d.n_features())),
        max_features(RfHyperparams::max_features_for(static_cast<int>(d.n_features()))),
        rng(SplitMix64::for_stream(h.seed, tree_index)) {}

  DecisionTree build() {
    const std::size_t n = data.size();
    std::vector<std::int32_t> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
      samples[i] = static_cast<std::int32_t>(rng.below(n));
    }
    build_node(samples, 0);
    return DecisionTree{std::move(nodes)};
  }

  int build_node(std::vector<std::int32_t>& samples, int depth) {
    std::int64_t n1 = 0;
    for (auto idx : samples) n1 += data.labels[idx];
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
    const std::int64_t n0 = n - n1;

    const int node_id = static_cast<int>(nodes.size());
    nodes.push_back(TreeNode{-1, 0.0, -1, -1, n0, n1});

    const bool can_split = depth < hp.max_depth &&
                           n >= hp.min_samples_split &&
                           n0 > 0 && n1 > 0;
    if (!can_split) return node_id;

    const BestSplit best = find_best_split(samples, n0, n1);
    if (!best.found) return node_id;

    std::vector<std::int32_t> left, right;
    left.reserve(samples.size());
    right.reserve(samples.size());
    for (auto idx : samples) {
      if (data.rows[idx][best.feature] <= best.threshold) {
        left.push_back(idx);
      } else {
        right.push_back(idx);
      }
    }
    if (left.empty() || right.empty()) return node_id;  // degenerate threshold

    samples.clear();
    samples.shrink_to_fit();

    nodes[node_id].feature = best.feature;
    nodes[node_id].threshold = best.threshold;
    const int left_id = build_node(left, depth + 1);
    nodes[node_id].left = left_id;
    const int right_id = build_node(right, depth + 1);
    nodes[node_id].right = right_id;
    return node_id;
  }

  BestSplit find_best_split(const std::vector<std::int32_t>& samples, std::int64_t n0,
                            std::int64_t n1) {
    const std::int64_t n = n0 + n1;

    // Uniform subset of max_features candidate features (partial
    // Fisher-Yates), then evaluated in ascending index order so ties go to
    // the lowest feature index.
    std::vector<int> pool(n_features);
    for (int f = 0; f < n_features; ++f) pool[f] = f;
    for (int j = 0; j < max_features; ++j) {
      const int r = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_features - j)));
      std::swap(pool[j], pool[r]);
    }
    std::vector<int> candidates(pool.begin(), pool.begin() + max_features);
    std::sort(candidates.begin(), candidates.end());

    // A split must strictly improve on the parent; the parent's weighted
    // impurity on the same scale is n0*n1/n.
    const SplitScore parent{n0 * n1, n};
    BestSplit best;

    for (int f : candidates) {
      sorted.clear();
      sorted.reserve(samples.size());
      for (auto idx : samples) sorted.emplace_back(data.rows[idx][f], data.labels[idx]);
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::int64_t left_n = 0, left_n1 = 0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        ++left_n;
        left_n1 += sorted[i].second;
        if (sorted[i].first == sorted[i + 1].first) continue;  // not a unique-value boundary

        const std::int64_t right_n = n - left_n;
        if (left_n < hp.min_samples_leaf || right_n < hp.min_samples_leaf) continue;

        const std::int64_t left_n0 = left_n - left_n1;
        const std::int64_t right_n1 = n1 - left_n1;
        const std::int64_t right_n0 = right_n - right_n1;
        const SplitScore score{left_n0 * left_n1 * right_n + right_n0 * right_n1 * left_n,
                               left_n * right_n};
        if (!score.less_than(parent)) continue;
        if (best.found && !score.less_than(best.score)) continue;

        best.found = true;
        best.feature = f;
        best.threshold = sorted[i].first + (sorted[i + 1].first - sorted[i].first) / 2.0;
        best.score = score;
      }
    }
    return best;
  }
};

double gini(std::int64_t n0, std::int64_t n1) {
  const double n = static_cast<double>(n0 + n1);
  if (n == 0.0) return 0.0;
  const double p0 = static_cast<double>(n0) / n;
  const double p1 = static_cast<double>(n1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

void check_features_finite(std::span<const double> features) {
  for (double v : features) {
    if (!std::isfinite(v)) {
      throw Error(errc::non_finite_feature, "feature vector contains a non-finite value");
    }
  }
}

}  // namespace

void FeatureMatrix::validate() const {
  if (rows.size() != labels.size()) {
    throw Error(errc::length_mismatch, "rows and labels differ in length");
  }
  const std::size_t d = n_features();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw Error(errc::dimension_mismatch, "inconsistent feature dimension at row " +
                                                std::to_string(i));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) {
        throw Error(errc::non_finite_feature, "non-finite feature at row " + std::to_string(i));
      }
    }
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(errc::invalid_argument, "labels must be 0 or 1");
    }
  }
}

bool FeatureMatrix::both_classes_present() const {
  bool has0 = false, has1 = false;
  for (int y : labels) (y ? has1 : has0) = true;
  return has0 && has1;
}

int RfHyperparams::max_features_for(int n_features) {
  int k = static_cast<int>(std::floor(std::log2(static_cast<double>(n_features))));
  k = std::max(k, 1);
  return std::min(k, n_features);
}

void RfHyperparams::validate() const {
  if (n_trees < 1 || max_depth < 1 || min_samples_split < 2 || min_samples_leaf < 1) {
    throw Error(errc::invalid_argument, "random forest hyperparameters out of range");
  }
}

double DecisionTree::leaf_fraction(std::span<const double> features) const {
  int node = 0;
  while (!nodes[node].is_leaf()) {
    const TreeNode& nd = nodes[node];
    node = features[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  const TreeNode& leaf = nodes[node];
  return static_cast<double>(leaf.n1) / static_cast<double>(leaf.n0 + leaf.n1);
}

RandomForestModel train_random_forest(const FeatureMatrix& data, const RfHyperparams& hp,
                                      int n_threads) {
  hp.validate();
  data.validate();
  if (data.size() < static_cast<std::size_t>(hp.min_samples_split)) {
    throw Error(errc::too_few_samples,
                "need at least min_samples_split rows, got " + std::to_string(data.size()));
  }
  if (!data.both_classes_present()) {
    throw Error(errc::single_class, "training data must contain both classes");
  }

  std::vector<DecisionTree> trees(hp.n_trees);
  auto fit_range = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      TreeBuilder builder(data, hp, static_cast<std::uint64_t>(t));
      trees[t] = builder.build();
    }
  };

  n_threads = std::max(1, n_threads);
  if (n_threads == 1 || hp.n_trees == 1) {
    fit_range(0, hp.n_trees);
  } else {
    const int workers = std::min(n_threads, hp.n_trees);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (hp.n_trees + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(hp.n_trees, begin + chunk);
      if (begin < end) pool.emplace_back(fit_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  return RandomForestModel(std::move(trees), hp, default_feature_names(data.n_features()));
}

double rf_predict_proba(const RandomForestModel& model, std::span<const double> features) {
  check_features_finite(features);
  if (features.size() != model.n_features()) {
    throw Error(errc::feature_mismatch,
                "expected " + std::to_string(model.n_features()) + " features, got " +
                    std::to_string(features.size()));
  }
  double sum = 0.0;
  for (const DecisionTree& tree : model.trees()) sum += tree.leaf_fraction(features);
  return sum / static_cast<double>(model.trees().size());
}

int classify(const RandomForestModel& model, std::span<const double> features, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw Error(errc::invalid_argument, "threshold must lie in [0,1]");
  }
  return rf_predict_proba(model, features) >= threshold ? 1 : 0;
}

std::vector<double> rf_feature_importance(const RandomForestModel& model) {
  const std::size_t d = model.n_features();
  std::vector<double> total(d, 0.0);
  std::size_t contributing = 0;

  for (const DecisionTree& tree : model.trees()) {
    std::vector<double> imp(d, 0.0);
    const double n_root = static_cast<double>(tree.nodes[0].n0 + tree.nodes[0].n1);
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) continue;
      const TreeNode& l = tree.nodes[node.left];
      const TreeNode& r = tree.nodes[node.right];
      const double n = static_cast<double>(node.n0 + node.n1);
      const double nl = static_cast<double>(l.n0 + l.n1);
      const double nr = static_cast<double>(r.n0 + r.n1);
      const double decrease =
          gini(node.n0, node.n1) - (nl / n) * gini(l.n0, l.n1) - (nr / n) * gini(r.n0, r.n1);
      imp[node.feature] += (n / n_root) * decrease;
    }
    double sum = 0.0;
    for (double v : imp) sum += v;
    if (sum > 0.0) {
      for (std::size_t f = 0; f < d; ++f) total[f] += imp[f] / sum;
      ++contributing;
    }
  }

  if (contributing == 0) {
    return std::vector<double>(d, 1.0 / static_cast<double>(d));
  }
  double sum = 0.0;
  for (double v : total) sum += v;
  for (double& v : total) v /= sum;
  return total;
}

std::vector<std::string> default_feature_names(std::size_t n_features) {
  std::vector<std::string> names;
  names.reserve(n_features);
  if (n_features == kFeatureNames.size()) {
    for (const char* name : kFeatureNames) names.emplace_back(name);
  } else {
    for (std::size_t f = 0; f < n_features; ++f) names.push_back("f" + std::to_string(f));
  }
  return names;
}

}  // namespace ctsd
