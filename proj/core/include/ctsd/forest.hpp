#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctsd/errors.hpp"

namespace ctsd {

/// Labeled feature rows; labels are 0 (Non-CTS) or 1 (CTS).
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;

  std::size_t size() const { return rows.size(); }
  std::size_t n_features() const { return rows.empty() ? 0 : rows.front().size(); }
  void validate() const;
  bool both_classes_present() const;
};

struct RfHyperparams {
  int n_trees = 135;
  int max_depth = 6;
  int min_samples_split = 12;
  int min_samples_leaf = 9;
  std::uint64_t seed = 90;

  /// floor(log2(d)) features considered per split, clamped to [1, d].
  static int max_features_for(int n_features);
  void validate() const;
};

/// Flat CART node. Internal nodes route feature <= threshold to `left`,
/// otherwise `right`; leaves have feature == -1. Class counts of the
/// bootstrap samples that reached the node are kept on every node so leaf
/// fractions and impurity-decrease importances can be recomputed.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::int64_t n0 = 0;
  std::int64_t n1 = 0;

  bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // root at index 0

  /// Positive-class fraction of the leaf the feature vector routes to.
  double leaf_fraction(std::span<const double> features) const;
};

class RandomForestModel {
 public:
  RandomForestModel() = default;
  RandomForestModel(std::vector<DecisionTree> trees, RfHyperparams hp,
                    std::vector<std::string> feature_names)
      : trees_(std::move(trees)), hp_(hp), feature_names_(std::move(feature_names)) {}

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const RfHyperparams& hyperparams() const { return hp_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  std::size_t n_features() const { return feature_names_.size(); }

 private:
  std::vector<DecisionTree> trees_;
  RfHyperparams hp_;
  std::vector<std::string> feature_names_;
};

/// Deterministic fit: per-tree PRNG streams derive only from (seed,
/// tree_index), so any n_threads produces the identical model.
/// Throws SingleClass / TooFewSamples when preconditions fail.
RandomForestModel train_random_forest(const FeatureMatrix& data, const RfHyperparams& hp = {},
                                      int n_threads = 1);

/// Mean over trees of the routed leaf's positive-class fraction.
double rf_predict_proba(const RandomForestModel& model, std::span<const double> features);

/// 1 iff probability >= threshold.
int classify(const RandomForestModel& model, std::span<const double> features,
             double threshold = 0.5);

/// Mean of per-tree normalized impurity-decrease importances; sums to 1.
std::vector<double> rf_feature_importance(const RandomForestModel& model);

/// Default feature naming: the diagnostic five when d == 5, else f0..f{d-1}.
std::vector<std::string> default_feature_names(std::size_t n_features);

}  // namespace ctsd
