#pragma once

#include <span>
#include <string>
#include <vector>

#include "ctsd/forest.hpp"

namespace ctsd {

/// Linear classifier over standardized features. For logistic models the
/// probability is the sigmoid of the decision value; for SVM models it is the
/// same squashing applied to the margin (a monotone score, not a calibrated
/// probability).
struct LinearModel {
  enum class Kind { logistic, svm };

  Kind kind = Kind::logistic;
  std::vector<double> weights;  // on standardized features
  double bias = 0.0;
  std::vector<double> means;
  std::vector<double> stds;
  std::vector<std::string> feature_names;

  double decision_value(std::span<const double> features) const;
  double probability(std::span<const double> features) const;
};

int classify(const LinearModel& model, std::span<const double> features, double threshold = 0.5);

/// L2-regularized logistic regression fit by full-batch gradient descent with
/// backtracking line search; stops when the gradient max-norm drops below
/// `tol`. Deterministic (zero init, no randomness).
LinearModel train_logistic_regression(const FeatureMatrix& data, double l2 = 1e-3,
                                      int max_iters = 5000, double tol = 1e-8);

/// L2-regularized hinge loss minimized by deterministic full-batch
/// subgradient descent; steps that would increase the objective are rejected
/// and the step size halved, so the objective is non-increasing.
LinearModel train_linear_svm(const FeatureMatrix& data, double c = 1.0, int max_iters = 2000);

/// One logistic model per feature column, for single-parameter comparisons.
std::vector<LinearModel> single_feature_models(const FeatureMatrix& data, double l2 = 1e-3,
                                               int max_iters = 5000, double tol = 1e-8);

/// Objective/gradient of the training problems, evaluated at the model's own
/// coefficients on its standardized scale. Gradient layout: weights then bias.
double logistic_objective(const LinearModel& model, const FeatureMatrix& data, double l2);
std::vector<double> logistic_gradient(const LinearModel& model, const FeatureMatrix& data,
                                      double l2);
double svm_objective(const LinearModel& model, const FeatureMatrix& data, double c);

}  // namespace ctsd
