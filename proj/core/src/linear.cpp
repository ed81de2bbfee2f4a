#include "ctsd/linear.hpp"

#include <algorithm>
#include <cmath>

namespace ctsd {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(-m)) without overflow
double log1p_exp_neg(double m) {
  if (m >= 0.0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

struct Standardized {
  std::vector<std::vector<double>> x;  // n x d, standardized
  std::vector<double> means;
  std::vector<double> stds;
};

Standardized standardize(const FeatureMatrix& data) {
  const std::size_t n = data.size();
  const std::size_t d = data.n_features();
  Standardized s;
  s.means.assign(d, 0.0);
  s.stds.assign(d, 0.0);
  for (const auto& row : data.rows) {
    for (std::size_t f = 0; f < d; ++f) s.means[f] += row[f];
  }
  for (double& m : s.means) m /= static_cast<double>(n);
  for (const auto& row : data.rows) {
    for (std::size_t f = 0; f < d; ++f) {
      const double dx = row[f] - s.means[f];
      s.stds[f] += dx * dx;
    }
  }
  for (double& v : s.stds) {
    v = std::sqrt(v / static_cast<double>(n));
    if (v == 0.0) v = 1.0;  // constant column carries no signal
  }
  s.x.assign(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < d; ++f) {
      s.x[i][f] = (data.rows[i][f] - s.means[f]) / s.stds[f];
    }
  }
  return s;
}

void check_trainable(const FeatureMatrix& data) {
  data.validate();
  if (data.size() == 0) {
    throw Error(errc::too_few_samples, "cannot train on an empty feature matrix");
  }
  if (!data.both_classes_present()) {
    throw Error(errc::single_class, "training data must contain both classes");
  }
}

double logistic_objective_std(const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y, const std::vector<double>& w, double b,
                              double l2) {
  const std::size_t n = x.size();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    for (std::size_t f = 0; f < w.size(); ++f) z += w[f] * x[i][f];
    const double margin = y[i] ? z : -z;
    loss += log1p_exp_neg(margin);
  }
  loss /= static_cast<double>(n);
  double reg = 0.0;
  for (double v : w) reg += v * v;
  return loss + 0.5 * l2 * reg;
}

void logistic_gradient_std(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                           const std::vector<double>& w, double b, double l2,
                           std::vector<double>& gw, double& gb) {
  const std::size_t n = x.size();
  std::fill(gw.begin(), gw.end(), 0.0);
  gb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    for (std::size_t f = 0; f < w.size(); ++f) z += w[f] * x[i][f];
    const double residual = sigmoid(z) - static_cast<double>(y[i]);
    for (std::size_t f = 0; f < w.size(); ++f) gw[f] += residual * x[i][f];
    gb += residual;
  }
  for (std::size_t f = 0; f < w.size(); ++f) {
    gw[f] = gw[f] / static_cast<double>(n) + l2 * w[f];
  }
  gb /= static_cast<double>(n);
}

double svm_objective_std(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         const std::vector<double>& w, double b, double c) {
  const std::size_t n = x.size();
  double hinge = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    for (std::size_t f = 0; f < w.size(); ++f) z += w[f] * x[i][f];
    const double margin = (y[i] ? 1.0 : -1.0) * z;
    hinge += std::max(0.0, 1.0 - margin);
  }
  double reg = 0.0;
  for (double v : w) reg += v * v;
  return 0.5 * reg + c * hinge / static_cast<double>(n);
}

}  // namespace

double LinearModel::decision_value(std::span<const double> features) const {
  if (features.size() != weights.size()) {
    throw Error(errc::feature_mismatch,
                "expected " + std::to_string(weights.size()) + " features, got " +
                    std::to_string(features.size()));
  }
  for (double v : features) {
    if (!std::isfinite(v)) {
      throw Error(errc::non_finite_feature, "feature vector contains a non-finite value");
    }
  }
  double z = bias;
  for (std::size_t f = 0; f < weights.size(); ++f) {
    z += weights[f] * (features[f] - means[f]) / stds[f];
  }
  return z;
}

double LinearModel::probability(std::span<const double> features) const {
  return sigmoid(decision_value(features));
}

int classify(const LinearModel& model, std::span<const double> features, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw Error(errc::invalid_argument, "threshold must lie in [0,1]");
  }
  return model.probability(features) >= threshold ? 1 : 0;
}

LinearModel train_logistic_regression(const FeatureMatrix& data, double l2, int max_iters,
                                      double tol) {
  check_trainable(data);
  if (l2 < 0.0) throw Error(errc::invalid_argument, "l2 weight must be non-negative");

  const Standardized s = standardize(data);
  const std::size_t d = data.n_features();
  std::vector<double> w(d, 0.0), gw(d, 0.0);
  double b = 0.0, gb = 0.0;

  double obj = logistic_objective_std(s.x, data.labels, w, b, l2);
  for (int iter = 0; iter < max_iters; ++iter) {
    logistic_gradient_std(s.x, data.labels, w, b, l2, gw, gb);
    double gmax = std::abs(gb);
    for (double g : gw) gmax = std::max(gmax, std::abs(g));
    if (gmax < tol) break;

    double gnorm2 = gb * gb;
    for (double g : gw) gnorm2 += g * g;

    // Backtracking line search with the Armijo condition.
    double step = 1.0;
    std::vector<double> w_trial(d);
    while (true) {
      for (std::size_t f = 0; f < d; ++f) w_trial[f] = w[f] - step * gw[f];
      const double b_trial = b - step * gb;
      const double obj_trial = logistic_objective_std(s.x, data.labels, w_trial, b_trial, l2);
      if (obj_trial <= obj - 0.25 * step * gnorm2 || step < 1e-16) {
        w = w_trial;
        b = b_trial;
        obj = obj_trial;
        break;
      }
      step *= 0.5;
    }
  }

  LinearModel model;
  model.kind = LinearModel::Kind::logistic;
  model.weights = std::move(w);
  model.bias = b;
  model.means = s.means;
  model.stds = s.stds;
  model.feature_names = default_feature_names(d);
  return model;
}

LinearModel train_linear_svm(const FeatureMatrix& data, double c, int max_iters) {
  check_trainable(data);
  if (!(c > 0.0)) throw Error(errc::invalid_argument, "svm penalty must be positive");

  const Standardized s = standardize(data);
  const std::size_t n = data.size();
  const std::size_t d = data.n_features();
  std::vector<double> w(d, 0.0), gw(d), w_trial(d);
  double b = 0.0;

  double obj = svm_objective_std(s.x, data.labels, w, b, c);
  double step = 1.0;
  for (int iter = 0; iter < max_iters && step >= 1e-15; ++iter) {
    // Subgradient of 0.5||w||^2 + (c/n) sum hinge.
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = b;
      for (std::size_t f = 0; f < d; ++f) z += w[f] * s.x[i][f];
      const double ysig = data.labels[i] ? 1.0 : -1.0;
      if (1.0 - ysig * z > 0.0) {
        for (std::size_t f = 0; f < d; ++f) gw[f] -= ysig * s.x[i][f];
        gb -= ysig;
      }
    }
    const double scale = c / static_cast<double>(n);
    for (std::size_t f = 0; f < d; ++f) gw[f] = w[f] + scale * gw[f];
    gb *= scale;

    for (std::size_t f = 0; f < d; ++f) w_trial[f] = w[f] - step * gw[f];
    const double b_trial = b - step * gb;
    const double obj_trial = svm_objective_std(s.x, data.labels, w_trial, b_trial, c);
    if (obj_trial <= obj) {
      w = w_trial;
      b = b_trial;
      obj = obj_trial;
      step *= 1.2;
    } else {
      step *= 0.5;
    }
  }

  LinearModel model;
  model.kind = LinearModel::Kind::svm;
  model.weights = std::move(w);
  model.bias = b;
  model.means = s.means;
  model.stds = s.stds;
  model.feature_names = default_feature_names(d);
  return model;
}

std::vector<LinearModel> single_feature_models(const FeatureMatrix& data, double l2,
                                               int max_iters, double tol) {
  check_trainable(data);
  const std::size_t d = data.n_features();
  const auto names = default_feature_names(d);
  std::vector<LinearModel> models;
  models.reserve(d);
  for (std::size_t f = 0; f < d; ++f) {
    FeatureMatrix column;
    column.labels = data.labels;
    column.rows.reserve(data.size());
    for (const auto& row : data.rows) column.rows.push_back({row[f]});
    LinearModel m = train_logistic_regression(column, l2, max_iters, tol);
    m.feature_names = {names[f]};
    models.push_back(std::move(m));
  }
  return models;
}

namespace {

// Standardize with the model's stored constants, not the data's own moments,
// so evaluation matches the scale the coefficients live on.
std::vector<std::vector<double>> standardize_with(const LinearModel& model,
                                                  const FeatureMatrix& data) {
  std::vector<std::vector<double>> x(data.size(), std::vector<double>(data.n_features()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t f = 0; f < data.n_features(); ++f) {
      x[i][f] = (data.rows[i][f] - model.means[f]) / model.stds[f];
    }
  }
  return x;
}

}  // namespace

double logistic_objective(const LinearModel& model, const FeatureMatrix& data, double l2) {
  const auto x = standardize_with(model, data);
  return logistic_objective_std(x, data.labels, model.weights, model.bias, l2);
}

std::vector<double> logistic_gradient(const LinearModel& model, const FeatureMatrix& data,
                                      double l2) {
  const auto x = standardize_with(model, data);
  std::vector<double> gw(model.weights.size());
  double gb = 0.0;
  logistic_gradient_std(x, data.labels, model.weights, model.bias, l2, gw, gb);
  gw.push_back(gb);
  return gw;
}

double svm_objective(const LinearModel& model, const FeatureMatrix& data, double c) {
  const auto x = standardize_with(model, data);
  return svm_objective_std(x, data.labels, model.weights, model.bias, c);
}

}  // namespace ctsd
