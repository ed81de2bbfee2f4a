#include "doctest.h"

#include <cmath>

#include "ctsd/linear.hpp"
#include "ctsd/prng.hpp"

using namespace ctsd;

namespace {

FeatureMatrix separable_1d(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  FeatureMatrix data;
  for (int i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    data.rows.push_back({pos ? rng.uniform(2.0, 3.0) : rng.uniform(-1.0, 0.0)});
    data.labels.push_back(pos ? 1 : 0);
  }
  return data;
}

int train_accuracy_count(const LinearModel& model, const FeatureMatrix& data) {
  int correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    correct += classify(model, data.rows[i]) == data.labels[i];
  }
  return correct;
}

}  // namespace

TEST_SUITE("linear") {

TEST_CASE("logistic regression on separable data reaches perfect training accuracy") {
  const auto data = separable_1d(50, 21);
  const auto model = train_logistic_regression(data, 1e-4, 20000, 1e-9);
  CHECK(train_accuracy_count(model, data) == 50);
}

TEST_CASE("mirrored data drives the bias to the class-prior logit") {
  // every sample has a mirror twin with the same label, so no feature signal
  // remains and the stationary bias is logit(prior)
  FeatureMatrix data;
  SplitMix64 rng(22);
  for (int i = 0; i < 30; ++i) {
    const double x = rng.uniform(-2.0, 2.0);
    const int label = i < 20 ? 1 : 0;  // prior 2/3
    data.rows.push_back({x});
    data.rows.push_back({-x});
    data.labels.push_back(label);
    data.labels.push_back(label);
  }
  const auto model = train_logistic_regression(data, 0.0, 50000, 1e-12);
  const double prior = 2.0 / 3.0;
  CHECK(std::abs(model.bias - std::log(prior / (1.0 - prior))) < 1e-6);
}

TEST_CASE("analytic gradient matches central finite differences") {
  SplitMix64 rng(23);
  FeatureMatrix data;
  for (int i = 0; i < 40; ++i) {
    data.rows.push_back({rng.uniform(-1.0, 3.0), rng.uniform(0.0, 5.0)});
    data.labels.push_back(static_cast<int>(rng.below(2)));
  }
  if (!data.both_classes_present()) data.labels[0] = 1 - data.labels[0];

  const double l2 = 0.01;
  LinearModel model = train_logistic_regression(data, l2, 200, 1e-6);
  const auto grad = logistic_gradient(model, data, l2);
  REQUIRE(grad.size() == 3);  // two weights + bias

  const double h = 1e-6;
  for (std::size_t k = 0; k < grad.size(); ++k) {
    LinearModel plus = model, minus = model;
    if (k < model.weights.size()) {
      plus.weights[k] += h;
      minus.weights[k] -= h;
    } else {
      plus.bias += h;
      minus.bias -= h;
    }
    const double fd =
        (logistic_objective(plus, data, l2) - logistic_objective(minus, data, l2)) / (2.0 * h);
    CHECK(std::abs(grad[k] - fd) < 1e-6);
  }
}

TEST_CASE("svm separates separable data with a large penalty") {
  const auto data = separable_1d(40, 24);
  const auto model = train_linear_svm(data, 100.0, 4000);
  CHECK(train_accuracy_count(model, data) == 40);
}

TEST_CASE("duplicating every sample leaves svm weights unchanged") {
  const auto data = separable_1d(30, 25);
  FeatureMatrix doubled;
  for (std::size_t i = 0; i < data.size(); ++i) {
    doubled.rows.push_back(data.rows[i]);
    doubled.rows.push_back(data.rows[i]);
    doubled.labels.push_back(data.labels[i]);
    doubled.labels.push_back(data.labels[i]);
  }
  const auto m1 = train_linear_svm(data, 2.0, 500);
  const auto m2 = train_linear_svm(doubled, 2.0, 500);
  REQUIRE(m1.weights.size() == m2.weights.size());
  for (std::size_t f = 0; f < m1.weights.size(); ++f) {
    CHECK(m1.weights[f] == doctest::Approx(m2.weights[f]).epsilon(1e-12));
  }
  CHECK(m1.bias == doctest::Approx(m2.bias).epsilon(1e-12));
}

TEST_CASE("svm objective is non-increasing over epochs") {
  const auto data = separable_1d(30, 26);
  const double c = 5.0;
  double prev = svm_objective(train_linear_svm(data, c, 1), data, c);
  for (int iters : {2, 4, 8, 16, 32, 64, 128}) {
    const double obj = svm_objective(train_linear_svm(data, c, iters), data, c);
    CHECK(obj <= prev + 1e-12);
    prev = obj;
  }
}

TEST_CASE("single-class inputs are rejected") {
  FeatureMatrix data;
  for (int i = 0; i < 10; ++i) {
    data.rows.push_back({static_cast<double>(i)});
    data.labels.push_back(1);
  }
  CHECK_THROWS_AS(train_logistic_regression(data), Error);
  CHECK_THROWS_AS(train_linear_svm(data), Error);
  CHECK_THROWS_AS(single_feature_models(data), Error);
}

TEST_CASE("single_feature_models isolate per-feature signal") {
  SplitMix64 rng(27);
  FeatureMatrix data;
  for (int i = 0; i < 120; ++i) {
    const bool cts = i % 2 == 0;
    // feature 1 (SR) decides the label; feature 0 (PR) is noise; feature 2 constant
    data.rows.push_back({rng.uniform(1.0, 1.4), cts ? rng.uniform(1.6, 2.1) : rng.uniform(1.0, 1.25),
                         1.0});
    data.labels.push_back(cts ? 1 : 0);
  }
  const auto models = single_feature_models(data, 1e-4, 20000, 1e-9);
  REQUIRE(models.size() == 3);
  for (const auto& m : models) CHECK(m.weights.size() == 1);

  int sr_correct = 0, pr_correct = 0, const_correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    pr_correct += classify(models[0], {data.rows[i][0]}) == data.labels[i];
    sr_correct += classify(models[1], {data.rows[i][1]}) == data.labels[i];
    const_correct += classify(models[2], {data.rows[i][2]}) == data.labels[i];
  }
  CHECK(sr_correct > pr_correct);
  // constant column predicts one class for every row; with a balanced prior
  // that is exactly half right
  CHECK(const_correct == 60);
}

TEST_CASE("constant feature predicts the majority class") {
  FeatureMatrix data;
  for (int i = 0; i < 30; ++i) {
    data.rows.push_back({1.0});
    data.labels.push_back(i < 20 ? 1 : 0);  // majority positive
  }
  const auto model = train_logistic_regression(data, 0.0, 10000, 1e-10);
  for (const auto& row : data.rows) CHECK(classify(model, row) == 1);
}

}  // TEST_SUITE
