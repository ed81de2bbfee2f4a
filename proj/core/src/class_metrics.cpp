#include "ctsd/class_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace ctsd {

ConfusionMatrix confusion(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw Error(errc::length_mismatch, "prediction and truth lengths differ");
  }
  if (pred.empty()) {
    throw Error(errc::empty_series, "cannot build a confusion matrix from zero pairs");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (truth[i]) {
      pred[i] ? ++cm.tp : ++cm.fn;
    } else {
      pred[i] ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

ClassificationReport report(const ConfusionMatrix& cm) {
  ClassificationReport r;
  const auto ratio = [](std::int64_t num, std::int64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  r.acc = ratio(cm.tp + cm.tn, cm.total());
  r.sen = ratio(cm.tp, cm.tp + cm.fn);
  r.spe = ratio(cm.tn, cm.tn + cm.fp);
  r.f1 = ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn);
  if (r.sen) r.fnr = 1.0 - *r.sen;
  if (r.spe) r.fpr = 1.0 - *r.spe;
  return r;
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> truth) {
  if (scores.size() != truth.size()) {
    throw Error(errc::length_mismatch, "scores and truth lengths differ");
  }
  if (scores.empty()) {
    throw Error(errc::empty_series, "roc curve requires at least one score");
  }
  std::int64_t n_pos = 0, n_neg = 0;
  for (int y : truth) (y ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(errc::single_class, "roc curve requires both classes");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::int64_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    // tied scores move atomically
    while (i < order.size() && scores[order[i]] == s) {
      truth[order[i]] ? ++tp : ++fp;
      ++i;
    }
    curve.points.push_back({s, static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  return curve;
}

double auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const RocPoint& a = curve.points[i - 1];
    const RocPoint& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return area;
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = "threshold,fpr,tpr\n";
  char buf[128];
  for (const RocPoint& p : curve.points) {
    if (std::isinf(p.threshold)) {
      std::snprintf(buf, sizeof(buf), "inf,%.9g,%.9g\n", p.fpr, p.tpr);
    } else {
      std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", p.threshold, p.fpr, p.tpr);
    }
    out += buf;
  }
  return out;
}

}  // namespace ctsd
