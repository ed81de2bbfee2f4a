#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctsd/errors.hpp"

namespace ctsd {

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
};

/// Confusion-derived ratios; a metric whose denominator is zero is absent
/// rather than reported as 0.
struct ClassificationReport {
  std::optional<double> acc;
  std::optional<double> sen;
  std::optional<double> spe;
  std::optional<double> f1;
  std::optional<double> fnr;
  std::optional<double> fpr;
  std::optional<double> auc;
};

struct RocPoint {
  double threshold = 0.0;  // +inf on the (0,0) endpoint
  double fpr = 0.0;
  double tpr = 0.0;
};

/// ROC curve swept from threshold +inf down through each distinct score.
/// Starts at (0,0), ends at (1,1); both coordinates non-decreasing.
struct RocCurve {
  std::vector<RocPoint> points;
};

/// Counts with positive = 1. Throws LengthMismatch / Empty.
ConfusionMatrix confusion(std::span<const int> pred, std::span<const int> truth);

ClassificationReport report(const ConfusionMatrix& cm);

/// Throws SingleClass unless both labels occur.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> truth);

/// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

/// CSV with header `threshold,fpr,tpr`, one row per curve point.
std::string roc_csv(const RocCurve& curve);

}  // namespace ctsd
