#pragma once

#include <span>
#include <vector>

#include "ctsd/mask.hpp"

namespace ctsd {

/// Overlap and surface-distance scores for one mask pair. Distances are in
/// pixel units unless a calibration was supplied.
struct SegScores {
  double dice = 0.0;
  double iou = 0.0;
  double hd95_px = 0.0;
  double assd_px = 0.0;
};

/// 2|A∩B| / (|A|+|B|); 1.0 when both masks are empty.
double dice(const BinaryMask& a, const BinaryMask& b);

/// |A∩B| / |A∪B|; 1.0 when both masks are empty.
double iou(const BinaryMask& a, const BinaryMask& b);

/// Symmetric 95th-percentile Hausdorff distance between point sets, using the
/// nearest-rank percentile (k = ceil(0.95 n)) on each directed distance list.
/// Throws EmptySet when either set is empty.
double hd95(const PointSet2D& a, const PointSet2D& b, const Calibration& calib = {});

/// Average symmetric surface distance:
/// (sum_a d(a,B) + sum_b d(b,A)) / (|A|+|B|). Throws EmptySet.
double assd(const PointSet2D& a, const PointSet2D& b, const Calibration& calib = {});

/// Nearest-neighbor distance from every point of `from` to the set `to`,
/// in input order. Exact; backed by a grid index over `to`.
std::vector<double> nearest_distances(const PointSet2D& from, const PointSet2D& to,
                                      const Calibration& calib = {});

/// Mean absolute error between paired series.
double mae(std::span<const double> gt, std::span<const double> pred);

/// Dice/IoU on the masks plus HD95/ASSD on their boundary pixels.
/// Throws EmptySet when either mask has an empty boundary.
SegScores seg_scores(const BinaryMask& gt, const BinaryMask& pred, const Calibration& calib = {});

}  // namespace ctsd
