#include "ctsd/seg_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctsd/geometry.hpp"

namespace ctsd {

namespace {

void check_same_shape(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) {
    throw Error(errc::dimension_mismatch, "masks must have identical dimensions");
  }
}

/// Presence grid over the bounding box of a point set. Nearest-neighbor
/// queries expand Chebyshev rings around the query until the ring's distance
/// lower bound exceeds the best squared distance found, so results are exact
/// even with anisotropic spacing.
class GridIndex {
 public:
  explicit GridIndex(const PointSet2D& points) {
    min_x_ = min_y_ = std::numeric_limits<int>::max();
    max_x_ = max_y_ = std::numeric_limits<int>::min();
    for (const Pixel& p : points) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    }
    w_ = max_x_ - min_x_ + 1;
    h_ = max_y_ - min_y_ + 1;
    present_.assign(static_cast<std::size_t>(w_) * h_, 0);
    for (const Pixel& p : points) {
      present_[static_cast<std::size_t>(p.y - min_y_) * w_ + (p.x - min_x_)] = 1;
    }
  }

  double nearest_squared(Pixel q, double sx, double sy) const {
    const double min_scale = std::min(sx, sy);
    double best = std::numeric_limits<double>::infinity();
    // Ring 0 upward; every point in Chebyshev ring r is at least r*min_scale
    // away, so once that bound passes `best` no closer point can exist.
    const int max_ring = std::max({std::abs(q.x - min_x_), std::abs(q.x - max_x_),
                                   std::abs(q.y - min_y_), std::abs(q.y - max_y_)});
    for (int r = 0; r <= max_ring; ++r) {
      const double bound = r * min_scale;
      if (bound * bound > best) break;
      visit_ring(q, r, [&](int x, int y) {
        const double dx = (q.x - x) * sx;
        const double dy = (q.y - y) * sy;
        best = std::min(best, dx * dx + dy * dy);
      });
    }
    return best;
  }

 private:
  bool occupied(int x, int y) const {
    if (x < min_x_ || x > max_x_ || y < min_y_ || y > max_y_) return false;
    return present_[static_cast<std::size_t>(y - min_y_) * w_ + (x - min_x_)] != 0;
  }

  template <typename Fn>
  void visit_ring(Pixel q, int r, Fn&& fn) const {
    if (r == 0) {
      if (occupied(q.x, q.y)) fn(q.x, q.y);
      return;
    }
    for (int x = q.x - r; x <= q.x + r; ++x) {
      if (occupied(x, q.y - r)) fn(x, q.y - r);
      if (occupied(x, q.y + r)) fn(x, q.y + r);
    }
    for (int y = q.y - r + 1; y <= q.y + r - 1; ++y) {
      if (occupied(q.x - r, y)) fn(q.x - r, y);
      if (occupied(q.x + r, y)) fn(q.x + r, y);
    }
  }

  int min_x_, max_x_, min_y_, max_y_;
  int w_, h_;
  std::vector<std::uint8_t> present_;
};

std::size_t nearest_rank_95(std::size_t n) {
  // ceil(0.95 * n) in integer arithmetic
  return (19 * n + 19) / 20;
}

}  // namespace

double dice(const BinaryMask& a, const BinaryMask& b) {
  check_same_shape(a, b);
  std::size_t inter = 0, total = 0;
  const auto& ba = a.bits();
  const auto& bb = b.bits();
  for (std::size_t i = 0; i < ba.size(); ++i) {
    inter += (ba[i] & bb[i]);
    total += ba[i] + bb[i];
  }
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(total);
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  check_same_shape(a, b);
  std::size_t inter = 0, uni = 0;
  const auto& ba = a.bits();
  const auto& bb = b.bits();
  for (std::size_t i = 0; i < ba.size(); ++i) {
    inter += (ba[i] & bb[i]);
    uni += (ba[i] | bb[i]);
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<double> nearest_distances(const PointSet2D& from, const PointSet2D& to,
                                      const Calibration& calib) {
  calib.validate();
  if (from.empty() || to.empty()) {
    throw Error(errc::empty_set, "nearest distances require non-empty point sets");
  }
  GridIndex index(to);
  std::vector<double> result;
  result.reserve(from.size());
  for (const Pixel& p : from) {
    result.push_back(std::sqrt(index.nearest_squared(p, calib.mm_per_px_x, calib.mm_per_px_y)));
  }
  return result;
}

double hd95(const PointSet2D& a, const PointSet2D& b, const Calibration& calib) {
  auto d_ab = nearest_distances(a, b, calib);
  auto d_ba = nearest_distances(b, a, calib);
  std::sort(d_ab.begin(), d_ab.end());
  std::sort(d_ba.begin(), d_ba.end());
  const double h_ab = d_ab[nearest_rank_95(d_ab.size()) - 1];
  const double h_ba = d_ba[nearest_rank_95(d_ba.size()) - 1];
  return std::max(h_ab, h_ba);
}

double assd(const PointSet2D& a, const PointSet2D& b, const Calibration& calib) {
  const auto d_ab = nearest_distances(a, b, calib);
  const auto d_ba = nearest_distances(b, a, calib);
  double sum = 0.0;
  for (double d : d_ab) sum += d;
  for (double d : d_ba) sum += d;
  return sum / static_cast<double>(d_ab.size() + d_ba.size());
}

double mae(std::span<const double> gt, std::span<const double> pred) {
  if (gt.size() != pred.size()) {
    throw Error(errc::length_mismatch, "series lengths differ");
  }
  if (gt.empty()) {
    throw Error(errc::empty_series, "series must contain at least one element");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i) sum += std::abs(gt[i] - pred[i]);
  return sum / static_cast<double>(gt.size());
}

SegScores seg_scores(const BinaryMask& gt, const BinaryMask& pred, const Calibration& calib) {
  check_same_shape(gt, pred);
  SegScores scores;
  scores.dice = dice(gt, pred);
  scores.iou = iou(gt, pred);
  const PointSet2D ba = boundary_pixels(gt);
  const PointSet2D bb = boundary_pixels(pred);
  scores.hd95_px = hd95(ba, bb, calib);
  scores.assd_px = assd(ba, bb, calib);
  return scores;
}

}  // namespace ctsd
