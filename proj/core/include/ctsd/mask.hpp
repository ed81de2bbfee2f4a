#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ctsd/errors.hpp"

namespace ctsd {

/// Physical pixel spacing. Defaults to 1 mm/px so geometry can be used in
/// plain pixel units.
struct Calibration {
  double mm_per_px_x = 1.0;
  double mm_per_px_y = 1.0;

  void validate() const;
  bool isotropic() const { return mm_per_px_x == mm_per_px_y; }
};

/// Integer pixel coordinate, x = column, y = row (y grows downward).
struct Pixel {
  int x = 0;
  int y = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Unordered set of pixel coordinates, e.g. the boundary of a region.
using PointSet2D = std::vector<Pixel>;

/// Row-major 2D boolean raster. Width and height are at least 1.
class BinaryMask {
 public:
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int x, int y) const { return bits_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool value) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }

  bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }
  /// Background for any out-of-bounds coordinate.
  bool at_or_false(int x, int y) const { return in_bounds(x, y) && at(x, y); }

  std::size_t foreground_count() const;
  bool any_foreground() const;
  bool same_shape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Closed cycle of boundary pixels; consecutive points (cyclically) are
/// 8-neighbors. A single-point contour is the degenerate cycle.
struct Contour {
  std::vector<Pixel> points;
};

}  // namespace ctsd
