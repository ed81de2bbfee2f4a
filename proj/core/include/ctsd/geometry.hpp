#pragma once

#include <optional>
#include <vector>

#include "ctsd/mask.hpp"

namespace ctsd {

/// Axis-aligned bounding-box extents of the foreground, in mm. The +1 pixel
/// convention is used so a single pixel has extent one pixel spacing.
struct FeretExtents {
  double width_mm = 0.0;
  double height_mm = 0.0;
};

/// 8-connected foreground components as full-size masks, ordered by pixel
/// count descending; ties broken by the first foreground pixel in row-major
/// order. Empty foreground yields an empty list.
std::vector<BinaryMask> connected_components(const BinaryMask& mask);

/// First element of connected_components, or nullopt when the foreground is
/// empty.
std::optional<BinaryMask> largest_component(const BinaryMask& mask);

/// Foreground pixels with at least one background or out-of-bounds 4-neighbor.
PointSet2D boundary_pixels(const BinaryMask& mask);

/// Moore boundary trace of a single 8-connected blob: a closed clockwise
/// cycle starting at the topmost-then-leftmost foreground pixel. One-pixel
/// blobs yield a length-1 contour.
/// Throws EmptyMask on empty foreground, NotSingleComponent on multiple blobs.
Contour trace_contour(const BinaryMask& component);

/// Freeman chain length of the contour cycle: axial steps contribute the
/// matching calibration factor, diagonal steps sqrt(sx^2 + sy^2). A
/// single-point contour has length 0.
double chain_perimeter(const Contour& contour, const Calibration& calib = {});

/// Foreground pixel count times the pixel area in mm^2.
double pixel_area(const BinaryMask& mask, const Calibration& calib = {});

/// Throws EmptyMask when the foreground is empty.
FeretExtents feret_extents(const BinaryMask& mask, const Calibration& calib = {});

}  // namespace ctsd
