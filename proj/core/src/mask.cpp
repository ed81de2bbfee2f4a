#include "ctsd/mask.hpp"

#include <algorithm>
#include <cmath>

namespace ctsd {

void Calibration::validate() const {
  if (!(mm_per_px_x > 0.0) || !std::isfinite(mm_per_px_x) ||
      !(mm_per_px_y > 0.0) || !std::isfinite(mm_per_px_y)) {
    throw Error(errc::invalid_argument, "calibration factors must be positive and finite");
  }
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(errc::invalid_argument, "mask dimensions must be at least 1x1");
  }
  bits_.assign(static_cast<std::size_t>(width) * height, 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1) {
    throw Error(errc::invalid_argument, "mask dimensions must be at least 1x1");
  }
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(errc::invalid_argument, "bit buffer size does not match width*height");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::foreground_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::any_foreground() const {
  return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) != bits_.end();
}

}  // namespace ctsd
