#include "ctsd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace ctsd {

namespace {

// Clockwise Moore neighborhood on screen coordinates (y grows downward),
// starting east.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int direction_of(Pixel from, Pixel to) {
  for (int d = 0; d < 8; ++d) {
    if (from.x + kDx[d] == to.x && from.y + kDy[d] == to.y) return d;
  }
  return -1;
}

Pixel first_foreground_row_major(const BinaryMask& mask) {
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) return {x, y};
    }
  }
  return {-1, -1};
}

}  // namespace

std::vector<BinaryMask> connected_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::int32_t> label(static_cast<std::size_t>(w) * h, -1);

  struct CompInfo {
    std::size_t count = 0;
    std::int64_t first_index = 0;  // row-major index of first pixel seen
  };
  std::vector<CompInfo> infos;
  std::vector<std::int64_t> stack;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int64_t idx = static_cast<std::int64_t>(y) * w + x;
      if (!mask.at(x, y) || label[idx] >= 0) continue;
      const std::int32_t id = static_cast<std::int32_t>(infos.size());
      infos.push_back({0, idx});
      stack.clear();
      stack.push_back(idx);
      label[idx] = id;
      while (!stack.empty()) {
        const std::int64_t cur = stack.back();
        stack.pop_back();
        ++infos[id].count;
        const int cx = static_cast<int>(cur % w);
        const int cy = static_cast<int>(cur / w);
        for (int d = 0; d < 8; ++d) {
          const int nx = cx + kDx[d];
          const int ny = cy + kDy[d];
          if (!mask.in_bounds(nx, ny) || !mask.at(nx, ny)) continue;
          const std::int64_t nidx = static_cast<std::int64_t>(ny) * w + nx;
          if (label[nidx] >= 0) continue;
          label[nidx] = id;
          stack.push_back(nidx);
        }
      }
    }
  }

  std::vector<std::int32_t> order(infos.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::int32_t>(i);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    if (infos[a].count != infos[b].count) return infos[a].count > infos[b].count;
    return infos[a].first_index < infos[b].first_index;
  });
  std::vector<std::int32_t> rank(infos.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<std::int32_t>(i);

  std::vector<BinaryMask> components(infos.size(), BinaryMask(w, h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t id = label[static_cast<std::size_t>(y) * w + x];
      if (id >= 0) components[rank[id]].set(x, y, true);
    }
  }
  return components;
}

std::optional<BinaryMask> largest_component(const BinaryMask& mask) {
  auto components = connected_components(mask);
  if (components.empty()) return std::nullopt;
  return std::move(components.front());
}

PointSet2D boundary_pixels(const BinaryMask& mask) {
  PointSet2D result;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      if (!mask.at_or_false(x - 1, y) || !mask.at_or_false(x + 1, y) ||
          !mask.at_or_false(x, y - 1) || !mask.at_or_false(x, y + 1)) {
        result.push_back({x, y});
      }
    }
  }
  return result;
}

Contour trace_contour(const BinaryMask& component) {
  if (!component.any_foreground()) {
    throw Error(errc::empty_mask, "cannot trace contour of empty mask");
  }
  if (connected_components(component).size() != 1) {
    throw Error(errc::not_single_component, "contour tracing expects a single blob");
  }

  const Pixel start = first_foreground_row_major(component);

  // Moore tracing with deterministic (pixel, backtrack) state transitions.
  // The trajectory from the start state is eventually periodic; the contour
  // is the cycle, rotated so it begins at the start pixel. A state key packs
  // (pixel index, backtrack direction).
  auto state_key = [&](Pixel p, int back_dir) {
    return (static_cast<std::uint64_t>(p.y) * component.width() + p.x) * 8u +
           static_cast<std::uint64_t>(back_dir);
  };

  Pixel current = start;
  int back_dir = 4;  // backtrack to the west, which is background for the start pixel
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<Pixel> path;

  std::vector<Pixel> cycle;
  while (true) {
    const auto key = state_key(current, back_dir);
    auto it = seen.find(key);
    if (it != seen.end()) {
      cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(it->second), path.end());
      break;
    }
    seen.emplace(key, path.size());
    path.push_back(current);

    int found = -1;
    for (int i = 1; i <= 8; ++i) {
      const int d = (back_dir + i) % 8;
      const int nx = current.x + kDx[d];
      const int ny = current.y + kDy[d];
      if (component.at_or_false(nx, ny)) {
        found = d;
        break;
      }
    }
    if (found < 0) return Contour{{start}};  // isolated pixel

    const Pixel next{current.x + kDx[found], current.y + kDy[found]};
    // Backtrack is the last background neighbor examined; it is 4-adjacent
    // to `next`, so every traced pixel is a 4-boundary pixel.
    const int prev_d = (found + 7) % 8;
    const Pixel backtrack{current.x + kDx[prev_d], current.y + kDy[prev_d]};
    back_dir = direction_of(next, backtrack);
    current = next;
  }

  auto at_start = std::find(cycle.begin(), cycle.end(), start);
  std::rotate(cycle.begin(), at_start, cycle.end());
  return Contour{std::move(cycle)};
}

double chain_perimeter(const Contour& contour, const Calibration& calib) {
  calib.validate();
  const auto& pts = contour.points;
  if (pts.size() < 2) return 0.0;
  const double diag = std::hypot(calib.mm_per_px_x, calib.mm_per_px_y);
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Pixel& a = pts[i];
    const Pixel& b = pts[(i + 1) % pts.size()];
    const int dx = std::abs(a.x - b.x);
    const int dy = std::abs(a.y - b.y);
    if (dx == 1 && dy == 1) {
      total += diag;
    } else if (dx == 1) {
      total += calib.mm_per_px_x;
    } else if (dy == 1) {
      total += calib.mm_per_px_y;
    }
  }
  return total;
}

double pixel_area(const BinaryMask& mask, const Calibration& calib) {
  calib.validate();
  return static_cast<double>(mask.foreground_count()) * calib.mm_per_px_x * calib.mm_per_px_y;
}

FeretExtents feret_extents(const BinaryMask& mask, const Calibration& calib) {
  calib.validate();
  int min_x = std::numeric_limits<int>::max();
  int max_x = std::numeric_limits<int>::min();
  int min_y = std::numeric_limits<int>::max();
  int max_y = std::numeric_limits<int>::min();
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  if (max_x < min_x) {
    throw Error(errc::empty_mask, "feret extents require non-empty foreground");
  }
  return {(max_x - min_x + 1) * calib.mm_per_px_x, (max_y - min_y + 1) * calib.mm_per_px_y};
}

}  // namespace ctsd
