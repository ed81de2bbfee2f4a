#include "doctest.h"

#include <set>

#include "ctsd/geometry.hpp"
#include "ctsd/synth.hpp"
#include "oracles.hpp"

using namespace ctsd;

namespace {

BinaryMask filled_square(int size, int x0 = 0, int y0 = 0, int canvas = 0) {
  const int extent = canvas > 0 ? canvas : size;
  BinaryMask mask(extent, extent);
  for (int y = y0; y < y0 + size; ++y) {
    for (int x = x0; x < x0 + size; ++x) mask.set(x, y, true);
  }
  return mask;
}

}  // namespace

TEST_SUITE("raster_geometry") {

TEST_CASE("connected_components on empty mask") {
  BinaryMask mask(8, 8);
  CHECK(connected_components(mask).empty());
  CHECK_FALSE(largest_component(mask).has_value());
}

TEST_CASE("connected_components orders by size") {
  BinaryMask mask(12, 12);
  // 5-px blob
  for (int x = 6; x < 11; ++x) mask.set(x, 8, true);
  // 3-px blob
  for (int x = 0; x < 3; ++x) mask.set(x, 0, true);
  const auto comps = connected_components(mask);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].foreground_count() == 5);
  CHECK(comps[1].foreground_count() == 3);
  CHECK(*largest_component(mask) == comps[0]);
}

TEST_CASE("connected_components ties break on first row-major pixel") {
  BinaryMask mask(9, 9);
  mask.set(5, 1, true);  // same size, later in row-major order than (1,1)... (5,1) differs
  mask.set(1, 1, true);
  const auto comps = connected_components(mask);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].at(1, 1));
  CHECK(comps[1].at(5, 1));
}

TEST_CASE("connected_components partition random masks") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryMask mask = oracles::random_mask(16, 16, 0.35, rng);
    const auto comps = connected_components(mask);
    const auto labels = oracles::flood_fill_labels(mask);

    std::size_t total = 0;
    BinaryMask unioned(16, 16);
    for (const auto& comp : comps) {
      total += comp.foreground_count();
      for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
          if (comp.at(x, y)) {
            CHECK_FALSE(unioned.at(x, y));  // pairwise disjoint
            unioned.set(x, y, true);
          }
        }
      }
    }
    CHECK(unioned == mask);  // union equals foreground
    CHECK(total == mask.foreground_count());

    const int oracle_count =
        comps.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end());
    CHECK(static_cast<int>(comps.size()) == oracle_count);

    // every reported component is one oracle label
    for (const auto& comp : comps) {
      std::set<int> ids;
      for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
          if (comp.at(x, y)) ids.insert(labels[static_cast<std::size_t>(y) * 16 + x]);
        }
      }
      CHECK(ids.size() == 1);
    }
  }
}

TEST_CASE("largest_component is idempotent") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const BinaryMask mask = oracles::random_mask(16, 16, 0.3, rng);
    const auto first = largest_component(mask);
    if (!first) continue;
    const auto second = largest_component(*first);
    REQUIRE(second.has_value());
    CHECK(*second == *first);
  }
}

TEST_CASE("boundary_pixels fixtures") {
  SUBCASE("single pixel") {
    BinaryMask mask(5, 5);
    mask.set(2, 3, true);
    const auto boundary = boundary_pixels(mask);
    REQUIRE(boundary.size() == 1);
    CHECK(boundary[0] == Pixel{2, 3});
  }
  SUBCASE("10x10 filled square has a 36-pixel ring") {
    const auto boundary = boundary_pixels(filled_square(10));
    // direct enumeration: perimeter ring of a 10x10 square
    std::set<std::pair<int, int>> expected;
    for (int i = 0; i < 10; ++i) {
      expected.insert({i, 0});
      expected.insert({i, 9});
      expected.insert({0, i});
      expected.insert({9, i});
    }
    CHECK(boundary.size() == expected.size());
    for (const auto& p : boundary) CHECK(expected.contains({p.x, p.y}));
  }
  SUBCASE("3x3 filled square excludes only the center") {
    const auto boundary = boundary_pixels(filled_square(3));
    CHECK(boundary.size() == 8);
    for (const auto& p : boundary) CHECK_FALSE((p.x == 1 && p.y == 1));
  }
  SUBCASE("empty mask") { CHECK(boundary_pixels(BinaryMask(4, 4)).empty()); }
}

TEST_CASE("boundary pixels never include 4-interior pixels") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryMask mask = oracles::random_mask(16, 16, 0.6, rng);
    for (const auto& p : boundary_pixels(mask)) {
      CHECK(mask.at(p.x, p.y));
      const bool interior = mask.at_or_false(p.x - 1, p.y) && mask.at_or_false(p.x + 1, p.y) &&
                            mask.at_or_false(p.x, p.y - 1) && mask.at_or_false(p.x, p.y + 1);
      CHECK_FALSE(interior);
    }
  }
}

TEST_CASE("trace_contour degenerate and errors") {
  BinaryMask single(3, 3);
  single.set(1, 1, true);
  const auto contour = trace_contour(single);
  REQUIRE(contour.points.size() == 1);
  CHECK(contour.points[0] == Pixel{1, 1});

  CHECK_THROWS_AS(trace_contour(BinaryMask(3, 3)), Error);
  try {
    trace_contour(BinaryMask(3, 3));
  } catch (const Error& e) {
    CHECK(e.code() == errc::empty_mask);
  }

  BinaryMask two(5, 5);
  two.set(0, 0, true);
  two.set(4, 4, true);
  try {
    trace_contour(two);
    FAIL("expected NotSingleComponent");
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_single_component);
  }
}

TEST_CASE("trace_contour of 3x3 square: hand-traced clockwise cycle") {
  const auto contour = trace_contour(filled_square(3));
  const std::vector<Pixel> expected = {{0, 0}, {1, 0}, {2, 0}, {2, 1},
                                       {2, 2}, {1, 2}, {0, 2}, {0, 1}};
  REQUIRE(contour.points.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(contour.points[i] == expected[i]);
}

TEST_CASE("contour points lie on the 4-boundary and chain as 8-neighbors") {
  SplitMix64 rng(23);
  int traced = 0;
  while (traced < 25) {
    BinaryMask mask = oracles::random_mask(14, 14, 0.3, rng);
    const auto blob = largest_component(mask);
    if (!blob) continue;
    ++traced;
    const auto contour = trace_contour(*blob);
    const auto boundary = boundary_pixels(*blob);
    std::set<std::pair<int, int>> boundary_set;
    for (const auto& p : boundary) boundary_set.insert({p.x, p.y});
    for (const auto& p : contour.points) CHECK(boundary_set.contains({p.x, p.y}));
    for (std::size_t i = 0; i < contour.points.size() && contour.points.size() > 1; ++i) {
      const Pixel& a = contour.points[i];
      const Pixel& b = contour.points[(i + 1) % contour.points.size()];
      const int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
      CHECK(std::max(dx, dy) == 1);
    }
  }
}

TEST_CASE("chain_perimeter fixtures") {
  SUBCASE("single point is zero") {
    Contour c{{{3, 3}}};
    CHECK(chain_perimeter(c, {0.5, 0.25}) == 0.0);
  }
  SUBCASE("10x10 square ring at 0.1 mm/px") {
    const auto contour = trace_contour(filled_square(10));
    CHECK(contour.points.size() == 36);
    CHECK(chain_perimeter(contour, {0.1, 0.1}) == doctest::Approx(3.6).epsilon(1e-12));
  }
  SUBCASE("rasterized 30x20 ellipse vs Ramanujan within 8%") {
    const BinaryMask mask = render_ellipse_mask(40.0, 30.0, 30.0, 20.0, 80, 60);
    const double perimeter = chain_perimeter(trace_contour(mask), {});
    const double expected = oracles::ramanujan_perimeter(30.0, 20.0);
    CHECK(std::abs(perimeter - expected) / expected < 0.08);
  }
}

TEST_CASE("chain_perimeter translation and scaling properties") {
  SplitMix64 rng(5);
  int tested = 0;
  while (tested < 15) {
    BinaryMask mask = oracles::random_mask(10, 10, 0.35, rng);
    const auto blob = largest_component(mask);
    if (!blob) continue;
    ++tested;
    const double base = chain_perimeter(trace_contour(*blob), {});
    CHECK(base >= 0.0);

    // translate inside a larger canvas
    BinaryMask moved(20, 20);
    for (int y = 0; y < 10; ++y) {
      for (int x = 0; x < 10; ++x) {
        if (blob->at(x, y)) moved.set(x + 4, y + 6, true);
      }
    }
    CHECK(chain_perimeter(trace_contour(moved), {}) == doctest::Approx(base).epsilon(1e-12));

    // isotropic calibration scales linearly
    const double scaled = chain_perimeter(trace_contour(*blob), {0.3, 0.3});
    CHECK(scaled == doctest::Approx(0.3 * base).epsilon(1e-12));
  }
}

TEST_CASE("pixel_area fixtures and additivity") {
  CHECK(pixel_area(BinaryMask(8, 8), {}) == 0.0);
  CHECK(pixel_area(filled_square(10), {0.1, 0.1}) == doctest::Approx(1.0).epsilon(1e-12));

  const BinaryMask ellipse = render_ellipse_mask(40.0, 30.0, 30.0, 20.0, 80, 60);
  const double expected = std::numbers::pi * 30.0 * 20.0;
  CHECK(std::abs(pixel_area(ellipse, {}) - expected) / expected < 0.02);

  // additive over disjoint components
  BinaryMask mask(12, 12);
  for (int x = 0; x < 4; ++x) mask.set(x, 0, true);
  for (int x = 6; x < 10; ++x) mask.set(x, 5, true);
  const auto comps = connected_components(mask);
  double sum = 0.0;
  for (const auto& comp : comps) sum += pixel_area(comp, {0.2, 0.4});
  CHECK(pixel_area(mask, {0.2, 0.4}) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("feret_extents fixtures") {
  BinaryMask single(8, 8);
  single.set(3, 7, true);
  const auto fe = feret_extents(single, {});
  CHECK(fe.width_mm == 1.0);
  CHECK(fe.height_mm == 1.0);

  const auto square = feret_extents(filled_square(10), {0.1, 0.1});
  CHECK(square.width_mm == doctest::Approx(1.0));
  CHECK(square.height_mm == doctest::Approx(1.0));

  BinaryMask rect(70, 30);
  for (int y = 4; y < 24; ++y) {
    for (int x = 5; x < 65; ++x) rect.set(x, y, true);
  }
  const auto fr = feret_extents(rect, {0.05, 0.05});
  CHECK(fr.width_mm == doctest::Approx(3.0));
  CHECK(fr.height_mm == doctest::Approx(1.0));

  CHECK_THROWS_AS(feret_extents(BinaryMask(4, 4), {}), Error);
}

TEST_CASE("feret extents swap under 90-degree rotation with swapped calibration") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    BinaryMask mask = oracles::random_mask(12, 9, 0.4, rng);
    if (!mask.any_foreground()) continue;
    BinaryMask rotated(9, 12);
    for (int y = 0; y < 9; ++y) {
      for (int x = 0; x < 12; ++x) {
        if (mask.at(x, y)) rotated.set(y, x, true);  // transpose: extents swap
      }
    }
    const auto fe = feret_extents(mask, {0.2, 0.5});
    const auto fr = feret_extents(rotated, {0.5, 0.2});
    CHECK(fr.width_mm == doctest::Approx(fe.height_mm).epsilon(1e-12));
    CHECK(fr.height_mm == doctest::Approx(fe.width_mm).epsilon(1e-12));
  }
}

}  // TEST_SUITE
