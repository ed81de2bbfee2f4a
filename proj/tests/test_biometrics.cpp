#include "doctest.h"

#include <algorithm>

#include "ctsd/biometrics.hpp"
#include "ctsd/prng.hpp"
#include "oracles.hpp"

using namespace ctsd;

namespace {

FrameMeasure make_frame(double perimeter, double csa, double ad, double fr) {
  FrameMeasure m;
  m.valid = true;
  m.perimeter_mm = perimeter;
  m.csa_mm2 = csa;
  m.ad_mm = ad;
  m.width_mm = fr * ad;
  m.fr = fr;
  return m;
}

std::vector<FrameMeasure> random_frames(int n, SplitMix64& rng) {
  std::vector<FrameMeasure> frames;
  for (int i = 0; i < n; ++i) {
    frames.push_back(make_frame(rng.uniform(8.0, 16.0), rng.uniform(8.0, 20.0),
                                rng.uniform(1.5, 3.0), rng.uniform(1.2, 4.0)));
  }
  return frames;
}

}  // namespace

TEST_SUITE("biometrics") {

TEST_CASE("measure_frame on empty mask is invalid") {
  const FrameMeasure m = measure_frame(BinaryMask(8, 8), {});
  CHECK_FALSE(m.valid);
}

TEST_CASE("measure_frame on a 10x10 square at 0.1 mm/px") {
  BinaryMask mask(16, 16);
  for (int y = 2; y < 12; ++y) {
    for (int x = 3; x < 13; ++x) mask.set(x, y, true);
  }
  const FrameMeasure m = measure_frame(mask, {0.1, 0.1});
  REQUIRE(m.valid);
  CHECK(m.perimeter_mm == doctest::Approx(3.6).epsilon(1e-12));
  CHECK(m.csa_mm2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.ad_mm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.width_mm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.fr == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measure_frame on a 60x20 rectangle at 0.05 mm/px") {
  BinaryMask mask(80, 40);
  for (int y = 10; y < 30; ++y) {
    for (int x = 10; x < 70; ++x) mask.set(x, y, true);
  }
  const FrameMeasure m = measure_frame(mask, {0.05, 0.05});
  REQUIRE(m.valid);
  CHECK(m.width_mm == doctest::Approx(3.0));
  CHECK(m.ad_mm == doctest::Approx(1.0));
  CHECK(m.fr == doctest::Approx(3.0));
}

TEST_CASE("measure_frame uses only the largest component") {
  BinaryMask mask(20, 20);
  for (int y = 2; y < 7; ++y) {
    for (int x = 2; x < 7; ++x) mask.set(x, y, true);  // 25 px blob
  }
  mask.set(15, 15, true);  // stray pixel
  const FrameMeasure m = measure_frame(mask, {});
  REQUIRE(m.valid);
  CHECK(m.csa_mm2 == doctest::Approx(25.0));
  CHECK(m.width_mm == doctest::Approx(5.0));
}

TEST_CASE("aggregate_video fixture arithmetic") {
  std::vector<FrameMeasure> frames = {
      make_frame(11.0, 10.0, 2.0, 2.0),
      make_frame(12.0, 12.0, 2.2, 2.5),
      make_frame(14.0, 15.0, 2.5, 3.2),
  };
  const DiagnosticFeatures f = aggregate_video(frames);
  CHECK(f.pr == doctest::Approx(14.0 / 11.0).epsilon(1e-12));
  CHECK(f.sr == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f.adr == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(f.max_fr == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(f.max_csa_mm2 == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(f.n_valid_frames == 3);
  CHECK(f.n_invalid_frames == 0);
}

TEST_CASE("aggregate_video degenerate cases") {
  SUBCASE("identical frames give unit ratios") {
    std::vector<FrameMeasure> frames(4, make_frame(12.0, 14.0, 2.0, 2.5));
    const DiagnosticFeatures f = aggregate_video(frames);
    CHECK(f.pr == 1.0);
    CHECK(f.sr == 1.0);
    CHECK(f.adr == 1.0);
    CHECK(f.max_fr == 2.5);
    CHECK(f.max_csa_mm2 == 14.0);
  }
  SUBCASE("single valid frame among invalid ones") {
    std::vector<FrameMeasure> frames(5);
    frames[2] = make_frame(12.0, 14.0, 2.0, 2.5);
    const DiagnosticFeatures f = aggregate_video(frames);
    CHECK(f.pr == 1.0);
    CHECK(f.sr == 1.0);
    CHECK(f.adr == 1.0);
    CHECK(f.n_valid_frames == 1);
    CHECK(f.n_invalid_frames == 4);
  }
  SUBCASE("all invalid throws NoValidFrames") {
    std::vector<FrameMeasure> frames(3);
    try {
      aggregate_video(frames);
      FAIL("expected NoValidFrames");
    } catch (const Error& e) {
      CHECK(e.code() == errc::no_valid_frames);
    }
  }
}

TEST_CASE("features are permutation invariant") {
  SplitMix64 rng(606);
  for (int trial = 0; trial < 25; ++trial) {
    auto frames = random_frames(12, rng);
    const DiagnosticFeatures before = aggregate_video(frames);
    // deterministic shuffle
    for (std::size_t i = frames.size() - 1; i > 0; --i) {
      std::swap(frames[i], frames[rng.below(i + 1)]);
    }
    const DiagnosticFeatures after = aggregate_video(frames);
    CHECK(before.pr == after.pr);
    CHECK(before.sr == after.sr);
    CHECK(before.adr == after.adr);
    CHECK(before.max_fr == after.max_fr);
    CHECK(before.max_csa_mm2 == after.max_csa_mm2);
  }
}

TEST_CASE("uniform calibration scaling leaves ratios unchanged and scales max_csa") {
  SplitMix64 rng(707);
  for (int trial = 0; trial < 25; ++trial) {
    const auto frames = random_frames(10, rng);
    const double c = rng.uniform(0.5, 3.0);
    std::vector<FrameMeasure> scaled = frames;
    for (auto& m : scaled) {
      m.perimeter_mm *= c;
      m.csa_mm2 *= c * c;
      m.ad_mm *= c;
      m.width_mm *= c;
      // fr unchanged: both extents scale together
    }
    const DiagnosticFeatures base = aggregate_video(frames);
    const DiagnosticFeatures after = aggregate_video(scaled);
    CHECK(after.pr == doctest::Approx(base.pr).epsilon(1e-12));
    CHECK(after.sr == doctest::Approx(base.sr).epsilon(1e-12));
    CHECK(after.adr == doctest::Approx(base.adr).epsilon(1e-12));
    CHECK(after.max_fr == doctest::Approx(base.max_fr).epsilon(1e-12));
    CHECK(after.max_csa_mm2 == doctest::Approx(base.max_csa_mm2 * c * c).epsilon(1e-12));
  }
}

TEST_CASE("removing a non-extremal frame leaves features unchanged") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    auto frames = random_frames(9, rng);
    const DiagnosticFeatures before = aggregate_video(frames);

    // find a frame that is no per-parameter max or min
    auto is_extremal = [&](const FrameMeasure& m) {
      double pmin = 1e300, pmax = -1e300, cmin = 1e300, cmax = -1e300;
      double amin = 1e300, amax = -1e300, fmax = -1e300;
      for (const auto& f : frames) {
        pmin = std::min(pmin, f.perimeter_mm);
        pmax = std::max(pmax, f.perimeter_mm);
        cmin = std::min(cmin, f.csa_mm2);
        cmax = std::max(cmax, f.csa_mm2);
        amin = std::min(amin, f.ad_mm);
        amax = std::max(amax, f.ad_mm);
        fmax = std::max(fmax, f.fr);
      }
      return m.perimeter_mm == pmin || m.perimeter_mm == pmax || m.csa_mm2 == cmin ||
             m.csa_mm2 == cmax || m.ad_mm == amin || m.ad_mm == amax || m.fr == fmax;
    };
    auto it = std::find_if(frames.begin(), frames.end(),
                           [&](const FrameMeasure& m) { return !is_extremal(m); });
    if (it == frames.end()) continue;
    frames.erase(it);

    const DiagnosticFeatures after = aggregate_video(frames);
    CHECK(before.pr == after.pr);
    CHECK(before.sr == after.sr);
    CHECK(before.adr == after.adr);
    CHECK(before.max_fr == after.max_fr);
    CHECK(before.max_csa_mm2 == after.max_csa_mm2);
  }
}

}  // TEST_SUITE
