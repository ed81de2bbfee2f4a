#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "ctsd/biometrics.hpp"
#include "ctsd/geometry.hpp"
#include "ctsd/seg_metrics.hpp"
#include "ctsd/synth.hpp"
#include "oracles.hpp"

using namespace ctsd;
namespace fs = std::filesystem;

namespace {

std::vector<char> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double measured_sr(const SweepVideo& video) {
  std::vector<FrameMeasure> frames;
  for (const auto& mask : video.frames) frames.push_back(measure_frame(mask, {}));
  return aggregate_video(frames).sr;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("render_ellipse_mask fixtures") {
  SUBCASE("sub-pixel ellipse on a pixel center") {
    const BinaryMask mask = render_ellipse_mask(3.5, 3.5, 0.6, 0.6, 8, 8);
    CHECK(mask.foreground_count() == 1);
    CHECK(mask.at(3, 3));
  }
  SUBCASE("area tracks pi*a*b within 2%") {
    const BinaryMask mask = render_ellipse_mask(40.0, 30.0, 30.0, 20.0, 80, 60);
    const double expected = std::numbers::pi * 30.0 * 20.0;
    CHECK(std::abs(static_cast<double>(mask.foreground_count()) - expected) / expected < 0.02);
  }
  SUBCASE("reflection symmetry about a grid-centered ellipse") {
    // center at a pixel-center grid point
    const BinaryMask mask = render_ellipse_mask(10.5, 8.5, 6.0, 4.0, 21, 17);
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) {
        CHECK(mask.at(x, y) == mask.at(20 - x, y));
        CHECK(mask.at(x, y) == mask.at(x, 16 - y));
      }
    }
  }
  SUBCASE("ellipse outside bounds is rejected") {
    try {
      render_ellipse_mask(5.0, 5.0, 6.0, 3.0, 20, 20);
      FAIL("expected OutOfBounds");
    } catch (const Error& e) {
      CHECK(e.code() == errc::out_of_bounds);
    }
  }
}

TEST_CASE("gen_video hits the analytic targets") {
  SweepProfile profile;
  profile.n_frames = 24;
  profile.base_a_px = 26.0;
  profile.base_b_px = 16.0;
  profile.fr_peak = 3.0;

  SUBCASE("constant profile keeps SR at 1") {
    profile.csa_ratio = 1.0;
    profile.fr_peak = 26.0 / 16.0;
    const SweepVideo video = gen_video(profile, {160, 120}, 7);
    CHECK(video.analytic_csa_ratio() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(measured_sr(video) - 1.0) < 0.02);
  }
  SUBCASE("csa_ratio 1.75 is reproduced within 2%") {
    profile.csa_ratio = 1.75;
    const SweepVideo video = gen_video(profile, {160, 120}, 7);
    CHECK(video.analytic_csa_ratio() == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(video.analytic_max_fr() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(measured_sr(video) - 1.75) / 1.75 < 0.02);
  }
  SUBCASE("same seed reproduces identical frames") {
    profile.csa_ratio = 1.6;
    profile.center_drift_px = 2.0;
    const SweepVideo a = gen_video(profile, {160, 120}, 12345);
    const SweepVideo b = gen_video(profile, {160, 120}, 12345);
    REQUIRE(a.frames.size() == b.frames.size());
    for (std::size_t i = 0; i < a.frames.size(); ++i) CHECK(a.frames[i] == b.frames[i]);
  }
  SUBCASE("infeasible profiles are rejected") {
    profile.csa_ratio = 1.6;
    try {
      gen_video(profile, {40, 30}, 7);
      FAIL("expected ProfileInfeasible");
    } catch (const Error& e) {
      CHECK(e.code() == errc::profile_infeasible);
    }
  }
}

TEST_CASE("every generated frame yields a valid measure") {
  SynthDatasetSpec spec;
  spec.n_cts = 3;
  spec.n_normal = 3;
  for (int v = 0; v < dataset_video_count(spec); ++v) {
    const SweepVideo video = gen_video(sample_profile(spec, v), spec.image_size,
                                       SplitMix64::for_stream(spec.seed, 0xF00DULL + v).next());
    for (const auto& frame : video.frames) {
      CHECK(measure_frame(frame, {spec.mm_per_px, spec.mm_per_px}).valid);
    }
  }
}

TEST_CASE("perturb_mask") {
  const BinaryMask base = render_ellipse_mask(20.0, 15.0, 9.0, 6.0, 40, 30);

  SUBCASE("magnitude zero is the identity") {
    CHECK(perturb_mask(base, PerturbMode::dilate, 0, 1) == base);
    CHECK(perturb_mask(base, PerturbMode::erode, 0, 1) == base);
  }
  SUBCASE("dilation strictly grows interior masks") {
    const BinaryMask dilated = perturb_mask(base, PerturbMode::dilate, 1, 1);
    CHECK(dilated.foreground_count() > base.foreground_count());
    const FrameMeasure before = measure_frame(base, {});
    const FrameMeasure after = measure_frame(dilated, {});
    CHECK(after.csa_mm2 > before.csa_mm2);
  }
  SUBCASE("erosion then dilation stays within the original") {
    const BinaryMask eroded = perturb_mask(base, PerturbMode::erode, 1, 1);
    CHECK(eroded.foreground_count() < base.foreground_count());
    for (int y = 0; y < base.height(); ++y) {
      for (int x = 0; x < base.width(); ++x) {
        if (eroded.at(x, y)) CHECK(base.at(x, y));
      }
    }
  }
  SUBCASE("shift by (3,4) moves the boundary exactly 5 px") {
    const BinaryMask shifted = shift_mask(base, 3, 4);
    const auto a = boundary_pixels(base);
    const auto b = boundary_pixels(shifted);
    CHECK(hd95(a, b) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(oracles::naive_hd95(a, b) == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("seeded shift is deterministic and bounded") {
    const BinaryMask s1 = perturb_mask(base, PerturbMode::shift, 3, 77);
    const BinaryMask s2 = perturb_mask(base, PerturbMode::shift, 3, 77);
    CHECK(s1 == s2);
    CHECK(s1.foreground_count() == base.foreground_count());  // interior mask, no clipping
  }
}

TEST_CASE("gen_dataset writes a deterministic tree with the documented layout") {
  SynthDatasetSpec spec;
  spec.n_cts = 5;
  spec.n_normal = 5;
  spec.seed = 7;

  const fs::path dir1 = fs::temp_directory_path() / "ctsd_synth_a";
  const fs::path dir2 = fs::temp_directory_path() / "ctsd_synth_b";
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  const Manifest m1 = gen_dataset(spec, dir1);
  const Manifest m2 = gen_dataset(spec, dir2);

  CHECK(m1.videos.size() == 10);
  int n_train = 0, n_val = 0, n_test = 0;
  for (const auto& v : m1.videos) {
    switch (v.split) {
      case Split::train: ++n_train; break;
      case Split::val: ++n_val; break;
      case Split::test: ++n_test; break;
    }
  }
  CHECK(n_train == 8);
  CHECK(n_val == 1);
  CHECK(n_test == 1);

  // CTS sweeps keep the analytic margin by construction
  for (int v = 0; v < dataset_video_count(spec); ++v) {
    const auto profile = sample_profile(spec, v);
    if (profile.label == 1) {
      CHECK(profile.csa_ratio >= 1.55);
    } else {
      CHECK(profile.csa_ratio < 1.3);
    }
  }

  // regeneration is byte-identical
  CHECK(slurp(dir1 / "manifest.json") == slurp(dir2 / "manifest.json"));
  for (const auto& v : m1.videos) {
    const auto frames1 = list_frames(dir1 / v.frames_dir);
    const auto frames2 = list_frames(dir2 / v.frames_dir);
    REQUIRE(frames1.size() == frames2.size());
    for (std::size_t i = 0; i < frames1.size(); ++i) {
      CHECK(slurp(frames1[i]) == slurp(frames2[i]));
    }
  }

  // the manifest loads back and resolves every directory
  const Manifest loaded = load_manifest(dir1 / "manifest.json");
  CHECK(loaded.videos.size() == 10);
  CHECK(loaded.videos.front().label.has_value());

  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("dataset labels are recoverable from analytic SR anywhere in the margin gap") {
  SynthDatasetSpec spec;
  spec.n_cts = 8;
  spec.n_normal = 8;
  spec.seed = 90;
  for (int v = 0; v < dataset_video_count(spec); ++v) {
    const SweepProfile profile = sample_profile(spec, v);
    const SweepVideo video = gen_video(profile, spec.image_size,
                                       SplitMix64::for_stream(spec.seed, 0xF00DULL + v).next());
    for (double t : {1.31, 1.42, 1.54}) {
      CHECK((video.analytic_csa_ratio() >= t ? 1 : 0) == profile.label);
    }
  }
}

}  // TEST_SUITE
