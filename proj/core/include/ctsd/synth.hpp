#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ctsd/manifest.hpp"
#include "ctsd/mask.hpp"

namespace ctsd {

/// One synthetic sweep: an elliptical cross-section whose area dips by
/// `csa_ratio` and whose flattening peaks at `fr_peak` around the compression
/// site, mimicking nerve compression with adjacent swelling.
struct SweepProfile {
  int n_frames = 24;
  double base_a_px = 26.0;  // horizontal semi-axis of the uncompressed section
  double base_b_px = 16.0;  // vertical semi-axis
  double csa_ratio = 1.0;   // analytic max/min CSA over the sweep, >= 1
  double compression_center = 0.5;  // fractional sweep position in [0,1]
  double compression_width = 0.3;   // fraction of the sweep, in (0,1]
  double fr_peak = 0.0;             // target max a/b; 0 keeps the base ratio
  double center_drift_px = 0.0;     // per-frame uniform jitter amplitude
  int label = 0;                    // 1 = CTS

  void validate() const;
};

struct FrameTruth {
  double semi_a_px = 0.0;
  double semi_b_px = 0.0;
  double area_px2 = 0.0;  // pi * a * b
  double fr = 0.0;        // a / b
};

struct SweepVideo {
  std::vector<BinaryMask> frames;
  std::vector<FrameTruth> truth;

  double analytic_csa_ratio() const;
  double analytic_max_fr() const;
};

struct ImageSize {
  int width = 160;
  int height = 120;
};

/// Pixel-center rasterization: (c,r) is foreground iff
/// ((c+0.5-x)/a)^2 + ((r+0.5-y)/b)^2 <= 1. Throws OutOfBounds when the
/// ellipse does not fit in the image.
BinaryMask render_ellipse_mask(double center_x, double center_y, double semi_a, double semi_b,
                               int width, int height);

/// Deterministic in (profile, size, seed). The sampled analytic CSA profile
/// attains max/min = csa_ratio exactly; analytic FR attains fr_peak exactly.
/// Throws ProfileInfeasible when a frame would not fit the image.
SweepVideo gen_video(const SweepProfile& profile, ImageSize size, std::uint64_t seed);

enum class PerturbMode { dilate, erode, shift };

/// Morphological dilation/erosion with a square structuring element of
/// radius `magnitude`, or a seeded integer translation with |dx|,|dy| <=
/// magnitude. Deterministic; erosion may empty the mask.
BinaryMask perturb_mask(const BinaryMask& mask, PerturbMode mode, int magnitude,
                        std::uint64_t seed);

/// Integer translation; pixels shifted outside the image are dropped.
BinaryMask shift_mask(const BinaryMask& mask, int dx, int dy);

/// Half-open parameter range sampled uniformly per video.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct ClassProfileRanges {
  ParamRange base_a_px{20.0, 30.0};
  ParamRange base_b_px{13.0, 19.0};
  ParamRange csa_ratio{1.0, 1.25};
  ParamRange fr_peak_boost{0.0, 0.3};  // added to the base a/b ratio
  ParamRange compression_center{0.3, 0.7};
  ParamRange compression_width{0.2, 0.4};
  int min_frames = 20;
  int max_frames = 40;
  double center_drift_px = 2.0;
};

/// Dataset generation spec. Class ranges are chosen so CTS sweeps have
/// analytic csa_ratio >= 1.55 and normal sweeps < 1.3, leaving a margin gap.
struct SynthDatasetSpec {
  int n_cts = 5;
  int n_normal = 5;
  std::uint64_t seed = 90;
  ImageSize image_size;
  double mm_per_px = 0.08;
  ClassProfileRanges cts;     // csa_ratio in [1.6, 2.1), fr boost up to 2.2
  ClassProfileRanges normal;  // csa_ratio in [1.0, 1.25), mild fr boost

  SynthDatasetSpec() {
    cts.csa_ratio = {1.6, 2.1};
    cts.fr_peak_boost = {0.8, 2.2};
  }

  void validate() const;
};

/// Draws the profile for one video of the dataset; exposed so callers can
/// reproduce dataset videos without touching disk.
SweepProfile sample_profile(const SynthDatasetSpec& spec, int video_index);

/// Number of videos in the spec (CTS first, then normal).
int dataset_video_count(const SynthDatasetSpec& spec);

/// Deterministic 8:1:1 train/val/test assignment by seeded shuffle.
std::vector<Split> dataset_splits(const SynthDatasetSpec& spec);

/// Writes the dataset (PGM frames per video plus manifest.json) under
/// `out_dir` and returns the manifest. Regeneration with the same spec is
/// byte-identical. `perturb` optionally adds predicted masks derived from
/// the ground truth.
struct PerturbSpec {
  PerturbMode mode = PerturbMode::dilate;
  int magnitude = 0;
};

Manifest gen_dataset(const SynthDatasetSpec& spec, const std::filesystem::path& out_dir,
                     const std::optional<PerturbSpec>& perturb = std::nullopt);

}  // namespace ctsd
