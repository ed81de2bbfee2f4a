#pragma once

#include <array>
#include <span>

#include "ctsd/mask.hpp"

namespace ctsd {

/// Per-frame morphology of the largest nerve blob. When `valid` is false the
/// segmentation was empty and the numeric fields are meaningless.
struct FrameMeasure {
  bool valid = false;
  double perimeter_mm = 0.0;
  double csa_mm2 = 0.0;
  double ad_mm = 0.0;     // vertical (depth-axis) extent
  double width_mm = 0.0;  // horizontal extent
  double fr = 0.0;        // width / ad
};

/// Video-level diagnostic feature vector: max/min ratios of perimeter, CSA
/// and AD across valid frames, plus the FR and CSA maxima.
struct DiagnosticFeatures {
  double pr = 0.0;
  double sr = 0.0;
  double adr = 0.0;
  double max_fr = 0.0;
  double max_csa_mm2 = 0.0;
  int n_valid_frames = 0;
  int n_invalid_frames = 0;

  std::array<double, 5> vector() const { return {pr, sr, adr, max_fr, max_csa_mm2}; }
};

inline constexpr std::array<const char*, 5> kFeatureNames = {"PR", "SR", "ADR", "MaxFR",
                                                             "MaxCSA"};

/// Measures the largest connected component of the mask. An empty mask yields
/// an invalid FrameMeasure rather than an error.
FrameMeasure measure_frame(const BinaryMask& mask, const Calibration& calib = {});

/// Aggregates valid frames into DiagnosticFeatures. Invalid frames are
/// excluded and counted. Throws NoValidFrames when no frame is valid.
DiagnosticFeatures aggregate_video(std::span<const FrameMeasure> frames);

}  // namespace ctsd
