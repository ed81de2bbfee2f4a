#include "ctsd/biometrics.hpp"

#include <algorithm>
#include <limits>

#include "ctsd/geometry.hpp"

namespace ctsd {

FrameMeasure measure_frame(const BinaryMask& mask, const Calibration& calib) {
  calib.validate();
  auto blob = largest_component(mask);
  if (!blob) return {};

  FrameMeasure m;
  m.valid = true;
  m.perimeter_mm = chain_perimeter(trace_contour(*blob), calib);
  m.csa_mm2 = pixel_area(*blob, calib);
  const FeretExtents extents = feret_extents(*blob, calib);
  m.width_mm = extents.width_mm;
  m.ad_mm = extents.height_mm;
  m.fr = m.width_mm / m.ad_mm;
  return m;
}

DiagnosticFeatures aggregate_video(std::span<const FrameMeasure> frames) {
  DiagnosticFeatures f;
  double min_perimeter = std::numeric_limits<double>::infinity();
  double max_perimeter = 0.0;
  double min_csa = std::numeric_limits<double>::infinity();
  double max_csa = 0.0;
  double min_ad = std::numeric_limits<double>::infinity();
  double max_ad = 0.0;
  double max_fr = 0.0;

  for (const FrameMeasure& m : frames) {
    if (!m.valid) {
      ++f.n_invalid_frames;
      continue;
    }
    ++f.n_valid_frames;
    min_perimeter = std::min(min_perimeter, m.perimeter_mm);
    max_perimeter = std::max(max_perimeter, m.perimeter_mm);
    min_csa = std::min(min_csa, m.csa_mm2);
    max_csa = std::max(max_csa, m.csa_mm2);
    min_ad = std::min(min_ad, m.ad_mm);
    max_ad = std::max(max_ad, m.ad_mm);
    max_fr = std::max(max_fr, m.fr);
  }

  if (f.n_valid_frames == 0) {
    throw Error(errc::no_valid_frames, "no valid frames to aggregate");
  }

  f.pr = max_perimeter / min_perimeter;
  f.sr = max_csa / min_csa;
  f.adr = max_ad / min_ad;
  f.max_fr = max_fr;
  f.max_csa_mm2 = max_csa;
  return f;
}

}  // namespace ctsd
