#pragma once

#include <stdexcept>
#include <string>

namespace ctsd {

enum class errc {
  empty_mask,
  not_single_component,
  dimension_mismatch,
  empty_set,
  length_mismatch,
  empty_series,
  single_class,
  too_few_samples,
  non_finite_feature,
  no_valid_frames,
  malformed_header,
  truncated_data,
  unsupported_maxval,
  schema_violation,
  missing_file,
  io_error,
  out_of_bounds,
  profile_infeasible,
  degenerate_margin,
  all_zero_differences,
  frame_count_mismatch,
  missing_label,
  feature_mismatch,
  invalid_argument,
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::empty_mask: return "EmptyMask";
    case errc::not_single_component: return "NotSingleComponent";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::empty_set: return "EmptySet";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::empty_series: return "EmptySeries";
    case errc::single_class: return "SingleClass";
    case errc::too_few_samples: return "TooFewSamples";
    case errc::non_finite_feature: return "NonFiniteFeature";
    case errc::no_valid_frames: return "NoValidFrames";
    case errc::malformed_header: return "MalformedHeader";
    case errc::truncated_data: return "TruncatedData";
    case errc::unsupported_maxval: return "UnsupportedMaxval";
    case errc::schema_violation: return "SchemaViolation";
    case errc::missing_file: return "MissingFile";
    case errc::io_error: return "IoError";
    case errc::out_of_bounds: return "OutOfBounds";
    case errc::profile_infeasible: return "ProfileInfeasible";
    case errc::degenerate_margin: return "DegenerateMargin";
    case errc::all_zero_differences: return "AllZeroDifferences";
    case errc::frame_count_mismatch: return "FrameCountMismatch";
    case errc::missing_label: return "MissingLabel";
    case errc::feature_mismatch: return "FeatureMismatch";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

/// All recoverable failures surface as this exception; code() identifies the
/// condition machine-readably, what() carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace ctsd
