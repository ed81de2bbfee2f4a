#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctsd/mask.hpp"

namespace ctsd {

enum class Split { train, val, test };

const char* split_name(Split split);
Split parse_split(const std::string& name);

/// One sweep video: a directory of frame masks plus calibration, an optional
/// diagnostic label, and optional ground-truth / predicted mask directories.
/// Paths are stored relative to the manifest file.
struct VideoRecord {
  std::string id;
  std::string frames_dir;
  std::optional<std::string> gt_masks_dir;
  std::optional<std::string> pred_masks_dir;
  double mm_per_px_x = 1.0;
  double mm_per_px_y = 1.0;
  std::optional<int> label;  // 1 = CTS
  Split split = Split::train;

  Calibration calibration() const { return {mm_per_px_x, mm_per_px_y}; }
};

struct Manifest {
  int schema_version = 1;
  std::vector<VideoRecord> videos;
  /// Directory the relative paths resolve against; set on load/save, not
  /// serialized.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& relative) const { return base_dir / relative; }
};

/// Strict load: schema_version must be 1, unknown fields are SchemaViolation
/// (with a JSON-pointer-style path), ids must be unique, and every referenced
/// directory must exist (MissingFile lists all absent paths).
Manifest load_manifest(const std::filesystem::path& path);

void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Sorted .pgm paths in a video directory; filename order is frame order.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

}  // namespace ctsd
