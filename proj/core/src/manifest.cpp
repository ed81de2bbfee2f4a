#include "ctsd/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace ctsd {

using ordered_json = nlohmann::ordered_json;

namespace {

void reject_unknown_fields(const ordered_json& obj, const std::set<std::string>& known,
                           const std::string& pointer) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      throw Error(errc::schema_violation, "unknown field " + pointer + "/" + key);
    }
  }
}

const ordered_json& require_field(const ordered_json& obj, const char* key,
                                  const std::string& pointer) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(errc::schema_violation, "missing field " + pointer + "/" + key);
  }
  return *it;
}

}  // namespace

const char* split_name(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "train";
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "val") return Split::val;
  if (name == "test") return Split::test;
  throw Error(errc::schema_violation, "split must be train|val|test, got '" + name + "'");
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::io_error, "cannot open " + path.string());
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(errc::schema_violation, path.string() + ": " + e.what());
  }

  if (!doc.is_object()) {
    throw Error(errc::schema_violation, "manifest root must be an object");
  }
  reject_unknown_fields(doc, {"schema_version", "videos"}, "");

  const auto& version = require_field(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw Error(errc::schema_violation,
                "unsupported schema_version " + version.dump() + " (reader supports 1)");
  }

  Manifest manifest;
  manifest.schema_version = 1;
  manifest.base_dir = path.parent_path();

  const auto& videos = require_field(doc, "videos", "");
  if (!videos.is_array()) {
    throw Error(errc::schema_violation, "/videos must be an array");
  }

  std::set<std::string> ids;
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    const std::string ptr = "/videos/" + std::to_string(i);
    const auto& v = videos[i];
    if (!v.is_object()) {
      throw Error(errc::schema_violation, ptr + " must be an object");
    }
    reject_unknown_fields(v,
                          {"id", "frames_dir", "gt_masks_dir", "pred_masks_dir", "mm_per_px_x",
                           "mm_per_px_y", "label", "split"},
                          ptr);

    VideoRecord rec;
    rec.id = require_field(v, "id", ptr).get<std::string>();
    rec.frames_dir = require_field(v, "frames_dir", ptr).get<std::string>();
    if (v.contains("gt_masks_dir") && !v["gt_masks_dir"].is_null()) {
      rec.gt_masks_dir = v["gt_masks_dir"].get<std::string>();
    }
    if (v.contains("pred_masks_dir") && !v["pred_masks_dir"].is_null()) {
      rec.pred_masks_dir = v["pred_masks_dir"].get<std::string>();
    }
    rec.mm_per_px_x = require_field(v, "mm_per_px_x", ptr).get<double>();
    rec.mm_per_px_y = require_field(v, "mm_per_px_y", ptr).get<double>();
    rec.calibration().validate();
    if (v.contains("label") && !v["label"].is_null()) {
      const int label = v["label"].get<int>();
      if (label != 0 && label != 1) {
        throw Error(errc::schema_violation, ptr + "/label must be 0 or 1");
      }
      rec.label = label;
    }
    rec.split = parse_split(require_field(v, "split", ptr).get<std::string>());

    if (!ids.insert(rec.id).second) {
      throw Error(errc::schema_violation, ptr + "/id duplicates '" + rec.id + "'");
    }

    for (const auto& dir : {std::optional<std::string>(rec.frames_dir), rec.gt_masks_dir,
                            rec.pred_masks_dir}) {
      if (dir && !std::filesystem::is_directory(manifest.resolve(*dir))) {
        missing.push_back(manifest.resolve(*dir).string());
      }
    }
    manifest.videos.push_back(std::move(rec));
  }

  if (!missing.empty()) {
    std::string joined;
    for (const auto& m : missing) {
      if (!joined.empty()) joined += ", ";
      joined += m;
    }
    throw Error(errc::missing_file, "missing referenced paths: " + joined);
  }
  return manifest;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  ordered_json doc;
  doc["schema_version"] = manifest.schema_version;
  doc["videos"] = ordered_json::array();
  for (const VideoRecord& rec : manifest.videos) {
    ordered_json v;
    v["id"] = rec.id;
    v["frames_dir"] = rec.frames_dir;
    if (rec.gt_masks_dir) v["gt_masks_dir"] = *rec.gt_masks_dir;
    if (rec.pred_masks_dir) v["pred_masks_dir"] = *rec.pred_masks_dir;
    v["mm_per_px_x"] = rec.mm_per_px_x;
    v["mm_per_px_y"] = rec.mm_per_px_y;
    if (rec.label) v["label"] = *rec.label;
    v["split"] = split_name(rec.split);
    doc["videos"].push_back(std::move(v));
  }

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw Error(errc::io_error, "failed writing " + path.string());
  }
}

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(errc::missing_file, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> frames;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      frames.push_back(entry.path());
    }
  }
  std::sort(frames.begin(), frames.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return frames;
}

}  // namespace ctsd
