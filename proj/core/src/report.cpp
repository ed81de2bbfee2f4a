#include "ctsd/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

#include "ctsd/errors.hpp"

namespace ctsd {

namespace {

void reject_unknown(const ordered_json& obj, const std::set<std::string>& known,
                    const std::string& pointer) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      throw Error(errc::schema_violation, "unknown field " + pointer + "/" + key);
    }
  }
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& pointer) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(errc::schema_violation, "missing field " + pointer + "/" + key);
  }
  return *it;
}

}  // namespace

double round_sig6(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return std::strtod(buf, nullptr);
}

ordered_json report_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig6(x);
}

ordered_json report_number(const std::optional<double>& x) {
  if (!x) return nullptr;
  return report_number(*x);
}

ordered_json video_report_json(const VideoReport& report) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["video_id"] = report.video_id;
  doc["n_frames"] = report.frames.size();

  ordered_json frames = ordered_json::array();
  for (std::size_t i = 0; i < report.frames.size(); ++i) {
    const FrameMeasure& m = report.frames[i];
    ordered_json f;
    f["index"] = i;
    f["valid"] = m.valid;
    f["perimeter_mm"] = m.valid ? report_number(m.perimeter_mm) : ordered_json(nullptr);
    f["csa_mm2"] = m.valid ? report_number(m.csa_mm2) : ordered_json(nullptr);
    f["ad_mm"] = m.valid ? report_number(m.ad_mm) : ordered_json(nullptr);
    f["width_mm"] = m.valid ? report_number(m.width_mm) : ordered_json(nullptr);
    f["fr"] = m.valid ? report_number(m.fr) : ordered_json(nullptr);
    frames.push_back(std::move(f));
  }
  doc["frames"] = std::move(frames);

  if (report.features) {
    const DiagnosticFeatures& ft = *report.features;
    ordered_json j;
    j["pr"] = report_number(ft.pr);
    j["sr"] = report_number(ft.sr);
    j["adr"] = report_number(ft.adr);
    j["max_fr"] = report_number(ft.max_fr);
    j["max_csa_mm2"] = report_number(ft.max_csa_mm2);
    j["n_valid_frames"] = ft.n_valid_frames;
    j["n_invalid_frames"] = ft.n_invalid_frames;
    doc["features"] = std::move(j);
  } else {
    doc["features"] = nullptr;
  }
  return doc;
}

void write_predictions_report(const PredictionsReport& report,
                              const std::filesystem::path& path) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["model_kind"] = report.model_kind;
  doc["model_hash"] = report.model_hash;
  doc["threshold"] = report_number(report.threshold);
  doc["feature_names"] = report.feature_names;
  if (!report.feature_importances.empty()) {
    ordered_json imp = ordered_json::array();
    for (double v : report.feature_importances) imp.push_back(report_number(v));
    doc["feature_importances"] = std::move(imp);
  } else {
    doc["feature_importances"] = nullptr;
  }

  ordered_json preds = ordered_json::array();
  for (const Prediction& p : report.predictions) {
    ordered_json j;
    j["video_id"] = p.video_id;
    ordered_json fv = ordered_json::array();
    for (double v : p.features) fv.push_back(report_number(v));
    j["features"] = std::move(fv);
    j["probability"] = report_number(p.probability);
    j["label"] = p.label;
    preds.push_back(std::move(j));
  }
  doc["predictions"] = std::move(preds);
  write_json_report(doc, path);
}

PredictionsReport load_predictions_report(const std::filesystem::path& path) {
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
    throw Error(errc::schema_violation, "predictions report root must be an object");
  }
  reject_unknown(doc,
                 {"schema_version", "model_kind", "model_hash", "threshold", "feature_names",
                  "feature_importances", "predictions"},
                 "");
  const auto& version = require(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw Error(errc::schema_violation,
                "unsupported schema_version " + version.dump() + " (reader supports 1)");
  }

  PredictionsReport report;
  report.model_kind = require(doc, "model_kind", "").get<std::string>();
  report.model_hash = require(doc, "model_hash", "").get<std::string>();
  report.threshold = require(doc, "threshold", "").get<double>();
  for (const auto& name : require(doc, "feature_names", "")) {
    report.feature_names.push_back(name.get<std::string>());
  }
  const auto& imp = require(doc, "feature_importances", "");
  if (!imp.is_null()) {
    for (const auto& v : imp) report.feature_importances.push_back(v.get<double>());
  }

  const auto& preds = require(doc, "predictions", "");
  if (!preds.is_array()) {
    throw Error(errc::schema_violation, "/predictions must be an array");
  }
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const std::string ptr = "/predictions/" + std::to_string(i);
    const auto& j = preds[i];
    reject_unknown(j, {"video_id", "features", "probability", "label"}, ptr);
    Prediction p;
    p.video_id = require(j, "video_id", ptr).get<std::string>();
    for (const auto& v : require(j, "features", ptr)) p.features.push_back(v.get<double>());
    p.probability = require(j, "probability", ptr).get<double>();
    p.label = require(j, "label", ptr).get<int>();
    if (p.label != 0 && p.label != 1) {
      throw Error(errc::schema_violation, ptr + "/label must be 0 or 1");
    }
    report.predictions.push_back(std::move(p));
  }
  return report;
}

void write_json_report(const ordered_json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw Error(errc::io_error, "failed writing " + path.string());
  }
}

}  // namespace ctsd
