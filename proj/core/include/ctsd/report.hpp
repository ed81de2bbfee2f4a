#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctsd/biometrics.hpp"

namespace ctsd {

using ordered_json = nlohmann::ordered_json;

/// Rounds to 6 significant digits; reports serialize every number through
/// this so output is compact and byte-deterministic.
double round_sig6(double x);

/// JSON value for a report number: rounded, or null when absent/non-finite.
ordered_json report_number(double x);
ordered_json report_number(const std::optional<double>& x);

/// Measurement report for one video.
struct VideoReport {
  std::string video_id;
  std::vector<FrameMeasure> frames;
  std::optional<DiagnosticFeatures> features;  // absent when no frame was valid
};

ordered_json video_report_json(const VideoReport& report);

/// One classified video in a predictions report.
struct Prediction {
  std::string video_id;
  std::vector<double> features;
  double probability = 0.0;
  int label = 0;
};

struct PredictionsReport {
  std::string model_kind;
  std::string model_hash;
  double threshold = 0.5;
  std::vector<std::string> feature_names;
  std::vector<double> feature_importances;  // empty unless the model is a forest
  std::vector<Prediction> predictions;
};

void write_predictions_report(const PredictionsReport& report,
                              const std::filesystem::path& path);
PredictionsReport load_predictions_report(const std::filesystem::path& path);

/// Serializes any report document with the shared conventions (trailing
/// newline, two-space indent). The document must already carry its
/// schema_version.
void write_json_report(const ordered_json& doc, const std::filesystem::path& path);

}  // namespace ctsd
