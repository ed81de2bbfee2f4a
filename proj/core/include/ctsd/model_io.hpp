#pragma once

#include <filesystem>
#include <variant>

#include "ctsd/forest.hpp"
#include "ctsd/linear.hpp"

namespace ctsd {

/// A fitted classifier of any supported kind, with a uniform scoring surface.
class DiagnosticModel {
 public:
  DiagnosticModel() = default;
  explicit DiagnosticModel(RandomForestModel rf) : impl_(std::move(rf)) {}
  explicit DiagnosticModel(LinearModel linear) : impl_(std::move(linear)) {}

  const char* kind_name() const;
  const std::vector<std::string>& feature_names() const;

  double probability(std::span<const double> features) const;
  int classify(std::span<const double> features, double threshold = 0.5) const;

  bool is_forest() const { return std::holds_alternative<RandomForestModel>(impl_); }
  const RandomForestModel& forest() const { return std::get<RandomForestModel>(impl_); }
  const LinearModel& linear() const { return std::get<LinearModel>(impl_); }

 private:
  std::variant<RandomForestModel, LinearModel> impl_;
};

/// Versioned JSON persistence; the round trip is lossless for prediction.
void save_model(const DiagnosticModel& model, const std::filesystem::path& path);
DiagnosticModel load_model(const std::filesystem::path& path);

/// FNV-1a 64 content hash of a file, as 16 hex digits. Reports echo this for
/// provenance.
std::string file_hash_hex(const std::filesystem::path& path);

}  // namespace ctsd
