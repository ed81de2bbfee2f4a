#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ctsd/synth.hpp"

namespace ctsd::tools {

enum class MaskSource { gt, pred };

MaskSource parse_mask_source(const std::string& name);

struct SynthOptions {
  std::string out_dir;
  int n_cts = 5;
  int n_normal = 5;
  std::uint64_t seed = 90;
  int image_width = 160;
  int image_height = 120;
  double mm_per_px = 0.08;
  bool force = false;
  std::string perturb;  // "mode:magnitude", empty = no predicted masks
};

struct MeasureOptions {
  std::string manifest;
  std::string out_dir;
  MaskSource source = MaskSource::gt;
  int threads = 1;
};

struct EvalSegOptions {
  std::string manifest;
  std::string out_dir;
  int threads = 1;
};

struct TrainOptions {
  std::string manifest;
  std::string model_out;
  std::string classifier = "rf";
  MaskSource source = MaskSource::gt;
  int threads = 1;
  // forest
  int trees = 135;
  int max_depth = 6;
  int min_split = 12;
  int min_leaf = 9;
  std::uint64_t seed = 90;
  // linear
  double l2 = 1e-3;
  double svm_c = 1.0;
  int max_iters = 0;  // 0 = per-classifier default
};

struct DiagnoseOptions {
  std::string manifest;
  std::string model;
  std::string out_file;
  MaskSource source = MaskSource::gt;
  double threshold = 0.5;
  int threads = 1;
};

struct EvalDiagnosisOptions {
  std::string predictions;
  std::string manifest;
  std::string out_file;
  std::string roc_csv_file;
};

int cmd_synth(const SynthOptions& opt);
int cmd_measure(const MeasureOptions& opt);
int cmd_eval_seg(const EvalSegOptions& opt);
int cmd_train(const TrainOptions& opt);
int cmd_diagnose(const DiagnoseOptions& opt);
int cmd_eval_diagnosis(const EvalDiagnosisOptions& opt);

}  // namespace ctsd::tools
