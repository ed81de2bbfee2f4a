#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "parallel.hpp"

using namespace ctsd::tools;

namespace {

// Machine-readable error line on stderr: {"error":"<code>","message":"..."}
void print_error(const char* code, const std::string& message) {
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped.push_back('\\');
    if (c == '\n') {
      escaped += "\\n";
      continue;
    }
    escaped.push_back(c);
  }
  std::cerr << "{\"error\":\"" << code << "\",\"message\":\"" << escaped << "\"}\n";
}

void add_threads_option(CLI::App* cmd, int* threads) {
  *threads = default_threads();
  cmd->add_option("-j,--threads", *threads, "worker threads (default: CTSD_THREADS or hardware)")
      ->check(CLI::PositiveNumber);
}

void add_source_option(CLI::App* cmd, std::string* source) {
  *source = "gt";
  cmd->add_option("--source", *source, "mask source: gt or pred")
      ->check(CLI::IsMember({"gt", "pred"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"segmentation-agnostic median-nerve biometrics and CTS diagnosis pipeline"};
  app.require_subcommand(1);

  SynthOptions synth_opt;
  auto* synth = app.add_subcommand("synth", "generate a synthetic sweep dataset");
  synth->add_option("-o,--out", synth_opt.out_dir, "output directory")->required();
  synth->add_option("--cts", synth_opt.n_cts, "number of CTS sweeps")->check(CLI::NonNegativeNumber);
  synth->add_option("--normal", synth_opt.n_normal, "number of normal sweeps")
      ->check(CLI::NonNegativeNumber);
  synth->add_option("--seed", synth_opt.seed, "dataset seed");
  synth->add_option("--image-width", synth_opt.image_width)->check(CLI::PositiveNumber);
  synth->add_option("--image-height", synth_opt.image_height)->check(CLI::PositiveNumber);
  synth->add_option("--mm-per-px", synth_opt.mm_per_px, "isotropic calibration");
  synth->add_option("--perturb", synth_opt.perturb,
                    "also write predicted masks: dilate|erode|shift[:magnitude]");
  synth->add_flag("--force", synth_opt.force, "write into a non-empty directory");

  MeasureOptions measure_opt;
  std::string measure_source;
  auto* measure = app.add_subcommand("measure", "frame and video biometrics from masks");
  measure->add_option("--manifest", measure_opt.manifest, "dataset manifest")->required();
  measure->add_option("-o,--out", measure_opt.out_dir, "report directory")->required();
  add_source_option(measure, &measure_source);
  add_threads_option(measure, &measure_opt.threads);

  EvalSegOptions eval_seg_opt;
  auto* eval_seg = app.add_subcommand("eval-seg", "segmentation metrics gt vs pred");
  eval_seg->add_option("--manifest", eval_seg_opt.manifest, "dataset manifest")->required();
  eval_seg->add_option("-o,--out", eval_seg_opt.out_dir, "report directory")->required();
  add_threads_option(eval_seg, &eval_seg_opt.threads);

  TrainOptions train_opt;
  auto* train = app.add_subcommand("train", "fit a diagnostic classifier on the train split");
  train->add_option("--manifest", train_opt.manifest, "dataset manifest")->required();
  train->add_option("-o,--out", train_opt.model_out, "model file")->required();
  train->add_option("--classifier", train_opt.classifier, "rf, lr, or svm")
      ->check(CLI::IsMember({"rf", "lr", "svm"}));
  train->add_option("--trees", train_opt.trees)->check(CLI::PositiveNumber);
  train->add_option("--max-depth", train_opt.max_depth)->check(CLI::PositiveNumber);
  train->add_option("--min-split", train_opt.min_split)->check(CLI::PositiveNumber);
  train->add_option("--min-leaf", train_opt.min_leaf)->check(CLI::PositiveNumber);
  train->add_option("--seed", train_opt.seed, "forest seed");
  train->add_option("--l2", train_opt.l2, "logistic regression L2 weight");
  train->add_option("--svm-c", train_opt.svm_c, "SVM penalty");
  train->add_option("--max-iters", train_opt.max_iters, "optimizer iteration cap");
  std::string train_source;
  add_source_option(train, &train_source);
  add_threads_option(train, &train_opt.threads);

  DiagnoseOptions diagnose_opt;
  auto* diagnose = app.add_subcommand("diagnose", "classify videos with a trained model");
  diagnose->add_option("--manifest", diagnose_opt.manifest, "dataset manifest")->required();
  diagnose->add_option("--model", diagnose_opt.model, "model file from train")->required();
  diagnose->add_option("-o,--out", diagnose_opt.out_file, "predictions report file")->required();
  diagnose->add_option("--threshold", diagnose_opt.threshold, "decision threshold");
  std::string diagnose_source;
  add_source_option(diagnose, &diagnose_source);
  add_threads_option(diagnose, &diagnose_opt.threads);

  EvalDiagnosisOptions eval_diag_opt;
  auto* eval_diag = app.add_subcommand("eval-diagnosis", "classification metrics and ROC");
  eval_diag->add_option("--predictions", eval_diag_opt.predictions, "predictions report")
      ->required();
  eval_diag->add_option("--manifest", eval_diag_opt.manifest, "manifest with truth labels")
      ->required();
  eval_diag->add_option("-o,--out", eval_diag_opt.out_file, "metrics report file")->required();
  eval_diag->add_option("--roc", eval_diag_opt.roc_csv_file, "ROC CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_opt);
    if (measure->parsed()) {
      measure_opt.source = parse_mask_source(measure_source);
      return cmd_measure(measure_opt);
    }
    if (eval_seg->parsed()) return cmd_eval_seg(eval_seg_opt);
    if (train->parsed()) {
      train_opt.source = parse_mask_source(train_source);
      return cmd_train(train_opt);
    }
    if (diagnose->parsed()) {
      diagnose_opt.source = parse_mask_source(diagnose_source);
      return cmd_diagnose(diagnose_opt);
    }
    if (eval_diag->parsed()) return cmd_eval_diagnosis(eval_diag_opt);
  } catch (const ctsd::Error& e) {
    print_error(ctsd::errc_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("Unexpected", e.what());
    return 1;
  }
  return 0;
}
