#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "ctsd/biometrics.hpp"
#include "ctsd/class_metrics.hpp"
#include "ctsd/linear.hpp"
#include "ctsd/model_io.hpp"
#include "ctsd/pgm.hpp"
#include "ctsd/report.hpp"
#include "ctsd/seg_metrics.hpp"
#include "parallel.hpp"

namespace ctsd::tools {

namespace fs = std::filesystem;

namespace {

std::string mask_dir_or_throw(const VideoRecord& rec, MaskSource source) {
  const auto& dir = source == MaskSource::gt ? rec.gt_masks_dir : rec.pred_masks_dir;
  if (!dir) {
    throw Error(errc::missing_file,
                "video '" + rec.id + "' has no " +
                    (source == MaskSource::gt ? "gt" : "pred") + " mask directory");
  }
  return *dir;
}

std::vector<std::size_t> sorted_video_order(const Manifest& manifest) {
  std::vector<std::size_t> order(manifest.videos.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return manifest.videos[a].id < manifest.videos[b].id;
  });
  return order;
}

std::vector<FrameMeasure> measure_video(const Manifest& manifest, const VideoRecord& rec,
                                        MaskSource source) {
  const std::string dir = mask_dir_or_throw(rec, source);
  const auto frames = list_frames(manifest.resolve(dir));
  std::vector<FrameMeasure> measures;
  measures.reserve(frames.size());
  const Calibration calib = rec.calibration();
  for (const auto& frame : frames) {
    measures.push_back(measure_frame(read_pgm(frame), calib));
  }
  return measures;
}

struct MeanStd {
  double mean = 0.0;
  double stdev = 0.0;
  std::size_t n = 0;
};

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  out.n = values.size();
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

ordered_json mean_std_json(const MeanStd& ms) {
  ordered_json j;
  if (ms.n == 0) return nullptr;
  j["mean"] = report_number(ms.mean);
  j["stdev"] = report_number(ms.stdev);
  j["n"] = ms.n;
  return j;
}

std::vector<double> features_from_measures(const std::vector<FrameMeasure>& measures) {
  const DiagnosticFeatures f = aggregate_video(measures);
  const auto v = f.vector();
  return {v.begin(), v.end()};
}

const std::vector<std::string>& pipeline_feature_names() {
  static const std::vector<std::string> names = {"PR", "SR", "ADR", "MaxFR", "MaxCSA"};
  return names;
}

std::string metric_pct(const std::optional<double>& value) {
  if (!value) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", *value * 100.0);
  return buf;
}

void print_classification_line(const ClassificationReport& r) {
  std::cout << "ACC " << metric_pct(r.acc) << "  SEN " << metric_pct(r.sen) << "  SPE "
            << metric_pct(r.spe) << "  F1 " << metric_pct(r.f1) << "  FNR " << metric_pct(r.fnr)
            << "  FPR " << metric_pct(r.fpr);
  if (r.auc) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *r.auc);
    std::cout << "  AUC " << buf;
  }
  std::cout << "\n";
}

ordered_json classification_json(const ClassificationReport& r, const ConfusionMatrix& cm) {
  ordered_json j;
  j["acc"] = report_number(r.acc);
  j["sen"] = report_number(r.sen);
  j["spe"] = report_number(r.spe);
  j["f1"] = report_number(r.f1);
  j["fnr"] = report_number(r.fnr);
  j["fpr"] = report_number(r.fpr);
  j["auc"] = report_number(r.auc);
  ordered_json c;
  c["tp"] = cm.tp;
  c["fp"] = cm.fp;
  c["tn"] = cm.tn;
  c["fn"] = cm.fn;
  j["confusion"] = std::move(c);
  return j;
}

PerturbSpec parse_perturb(const std::string& text) {
  const auto colon = text.find(':');
  const std::string mode = text.substr(0, colon);
  PerturbSpec spec;
  if (mode == "dilate") {
    spec.mode = PerturbMode::dilate;
  } else if (mode == "erode") {
    spec.mode = PerturbMode::erode;
  } else if (mode == "shift") {
    spec.mode = PerturbMode::shift;
  } else {
    throw Error(errc::invalid_argument, "perturb mode must be dilate|erode|shift");
  }
  if (colon == std::string::npos) {
    spec.magnitude = 1;
  } else {
    try {
      spec.magnitude = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(errc::invalid_argument, "perturb magnitude must be an integer");
    }
  }
  if (spec.magnitude < 0) {
    throw Error(errc::invalid_argument, "perturb magnitude must be non-negative");
  }
  return spec;
}

FeatureMatrix features_for_split(const Manifest& manifest, MaskSource source, Split split,
                                 int threads, std::vector<std::string>* ids_out) {
  const auto order = sorted_video_order(manifest);
  std::vector<std::size_t> selected;
  for (std::size_t idx : order) {
    if (manifest.videos[idx].split == split) selected.push_back(idx);
  }

  std::vector<std::optional<std::vector<double>>> rows(selected.size());
  parallel_for(selected.size(), threads, [&](std::size_t i) {
    const VideoRecord& rec = manifest.videos[selected[i]];
    const auto measures = measure_video(manifest, rec, source);
    try {
      rows[i] = features_from_measures(measures);
    } catch (const Error& e) {
      if (e.code() != errc::no_valid_frames) throw;
      rows[i] = std::nullopt;
    }
  });

  FeatureMatrix data;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const VideoRecord& rec = manifest.videos[selected[i]];
    if (!rows[i]) continue;  // skipped with a warning by callers that care
    if (!rec.label) {
      throw Error(errc::missing_label, "video '" + rec.id + "' in split '" +
                                           split_name(split) + "' has no label");
    }
    data.rows.push_back(*rows[i]);
    data.labels.push_back(*rec.label);
    if (ids_out) ids_out->push_back(rec.id);
  }
  return data;
}

}  // namespace

MaskSource parse_mask_source(const std::string& name) {
  if (name == "gt") return MaskSource::gt;
  if (name == "pred") return MaskSource::pred;
  throw Error(errc::invalid_argument, "mask source must be gt or pred");
}

int cmd_synth(const SynthOptions& opt) {
  const fs::path out_dir = opt.out_dir;
  if (fs::exists(out_dir) && !fs::is_empty(out_dir) && !opt.force) {
    throw Error(errc::io_error,
                out_dir.string() + " is not empty (use --force to overwrite)");
  }

  SynthDatasetSpec spec;
  spec.n_cts = opt.n_cts;
  spec.n_normal = opt.n_normal;
  spec.seed = opt.seed;
  spec.image_size = {opt.image_width, opt.image_height};
  spec.mm_per_px = opt.mm_per_px;

  std::optional<PerturbSpec> perturb;
  if (!opt.perturb.empty()) perturb = parse_perturb(opt.perturb);

  const Manifest manifest = gen_dataset(spec, out_dir, perturb);
  std::cout << "wrote " << manifest.videos.size() << " videos to " << out_dir.string() << "\n";
  return 0;
}

int cmd_measure(const MeasureOptions& opt) {
  const Manifest manifest = load_manifest(opt.manifest);
  fs::create_directories(opt.out_dir);

  const auto order = sorted_video_order(manifest);
  std::vector<VideoReport> reports(order.size());
  parallel_for(order.size(), opt.threads, [&](std::size_t i) {
    const VideoRecord& rec = manifest.videos[order[i]];
    VideoReport report;
    report.video_id = rec.id;
    report.frames = measure_video(manifest, rec, opt.source);
    try {
      report.features = aggregate_video(report.frames);
    } catch (const Error& e) {
      if (e.code() != errc::no_valid_frames) throw;
    }
    reports[i] = std::move(report);
  });

  int warnings = 0;
  ordered_json table = ordered_json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const VideoReport& report = reports[i];
    const VideoRecord& rec = manifest.videos[order[i]];
    write_json_report(video_report_json(report),
                      fs::path(opt.out_dir) / (report.video_id + ".report.json"));

    ordered_json row;
    row["id"] = report.video_id;
    row["split"] = split_name(rec.split);
    row["label"] = rec.label ? ordered_json(*rec.label) : ordered_json(nullptr);
    if (report.features) {
      const DiagnosticFeatures& f = *report.features;
      row["pr"] = report_number(f.pr);
      row["sr"] = report_number(f.sr);
      row["adr"] = report_number(f.adr);
      row["max_fr"] = report_number(f.max_fr);
      row["max_csa_mm2"] = report_number(f.max_csa_mm2);
      row["n_valid_frames"] = f.n_valid_frames;
      row["n_invalid_frames"] = f.n_invalid_frames;
    } else {
      row["error"] = "NoValidFrames";
      ++warnings;
    }
    table.push_back(std::move(row));
  }

  ordered_json summary;
  summary["schema_version"] = 1;
  summary["command"] = "measure";
  summary["source"] = opt.source == MaskSource::gt ? "gt" : "pred";
  summary["n_videos"] = reports.size();
  summary["n_videos_no_valid_frames"] = warnings;
  summary["videos"] = std::move(table);
  write_json_report(summary, fs::path(opt.out_dir) / "summary.json");

  if (warnings > 0) {
    std::cerr << "warning: " << warnings << " video(s) had no valid frames\n";
  }
  std::cout << "measured " << reports.size() << " videos into " << opt.out_dir << "\n";
  return 0;
}

int cmd_eval_seg(const EvalSegOptions& opt) {
  const Manifest manifest = load_manifest(opt.manifest);
  fs::create_directories(opt.out_dir);
  const auto order = sorted_video_order(manifest);

  struct VideoEval {
    std::string id;
    std::string error;  // empty = ok
    std::size_t n_frames = 0;
    std::size_t n_flagged_frames = 0;  // empty boundary on either side
    std::vector<double> dice, iou, hd95_px, assd_px;
    std::optional<double> mae_perimeter, mae_csa, mae_ad, mae_fr;
    std::size_t n_compared_frames = 0;
    std::optional<std::array<double, 5>> feature_abs_err;
  };

  std::vector<VideoEval> evals(order.size());
  parallel_for(order.size(), opt.threads, [&](std::size_t i) {
    const VideoRecord& rec = manifest.videos[order[i]];
    VideoEval ev;
    ev.id = rec.id;
    if (!rec.gt_masks_dir || !rec.pred_masks_dir) {
      ev.error = "MissingMaskDir";
      evals[i] = std::move(ev);
      return;
    }
    const auto gt_frames = list_frames(manifest.resolve(*rec.gt_masks_dir));
    const auto pred_frames = list_frames(manifest.resolve(*rec.pred_masks_dir));
    if (gt_frames.size() != pred_frames.size()) {
      ev.error = "FrameCountMismatch";
      evals[i] = std::move(ev);
      return;
    }
    ev.n_frames = gt_frames.size();
    const Calibration calib = rec.calibration();

    std::vector<double> gt_perimeter, gt_csa, gt_ad, gt_fr;
    std::vector<double> pr_perimeter, pr_csa, pr_ad, pr_fr;
    std::vector<FrameMeasure> gt_measures, pred_measures;
    for (std::size_t f = 0; f < gt_frames.size(); ++f) {
      const BinaryMask gt = read_pgm(gt_frames[f]);
      const BinaryMask pred = read_pgm(pred_frames[f]);
      if (!gt.same_shape(pred)) {
        throw Error(errc::dimension_mismatch,
                    "video '" + rec.id + "' frame " + std::to_string(f) +
                        ": gt and pred dimensions differ");
      }
      ev.dice.push_back(dice(gt, pred));
      ev.iou.push_back(iou(gt, pred));
      const auto ba = boundary_pixels(gt);
      const auto bb = boundary_pixels(pred);
      if (ba.empty() || bb.empty()) {
        ++ev.n_flagged_frames;
      } else {
        ev.hd95_px.push_back(hd95(ba, bb));
        ev.assd_px.push_back(assd(ba, bb));
      }

      const FrameMeasure mg = measure_frame(gt, calib);
      const FrameMeasure mp = measure_frame(pred, calib);
      gt_measures.push_back(mg);
      pred_measures.push_back(mp);
      if (mg.valid && mp.valid) {
        gt_perimeter.push_back(mg.perimeter_mm);
        pr_perimeter.push_back(mp.perimeter_mm);
        gt_csa.push_back(mg.csa_mm2);
        pr_csa.push_back(mp.csa_mm2);
        gt_ad.push_back(mg.ad_mm);
        pr_ad.push_back(mp.ad_mm);
        gt_fr.push_back(mg.fr);
        pr_fr.push_back(mp.fr);
      }
    }

    ev.n_compared_frames = gt_perimeter.size();
    if (!gt_perimeter.empty()) {
      ev.mae_perimeter = mae(gt_perimeter, pr_perimeter);
      ev.mae_csa = mae(gt_csa, pr_csa);
      ev.mae_ad = mae(gt_ad, pr_ad);
      ev.mae_fr = mae(gt_fr, pr_fr);
    }
    try {
      const DiagnosticFeatures fg = aggregate_video(gt_measures);
      const DiagnosticFeatures fp = aggregate_video(pred_measures);
      ev.feature_abs_err = {
          std::abs(fg.pr - fp.pr), std::abs(fg.sr - fp.sr), std::abs(fg.adr - fp.adr),
          std::abs(fg.max_fr - fp.max_fr), std::abs(fg.max_csa_mm2 - fp.max_csa_mm2)};
    } catch (const Error& e) {
      if (e.code() != errc::no_valid_frames) throw;
    }
    evals[i] = std::move(ev);
  });

  // dataset pools
  std::vector<double> all_dice, all_iou, all_hd95, all_assd;
  std::vector<double> mae_perimeter, mae_csa, mae_ad, mae_fr;
  std::array<std::vector<double>, 5> feature_err;
  std::size_t n_failed = 0, n_frames = 0, n_flagged = 0;

  ordered_json videos = ordered_json::array();
  for (const VideoEval& ev : evals) {
    ordered_json row;
    row["id"] = ev.id;
    if (!ev.error.empty()) {
      row["error"] = ev.error;
      ++n_failed;
      videos.push_back(std::move(row));
      continue;
    }
    n_frames += ev.n_frames;
    n_flagged += ev.n_flagged_frames;
    all_dice.insert(all_dice.end(), ev.dice.begin(), ev.dice.end());
    all_iou.insert(all_iou.end(), ev.iou.begin(), ev.iou.end());
    all_hd95.insert(all_hd95.end(), ev.hd95_px.begin(), ev.hd95_px.end());
    all_assd.insert(all_assd.end(), ev.assd_px.begin(), ev.assd_px.end());

    row["n_frames"] = ev.n_frames;
    row["n_flagged_frames"] = ev.n_flagged_frames;
    ordered_json seg_mean;
    seg_mean["dice"] = report_number(mean_std(ev.dice).mean);
    seg_mean["iou"] = report_number(mean_std(ev.iou).mean);
    seg_mean["hd95_px"] =
        ev.hd95_px.empty() ? ordered_json(nullptr) : report_number(mean_std(ev.hd95_px).mean);
    seg_mean["assd_px"] =
        ev.assd_px.empty() ? ordered_json(nullptr) : report_number(mean_std(ev.assd_px).mean);
    row["seg_mean"] = std::move(seg_mean);
    ordered_json fm;
    fm["perimeter_mm"] = report_number(ev.mae_perimeter);
    fm["csa_mm2"] = report_number(ev.mae_csa);
    fm["ad_mm"] = report_number(ev.mae_ad);
    fm["fr"] = report_number(ev.mae_fr);
    fm["n_compared_frames"] = ev.n_compared_frames;
    row["frame_mae"] = std::move(fm);
    if (ev.mae_perimeter) {
      mae_perimeter.push_back(*ev.mae_perimeter);
      mae_csa.push_back(*ev.mae_csa);
      mae_ad.push_back(*ev.mae_ad);
      mae_fr.push_back(*ev.mae_fr);
    }

    if (ev.feature_abs_err) {
      const auto& fe = *ev.feature_abs_err;
      ordered_json fj;
      fj["pr"] = report_number(fe[0]);
      fj["sr"] = report_number(fe[1]);
      fj["adr"] = report_number(fe[2]);
      fj["max_fr"] = report_number(fe[3]);
      fj["max_csa_mm2"] = report_number(fe[4]);
      row["feature_abs_err"] = std::move(fj);
      for (std::size_t k = 0; k < 5; ++k) feature_err[k].push_back(fe[k]);
    } else {
      row["feature_abs_err"] = nullptr;
    }
    videos.push_back(std::move(row));
  }

  ordered_json doc;
  doc["schema_version"] = 1;
  doc["command"] = "eval-seg";
  doc["n_videos"] = evals.size();
  doc["n_failed_videos"] = n_failed;
  doc["n_frames"] = n_frames;
  doc["n_flagged_frames"] = n_flagged;
  doc["videos"] = std::move(videos);

  ordered_json seg;
  seg["dice"] = mean_std_json(mean_std(all_dice));
  seg["iou"] = mean_std_json(mean_std(all_iou));
  seg["hd95_px"] = mean_std_json(mean_std(all_hd95));
  seg["assd_px"] = mean_std_json(mean_std(all_assd));
  doc["seg"] = std::move(seg);

  ordered_json fmae;
  fmae["perimeter_mm"] = mean_std_json(mean_std(mae_perimeter));
  fmae["csa_mm2"] = mean_std_json(mean_std(mae_csa));
  fmae["ad_mm"] = mean_std_json(mean_std(mae_ad));
  fmae["fr"] = mean_std_json(mean_std(mae_fr));
  doc["frame_level_mae"] = std::move(fmae);

  ordered_json vmae;
  const char* feature_keys[5] = {"pr", "sr", "adr", "max_fr", "max_csa_mm2"};
  for (std::size_t k = 0; k < 5; ++k) {
    vmae[feature_keys[k]] = mean_std_json(mean_std(feature_err[k]));
  }
  doc["video_level_mae"] = std::move(vmae);

  write_json_report(doc, fs::path(opt.out_dir) / "seg_report.json");

  if (n_failed == evals.size() && !evals.empty()) {
    throw Error(errc::frame_count_mismatch, "all videos failed segmentation evaluation");
  }
  if (n_failed > 0) {
    std::cerr << "warning: " << n_failed << " video(s) skipped\n";
  }
  std::cout << "evaluated " << (evals.size() - n_failed) << " videos into " << opt.out_dir
            << "\n";
  return 0;
}

int cmd_train(const TrainOptions& opt) {
  const Manifest manifest = load_manifest(opt.manifest);

  FeatureMatrix train = features_for_split(manifest, opt.source, Split::train, opt.threads,
                                           nullptr);
  if (train.size() == 0) {
    throw Error(errc::too_few_samples, "train split contains no usable videos");
  }

  DiagnosticModel model;
  if (opt.classifier == "rf") {
    RfHyperparams hp;
    hp.n_trees = opt.trees;
    hp.max_depth = opt.max_depth;
    hp.min_samples_split = opt.min_split;
    hp.min_samples_leaf = opt.min_leaf;
    hp.seed = opt.seed;
    model = DiagnosticModel(train_random_forest(train, hp, opt.threads));
  } else if (opt.classifier == "lr") {
    const int iters = opt.max_iters > 0 ? opt.max_iters : 5000;
    model = DiagnosticModel(train_logistic_regression(train, opt.l2, iters, 1e-8));
  } else if (opt.classifier == "svm") {
    const int iters = opt.max_iters > 0 ? opt.max_iters : 2000;
    model = DiagnosticModel(train_linear_svm(train, opt.svm_c, iters));
  } else {
    throw Error(errc::invalid_argument, "classifier must be rf|lr|svm");
  }

  save_model(model, opt.model_out);
  std::cout << "trained " << model.kind_name() << " on " << train.size()
            << " videos, wrote " << opt.model_out << "\n";

  // validation report when a val split exists
  std::vector<std::string> val_ids;
  const FeatureMatrix val = features_for_split(manifest, opt.source, Split::val, opt.threads,
                                               &val_ids);
  if (val.size() > 0) {
    std::vector<int> pred;
    std::vector<double> scores;
    for (const auto& row : val.rows) {
      scores.push_back(model.probability(row));
      pred.push_back(scores.back() >= 0.5 ? 1 : 0);
    }
    const auto cm = confusion(pred, val.labels);
    auto rep = report(cm);
    const bool both = val.both_classes_present();
    if (both) rep.auc = auc(roc_curve(scores, val.labels));
    std::cout << "val (" << val.size() << " videos): ";
    print_classification_line(rep);
  }
  return 0;
}

int cmd_diagnose(const DiagnoseOptions& opt) {
  const Manifest manifest = load_manifest(opt.manifest);
  const DiagnosticModel model = load_model(opt.model);
  if (model.feature_names() != pipeline_feature_names()) {
    throw Error(errc::feature_mismatch,
                "model features do not match the diagnostic pipeline features");
  }
  if (opt.threshold < 0.0 || opt.threshold > 1.0) {
    throw Error(errc::invalid_argument, "threshold must lie in [0,1]");
  }

  const auto order = sorted_video_order(manifest);
  std::vector<std::optional<Prediction>> rows(order.size());
  parallel_for(order.size(), opt.threads, [&](std::size_t i) {
    const VideoRecord& rec = manifest.videos[order[i]];
    const auto measures = measure_video(manifest, rec, opt.source);
    Prediction p;
    p.video_id = rec.id;
    try {
      p.features = features_from_measures(measures);
    } catch (const Error& e) {
      if (e.code() != errc::no_valid_frames) throw;
      return;  // skipped, reported as warning
    }
    p.probability = model.probability(p.features);
    p.label = p.probability >= opt.threshold ? 1 : 0;
    rows[i] = std::move(p);
  });

  PredictionsReport report;
  report.model_kind = model.kind_name();
  report.model_hash = file_hash_hex(opt.model);
  report.threshold = opt.threshold;
  report.feature_names = model.feature_names();
  if (model.is_forest()) {
    report.feature_importances = rf_feature_importance(model.forest());
  }
  int skipped = 0;
  for (auto& row : rows) {
    if (row) {
      report.predictions.push_back(std::move(*row));
    } else {
      ++skipped;
    }
  }
  write_predictions_report(report, opt.out_file);

  if (skipped > 0) {
    std::cerr << "warning: " << skipped << " video(s) had no valid frames\n";
  }
  std::cout << "diagnosed " << report.predictions.size() << " videos, wrote " << opt.out_file
            << "\n";
  return 0;
}

int cmd_eval_diagnosis(const EvalDiagnosisOptions& opt) {
  const PredictionsReport predictions = load_predictions_report(opt.predictions);
  const Manifest manifest = load_manifest(opt.manifest);

  std::map<std::string, const VideoRecord*> by_id;
  for (const VideoRecord& rec : manifest.videos) by_id[rec.id] = &rec;

  std::vector<int> pred, truth;
  std::vector<double> scores;
  for (const Prediction& p : predictions.predictions) {
    const auto it = by_id.find(p.video_id);
    if (it == by_id.end() || !it->second->label) {
      throw Error(errc::missing_label,
                  "no ground-truth label for predicted video '" + p.video_id + "'");
    }
    pred.push_back(p.label);
    truth.push_back(*it->second->label);
    scores.push_back(p.probability);
  }
  if (pred.empty()) {
    throw Error(errc::empty_series, "predictions report contains no videos");
  }

  const ConfusionMatrix cm = confusion(pred, truth);
  ClassificationReport rep = report(cm);

  bool has_both = false, has_pos = false, has_neg = false;
  for (int y : truth) (y ? has_pos : has_neg) = true;
  has_both = has_pos && has_neg;

  std::optional<RocCurve> curve;
  if (has_both) {
    curve = roc_curve(scores, truth);
    rep.auc = auc(*curve);
  } else {
    std::cerr << "warning: single-class truth, ROC/AUC unavailable\n";
  }

  ordered_json doc;
  doc["schema_version"] = 1;
  doc["command"] = "eval-diagnosis";
  doc["model_kind"] = predictions.model_kind;
  doc["model_hash"] = predictions.model_hash;
  doc["threshold"] = report_number(predictions.threshold);
  doc["n_videos"] = pred.size();
  doc["metrics"] = classification_json(rep, cm);
  write_json_report(doc, opt.out_file);

  if (curve && !opt.roc_csv_file.empty()) {
    std::ofstream out(opt.roc_csv_file, std::ios::trunc);
    if (!out) {
      throw Error(errc::io_error, "cannot open " + opt.roc_csv_file + " for writing");
    }
    out << roc_csv(*curve);
  }

  print_classification_line(rep);
  return 0;
}

}  // namespace ctsd::tools
