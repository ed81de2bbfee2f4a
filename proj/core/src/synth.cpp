#include "ctsd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "ctsd/pgm.hpp"
#include "ctsd/prng.hpp"

namespace ctsd {

namespace {

constexpr double kPi = std::numbers::pi;

std::string frame_filename(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05d.pgm", index);
  return buf;
}

}  // namespace

void SweepProfile::validate() const {
  if (n_frames < 3) throw Error(errc::invalid_argument, "profile needs at least 3 frames");
  if (base_a_px < 4.0 || base_b_px < 4.0) {
    throw Error(errc::invalid_argument, "base semi-axes must be at least 4 px");
  }
  if (csa_ratio < 1.0) throw Error(errc::invalid_argument, "csa_ratio must be >= 1");
  if (compression_center < 0.0 || compression_center > 1.0) {
    throw Error(errc::invalid_argument, "compression_center must lie in [0,1]");
  }
  if (compression_width <= 0.0 || compression_width > 1.0) {
    throw Error(errc::invalid_argument, "compression_width must lie in (0,1]");
  }
  const double base_fr = base_a_px / base_b_px;
  if (fr_peak != 0.0 && fr_peak < base_fr) {
    throw Error(errc::invalid_argument, "fr_peak below the base axis ratio");
  }
  if (center_drift_px < 0.0) {
    throw Error(errc::invalid_argument, "center_drift_px must be non-negative");
  }
}

double SweepVideo::analytic_csa_ratio() const {
  double lo = truth.front().area_px2, hi = lo;
  for (const FrameTruth& t : truth) {
    lo = std::min(lo, t.area_px2);
    hi = std::max(hi, t.area_px2);
  }
  return hi / lo;
}

double SweepVideo::analytic_max_fr() const {
  double hi = 0.0;
  for (const FrameTruth& t : truth) hi = std::max(hi, t.fr);
  return hi;
}

BinaryMask render_ellipse_mask(double center_x, double center_y, double semi_a, double semi_b,
                               int width, int height) {
  if (!(semi_a > 0.0) || !(semi_b > 0.0)) {
    throw Error(errc::invalid_argument, "semi-axes must be positive");
  }
  if (center_x - semi_a < 0.0 || center_x + semi_a > width || center_y - semi_b < 0.0 ||
      center_y + semi_b > height) {
    throw Error(errc::out_of_bounds, "ellipse does not fit in the image");
  }
  BinaryMask mask(width, height);
  const int x_lo = std::max(0, static_cast<int>(std::floor(center_x - semi_a)));
  const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(center_x + semi_a)));
  const int y_lo = std::max(0, static_cast<int>(std::floor(center_y - semi_b)));
  const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(center_y + semi_b)));
  for (int y = y_lo; y <= y_hi; ++y) {
    const double dy = (y + 0.5 - center_y) / semi_b;
    for (int x = x_lo; x <= x_hi; ++x) {
      const double dx = (x + 0.5 - center_x) / semi_a;
      if (dx * dx + dy * dy <= 1.0) mask.set(x, y, true);
    }
  }
  return mask;
}

SweepVideo gen_video(const SweepProfile& profile, ImageSize size, std::uint64_t seed) {
  profile.validate();
  const int n = profile.n_frames;
  const double base_fr = profile.base_a_px / profile.base_b_px;
  const double fr_peak = profile.fr_peak == 0.0 ? base_fr : profile.fr_peak;

  // Gaussian-shaped compression bump sampled on the frame grid, then
  // normalized to span [0,1] exactly so the sampled extrema hit the targets.
  std::vector<double> bump(n);
  const double sigma = profile.compression_width / 2.0;
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    const double u = (t - profile.compression_center) / sigma;
    bump[i] = std::exp(-u * u);
  }
  const auto [lo_it, hi_it] = std::minmax_element(bump.begin(), bump.end());
  const double lo = *lo_it, hi = *hi_it;
  if (hi - lo > 0.0) {
    for (double& g : bump) g = (g - lo) / (hi - lo);
  } else {
    std::fill(bump.begin(), bump.end(), 0.0);
  }

  const double area_max = kPi * profile.base_a_px * profile.base_b_px;
  SplitMix64 rng(seed);

  SweepVideo video;
  video.frames.reserve(n);
  video.truth.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double area = area_max * (1.0 - (1.0 - 1.0 / profile.csa_ratio) * bump[i]);
    const double fr = base_fr + (fr_peak - base_fr) * bump[i];
    const double a = std::sqrt(area * fr / kPi);
    const double b = std::sqrt(area / (kPi * fr));

    const double jx = profile.center_drift_px == 0.0
                          ? 0.0
                          : rng.uniform(-profile.center_drift_px, profile.center_drift_px);
    const double jy = profile.center_drift_px == 0.0
                          ? 0.0
                          : rng.uniform(-profile.center_drift_px, profile.center_drift_px);
    const double cx = size.width / 2.0 + jx;
    const double cy = size.height / 2.0 + jy;

    if (cx - a < 0.0 || cx + a > size.width || cy - b < 0.0 || cy + b > size.height) {
      throw Error(errc::profile_infeasible,
                  "frame " + std::to_string(i) + " does not fit the image");
    }
    video.frames.push_back(render_ellipse_mask(cx, cy, a, b, size.width, size.height));
    video.truth.push_back({a, b, area, fr});
  }
  return video;
}

BinaryMask shift_mask(const BinaryMask& mask, int dx, int dy) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y) && mask.in_bounds(x + dx, y + dy)) {
        out.set(x + dx, y + dy, true);
      }
    }
  }
  return out;
}

BinaryMask perturb_mask(const BinaryMask& mask, PerturbMode mode, int magnitude,
                        std::uint64_t seed) {
  if (magnitude < 0) {
    throw Error(errc::invalid_argument, "perturbation magnitude must be non-negative");
  }
  if (magnitude == 0 && mode != PerturbMode::shift) return mask;

  switch (mode) {
    case PerturbMode::dilate: {
      BinaryMask out(mask.width(), mask.height());
      for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
          if (!mask.at(x, y)) continue;
          for (int oy = -magnitude; oy <= magnitude; ++oy) {
            for (int ox = -magnitude; ox <= magnitude; ++ox) {
              if (mask.in_bounds(x + ox, y + oy)) out.set(x + ox, y + oy, true);
            }
          }
        }
      }
      return out;
    }
    case PerturbMode::erode: {
      BinaryMask out(mask.width(), mask.height());
      for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
          if (!mask.at(x, y)) continue;
          bool keep = true;
          for (int oy = -magnitude; keep && oy <= magnitude; ++oy) {
            for (int ox = -magnitude; keep && ox <= magnitude; ++ox) {
              if (!mask.at_or_false(x + ox, y + oy)) keep = false;
            }
          }
          if (keep) out.set(x, y, true);
        }
      }
      return out;
    }
    case PerturbMode::shift: {
      SplitMix64 rng(seed);
      const int span = 2 * magnitude + 1;
      const int dx = static_cast<int>(rng.below(static_cast<std::uint64_t>(span))) - magnitude;
      const int dy = static_cast<int>(rng.below(static_cast<std::uint64_t>(span))) - magnitude;
      return shift_mask(mask, dx, dy);
    }
  }
  return mask;
}

void SynthDatasetSpec::validate() const {
  if (n_cts < 0 || n_normal < 0 || n_cts + n_normal < 1) {
    throw Error(errc::invalid_argument, "dataset needs at least one video");
  }
  if (!(mm_per_px > 0.0)) {
    throw Error(errc::invalid_argument, "mm_per_px must be positive");
  }
  if (cts.csa_ratio.lo < 1.55) {
    throw Error(errc::invalid_argument, "CTS csa_ratio range must start at or above 1.55");
  }
  if (normal.csa_ratio.hi > 1.3) {
    throw Error(errc::invalid_argument, "normal csa_ratio range must stay below 1.3");
  }
}

int dataset_video_count(const SynthDatasetSpec& spec) { return spec.n_cts + spec.n_normal; }

SweepProfile sample_profile(const SynthDatasetSpec& spec, int video_index) {
  spec.validate();
  if (video_index < 0 || video_index >= dataset_video_count(spec)) {
    throw Error(errc::invalid_argument, "video index out of range");
  }
  const bool is_cts = video_index < spec.n_cts;
  const ClassProfileRanges& ranges = is_cts ? spec.cts : spec.normal;
  SplitMix64 rng = SplitMix64::for_stream(spec.seed, static_cast<std::uint64_t>(video_index));

  SweepProfile p;
  p.base_a_px = rng.uniform(ranges.base_a_px.lo, ranges.base_a_px.hi);
  p.base_b_px = rng.uniform(ranges.base_b_px.lo, ranges.base_b_px.hi);
  if (p.base_a_px < p.base_b_px) std::swap(p.base_a_px, p.base_b_px);
  p.csa_ratio = rng.uniform(ranges.csa_ratio.lo, ranges.csa_ratio.hi);
  p.fr_peak = p.base_a_px / p.base_b_px +
              rng.uniform(ranges.fr_peak_boost.lo, ranges.fr_peak_boost.hi);
  p.compression_center = rng.uniform(ranges.compression_center.lo, ranges.compression_center.hi);
  p.compression_width = rng.uniform(ranges.compression_width.lo, ranges.compression_width.hi);
  p.n_frames = ranges.min_frames +
               static_cast<int>(rng.below(
                   static_cast<std::uint64_t>(ranges.max_frames - ranges.min_frames + 1)));
  p.center_drift_px = ranges.center_drift_px;
  p.label = is_cts ? 1 : 0;
  return p;
}

std::vector<Split> dataset_splits(const SynthDatasetSpec& spec) {
  const int n = dataset_video_count(spec);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng = SplitMix64::for_stream(spec.seed, 0xD5A7ULL);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  const int n_train = (n * 8) / 10;
  const int n_val = n / 10;
  std::vector<Split> splits(n, Split::test);
  for (int i = 0; i < n; ++i) {
    if (i < n_train) {
      splits[order[i]] = Split::train;
    } else if (i < n_train + n_val) {
      splits[order[i]] = Split::val;
    }
  }
  return splits;
}

Manifest gen_dataset(const SynthDatasetSpec& spec, const std::filesystem::path& out_dir,
                     const std::optional<PerturbSpec>& perturb) {
  spec.validate();
  const int n = dataset_video_count(spec);
  const auto splits = dataset_splits(spec);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(errc::io_error, "cannot create " + out_dir.string() + ": " + ec.message());
  }

  Manifest manifest;
  manifest.base_dir = out_dir;
  char id_buf[32];
  for (int v = 0; v < n; ++v) {
    const SweepProfile profile = sample_profile(spec, v);
    const bool is_cts = profile.label == 1;
    std::snprintf(id_buf, sizeof(id_buf), "%s_%03d", is_cts ? "cts" : "normal",
                  is_cts ? v : v - spec.n_cts);
    const std::string id = id_buf;

    const std::string gt_rel = "videos/" + id + "/gt";
    const auto gt_dir = out_dir / gt_rel;
    std::filesystem::create_directories(gt_dir, ec);
    if (ec) {
      throw Error(errc::io_error, "cannot create " + gt_dir.string() + ": " + ec.message());
    }

    std::optional<std::string> pred_rel;
    std::filesystem::path pred_dir;
    if (perturb) {
      pred_rel = "videos/" + id + "/pred";
      pred_dir = out_dir / *pred_rel;
      std::filesystem::create_directories(pred_dir, ec);
      if (ec) {
        throw Error(errc::io_error, "cannot create " + pred_dir.string() + ": " + ec.message());
      }
    }

    const SweepVideo video =
        gen_video(profile, spec.image_size, SplitMix64::for_stream(spec.seed, 0xF00DULL + v).next());
    for (int f = 0; f < profile.n_frames; ++f) {
      write_pgm(video.frames[f], gt_dir / frame_filename(f));
      if (perturb) {
        const BinaryMask pred = perturb_mask(
            video.frames[f], perturb->mode, perturb->magnitude,
            SplitMix64::for_stream(spec.seed, 0x5EEDULL + v).next() + static_cast<std::uint64_t>(f));
        write_pgm(pred, pred_dir / frame_filename(f));
      }
    }

    VideoRecord rec;
    rec.id = id;
    rec.frames_dir = gt_rel;
    rec.gt_masks_dir = gt_rel;
    rec.pred_masks_dir = pred_rel;
    rec.mm_per_px_x = spec.mm_per_px;
    rec.mm_per_px_y = spec.mm_per_px;
    rec.label = profile.label;
    rec.split = splits[v];
    manifest.videos.push_back(std::move(rec));
  }

  save_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

}  // namespace ctsd
