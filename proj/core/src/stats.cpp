#include "ctsd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ctsd {

namespace {

struct RankedDiffs {
  std::vector<std::int64_t> ranks2;  // 2x the (possibly half-integer) ranks
  double w_plus = 0.0;
  double w_minus = 0.0;
  double tie_correction = 0.0;  // sum over tie groups of (t^3 - t)
};

RankedDiffs rank_differences(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(errc::length_mismatch, "paired series lengths differ");
  }
  std::vector<double> diffs;
  diffs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) {
    throw Error(errc::all_zero_differences, "all paired differences are zero");
  }

  std::vector<std::size_t> order(diffs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(diffs[a]) < std::abs(diffs[b]);
  });

  RankedDiffs out;
  out.ranks2.resize(diffs.size());
  std::int64_t w2_plus = 0, w2_minus = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
    // average rank over the tie group [i, j), doubled to stay integral
    const std::int64_t rank2 = static_cast<std::int64_t>(i + 1 + j) ;  // (i+1 + j) = 2*avg
    const std::int64_t t = static_cast<std::int64_t>(j - i);
    out.tie_correction += static_cast<double>(t * t * t - t);
    for (std::size_t k = i; k < j; ++k) {
      out.ranks2[order[k]] = rank2;
      if (diffs[order[k]] > 0.0) {
        w2_plus += rank2;
      } else {
        w2_minus += rank2;
      }
    }
    i = j;
  }
  out.w_plus = static_cast<double>(w2_plus) / 2.0;
  out.w_minus = static_cast<double>(w2_minus) / 2.0;
  return out;
}

/// Exact null distribution of 2*W+ over all sign assignments, as polynomial
/// coefficient counts: prod_i (1 + z^{ranks2[i]}).
std::vector<double> null_counts(const std::vector<std::int64_t>& ranks2) {
  std::int64_t total = 0;
  for (auto r : ranks2) total += r;
  std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
  counts[0] = 1.0;
  std::int64_t reach = 0;
  for (auto r : ranks2) {
    reach += r;
    for (std::int64_t s = reach; s >= r; --s) {
      counts[s] += counts[s - r];
    }
  }
  return counts;
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double chi2_sf_df1(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    WilcoxonMethod method) {
  const RankedDiffs ranked = rank_differences(x, y);
  const std::size_t n = ranked.ranks2.size();

  WilcoxonResult result;
  result.statistic = std::min(ranked.w_plus, ranked.w_minus);

  const bool use_exact = method == WilcoxonMethod::exact ||
                         (method == WilcoxonMethod::automatic && n <= 20);
  if (use_exact) {
    // Two-sided: P(W+ <= lo) + P(W+ >= hi) with lo = min(W+,W-), hi = S - lo.
    const auto counts = null_counts(ranked.ranks2);
    const std::int64_t total2 = static_cast<std::int64_t>(counts.size()) - 1;
    const std::int64_t lo2 = static_cast<std::int64_t>(2.0 * result.statistic + 0.5);
    const std::int64_t hi2 = total2 - lo2;
    double favorable = 0.0;
    for (std::int64_t s = 0; s <= total2; ++s) {
      if (s <= lo2 || s >= hi2) favorable += counts[s];
    }
    result.p_value = std::min(1.0, favorable / std::ldexp(1.0, static_cast<int>(n)));
    result.exact = true;
    return result;
  }

  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - ranked.tie_correction / 48.0;
  if (var <= 0.0) {
    // all differences tied at one magnitude and one sign pattern
    result.p_value = 1.0;
    return result;
  }
  // continuity correction toward the mean; W = min(W+, W-) <= mean
  const double z = (result.statistic - mean + 0.5) / std::sqrt(var);
  result.p_value = std::min(1.0, 2.0 * normal_cdf(z));
  return result;
}

ChiSquareResult chi_square_2x2(const std::array<std::array<std::int64_t, 2>, 2>& table,
                               bool yates) {
  const std::int64_t a = table[0][0], b = table[0][1];
  const std::int64_t c = table[1][0], d = table[1][1];
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw Error(errc::invalid_argument, "table counts must be non-negative");
  }
  const std::int64_t row0 = a + b, row1 = c + d;
  const std::int64_t col0 = a + c, col1 = b + d;
  if (row0 == 0 || row1 == 0 || col0 == 0 || col1 == 0) {
    throw Error(errc::degenerate_margin, "every row and column sum must be positive");
  }
  const double n = static_cast<double>(row0 + row1);
  double delta = std::abs(static_cast<double>(a * d - b * c));
  if (yates) delta = std::max(0.0, delta - n / 2.0);
  const double chi2 = n * delta * delta /
                      (static_cast<double>(row0) * static_cast<double>(row1) *
                       static_cast<double>(col0) * static_cast<double>(col1));
  return {chi2, chi2_sf_df1(chi2)};
}

}  // namespace ctsd
