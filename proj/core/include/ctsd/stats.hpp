#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "ctsd/errors.hpp"

namespace ctsd {

struct WilcoxonResult {
  double statistic = 0.0;  // W = min(W+, W-)
  double p_value = 1.0;    // two-sided
  bool exact = false;      // exact enumeration vs normal approximation
};

enum class WilcoxonMethod {
  automatic,  // exact when n <= 20 after dropping zero differences
  exact,
  normal_approx,
};

/// Wilcoxon signed-rank test on paired series. Zero differences are dropped;
/// ties in |d| receive average ranks. Exact two-sided p sums the null
/// sign-flip distribution of W+ over both tails; the normal approximation
/// applies tie and continuity corrections.
/// Throws LengthMismatch / AllZeroDifferences.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    WilcoxonMethod method = WilcoxonMethod::automatic);

struct ChiSquareResult {
  double chi2 = 0.0;
  double p_value = 1.0;
};

/// Pearson chi-square on a 2x2 table (df = 1), without continuity correction
/// unless `yates` is set. Throws DegenerateMargin when a row or column sum is
/// zero.
ChiSquareResult chi_square_2x2(const std::array<std::array<std::int64_t, 2>, 2>& table,
                               bool yates = false);

/// Survival function of the chi-square distribution with one degree of
/// freedom.
double chi2_sf_df1(double x);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace ctsd
