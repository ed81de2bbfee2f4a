#include "doctest.h"

#include <cmath>

#include "ctsd/prng.hpp"
#include "ctsd/stats.hpp"
#include "oracles.hpp"

using namespace ctsd;

TEST_SUITE("stats") {

TEST_CASE("wilcoxon fixture: differences {1,2,3,-4,5}") {
  const std::vector<double> x = {1.0, 2.0, 3.0, -4.0, 5.0};
  const std::vector<double> y(5, 0.0);
  const auto result = wilcoxon_signed_rank(x, y);
  CHECK(result.exact);
  CHECK(result.statistic == 4.0);
  CHECK(result.p_value == doctest::Approx(0.4375).epsilon(1e-15));
  // independent enumeration oracle over all 2^5 sign patterns
  CHECK(oracles::wilcoxon_exact_p_enumeration(x) == doctest::Approx(0.4375).epsilon(1e-15));
}

TEST_CASE("wilcoxon errors and symmetry") {
  const std::vector<double> x = {3.0, 1.0, 4.0, 1.0, 5.0};
  try {
    wilcoxon_signed_rank(x, x);
    FAIL("expected AllZeroDifferences");
  } catch (const Error& e) {
    CHECK(e.code() == errc::all_zero_differences);
  }
  CHECK_THROWS_AS(wilcoxon_signed_rank(x, std::vector<double>{1.0}), Error);

  const std::vector<double> y = {2.0, 2.5, 1.0, 4.0, 9.0};
  const auto xy = wilcoxon_signed_rank(x, y);
  const auto yx = wilcoxon_signed_rank(y, x);
  CHECK(xy.statistic == yx.statistic);
  CHECK(xy.p_value == yx.p_value);
}

TEST_CASE("wilcoxon exact matches enumeration on random cases with ties") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(9));  // 4..12
    std::vector<double> x, y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double d = (1.0 + static_cast<double>(rng.below(5))) / 2.0;  // ties likely
      if (rng.below(2)) d = -d;
      x.push_back(d);
    }
    const auto result = wilcoxon_signed_rank(x, y);
    REQUIRE(result.exact);
    const double oracle = oracles::wilcoxon_exact_p_enumeration(x);
    CHECK(result.p_value == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(result.p_value > 0.0);
    CHECK(result.p_value <= 1.0);
  }
}

TEST_CASE("normal approximation tracks the exact p for 15 <= n <= 20") {
  SplitMix64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 15 + static_cast<int>(rng.below(6));
    std::vector<double> x, y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double d = 1.0 + static_cast<double>(rng.below(12));
      if (rng.below(2)) d = -d;
      x.push_back(d);
    }
    const auto exact = wilcoxon_signed_rank(x, y, WilcoxonMethod::exact);
    const auto approx = wilcoxon_signed_rank(x, y, WilcoxonMethod::normal_approx);
    CHECK(exact.exact);
    CHECK_FALSE(approx.exact);
    CHECK(std::abs(exact.p_value - approx.p_value) < 0.02);
  }
}

TEST_CASE("automatic method switches to the approximation above n = 20") {
  std::vector<double> x, y;
  for (int i = 0; i < 25; ++i) {
    x.push_back(static_cast<double>(i % 2 ? i : -i) + 0.5);
    y.push_back(0.0);
  }
  const auto result = wilcoxon_signed_rank(x, y);
  CHECK_FALSE(result.exact);
  CHECK(result.p_value > 0.0);
  CHECK(result.p_value <= 1.0);
}

TEST_CASE("chi-square fixtures") {
  SUBCASE("no association") {
    const auto r = chi_square_2x2({{{10, 10}, {10, 10}}});
    CHECK(r.chi2 == 0.0);
    CHECK(r.p_value == 1.0);
  }
  SUBCASE("strong association: chi2 = 20") {
    const auto r = chi_square_2x2({{{30, 10}, {10, 30}}});
    CHECK(r.chi2 == doctest::Approx(20.0).epsilon(1e-12));
    // df=1 survival at 20, from the erfc form directly
    const double oracle = std::erfc(std::sqrt(10.0));
    CHECK(r.p_value == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::abs(r.p_value - 7.7e-6) < 1e-7);
  }
  SUBCASE("row swap leaves chi2 unchanged") {
    const auto a = chi_square_2x2({{{23, 11}, {7, 19}}});
    const auto b = chi_square_2x2({{{7, 19}, {23, 11}}});
    CHECK(a.chi2 == b.chi2);
    CHECK(a.p_value == b.p_value);
  }
  SUBCASE("degenerate margins are rejected") {
    try {
      chi_square_2x2({{{0, 0}, {10, 30}}});
      FAIL("expected DegenerateMargin");
    } catch (const Error& e) {
      CHECK(e.code() == errc::degenerate_margin);
    }
    CHECK_THROWS_AS(chi_square_2x2({{{0, 10}, {0, 30}}}), Error);
  }
  SUBCASE("yates correction shrinks the statistic") {
    const auto plain = chi_square_2x2({{{30, 10}, {10, 30}}});
    const auto corrected = chi_square_2x2({{{30, 10}, {10, 30}}}, true);
    CHECK(corrected.chi2 < plain.chi2);
    CHECK(corrected.chi2 == doctest::Approx(80.0 * 19.0 * 19.0 / (40.0 * 40.0)).epsilon(1e-12));
  }
}

}  // TEST_SUITE
