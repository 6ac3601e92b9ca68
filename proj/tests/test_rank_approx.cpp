#include <doctest.h>

#include <cmath>

#include "tractlab/rank_approx.hpp"
#include "tractlab/spectra.hpp"
#include "tractlab/util.hpp"

using namespace tractlab;

TEST_SUITE_BEGIN("rank_approx");

TEST_CASE("rank-1 pointwise error: endpoints and frozen value") {
  for (int r : {2, 5, 9}) {
    CHECK(rank1_sq_error_pointwise(r, 1.0) == 0.0);
    CHECK(rank1_sq_error_pointwise(r, 0.0) == 0.0);
  }
  // exact rational value 1/1536 at r = 2, t = 1/2
  CHECK(rank1_sq_error_pointwise(2, 0.5) ==
        doctest::Approx(0.00065104166666666667).epsilon(1e-13));
  CHECK(rank1_sq_error_pointwise(2, 0.5) <= rank1_pointwise_bound(2, 0.5));
}

TEST_CASE("rank-1 L2 error against the closed-form bound") {
  auto c2 = rank1_sq_error_l2(2);
  CHECK(c2.value() == doctest::Approx(0.00037698412698412698).epsilon(1e-11));
  CHECK(c2.bound() == doctest::Approx(3.0 / 32.0).epsilon(1e-12));  // (1/2!^2)(6*4/2^6)
  CHECK(c2.ratio() <= 1.0);
  auto c5 = rank1_sq_error_l2(5);
  CHECK(c5.value() == doctest::Approx(4.5813667190248126e-9).epsilon(1e-10));
  CHECK(c5.ratio() < 1.0);
  CHECK_THROWS_AS(rank1_sq_error_l2(1), invalid_argument_error);
}

TEST_CASE("rank-2 errors and bounds") {
  // the (1-t)^4 factor forces zero at t = 1
  for (int r : {3, 6}) CHECK(rank2_sq_error_pointwise(r, 1.0) <= 1e-15);
  auto c3 = rank2_sq_error_l2(3);
  CHECK(c3.value() == doctest::Approx(4.0655993036945418e-6).epsilon(1e-9));
  CHECK(c3.bound() == doctest::Approx((24.0 * 14.0 * 9.0 * 4.0 / 1024.0) / 36.0).epsilon(1e-12));
  CHECK(c3.ratio() <= 1.0);
  CHECK_THROWS_AS(rank2_sq_error_l2(2), invalid_argument_error);
  // rank 2 improves on rank 1
  for (int r = 3; r <= 12; ++r)
    CHECK(rank2_sq_error_l2(r).log_value <= rank1_sq_error_l2(r).log_value);
}

TEST_CASE("pointwise bounds hold on a grid") {
  for (int r : {2, 7, 12}) {
    for (int i = 0; i <= 100; ++i) {
      double t = i / 100.0;
      CHECK(rank1_sq_error_pointwise(r, t) <=
            rank1_pointwise_bound(r, t) * (1.0 + 1e-10) + 1e-300);
      if (r >= 3)
        CHECK(rank2_sq_error_pointwise(r, t) <=
              rank2_pointwise_bound(r, t) * (1.0 + 1e-10) + 1e-300);
    }
  }
}

TEST_CASE("eigenvalue tails are dominated by the low-rank errors") {
  for (int r : {3, 5, 8}) {
    WienerOptions opts;
    opts.grid = 160;
    auto sp = wiener_spectrum(r, 2, opts);
    double tail1 = wiener_trace(r) - sp.eigenvalue(1);
    double tail2 = tail1 - sp.eigenvalue(2);
    CHECK(tail1 <= rank1_sq_error_l2(r).value() * (1.0 + 1e-6));
    CHECK(tail2 <= rank2_sq_error_l2(r).value() * (1.0 + 1e-6));
  }
}

TEST_CASE("scaling fits: the lemma orders r^-4 and r^-6 hold over the range") {
  double lo1 = 1e300, hi1 = 0.0, lo2 = 1e300, hi2 = 0.0;
  for (int r = 3; r <= 12; ++r) {
    double f2 = 2.0 * std::lgamma(r + 1.0);
    double v1 = std::exp(rank1_sq_error_l2(r).log_value + f2 + 4.0 * std::log(double(r)));
    double v2 = std::exp(rank2_sq_error_l2(r).log_value + f2 + 6.0 * std::log(double(r)));
    lo1 = std::min(lo1, v1); hi1 = std::max(hi1, v1);
    lo2 = std::min(lo2, v2); hi2 = std::max(hi2, v2);
  }
  CHECK(hi1 / lo1 < 8.0);  // bounded sequences, no drift to 0 or infinity
  CHECK(hi2 / lo2 < 8.0);
  CHECK(lo1 > 0.0);
  CHECK(lo2 > 0.0);
}

TEST_CASE("rank-2 covariance second eigenvalue scales like r^-4 (times r!^-2)") {
  double lo = 1e300, hi = 0.0;
  for (int r = 3; r <= 12; ++r) {
    double v = rank2_second_eigenvalue(r) * std::exp(2.0 * std::lgamma(r + 1.0)) *
               std::pow(double(r), 4);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 2.0);  // Theta-stability over the tested range
}

TEST_CASE("tau ratio sup decays in r") {
  double v4 = tau_ratio_sup(4, 0.7);
  double v8 = tau_ratio_sup(8, 0.7);
  CHECK(v8 < v4);
  // tau-grid refinement is stable
  CHECK(tau_ratio_sup(4, 0.7, 25) == doctest::Approx(v4).epsilon(0.01));
  CHECK_THROWS_AS(tau_ratio_sup(4, 0.5), invalid_argument_error);
}

TEST_CASE("tau ratio at tau = 1 reduces to the trace identity") {
  int r = 4;
  const auto& sp = cached_wiener_spectrum(r, 40, SpectrumPrecision::automatic, 64.0);
  double expect = (wiener_trace(r) - sp.eigenvalue(1) - sp.eigenvalue(2)) / sp.eigenvalue(2);
  // the sup over [tau0, 1] includes tau = 1; at large tau0 the sup is taken
  // there up to the certified tail slack
  double sup = tau_ratio_sup(r, 0.999999, 2);
  CHECK(sup == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("approximation numbers") {
  // r = 1: a_n(I) = 1/(pi(n-1/2)) exactly
  auto an = approximation_numbers(1, 5);
  CHECK(an[0] == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
  CHECK(an[2] == doctest::Approx(1.0 / (M_PI * 2.5)).epsilon(1e-14));
  // non-increasing
  for (std::size_t i = 1; i < an.size(); ++i) CHECK(an[i] <= an[i - 1]);
  // a_n(I) <= (2/pi) * 2 / n since n/(n - 1/2) <= 2
  for (std::size_t n = 1; n <= 5; ++n) CHECK(an[n - 1] <= (2.0 / M_PI) * 2.0 / double(n));
}

TEST_CASE("lemma-3 style bound and multiplicativity instances") {
  auto checks = check_lemma3(1, 10);
  for (const auto& c : checks) CHECK(c.log_value <= c.log_bound);
  // a_1(I) = 2/pi <= (2/pi) * 4
  CHECK(checks[0].ratio() <= 0.26);
  // a_3(I^2) <= a_2(I)^2
  auto a2 = approximation_numbers(2, 3);
  auto a1 = approximation_numbers(1, 2);
  CHECK(a2[2] <= a1[1] * a1[1]);
}

TEST_CASE("sample paths: determinism and shape") {
  std::vector<double> grid{0.2, 0.4, 0.6, 0.8, 1.0};
  auto a = sample_paths(2, grid, 3, 99);
  auto b = sample_paths(2, grid, 3, 99);
  REQUIRE(a.size() == 3);
  for (int s = 0; s < 3; ++s) {
    CHECK(a[s].values == b[s].values);  // bit-exact reproducibility
    CHECK(a[s].values.size() == grid.size());
  }
  auto c = sample_paths(2, grid, 3, 100);
  CHECK(a[0].values != c[0].values);
  CHECK_THROWS_AS(sample_paths(2, std::vector<double>{0.5, 0.4}, 1, 1), invalid_argument_error);
  CHECK_THROWS_AS(sample_paths(2, std::vector<double>{0.0, 0.4}, 1, 1), invalid_argument_error);
}

TEST_CASE("sample paths: small-t variance follows the kernel diagonal") {
  std::vector<double> grid{0.05, 0.5, 1.0};
  const int n = 40000;
  auto paths = sample_paths(1, grid, n, 4242);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    KahanSum sq;
    for (const auto& p : paths) sq.add(p.values[g] * p.values[g]);
    double emp = sq.get() / n;
    double expect = wiener_kernel(grid[g], grid[g], 1);
    double se = expect * std::sqrt(2.0 / n);  // var of chi^2 mean
    CHECK(std::abs(emp - expect) <= 4.5 * se);
  }
}

TEST_SUITE_END();
