#include <doctest.h>

#include <cmath>

#include "tractlab/special.hpp"
#include "tractlab/util.hpp"

using namespace tractlab;

TEST_SUITE_BEGIN("special");

TEST_CASE("zeta_m1 reference values") {
  CHECK(zeta_m1(2.0) == doctest::Approx(M_PI * M_PI / 6.0 - 1.0).epsilon(1e-13));
  CHECK(zeta_m1(4.0) == doctest::Approx(std::pow(M_PI, 4) / 90.0 - 1.0).epsilon(1e-13));
  // high-precision references
  CHECK(zeta_m1(1.02) == doctest::Approx(49.578670041015603218).epsilon(1e-11));
  CHECK(zeta_m1(30.0) == doctest::Approx(9.31327432419668182e-10).epsilon(1e-12));
  // continuity across the series/library crossover at s = 8
  CHECK(zeta_m1(7.999999) == doctest::Approx(zeta_m1(8.000001)).epsilon(1e-8));
  CHECK_THROWS_AS(zeta_m1(1.0), invalid_argument_error);
}

TEST_CASE("dirichlet odd sums") {
  CHECK(dirichlet_odd_sum(2.0) == doctest::Approx(M_PI * M_PI / 8.0).epsilon(1e-14));
  CHECK(dirichlet_odd_sum(1.02) == doctest::Approx(25.637500768901573175).epsilon(1e-11));
  // large s: dominated by the first omitted term 3^{-s}
  double s = 80.0;
  double tail = dirichlet_odd_tail(s);
  CHECK(tail == doctest::Approx(std::pow(3.0, -s)).epsilon(1e-10));
  CHECK(std::exp(log_dirichlet_odd_sum(s)) == doctest::Approx(1.0 + tail).epsilon(1e-15));
}

TEST_CASE("half-shift tail ratio matches direct summation") {
  for (double s : {2.0, 3.5, 8.0}) {
    std::int64_t J = 10;
    double tail = 0.0;
    for (std::int64_t j = J + 1; j <= J + 2000000; ++j) tail += std::pow(j - 0.5, -s);
    double ratio = half_shift_tail_ratio(J, s);
    double approx = std::pow(J + 0.5, -s) * ratio;
    CHECK(approx >= tail);                    // certified upper bound
    CHECK(approx <= tail * 1.01 + 1e-300);    // and reasonably tight
  }
}

TEST_CASE("kahan summation compensates") {
  KahanSum s;
  for (int i = 0; i < 10000000; ++i) s.add(0.1);
  CHECK(s.get() == doctest::Approx(1e6).epsilon(1e-15));
}

TEST_CASE("ln_plus") {
  CHECK(ln_plus(0.0) == 1.0);
  CHECK(ln_plus(1.0) == 1.0);
  CHECK(ln_plus(std::exp(2.0)) == doctest::Approx(2.0));
}

TEST_SUITE_END();
