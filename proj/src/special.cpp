#include "tractlab/special.hpp"

#include <cmath>

#include "tractlab/util.hpp"

namespace tractlab {

namespace {

// sum_{j>=2} j^{-s} by direct summation, remainder bounded by the integral
// int_J^inf x^{-s} dx. Converges quickly for s >= 8.
double zeta_m1_series(double s) {
  KahanSum sum;
  double j = 2.0;
  for (;;) {
    double term = std::pow(j, -s);
    sum.add(term);
    double rem = std::pow(j, 1.0 - s) / (s - 1.0);
    if (rem <= 1e-18 * sum.get() || j > 4096.0) {
      sum.add(rem);
      return sum.get();
    }
    j += 1.0;
  }
}

} // namespace

double zeta_m1(double s) {
  if (!(s > 1.0)) throw invalid_argument_error("zeta_m1: requires s > 1");
  if (s >= 8.0) return zeta_m1_series(s);
  return std::riemann_zeta(s) - 1.0;
}

double dirichlet_odd_tail(double s) {
  if (!(s > 1.0)) throw invalid_argument_error("dirichlet_odd_tail: requires s > 1");
  if (s >= 3.0) {
    // 3^{-s} (1 + (5/3)^{-s} + ...) with integral remainder; all terms positive.
    KahanSum sum;
    double j = 2.0;
    double lead = std::pow(3.0, -s);
    for (;;) {
      double term = std::pow((2.0 * j - 1.0) / 3.0, -s);
      sum.add(term);
      double rem = std::pow((2.0 * j + 1.0) / 3.0, 1.0 - s) * 1.5 / (s - 1.0);
      if (rem <= 1e-18 * sum.get() || j > 8192.0) {
        sum.add(rem);
        return lead * sum.get();
      }
      j += 1.0;
    }
  }
  double zm1 = zeta_m1(s);
  double p = std::pow(2.0, -s);
  return zm1 * (1.0 - p) - p;
}

double dirichlet_odd_sum(double s) { return 1.0 + dirichlet_odd_tail(s); }

double log_dirichlet_odd_sum(double s) { return std::log1p(dirichlet_odd_tail(s)); }

double half_shift_tail_ratio(std::int64_t J, double s) {
  if (!(s > 1.0)) throw invalid_argument_error("half_shift_tail_ratio: requires s > 1");
  double base = static_cast<double>(J) + 0.5;
  KahanSum sum;
  for (std::int64_t m = 0;; ++m) {
    double x = base + static_cast<double>(m);
    sum.add(std::pow(base / x, s));
    // remaining terms (m' > m) are bounded by int_m^inf (base+t)^{-s} dt
    double rem = std::pow(base / x, s) * x / (s - 1.0);
    if (rem <= 1e-17 * sum.get() || m >= 20000) {
      sum.add(rem);
      return sum.get();
    }
  }
}

} // namespace tractlab
