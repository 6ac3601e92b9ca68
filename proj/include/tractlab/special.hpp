#ifndef TRACTLAB_SPECIAL_HPP
#define TRACTLAB_SPECIAL_HPP

#include <cstdint>

namespace tractlab {

/// zeta(s) - 1 for s > 1. Uses a direct series with integral remainder for
/// s >= 8 (where zeta(s)-1 is tiny and the library value would cancel) and
/// std::riemann_zeta below that.
double zeta_m1(double s);

/// sum_{j>=1} (2j-1)^{-s} = (1 - 2^{-s}) zeta(s), s > 1.
double dirichlet_odd_sum(double s);

/// sum_{j>=2} (2j-1)^{-s}, evaluated cancellation-free for large s.
double dirichlet_odd_tail(double s);

/// ln of dirichlet_odd_sum(s).
double log_dirichlet_odd_sum(double s);

/// Certified upper bound on sum_{j>J} (j-1/2)^{-s} relative to the first
/// omitted term: returns q such that the tail equals (J+1/2)^{-s} * q with
/// the true value <= that product. Requires s > 1.
double half_shift_tail_ratio(std::int64_t J, double s);

} // namespace tractlab

#endif
