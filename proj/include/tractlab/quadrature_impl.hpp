#ifndef TRACTLAB_QUADRATURE_IMPL_HPP
#define TRACTLAB_QUADRATURE_IMPL_HPP

#include <cmath>

#include "tractlab/quadrature.hpp"

namespace tractlab {

template <class Real>
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre_t(std::size_t n) {
  std::vector<Real> x(n), w(n);
  const Real one = Real(1);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-angle seed for the i-th root in (-1,1), descending.
    Real z(std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                    (static_cast<double>(n) + 0.5)));
    Real pp(0);
    for (int iter = 0; iter < 100; ++iter) {
      Real p0(1), p1(0);
      for (std::size_t j = 0; j < n; ++j) {
        Real p2 = p1;
        p1 = p0;
        p0 = ((Real(2 * j + 1)) * z * p1 - Real(j) * p2) / Real(j + 1);
      }
      // p0 = P_n(z); derivative via the standard relation
      pp = Real(n) * (z * p0 - p1) / (z * z - one);
      Real dz = p0 / pp;
      z -= dz;
      using std::abs;
      if (abs(dz) <= abs(z) * std::numeric_limits<Real>::epsilon() * 4) break;
    }
    // map from [-1,1] to [0,1]
    x[i] = (one - z) / 2;
    x[n - 1 - i] = (one + z) / 2;
    Real wi = one / ((one - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  return {std::move(x), std::move(w)};
}

} // namespace tractlab

#endif
