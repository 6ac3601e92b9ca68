#ifndef TRACTLAB_QUADRATURE_HPP
#define TRACTLAB_QUADRATURE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "tractlab/util.hpp"

namespace tractlab {

/// Gauss-Legendre rule mapped to [0,1]. Exact for polynomials of degree
/// <= 2n-1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Affine image of the rule on [a,b].
  template <class F>
  double integrate(const F& f, double a, double b) const {
    double h = b - a;
    KahanSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      s.add(weights[i] * f(a + h * nodes[i]));
    return h * s.get();
  }
};

/// n-point Gauss-Legendre rule on [0,1]; cached per n.
const QuadratureRule& gauss_legendre(std::size_t n);

/// Newton iteration for the Legendre roots in any float type. Nodes and
/// weights come out on [0,1]; seeds use the Chebyshev asymptotic estimate.
template <class Real>
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre_t(std::size_t n);

} // namespace tractlab

#endif
