#ifndef TRACTLAB_SYMMETRIC_EIGEN_HPP
#define TRACTLAB_SYMMETRIC_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "tractlab/util.hpp"

namespace tractlab {

/// Eigenvalues of a dense symmetric matrix (row-major, n x n), ascending.
/// Householder reduction to tridiagonal form followed by implicit-shift QL,
/// values only. Templated so the same code runs in double and in the
/// 50-digit type used for deep Wiener spectra.
template <class Real>
std::vector<Real> symmetric_eigenvalues(std::vector<Real> a, std::size_t n) {
  using std::abs;
  using std::sqrt;
  std::vector<Real> d(n), e(n);
  auto at = [&a, n](std::size_t i, std::size_t j) -> Real& { return a[i * n + j]; };

  // tred1: reduce to tridiagonal (diagonal d, subdiagonal e)
  for (std::size_t i = n; i-- > 1;) {
    std::size_t l = i - 1;
    Real h(0), scale(0);
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += abs(at(i, k));
      if (scale == Real(0)) {
        e[i] = at(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        Real f = at(i, l);
        Real g = f >= Real(0) ? -sqrt(h) : sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = Real(0);
        for (std::size_t j = 0; j <= l; ++j) {
          g = Real(0);
          for (std::size_t k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        Real hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = at(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }
  e[0] = Real(0);
  for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);

  // tql1: implicit-shift QL on the tridiagonal. Deflation combines the
  // relative test with an absolute floor at eps * ||T||: sweeps over strongly
  // graded blocks perturb the small end at that scale anyway, so entries
  // below it carry no information and must split off.
  auto pythag = [](Real x, Real y) {
    Real ax = abs(x), ay = abs(y);
    if (ax > ay) {
      Real r = ay / ax;
      return ax * sqrt(Real(1) + r * r);
    }
    if (ay == Real(0)) return Real(0);
    Real r = ax / ay;
    return ay * sqrt(Real(1) + r * r);
  };
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = Real(0);
  Real anorm(0);
  for (std::size_t i = 0; i < n; ++i) {
    Real row = abs(d[i]) + abs(e[i]) + (i > 0 ? abs(e[i - 1]) : Real(0));
    anorm = std::max(anorm, row);
  }
  const Real floor_tol = std::numeric_limits<Real>::epsilon() * anorm;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        Real dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= std::numeric_limits<Real>::epsilon() * dd + floor_tol) break;
      }
      if (m != l) {
        if (iter++ == 100) throw numerical_error("symmetric_eigenvalues: QL did not converge");
        Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
        Real rr = pythag(g, Real(1));
        Real sg = g >= Real(0) ? abs(rr) : -abs(rr);
        g = d[m] - d[l] + e[l] / (g + sg);
        Real s(1), c(1), p(0);
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          Real f = s * e[i];
          Real b = c * e[i];
          rr = pythag(f, g);
          e[i + 1] = rr;
          if (rr == Real(0)) {
            d[i + 1] -= p;
            e[m] = Real(0);
            underflow = true;
            break;
          }
          s = f / rr;
          c = g / rr;
          g = d[i + 1] - p;
          rr = (d[i] - g) * s + Real(2) * c * b;
          p = s * rr;
          d[i + 1] = g + p;
          g = c * rr - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = Real(0);
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

} // namespace tractlab

#endif
