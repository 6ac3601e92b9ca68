#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <vector>

#include "tractlab/quadrature_impl.hpp"
#include "tractlab/spectra.hpp"
#include "tractlab/symmetric_eigen.hpp"
#include "tractlab/util.hpp"

namespace tractlab {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// Same expansion as the double kernel, kept exact in 50-digit arithmetic.
// The 1/r!^2 factor is applied at the end.
Real wiener_kernel_mp(const Real& x, const Real& y, int r, const Real& inv_fact_sq) {
  Real m = x < y ? x : y;
  if (m == 0) return Real(0);
  Real a = x - m, b = y - m;
  std::size_t n = static_cast<std::size_t>(r) + 1;
  std::vector<Real> binom(n), pa(n), pb(n), pm(2 * n);
  binom[0] = 1;
  for (int i = 1; i <= r; ++i)
    binom[static_cast<std::size_t>(i)] = binom[static_cast<std::size_t>(i - 1)] * (r - i + 1) / i;
  pa[0] = pb[0] = pm[0] = 1;
  for (int i = 1; i <= r; ++i) {
    pa[static_cast<std::size_t>(i)] = pa[static_cast<std::size_t>(i - 1)] * a;
    pb[static_cast<std::size_t>(i)] = pb[static_cast<std::size_t>(i - 1)] * b;
  }
  for (int i = 1; i <= 2 * r + 1; ++i)
    pm[static_cast<std::size_t>(i)] = pm[static_cast<std::size_t>(i - 1)] * m;
  Real sum = 0;
  for (int i = 0; i <= r; ++i) {
    Real ci = binom[static_cast<std::size_t>(i)] * pa[static_cast<std::size_t>(r - i)];
    if (ci == 0) continue;
    for (int j = 0; j <= r; ++j)
      sum += ci * binom[static_cast<std::size_t>(j)] * pb[static_cast<std::size_t>(r - j)] *
             pm[static_cast<std::size_t>(i + j + 1)] / (i + j + 1);
  }
  return sum * inv_fact_sq;
}

} // namespace

std::vector<double> wiener_nystrom_log_eigenvalues_mp(int r, std::size_t J, int N) {
  if (r < 1) throw invalid_argument_error("mp nystrom: r must be >= 1");
  auto [nodes, weights] = gauss_legendre_t<Real>(static_cast<std::size_t>(N));
  Real fact = 1;
  for (int i = 2; i <= r; ++i) fact *= i;
  Real inv_fact_sq = Real(1) / (fact * fact);

  std::size_t n = static_cast<std::size_t>(N);
  std::vector<Real> sw(n);
  for (std::size_t i = 0; i < n; ++i) sw[i] = sqrt(weights[i]);
  std::vector<Real> A(n * n);
  // symmetric fill rows in parallel; each task owns its row range
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Real v = wiener_kernel_mp(nodes[i], nodes[j], r, inv_fact_sq) * sw[i] * sw[j];
      A[i * n + j] = v;
      A[j * n + i] = v;
    }
  });

  std::vector<Real> ev = symmetric_eigenvalues(std::move(A), n);  // ascending
  std::vector<double> out(J);
  for (std::size_t j = 0; j < J; ++j) {
    const Real& lam = ev[n - 1 - j];
    if (!(lam > 0))
      throw numerical_error("mp nystrom: non-positive eigenvalue at j=" + std::to_string(j + 1));
    out[j] = static_cast<double>(log(lam));
  }
  return out;
}

} // namespace tractlab
