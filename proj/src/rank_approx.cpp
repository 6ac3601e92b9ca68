#include "tractlab/rank_approx.hpp"

#include <cmath>

#include "tractlab/quadrature.hpp"
#include "tractlab/spectra.hpp"
#include "tractlab/util.hpp"

namespace tractlab {

double LemmaCheck::value() const { return std::exp(log_value); }
double LemmaCheck::bound() const { return std::exp(log_bound); }
double LemmaCheck::ratio() const { return std::exp(log_value - log_bound); }

namespace {

double log_fact_sq(int r) { return 2.0 * std::lgamma(static_cast<double>(r) + 1.0); }

// E |W_r(t) - V(t)|^2 integrands, without the 1/r!^2 factor. The kink at
// u = t splits the integral into two pieces that are polynomials of degree
// 2r, so Gauss rules of r+2 points are exact.
double rank1_unscaled(int r, double t) {
  const auto& rule = gauss_legendre(static_cast<std::size_t>(r) + 2);
  auto left = [&](double u) {
    double a = std::pow(t, r) * std::pow(1.0 - u, r) - std::pow(t - u, r);
    return a * a;
  };
  auto right = [&](double u) {
    double a = std::pow(t, r) * std::pow(1.0 - u, r);
    return a * a;
  };
  return rule.integrate(left, 0.0, t) + rule.integrate(right, t, 1.0);
}

double rank2_unscaled(int r, double t) {
  const auto& rule = gauss_legendre(static_cast<std::size_t>(r) + 2);
  double tpow = std::pow(t, r);
  double corr = r * std::pow(t, r - 1) * (1.0 - t);
  auto smooth = [&](double u) {
    return tpow * std::pow(1.0 - u, r) - corr * u * std::pow(1.0 - u, r - 1);
  };
  auto left = [&](double u) {
    double a = smooth(u) - std::pow(t - u, r);
    return a * a;
  };
  auto right = [&](double u) {
    double a = smooth(u);
    return a * a;
  };
  return rule.integrate(left, 0.0, t) + rule.integrate(right, t, 1.0);
}

} // namespace

double rank1_sq_error_pointwise(int r, double t) {
  if (r < 0) throw invalid_argument_error("rank1_sq_error_pointwise: r must be >= 0");
  if (!(t >= 0.0 && t <= 1.0)) throw invalid_argument_error("rank1_sq_error_pointwise: t in [0,1]");
  return rank1_unscaled(r, t) * std::exp(-log_fact_sq(r));
}

double rank1_pointwise_bound(int r, double t) {
  if (r < 2) throw invalid_argument_error("rank1_pointwise_bound: requires r >= 2");
  double c = 3.0 * r * r / std::pow(2.0 * r - 2.0, 3);
  return c * std::pow(t, 2 * r - 2) * (1.0 - t) * (1.0 - t) * std::exp(-log_fact_sq(r));
}

double rank1_l2_bound(int r) {
  if (r < 2) throw invalid_argument_error("rank1_l2_bound: requires r >= 2");
  return 6.0 * r * r / std::pow(2.0 * r - 2.0, 6) * std::exp(-log_fact_sq(r));
}

LemmaCheck rank1_sq_error_l2(int r) {
  if (r < 2) throw invalid_argument_error("rank1_sq_error_l2: requires r >= 2");
  // the pointwise error is a polynomial of degree <= 3r+1 in t
  const auto& rule = gauss_legendre(static_cast<std::size_t>(3 * r) / 2 + 3);
  double unscaled = rule.integrate([r](double t) { return rank1_unscaled(r, t); }, 0.0, 1.0);
  LemmaCheck c;
  c.r = r;
  c.quantity = "rank1-l2";
  c.log_value = std::log(unscaled) - log_fact_sq(r);
  c.log_bound = std::log(6.0 * r * r) - 6.0 * std::log(2.0 * r - 2.0) - log_fact_sq(r);
  return c;
}

double rank2_sq_error_pointwise(int r, double t) {
  if (r < 1) throw invalid_argument_error("rank2_sq_error_pointwise: r must be >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw invalid_argument_error("rank2_sq_error_pointwise: t in [0,1]");
  return rank2_unscaled(r, t) * std::exp(-log_fact_sq(r));
}

double rank2_pointwise_bound(int r, double t) {
  if (r < 3) throw invalid_argument_error("rank2_pointwise_bound: requires r >= 3");
  double c = 14.0 * r * r * (r - 1.0) * (r - 1.0) / std::pow(2.0 * r - 4.0, 5);
  return c * std::pow(t, 2 * r - 4) * std::pow(1.0 - t, 4) * std::exp(-log_fact_sq(r));
}

double rank2_l2_bound(int r) {
  if (r < 3) throw invalid_argument_error("rank2_l2_bound: requires r >= 3");
  return 24.0 * 14.0 * r * r * (r - 1.0) * (r - 1.0) / std::pow(2.0 * r - 4.0, 10) *
         std::exp(-log_fact_sq(r));
}

LemmaCheck rank2_sq_error_l2(int r) {
  if (r < 3) throw invalid_argument_error("rank2_sq_error_l2: requires r >= 3");
  const auto& rule = gauss_legendre(static_cast<std::size_t>(3 * r) / 2 + 3);
  double unscaled = rule.integrate([r](double t) { return rank2_unscaled(r, t); }, 0.0, 1.0);
  LemmaCheck c;
  c.r = r;
  c.quantity = "rank2-l2";
  c.log_value = std::log(unscaled) - log_fact_sq(r);
  c.log_bound = std::log(24.0 * 14.0 * r * r * (r - 1.0) * (r - 1.0)) -
                10.0 * std::log(2.0 * r - 4.0) - log_fact_sq(r);
  return c;
}

double rank2_second_eigenvalue(int r) {
  if (r < 2) throw invalid_argument_error("rank2_second_eigenvalue: requires r >= 2");
  double n = 2.0 * r;
  // coefficient second moments: E xi1^2, E xi2^2, E xi1 xi2 (Beta integrals)
  double e11 = 1.0 / (n + 1.0);
  double e22 = 2.0 / ((n + 1.0) * n * (n - 1.0));
  double e12 = 1.0 / (n * (n + 1.0));
  // Gram of {psi_1, psi_2} times r!^2
  double g11 = 1.0 / (n + 1.0);
  double g12 = 1.0 / (n * (n + 1.0));
  double g22 = 2.0 / ((n - 1.0) * n * (n + 1.0));
  // nonzero eigenvalues of the covariance equal those of M G
  double m11 = e11, m12 = -r * e12, m22 = r * r * e22;
  double a = m11 * g11 + m12 * g12;
  double b = m11 * g12 + m12 * g22;
  double cc = m12 * g11 + m22 * g12;
  double dd = m12 * g12 + m22 * g22;
  double tr = a + dd;
  double det = a * dd - b * cc;
  double big = 0.5 * (tr + std::sqrt(std::max(tr * tr - 4.0 * det, 0.0)));
  double small = det / big;  // avoids cancellation in the small root
  return small * std::exp(-log_fact_sq(r));
}

double tau_ratio_sup(int r, double tau0, int tau_grid_points) {
  if (!(tau0 > 0.6 && tau0 <= 1.0))
    throw invalid_argument_error("tau_ratio_sup: tau0 must lie in (3/5, 1]");
  if (tau_grid_points < 2) throw invalid_argument_error("tau_ratio_sup: need >= 2 grid points");
  const std::size_t J = 40;
  const auto& sp = cached_wiener_spectrum(r, J, SpectrumPrecision::automatic, /*tolerance=*/64.0);
  double l2 = sp.log_eigenvalues[1];
  double R_rel = std::exp(sp.log_tail - l2);
  double a_rel = std::min(std::exp(sp.log_eigenvalues[J - 1] - l2), R_rel);
  double sup = 0.0;
  for (int g = 0; g < tau_grid_points; ++g) {
    double tau = tau0 + (1.0 - tau0) * g / (tau_grid_points - 1);
    KahanSum s;
    for (std::size_t j = 3; j <= J; ++j) s.add(std::exp(tau * (sp.log_eigenvalues[j - 1] - l2)));
    // tau-power tail past the computed prefix: mass R in pieces <= a
    if (tau == 1.0) s.add(R_rel);
    else if (a_rel > 0.0) s.add(R_rel * std::pow(a_rel, tau - 1.0) + std::pow(a_rel, tau));
    sup = std::max(sup, s.get());
  }
  return sup;
}

std::vector<double> approximation_numbers(int r, std::size_t n_max) {
  if (r < 1) throw invalid_argument_error("approximation_numbers: r must be >= 1");
  if (n_max < 1) throw invalid_argument_error("approximation_numbers: n_max must be >= 1");
  std::vector<double> out(n_max);
  if (r == 1) {
    for (std::size_t n = 1; n <= n_max; ++n)
      out[n - 1] = std::exp(0.5 * euler_log_eigenvalue(static_cast<std::int64_t>(n), 0));
    return out;
  }
  const auto& sp = cached_wiener_spectrum(r - 1, n_max, SpectrumPrecision::automatic,
                                          /*tolerance=*/64.0);
  for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = std::exp(0.5 * sp.log_eigenvalues[n - 1]);
  return out;
}

double approximation_number(std::size_t n, int r) {
  return approximation_numbers(r, n).back();
}

std::vector<LemmaCheck> check_lemma3(int r, std::size_t n_max, double C) {
  if (!(C > 0.0)) throw invalid_argument_error("check_lemma3: C must be > 0");
  std::vector<double> an = approximation_numbers(r, n_max);
  std::vector<LemmaCheck> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    LemmaCheck c;
    c.r = r;
    c.quantity = "a_n(I^r) n=" + std::to_string(n);
    c.log_value = std::log(an[n - 1]);
    c.log_bound = r * std::log(C) + 2.0 * r * std::log(2.0 * r) -
                  static_cast<double>(r) * std::log(static_cast<double>(n));
    out.push_back(std::move(c));
  }
  return out;
}

// --- path sampling ----------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

// counter-based standard normal: one value per (seed, sample, stream)
double counter_normal(std::uint64_t seed, std::uint64_t sample, std::uint64_t stream) {
  std::uint64_t k = splitmix64(splitmix64(splitmix64(seed) ^ sample) ^ stream);
  double u1 = uniform01(k);
  double u2 = uniform01(splitmix64(k ^ 0x5851f42d4c957f2dull));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Outer-product Cholesky with diagonal pivoting; returns L (n x rank,
// row-major) with P K P^T ~ L L^T, stopping at the tolerance cutoff.
std::vector<double> pivoted_cholesky(std::vector<double> K, std::size_t n, double tol,
                                     std::vector<std::size_t>& perm, std::size_t& rank) {
  std::vector<double> L(n * n, 0.0);
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  auto kat = [&K, n](std::size_t i, std::size_t j) -> double& { return K[i * n + j]; };
  rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (kat(perm[i], perm[i]) > kat(perm[p], perm[p])) p = i;
    std::swap(perm[k], perm[p]);
    double piv = kat(perm[k], perm[k]);
    if (piv <= tol) {
      if (piv < -tol)
        throw numerical_error("sample_paths: negative pivot beyond tolerance (kernel not PSD?)");
      break;
    }
    double s = std::sqrt(piv);
    L[perm[k] * n + k] = s;
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = kat(perm[i], perm[k]) / s;
      L[perm[i] * n + k] = v;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= i; ++j) {
        double upd = kat(perm[i], perm[j]) - L[perm[i] * n + k] * L[perm[j] * n + k];
        kat(perm[i], perm[j]) = upd;
        kat(perm[j], perm[i]) = upd;
      }
    }
    ++rank;
  }
  return L;
}

} // namespace

std::vector<PathSample> sample_paths(int r, std::span<const double> grid, int count,
                                     std::uint64_t seed) {
  if (count < 1) throw invalid_argument_error("sample_paths: count must be >= 1");
  if (grid.empty()) throw invalid_argument_error("sample_paths: grid must be non-empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 1.0))
      throw invalid_argument_error("sample_paths: grid points must lie in (0,1]");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw invalid_argument_error("sample_paths: grid must be strictly increasing");
  }
  std::size_t n = grid.size();
  std::vector<double> K(n * n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = wiener_kernel(grid[i], grid[j], r);
      K[i * n + j] = v;
      K[j * n + i] = v;
    }
    scale = std::max(scale, K[i * n + i]);
  }
  std::vector<std::size_t> perm;
  std::size_t rank = 0;
  std::vector<double> L = pivoted_cholesky(std::move(K), n, 1e-12 * scale, perm, rank);

  std::vector<PathSample> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t s) {
    PathSample& ps = out[s];
    ps.grid.assign(grid.begin(), grid.end());
    ps.r = r;
    ps.seed = seed;
    ps.method = "pivoted-cholesky/counter-rng";
    std::vector<double> z(rank);
    for (std::size_t j = 0; j < rank; ++j) z[j] = counter_normal(seed, s, j);
    ps.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      KahanSum acc;
      for (std::size_t j = 0; j < rank; ++j) acc.add(L[i * n + j] * z[j]);
      ps.values[i] = acc.get();
    }
  });
  return out;
}

} // namespace tractlab
