#ifndef TRACTLAB_RANK_APPROX_HPP
#define TRACTLAB_RANK_APPROX_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tractlab {

/// One deterministic bound verification: a quantity computed by exact
/// quadrature against its closed-form bound, both kept in the log domain so
/// large-r cases stay representable.
struct LemmaCheck {
  int r = 0;
  std::string quantity;
  double log_value = 0.0;
  double log_bound = 0.0;

  double value() const;
  double bound() const;
  /// computed / bound; <= 1 (up to 1e-10 slack) whenever the bound applies.
  double ratio() const;
};

// --- low-rank approximation error of the integrated process -----------------

/// E |W_r(t) - V_{r,1}(t)|^2 by degree-exact Gauss quadrature split at the
/// u = t kink; relative error at rounding level.
double rank1_sq_error_pointwise(int r, double t);

/// Pointwise bound (3 r^2/(2r-2)^3) t^{2r-2} (1-t)^2 / r!^2, r >= 2.
double rank1_pointwise_bound(int r, double t);

/// E ||W_r - V_{r,1}||_2^2 with its bound (6 r^2/(2r-2)^6) / r!^2, r >= 2.
LemmaCheck rank1_sq_error_l2(int r);
double rank1_l2_bound(int r);

double rank2_sq_error_pointwise(int r, double t);
/// Pointwise bound (14 r^2 (r-1)^2/(2r-4)^5) t^{2r-4} (1-t)^4 / r!^2, r >= 3.
double rank2_pointwise_bound(int r, double t);

/// E ||W_r - V_{r,2}||_2^2 with bound (24*14 r^2 (r-1)^2/(2r-4)^10)/r!^2.
LemmaCheck rank2_sq_error_l2(int r);
double rank2_l2_bound(int r);

/// Second eigenvalue of the rank-2 process covariance via the exact 2x2
/// reduction over {psi_1, psi_2}; scales like 1/(r!^2 r^4).
double rank2_second_eigenvalue(int r);

// --- spectra-side quantities --------------------------------------------------

/// sup over a tau grid on [tau0, 1] of sum_{j>=3} lambda_j^tau / lambda_2^tau,
/// with a certified tau-power tail bound past the computed spectrum.
double tau_ratio_sup(int r, double tau0, int tau_grid_points = 13);

/// a_n(I^r) = sqrt(lambda_{n, r-1}) of the integrated-process covariance;
/// exact at r = 1 via the min-kernel spectrum.
std::vector<double> approximation_numbers(int r, std::size_t n_max);
double approximation_number(std::size_t n, int r);

/// a_n(I^r) against C^r (2r)^{2r} n^{-r} in the log domain.
std::vector<LemmaCheck> check_lemma3(int r, std::size_t n_max, double C = 0.63661977236758134);

// --- path sampling --------------------------------------------------------------

/// Exact finite-dimensional Gaussian marginals on a grid, reproducible
/// bit-for-bit from (r, grid, seed).
struct PathSample {
  std::vector<double> grid;
  std::vector<double> values;
  int r = 0;
  std::uint64_t seed = 0;
  std::string method;
};

std::vector<PathSample> sample_paths(int r, std::span<const double> grid, int count,
                                     std::uint64_t seed);

} // namespace tractlab

#endif
