#ifndef TRACTLAB_SPECTRA_HPP
#define TRACTLAB_SPECTRA_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace tractlab {

enum class Process { euler, wiener };

std::string to_string(Process p);
Process process_from_string(std::string_view s);

struct SpectrumMethod {
  std::string solver;     // "closed-form", "nystrom-gl", "nystrom-gl-mp50"
  int grid = 0;           // quadrature points (fine grid)
  int coarse_grid = 0;    // second grid of the two-grid estimate
  double tolerance = 0.0; // requested relative tolerance on lambda_J
  bool richardson = false;
};

/// Descending positive eigenvalues of one univariate covariance operator,
/// stored in the log domain, together with the exact trace and a certified
/// upper bound on the mass beyond the stored prefix.
struct UnivariateSpectrum {
  Process process = Process::euler;
  int r = 0;
  std::vector<double> log_eigenvalues;  // non-increasing
  double log_trace = 0.0;
  double log_tail = 0.0;                // upper bound on sum_{j > size()} lambda_j
  std::vector<double> two_grid_error;   // per-eigenvalue discretization estimate
  SpectrumMethod method;

  std::size_t size() const { return log_eigenvalues.size(); }
  double log_eigenvalue(std::size_t j) const;  // 1-based
  double eigenvalue(std::size_t j) const;      // exp; underflows to zero
  double trace() const;
  double tail() const;

  nlohmann::json to_json() const;
  static UnivariateSpectrum from_json(const nlohmann::json& j);
};

// --- Euler: closed forms -------------------------------------------------

/// ln lambda_{j,r}^E = -(2r+2) ln(pi (j - 1/2)).
double euler_log_eigenvalue(std::int64_t j, int r);
double euler_eigenvalue(std::int64_t j, int r);

/// ln of sum_j lambda_{j,r}^E; the sum has a closed form through the odd
/// Dirichlet series.
double euler_log_trace(int r);
double euler_trace(int r);

/// ln of a certified upper bound on sum_{j>J} lambda_{j,r}^E.
double euler_log_tail(std::int64_t J, int r);

UnivariateSpectrum euler_spectrum(int r, std::size_t J);

/// Covariance kernel of the r-times integrated Euler process on [0,1]^2.
double euler_kernel(double x, double y, int r);

// --- Wiener ---------------------------------------------------------------

/// Covariance kernel int_0^{min(x,y)} (x-u)^r (y-u)^r / r!^2 du, evaluated
/// from the expansion around u = min(x,y) whose terms are all non-negative.
double wiener_kernel(double x, double y, int r);

/// ln( 1 / ((2r+2)(2r+1) r!^2) ), the exact trace.
double wiener_log_trace(int r);
double wiener_trace(int r);

enum class SpectrumPrecision { automatic, fast, high };

struct WienerOptions {
  int grid = 0;                 // fine quadrature size; 0 = max(4J, 64)
  double tolerance = 1e-6;      // allowed two-grid relative estimate on lambda_J
  bool force_nystrom = false;   // run the solver even at r = 0
  SpectrumPrecision precision = SpectrumPrecision::automatic;
};

/// Nystrom spectrum of the Wiener covariance operator on a Gauss-Legendre
/// grid, eigen-solved after symmetrization by the weight diagonal. At r = 0
/// the kernel coincides with the Euler one and the exact spectrum is
/// returned unless force_nystrom is set; the forced r = 0 solve applies
/// two-grid Richardson extrapolation (the single-grid error is O(N^-2)
/// because of the kernel kink). The tail is trace() minus the stored mass.
UnivariateSpectrum wiener_spectrum(int r, std::size_t J, WienerOptions opts = {});

/// {leading prediction for lambda_1, scale 1/((r!)^2 r^4) for lambda_2}.
std::pair<double, double> wiener_largest_predictions(int r);

/// Memoized wiener_spectrum keyed by (r, J, precision, tolerance); spectra
/// are shared and immutable.
const UnivariateSpectrum& cached_wiener_spectrum(int r, std::size_t J,
                                                 SpectrumPrecision precision = SpectrumPrecision::automatic,
                                                 double tolerance = 1e-6);

// internal: high-precision Nystrom path (50-digit arithmetic)
std::vector<double> wiener_nystrom_log_eigenvalues_mp(int r, std::size_t J, int N);

} // namespace tractlab

#endif
