#ifndef TRACTLAB_TRACTABILITY_HPP
#define TRACTLAB_TRACTABILITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tractlab/smoothness.hpp"
#include "tractlab/spectra.hpp"

namespace tractlab {

// --- criterion sums --------------------------------------------------------
//
// All of these are finite-prefix evaluations of sup/lim conditions; they
// produce evidence about the asymptotic statement, never proof.

/// (1/ln_+ d) sum_{k<=d} (1 + r_k) 3^{-2 r_k}.
double euler_quasi_criterion(const SmoothnessSequence& seq, std::int64_t d);

/// (1/ln_+ d) sum_{k<=d} (1 + r_k)^{-2} ln_+ r_k, with ln_+ 0 = 1.
double wiener_quasi_criterion(const SmoothnessSequence& seq, std::int64_t d);

/// Partial sum sum_{k<=K} 3^{-2 tau r_k}; finite iff the strong polynomial
/// regime holds for this tau.
double spt_sum_euler(const SmoothnessSequence& seq, double tau, std::int64_t K);

/// max(2/(2 r1 + 1), 2/(2 aE ln 3 - 1)); aE = +inf drops the second term.
/// Rejects aE <= 1/(2 ln 3).
double euler_spt_exponent(std::int64_t r1, double aE);

/// {max(2/(2 r1 + 1), 2/(2s - 1)), max(2/(2s - 1), 3)}; rejects s <= 1/2.
std::pair<double, double> wiener_spt_exponent_bounds(std::int64_t r1, double s);

enum class WienerCriterionMode {
  fitted,  // small-r table + Theta-fitted large-r model (default)
  raw      // per-k Nystrom sums; intended for cross-validation at small d
};

struct CriterionOptions {
  WienerCriterionMode wiener_mode = WienerCriterionMode::fitted;
};

/// ln of prod_k [(sum_j lambda^tau)^{1/tau} / sum_j lambda] * d^{-q}.
/// Requires tau in (1/(2 r1 + 2), 1).
double poly_criterion_log(Process process, const SmoothnessSequence& seq, double tau, double q,
                          std::int64_t d, CriterionOptions opts = {});

/// ((tau C/(1-tau))^{tau/(1-tau)} + 1) d^{q tau/(1-tau)} eps^{-2tau/(1-tau)}.
double poly_n_bound(double C, double tau, double q, std::int64_t d, double eps);

/// (1/d) sum_{k<=d} sum_{j>=2} (lambda_j / lambda_1)^tau. Requires
/// tau in (1/2, 1) for Euler and tau in (3/5, 1) for Wiener.
double weak_criterion(Process process, const SmoothnessSequence& seq, double tau, std::int64_t d,
                      CriterionOptions opts = {});

/// ln of sum_j lambda^{1-delta/ln_+d} / (sum_j lambda)^{1-delta/ln_+d},
/// evaluated through the per-factor product split. Rejects parameter
/// combinations whose per-factor exponent violates convergence.
double qpt_criterion_general_log(Process process, const SmoothnessSequence& seq, double delta,
                                 std::int64_t d, CriterionOptions opts = {});

struct QptNecessary {
  double full = 0.0;     // (1/ln_+d) sum_k sum_j (lam/Lam) ln(Lam/lam)
  double j2_only = 0.0;  // same with only the j = 2 term
};

QptNecessary qpt_necessary_sum(Process process, const SmoothnessSequence& seq, std::int64_t d,
                               CriterionOptions opts = {});

// --- classification ----------------------------------------------------------

enum class Verdict { evidence_for, evidence_against, inconclusive };

std::string to_string(Verdict v);

struct ClassifyConfig {
  std::vector<double> spt_taus = {0.7, 0.9, 0.99};
  double slope_bounded = 0.05;    // |slope vs ln d| below: bounded evidence
  double slope_divergent = 0.2;   // slope above: divergent evidence
  double sum_converged = 1e-3;    // relative last-decade increment below: convergent
  double sum_divergent = 1e-2;    // above: divergent
  CriterionOptions criteria;
};

struct CriterionTrack {
  std::string name;
  std::vector<std::int64_t> d;
  std::vector<double> value;
  double slope = 0.0;          // value drift per unit ln d over the top decade
  double rel_increment = 0.0;  // (v_end - v_decade_ago) / max(v_end, tiny)
};

/// Trajectories and per-notion verdicts; every verdict is finite-prefix
/// evidence accompanied by the trajectory that produced it.
struct TractabilityReport {
  Process process = Process::euler;
  std::string sequence_spec;
  std::vector<CriterionTrack> tracks;
  std::map<std::string, Verdict> verdicts;  // weak, qpt, pt, spt
  std::optional<double> spt_exponent;                       // Euler, when defined
  std::optional<std::pair<double, double>> spt_exponent_bounds;  // Wiener power rate
  ClassifyConfig config;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

TractabilityReport classify(Process process, const SmoothnessSequence& seq,
                            const std::vector<std::int64_t>& d_grid, ClassifyConfig config = {});

/// Log-spaced integer grid 10..dmax (inclusive endpoints, deduplicated).
std::vector<std::int64_t> default_d_grid(std::int64_t dmax, int per_decade = 12);

// --- trend tests -------------------------------------------------------------

/// Least-squares slope of value against ln d over the top decade of the grid.
double top_decade_slope(const std::vector<std::int64_t>& d, const std::vector<double>& value);

/// Relative increment of a monotone partial sum over the last decade.
double last_decade_increment(const std::vector<std::int64_t>& d, const std::vector<double>& value);

// Wiener per-factor quantities used by criteria: Nystrom table for small r
// plus a Theta-fitted model beyond (constants fitted from the table tail).
// Exposed for tests and for raw-vs-fitted cross-validation.
struct WienerFactorModel {
  /// sum_{j>=2} (lambda_j/lambda_1)^tau.
  static double sigma_tau(int r, double tau, WienerCriterionMode mode = WienerCriterionMode::fitted);
  /// Lambda/lambda_1 - 1.
  static double rho(int r, WienerCriterionMode mode = WienerCriterionMode::fitted);
  /// per-k entropy sum_j p_j ln(1/p_j), p_j = lambda_j / Lambda. The deep
  /// tail past the table is an estimate, not certified.
  static double entropy(int r);
  /// j = 2 entropy term only.
  static double entropy_j2(int r);
  static int table_limit();
  /// fitted constant c in lambda_2/lambda_1 ~ c / r^2
  static double fitted_ratio_constant();
};

} // namespace tractlab

#endif
