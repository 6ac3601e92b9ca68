#ifndef TRACTLAB_COMPLEXITY_HPP
#define TRACTLAB_COMPLEXITY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "tractlab/smoothness.hpp"
#include "tractlab/spectra.hpp"
#include "tractlab/tensor.hpp"

namespace tractlab {

enum class Certification { certified, truncation_limited, budget_exhausted };

std::string to_string(Certification c);

/// Average-case information complexity answer for one (eps, d) query.
/// n is minimal with tail mass <= eps^2 * total mass when certified;
/// otherwise [n_lo, n_hi] brackets the answer.
struct ComplexityResult {
  double eps = 0.0;
  int d = 0;
  std::int64_t n = 0;
  double achieved_error_fraction = 0.0;  // (tail mass / trace product) at n, upper enclosure
  Certification certification = Certification::certified;
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;
  double truncation_loss_fraction = 0.0;
  EnumerationStats stats;

  nlohmann::json to_json() const;
};

struct ComplexityOptions {
  std::int64_t budget = 2'000'000;      // enumeration cap (popped products)
  std::size_t wiener_depth = 48;        // per-factor truncation for Wiener spectra
  double loss_policy = 1e-3;            // target: loss <= loss_policy * eps^2 * T
  double spectrum_tolerance = 0.25;     // accepted two-grid estimate on lambda_J
};

/// Minimal n with sum_{j>n} lambda_{d,j} <= eps^2 sum_j lambda_{d,j}.
/// eps = 1 returns n = 0; eps > 1 is rejected.
ComplexityResult n_eps(double eps, int d, Process process, const SmoothnessSequence& seq,
                       ComplexityOptions opts = {});

/// Certified enclosure of the squared error of the optimal rank-n algorithm,
/// normalized by the trace product, and its square root.
struct ErrorOfN {
  std::int64_t n = 0;
  double sq_fraction_lo = 0.0;
  double sq_fraction_hi = 0.0;
  double error_lo = 0.0;
  double error_hi = 0.0;
};

ErrorOfN error_of_n(std::int64_t n, int d, Process process, const SmoothnessSequence& seq,
                    ComplexityOptions opts = {});

/// ln of the curse bound (1 - eps^2) prod_k Lambda(k)/lambda_{1,k}; any
/// certified n(eps, d) dominates exp of this value.
double curse_lower_bound_log(double eps, int d, Process process, const SmoothnessSequence& seq);

} // namespace tractlab

#endif
