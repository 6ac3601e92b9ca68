#ifndef TRACTLAB_UTIL_HPP
#define TRACTLAB_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tractlab {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// 1/(2 ln 3), the rate threshold separating the tractability regimes.
/// Shared as a single constant so every module agrees to the last digit.
inline constexpr double inv_two_ln3 = 0.455119613313418696807120082868;

class invalid_argument_error : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class numerical_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compensated (Kahan) accumulator.
class KahanSum {
public:
  KahanSum() = default;
  explicit KahanSum(double init) : sum_(init) {}

  void add(double x) {
    double y = x - c_;
    double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }

  double get() const { return sum_; }

private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

/// ln_+ x = max(1, ln x) for x > 0; ln_+ 0 = 1.
inline double ln_plus(double x) {
  if (x <= 0.0) return 1.0;
  return std::max(1.0, std::log(x));
}

/// log(exp(a) + exp(b)) without overflow; handles -inf identity.
inline double log_add(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

/// Ceiling with a snap guard: values within 1e-9 of an integer are taken
/// as that integer, so formula sequences stay stable when the inner
/// expression lands on an exact integer up to rounding (e.g. ln 9 / (2 ln 3)).
inline std::int64_t guarded_ceil(double x) {
  double m = std::nearbyint(x);
  if (std::abs(x - m) <= 1e-9) return static_cast<std::int64_t>(m);
  return static_cast<std::int64_t>(std::ceil(x));
}

/// Thread budget: min(hardware, TRACTLAB_THREADS) with at least one.
unsigned thread_budget();

/// Runs fn(i) for i in [0, n) on up to thread_budget() threads.
/// Tasks must write to disjoint slots; the call joins before returning.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace tractlab

#endif
