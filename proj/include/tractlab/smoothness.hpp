#ifndef TRACTLAB_SMOOTHNESS_HPP
#define TRACTLAB_SMOOTHNESS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tractlab {

/// Non-decreasing integer smoothness sequence {r_k}, k >= 1.
///
/// Rules:
///   const:R             r_k = R
///   log-euler:a=A       r_k = ceil(1 + A ln(1 + k ln k)), ln 1 = 0 at k=1
///   log-threshold       r_k = ceil(ln_+ k / (2 ln 3))
///   power-wiener:s=S    r_k = ceil(k^S ln^2(1+k))
///   power:c=C,s=S       r_k = ceil(C k^S)
///   explicit:a,b,c,...  listed values, extended by repeating the last one
class SmoothnessSequence {
public:
  static SmoothnessSequence constant(std::int64_t r);
  static SmoothnessSequence log_euler(double a);
  static SmoothnessSequence log_threshold();
  static SmoothnessSequence power_wiener(double s);
  static SmoothnessSequence power(double c, double s);
  static SmoothnessSequence explicit_list(std::vector<std::int64_t> values);

  /// Parses the textual rule form, e.g. "log-euler:a=0.91".
  static SmoothnessSequence parse(std::string_view spec);

  /// r_k for k >= 1.
  std::int64_t operator()(std::int64_t k) const;

  std::int64_t r1() const { return (*this)(1); }

  /// Canonical text form; parse(spec()) reproduces the sequence.
  const std::string& spec() const { return spec_; }

private:
  struct Constant { std::int64_t r; };
  struct LogEuler { double a; };
  struct LogThreshold {};
  struct PowerWiener { double s; };
  struct Power { double c, s; };
  struct Explicit { std::vector<std::int64_t> values; };

  using Rule = std::variant<Constant, LogEuler, LogThreshold, PowerWiener, Power, Explicit>;

  SmoothnessSequence(Rule rule, std::string spec);

  Rule rule_;
  std::string spec_;
};

/// Finite-prefix rate statistics. These are evidence about the asymptotic
/// rate, not the true liminf.
enum class RateMode { log_rate, power_rate };

/// log_rate:   min over k in [2,K] of r_k / ln k
/// power_rate: min over k in [1,K] of r_k / k^s
double rate_estimate(const SmoothnessSequence& seq, RateMode mode, std::int64_t K,
                     double s = 0.0);

} // namespace tractlab

#endif
