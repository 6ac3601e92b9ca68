#include <doctest.h>

#include <cmath>

#include "tractlab/smoothness.hpp"
#include "tractlab/util.hpp"

using namespace tractlab;

TEST_SUITE_BEGIN("smoothness");

TEST_CASE("rule examples") {
  CHECK(SmoothnessSequence::constant(2)(7) == 2);
  CHECK(SmoothnessSequence::log_euler(1.0)(1) == 1);  // ln 1 = 0 forces r_1 = 1
  CHECK(SmoothnessSequence::power_wiener(0.5)(4) == 6);  // ceil(2 ln^2 5) = ceil(5.1805...)
  CHECK(SmoothnessSequence::power(1.0, 1.0)(5) == 5);    // r_k = k exactly
}

TEST_CASE("log-threshold snaps the exact-integer boundary") {
  auto seq = SmoothnessSequence::log_threshold();
  CHECK(seq(1) == 1);
  // ln 9 / (2 ln 3) = 1 exactly; the guard keeps the ceiling at 1
  CHECK(seq(9) == 1);
  CHECK(seq(10) == 2);
}

TEST_CASE("parsing round-trips") {
  for (const char* spec : {"const:2", "log-euler:a=0.91", "power-wiener:s=0.5",
                           "explicit:0,1,1,2", "power:c=1,s=1", "log-threshold"}) {
    auto seq = SmoothnessSequence::parse(spec);
    auto again = SmoothnessSequence::parse(seq.spec());
    for (std::int64_t k = 1; k <= 32; ++k) CHECK(seq(k) == again(k));
  }
}

TEST_CASE("parse and construction errors") {
  CHECK_THROWS_AS(SmoothnessSequence::parse("explicit:2,1"), invalid_argument_error);
  CHECK_THROWS_AS(SmoothnessSequence::parse("log-euler:a=0"), invalid_argument_error);
  CHECK_THROWS_AS(SmoothnessSequence::parse("power-wiener:s=-1"), invalid_argument_error);
  CHECK_THROWS_AS(SmoothnessSequence::parse("bogus:1"), invalid_argument_error);
  CHECK_THROWS_AS(SmoothnessSequence::explicit_list({}), invalid_argument_error);
  CHECK_THROWS_AS(SmoothnessSequence::constant(-1), invalid_argument_error);
}

TEST_CASE("explicit lists repeat the last value") {
  auto seq = SmoothnessSequence::explicit_list({0, 1, 1, 2});
  CHECK(seq(4) == 2);
  CHECK(seq(5) == 2);
  CHECK(seq(1000) == 2);
}

TEST_CASE("monotone in k for every rule") {
  auto rules = {SmoothnessSequence::constant(3),       SmoothnessSequence::log_euler(0.3),
                SmoothnessSequence::log_euler(1.0),    SmoothnessSequence::log_threshold(),
                SmoothnessSequence::power_wiener(0.5), SmoothnessSequence::power(0.7, 0.4),
                SmoothnessSequence::explicit_list({0, 0, 2, 5})};
  for (const auto& seq : rules) {
    std::int64_t prev = seq(1);
    CHECK(prev >= 0);
    for (std::int64_t k = 2; k <= 2000; ++k) {
      std::int64_t cur = seq(k);
      CHECK(cur >= prev);
      prev = cur;
    }
    // sampled sparse continuation up to 1e5
    for (std::int64_t k = 2000; k <= 100000; k += 997) {
      CHECK(seq(k) <= seq(k + 1));
    }
  }
}

TEST_CASE("log-euler ceiling property") {
  for (double a : {0.3, 1.0}) {
    auto seq = SmoothnessSequence::log_euler(a);
    for (std::int64_t k = 1; k <= 3000; ++k) {
      double inner = 1.0 + a * std::log1p(k == 1 ? 0.0 : k * std::log(double(k)));
      CHECK(std::abs(double(seq(k)) - inner) < 1.0);
    }
  }
}

TEST_CASE("rate estimates") {
  CHECK(rate_estimate(SmoothnessSequence::constant(3), RateMode::log_rate, 1000000) ==
        doctest::Approx(3.0 / std::log(1e6)).epsilon(1e-12));
  double v = rate_estimate(SmoothnessSequence::log_euler(1.0), RateMode::log_rate, 10000);
  CHECK(v >= 1.0);
  CHECK(v <= 1.5);
  CHECK(rate_estimate(SmoothnessSequence::power(1.0, 1.0), RateMode::power_rate, 100, 1.0) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(rate_estimate(SmoothnessSequence::constant(1), RateMode::log_rate, 1),
                  invalid_argument_error);
}

// The finite-K estimate sits above the rule parameter a and converges down
// toward it; at K = 1e6 the gap is still the ceiling + ln ln k overhead, so
// the assertion uses that provable envelope rather than a fixed percentage.
TEST_CASE("log-rate envelope for log-euler rules") {
  const std::int64_t K1 = 10000, K2 = 1000000;
  for (double a : {0.3, inv_two_ln3, 1.0}) {
    auto seq = SmoothnessSequence::log_euler(a);
    double v1 = rate_estimate(seq, RateMode::log_rate, K1);
    double v2 = rate_estimate(seq, RateMode::log_rate, K2);
    CHECK(v2 <= v1);  // converges downward
    CHECK(v2 >= a);
    double lnK = std::log(double(K2));
    double envelope = a + (2.0 + a * (std::log1p(K2 * lnK) - lnK)) / lnK;
    CHECK(v2 <= envelope);
  }
}

TEST_SUITE_END();
