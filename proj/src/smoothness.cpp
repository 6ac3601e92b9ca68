#include "tractlab/smoothness.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "tractlab/util.hpp"

namespace tractlab {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw invalid_argument_error("sequence rule: bad " + std::string(what) + " in '" +
                                 std::string(text) + "'");
  return value;
}

std::string_view expect_key(std::string_view item, std::string_view key) {
  if (item.substr(0, key.size()) != key)
    throw invalid_argument_error("sequence rule: expected '" + std::string(key) + "' in '" +
                                 std::string(item) + "'");
  return item.substr(key.size());
}

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

SmoothnessSequence::SmoothnessSequence(Rule rule, std::string spec)
    : rule_(std::move(rule)), spec_(std::move(spec)) {}

SmoothnessSequence SmoothnessSequence::constant(std::int64_t r) {
  if (r < 0) throw invalid_argument_error("const rule: r must be >= 0");
  return {Constant{r}, "const:" + std::to_string(r)};
}

SmoothnessSequence SmoothnessSequence::log_euler(double a) {
  if (!(a > 0.0)) throw invalid_argument_error("log-euler rule: a must be > 0");
  return {LogEuler{a}, "log-euler:a=" + format_param(a)};
}

SmoothnessSequence SmoothnessSequence::log_threshold() {
  return {LogThreshold{}, "log-threshold"};
}

SmoothnessSequence SmoothnessSequence::power_wiener(double s) {
  if (!(s > 0.0)) throw invalid_argument_error("power-wiener rule: s must be > 0");
  return {PowerWiener{s}, "power-wiener:s=" + format_param(s)};
}

SmoothnessSequence SmoothnessSequence::power(double c, double s) {
  if (!(c > 0.0) || !(s > 0.0)) throw invalid_argument_error("power rule: c, s must be > 0");
  return {Power{c, s}, "power:c=" + format_param(c) + ",s=" + format_param(s)};
}

SmoothnessSequence SmoothnessSequence::explicit_list(std::vector<std::int64_t> values) {
  if (values.empty()) throw invalid_argument_error("explicit rule: empty list");
  std::string spec = "explicit:";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) throw invalid_argument_error("explicit rule: values must be >= 0");
    if (i > 0) {
      if (values[i] < values[i - 1])
        throw invalid_argument_error("explicit rule: values must be non-decreasing");
      spec += ',';
    }
    spec += std::to_string(values[i]);
  }
  return {Explicit{std::move(values)}, std::move(spec)};
}

SmoothnessSequence SmoothnessSequence::parse(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view head = spec.substr(0, colon);
  std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "const") {
    double v = parse_number(args, "r");
    if (v != std::floor(v)) throw invalid_argument_error("const rule: r must be an integer");
    return constant(static_cast<std::int64_t>(v));
  }
  if (head == "log-euler") return log_euler(parse_number(expect_key(args, "a="), "a"));
  if (head == "log-threshold") return log_threshold();
  if (head == "power-wiener") return power_wiener(parse_number(expect_key(args, "s="), "s"));
  if (head == "power") {
    auto comma = args.find(',');
    if (comma == std::string_view::npos)
      throw invalid_argument_error("power rule: expected c=...,s=...");
    double c = parse_number(expect_key(args.substr(0, comma), "c="), "c");
    double s = parse_number(expect_key(args.substr(comma + 1), "s="), "s");
    return power(c, s);
  }
  if (head == "explicit") {
    std::vector<std::int64_t> values;
    std::size_t pos = 0;
    while (pos <= args.size()) {
      auto next = args.find(',', pos);
      auto item = args.substr(pos, next == std::string_view::npos ? args.size() - pos : next - pos);
      double v = parse_number(item, "entry");
      if (v != std::floor(v)) throw invalid_argument_error("explicit rule: entries must be integers");
      values.push_back(static_cast<std::int64_t>(v));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    return explicit_list(std::move(values));
  }
  throw invalid_argument_error("unknown sequence rule '" + std::string(head) + "'");
}

std::int64_t SmoothnessSequence::operator()(std::int64_t k) const {
  if (k < 1) throw invalid_argument_error("sequence index k must be >= 1");
  const double kd = static_cast<double>(k);
  return std::visit(
      [&](const auto& rule) -> std::int64_t {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return rule.r;
        } else if constexpr (std::is_same_v<T, LogEuler>) {
          double klnk = k == 1 ? 0.0 : kd * std::log(kd);
          return guarded_ceil(1.0 + rule.a * std::log1p(klnk));
        } else if constexpr (std::is_same_v<T, LogThreshold>) {
          return guarded_ceil(ln_plus(kd) * inv_two_ln3);
        } else if constexpr (std::is_same_v<T, PowerWiener>) {
          double l = std::log1p(kd);
          return guarded_ceil(std::pow(kd, rule.s) * l * l);
        } else if constexpr (std::is_same_v<T, Power>) {
          return guarded_ceil(rule.c * std::pow(kd, rule.s));
        } else {
          const auto& v = rule.values;
          std::size_t i = static_cast<std::size_t>(k - 1);
          return i < v.size() ? v[i] : v.back();
        }
      },
      rule_);
}

double rate_estimate(const SmoothnessSequence& seq, RateMode mode, std::int64_t K, double s) {
  if (K < 2) throw invalid_argument_error("rate_estimate: K must be >= 2");
  double best = std::numeric_limits<double>::infinity();
  if (mode == RateMode::log_rate) {
    for (std::int64_t k = 2; k <= K; ++k)
      best = std::min(best, static_cast<double>(seq(k)) / std::log(static_cast<double>(k)));
  } else {
    if (!(s > 0.0)) throw invalid_argument_error("rate_estimate: power mode needs s > 0");
    for (std::int64_t k = 1; k <= K; ++k)
      best = std::min(best,
                      static_cast<double>(seq(k)) / std::pow(static_cast<double>(k), s));
  }
  return best;
}

} // namespace tractlab
