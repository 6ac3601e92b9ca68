#include "tractlab/complexity.hpp"

#include <cmath>
#include <memory>

#include <nlohmann/json.hpp>

#include "tractlab/special.hpp"

namespace tractlab {

std::string to_string(Certification c) {
  switch (c) {
    case Certification::certified: return "certified";
    case Certification::truncation_limited: return "truncation-limited";
    case Certification::budget_exhausted: return "budget-exhausted";
  }
  return "unknown";
}

nlohmann::json ComplexityResult::to_json() const {
  return nlohmann::json{{"eps", eps},
                        {"d", d},
                        {"n", n},
                        {"errorFraction", achieved_error_fraction},
                        {"certified", certification == Certification::certified},
                        {"certification", to_string(certification)},
                        {"bracket", {n_lo, n_hi}},
                        {"truncationLossFraction", truncation_loss_fraction},
                        {"stats",
                         {{"popped", stats.popped},
                          {"pushed", stats.pushed},
                          {"peakFrontier", stats.peak_frontier}}}};
}

namespace {

// Euler factors served lazily from the closed form; depth is unbounded so
// the frontier search enumerates the exact product spectrum and truncation
// loss is identically zero.
class EulerFactorView final : public FactorView {
public:
  EulerFactorView(int d, const SmoothnessSequence& seq) {
    rs_.reserve(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) rs_.push_back(static_cast<int>(seq(k)));
  }
  std::size_t dimension() const override { return rs_.size(); }
  std::optional<double> log_eigenvalue(std::size_t k, std::uint32_t j) override {
    return euler_log_eigenvalue(static_cast<std::int64_t>(j), rs_[k]);
  }

private:
  std::vector<int> rs_;
};

struct Problem {
  std::unique_ptr<FactorView> view;
  std::vector<UnivariateSpectrum> wiener_spectra;  // owned when process == wiener
  double log_trace_product = 0.0;
  double loss_fraction = 0.0;
  std::vector<std::vector<double>> rel_err;  // per-factor, per-level two-grid rel. error
};

Problem make_problem(int d, Process process, const SmoothnessSequence& seq,
                     const ComplexityOptions& opts, double target_loss_fraction) {
  if (d < 1) throw invalid_argument_error("n_eps: d must be >= 1");
  Problem p;
  if (process == Process::euler) {
    p.view = std::make_unique<EulerFactorView>(d, seq);
    KahanSum lt;
    for (int k = 1; k <= d; ++k) lt.add(euler_log_trace(static_cast<int>(seq(k))));
    p.log_trace_product = lt.get();
    p.loss_fraction = 0.0;
  } else {
    // grow the shared per-factor depth geometrically until the certified
    // loss clears the policy target or the depth cap is reached
    std::size_t depth = std::min<std::size_t>(16, opts.wiener_depth);
    for (;;) {
      p.wiener_spectra.clear();
      p.wiener_spectra.reserve(static_cast<std::size_t>(d));
      for (int k = 1; k <= d; ++k)
        p.wiener_spectra.push_back(cached_wiener_spectrum(static_cast<int>(seq(k)), depth,
                                                          SpectrumPrecision::automatic,
                                                          opts.spectrum_tolerance));
      p.loss_fraction = truncation_loss_fraction(p.wiener_spectra);
      if (p.loss_fraction <= target_loss_fraction || depth >= opts.wiener_depth) break;
      depth = std::min(depth * 2, opts.wiener_depth);
    }
    p.log_trace_product = log_trace_product(p.wiener_spectra);
    for (const auto& sp : p.wiener_spectra) {
      std::vector<double> rel(sp.size(), 0.0);
      if (!sp.two_grid_error.empty())  // closed-form factors carry no estimate
        for (std::size_t j = 0; j < sp.size(); ++j)
          rel[j] = sp.two_grid_error[j] / std::exp(sp.log_eigenvalues[j]);
      p.rel_err.push_back(std::move(rel));
    }
    p.view = std::make_unique<SpectrumFactorView>(p.wiener_spectra);
  }
  return p;
}

} // namespace

ComplexityResult n_eps(double eps, int d, Process process, const SmoothnessSequence& seq,
                       ComplexityOptions opts) {
  if (!(eps > 0.0) || eps > 1.0)
    throw invalid_argument_error("n_eps: eps must lie in (0, 1]");
  ComplexityResult res;
  res.eps = eps;
  res.d = d;
  if (eps == 1.0) {
    res.n = res.n_lo = res.n_hi = 0;
    res.achieved_error_fraction = 1.0;
    return res;
  }

  const double eps2 = eps * eps;
  Problem prob = make_problem(d, process, seq, opts, opts.loss_policy * eps2);
  const double loss = prob.loss_fraction;
  res.truncation_loss_fraction = loss;

  ProductEnumerator en(*prob.view);
  KahanSum kept;
  KahanSum mass_slack;  // mass-weighted eigenvalue uncertainty of kept terms
  std::int64_t n = 0;
  double prev_fraction = 0.0;  // kept fraction before the n-th term
  double prev_slack = 0.0;
  std::int64_t n_lo = -1;
  bool satisfied = false;
  while (n < opts.budget) {
    auto pe = en.next();
    if (!pe) break;  // grid exhausted (possible only for truncated factors)
    prev_fraction = kept.get();
    prev_slack = mass_slack.get();
    double frac = std::exp(pe->log_value - prob.log_trace_product);
    kept.add(frac);
    if (!prob.rel_err.empty()) {
      double u = 0.0;
      for (std::size_t k = 0; k < pe->index.size(); ++k)
        u += prob.rel_err[k][pe->index[k] - 1];
      mass_slack.add(frac * u);
    }
    ++n;
    if (n_lo < 0 && 1.0 - kept.get() - loss - mass_slack.get() - 1e-12 <= eps2) n_lo = n;
    if (1.0 - kept.get() <= eps2) {
      satisfied = true;
      break;
    }
  }
  res.stats = en.stats();

  if (!satisfied) {
    res.certification = en.hit_truncation() && n < opts.budget
                            ? Certification::truncation_limited
                            : Certification::budget_exhausted;
    res.n_lo = n_lo >= 0 ? n_lo : n + 1;
    res.n_hi = -1;  // unknown
    res.n = n;
    res.achieved_error_fraction = std::max(1.0 - kept.get(), 0.0);
    return res;
  }

  res.n = n;
  res.n_hi = n;
  res.n_lo = n_lo >= 0 ? n_lo : n;
  res.achieved_error_fraction = std::max(1.0 - kept.get(), 0.0);
  // certified iff n suffices and n-1 fails even when granted the whole
  // truncation loss and the mass-weighted eigenvalue uncertainty
  bool sufficient = 1.0 - kept.get() + mass_slack.get() <= eps2 + 1e-12;
  bool minimal = n == 0 || (1.0 - prev_fraction - loss - prev_slack > eps2 + 1e-12);
  res.certification =
      sufficient && minimal ? Certification::certified : Certification::truncation_limited;
  return res;
}

ErrorOfN error_of_n(std::int64_t n, int d, Process process, const SmoothnessSequence& seq,
                    ComplexityOptions opts) {
  if (n < 0) throw invalid_argument_error("error_of_n: n must be >= 0");
  ErrorOfN out;
  out.n = n;
  if (n == 0) {
    out.sq_fraction_lo = out.sq_fraction_hi = 1.0;
    out.error_lo = out.error_hi = 1.0;
    return out;
  }
  Problem prob = make_problem(d, process, seq, opts, 0.0);
  ProductEnumerator en(*prob.view);
  KahanSum kept;
  KahanSum mass_slack;
  for (std::int64_t i = 0; i < n; ++i) {
    if (i >= opts.budget) throw invalid_argument_error("error_of_n: n exceeds the enumeration budget");
    auto pe = en.next();
    if (!pe) break;
    double frac = std::exp(pe->log_value - prob.log_trace_product);
    kept.add(frac);
    if (!prob.rel_err.empty()) {
      double u = 0.0;
      for (std::size_t k = 0; k < pe->index.size(); ++k)
        u += prob.rel_err[k][pe->index[k] - 1];
      mass_slack.add(frac * u);
    }
  }
  double hi = std::max(1.0 - kept.get() + mass_slack.get(), 0.0);
  double lo = std::max(1.0 - kept.get() - prob.loss_fraction - mass_slack.get(), 0.0);
  out.sq_fraction_hi = hi;
  out.sq_fraction_lo = lo;
  out.error_hi = std::sqrt(hi);
  out.error_lo = std::sqrt(lo);
  return out;
}

double curse_lower_bound_log(double eps, int d, Process process, const SmoothnessSequence& seq) {
  if (!(eps > 0.0 && eps < 1.0))
    throw invalid_argument_error("curse_lower_bound_log: eps must lie in (0, 1)");
  if (d < 1) throw invalid_argument_error("curse_lower_bound_log: d must be >= 1");
  KahanSum sum;
  sum.add(std::log1p(-eps * eps));
  for (int k = 1; k <= d; ++k) {
    int r = static_cast<int>(seq(k));
    if (process == Process::euler) {
      // Lambda/lambda_1 = sum_j (2j-1)^{-(2r+2)}
      sum.add(log_dirichlet_odd_sum(2.0 * r + 2.0));
    } else {
      const auto& sp = cached_wiener_spectrum(r, 16);
      sum.add(sp.log_trace - sp.log_eigenvalues[0]);
    }
  }
  return sum.get();
}

} // namespace tractlab
