#include "tractlab/tractability.hpp"

#include <cmath>
#include <mutex>

#include <nlohmann/json.hpp>

#include "tractlab/special.hpp"
#include "tractlab/util.hpp"

namespace tractlab {

namespace {

constexpr double ln3 = 1.0986122886681098;

double euler_log_tau_sum(int r, double tau) {
  // sum_j lambda_j^tau = (2/pi)^s * sum_j (2j-1)^{-s}, s = 2 tau (r+1)
  double s = 2.0 * tau * (r + 1.0);
  return s * std::log(2.0 / M_PI) + log_dirichlet_odd_sum(s);
}

} // namespace

// --- Wiener factor table/model ----------------------------------------------

namespace {

struct WienerTableEntry {
  std::vector<double> log_q;  // log(lambda_j / lambda_1), j = 1.. (first is 0)
  double log_tail_rel = 0.0;  // log(tail / lambda_1)
  double log_trace_rel = 0.0; // log(Lambda / lambda_1)
};

class WienerTable {
public:
  static const WienerTable& instance() {
    static WienerTable t;
    return t;
  }

  static constexpr int limit = 24;
  std::vector<WienerTableEntry> entries;  // r = 0..limit
  double c_ratio = 0.0;                   // lambda_2/lambda_1 ~ c_ratio / r^2
  double c_rho = 0.0;                     // Lambda/lambda_1 - 1 ~ c_rho / r^2

private:
  WienerTable() {
    entries.resize(limit + 1);
    parallel_for(static_cast<std::size_t>(limit) + 1, [this](std::size_t r) {
      entries[r] = build(static_cast<int>(r));
    });
    KahanSum cr, cq;
    int count = 0;
    for (int r = limit / 2; r <= limit; ++r) {
      const auto& e = entries[static_cast<std::size_t>(r)];
      cr.add(r * static_cast<double>(r) * std::exp(e.log_q[1]));
      cq.add(r * static_cast<double>(r) * std::expm1(e.log_trace_rel));
      ++count;
    }
    c_ratio = cr.get() / count;
    c_rho = cq.get() / count;
  }

  static WienerTableEntry build(int r) {
    std::size_t J = 48;
    UnivariateSpectrum sp;
    for (;;) {
      try {
        WienerOptions opts;
        opts.tolerance = 1e-3;
        opts.precision = SpectrumPrecision::fast;
        sp = wiener_spectrum(r, J, opts);
        break;
      } catch (const numerical_error&) {
        if (J <= 4) throw;
        J /= 2;  // depth not resolvable in double precision for this r
      }
    }
    WienerTableEntry e;
    double l1 = sp.log_eigenvalues[0];
    e.log_q.reserve(sp.size());
    for (double lv : sp.log_eigenvalues) e.log_q.push_back(lv - l1);
    e.log_tail_rel = sp.log_tail - l1;
    e.log_trace_rel = sp.log_trace - l1;
    return e;
  }
};

} // namespace

int WienerFactorModel::table_limit() { return WienerTable::limit; }

double WienerFactorModel::fitted_ratio_constant() { return WienerTable::instance().c_ratio; }

double WienerFactorModel::sigma_tau(int r, double tau, WienerCriterionMode mode) {
  const auto& table = WienerTable::instance();
  if (r <= WienerTable::limit) {
    const auto& e = table.entries[static_cast<std::size_t>(r)];
    KahanSum s;
    for (std::size_t j = 1; j < e.log_q.size(); ++j) s.add(std::exp(tau * e.log_q[j]));
    // remaining mass R with every term <= a := min(q_J, R): sum of tau-th
    // powers is at most R a^{tau-1} + a^tau
    double R = std::exp(e.log_tail_rel);
    double a = std::min(std::exp(e.log_q.back()), R);
    if (tau == 1.0) s.add(R);
    else if (a > 0.0) s.add(R * std::pow(a, tau - 1.0) + std::pow(a, tau));
    return s.get();
  }
  if (mode == WienerCriterionMode::raw)
    throw invalid_argument_error("wiener raw criterion mode: r exceeds the direct-solve table");
  double q2 = table.c_ratio / (static_cast<double>(r) * r);
  return std::pow(q2, tau);
}

double WienerFactorModel::rho(int r, WienerCriterionMode mode) {
  const auto& table = WienerTable::instance();
  if (r <= WienerTable::limit)
    return std::expm1(table.entries[static_cast<std::size_t>(r)].log_trace_rel);
  if (mode == WienerCriterionMode::raw)
    throw invalid_argument_error("wiener raw criterion mode: r exceeds the direct-solve table");
  return table.c_rho / (static_cast<double>(r) * r);
}

double WienerFactorModel::entropy(int r) {
  const auto& table = WienerTable::instance();
  if (r <= WienerTable::limit) {
    const auto& e = table.entries[static_cast<std::size_t>(r)];
    double log_trace = e.log_trace_rel;
    KahanSum s;
    for (double lq : e.log_q) {
      double lp = lq - log_trace;
      s.add(-std::exp(lp) * lp);
    }
    // estimated (not certified) deep-tail continuation via the j->inf decay
    for (std::size_t j = e.log_q.size() + 1; j <= e.log_q.size() + 200; ++j) {
      double lp = euler_log_eigenvalue(static_cast<std::int64_t>(j), r) -
                  euler_log_eigenvalue(1, r) - log_trace;
      double term = -std::exp(lp) * lp;
      s.add(term);
      if (term < 1e-18 * s.get()) break;
    }
    return s.get();
  }
  // model: mass beyond lambda_1 concentrated at lambda_2 scale
  double q2 = WienerTable::instance().c_ratio / (static_cast<double>(r) * r);
  double rho_v = WienerTable::instance().c_rho / (static_cast<double>(r) * r);
  double p1 = 1.0 / (1.0 + rho_v);
  double p2 = q2 * p1;
  return -p1 * std::log(p1) - p2 * std::log(p2);
}

double WienerFactorModel::entropy_j2(int r) {
  const auto& table = WienerTable::instance();
  if (r <= WienerTable::limit) {
    const auto& e = table.entries[static_cast<std::size_t>(r)];
    double lp = e.log_q[1] - e.log_trace_rel;
    return -std::exp(lp) * lp;
  }
  double q2 = table.c_ratio / (static_cast<double>(r) * r);
  double rho_v = table.c_rho / (static_cast<double>(r) * r);
  double p2 = q2 / (1.0 + rho_v);
  return -p2 * std::log(p2);
}

// --- criterion sums -----------------------------------------------------------

double euler_quasi_criterion(const SmoothnessSequence& seq, std::int64_t d) {
  if (d < 1) throw invalid_argument_error("euler_quasi_criterion: d must be >= 1");
  KahanSum s;
  for (std::int64_t k = 1; k <= d; ++k) {
    double r = static_cast<double>(seq(k));
    s.add((1.0 + r) * std::exp(-2.0 * r * ln3));
  }
  return s.get() / ln_plus(static_cast<double>(d));
}

double wiener_quasi_criterion(const SmoothnessSequence& seq, std::int64_t d) {
  if (d < 1) throw invalid_argument_error("wiener_quasi_criterion: d must be >= 1");
  KahanSum s;
  for (std::int64_t k = 1; k <= d; ++k) {
    double r = static_cast<double>(seq(k));
    s.add(ln_plus(r) / ((1.0 + r) * (1.0 + r)));
  }
  return s.get() / ln_plus(static_cast<double>(d));
}

double spt_sum_euler(const SmoothnessSequence& seq, double tau, std::int64_t K) {
  if (!(tau > 0.0 && tau < 1.0)) throw invalid_argument_error("spt_sum_euler: tau must lie in (0,1)");
  if (K < 1) throw invalid_argument_error("spt_sum_euler: K must be >= 1");
  KahanSum s;
  for (std::int64_t k = 1; k <= K; ++k)
    s.add(std::exp(-2.0 * tau * static_cast<double>(seq(k)) * ln3));
  return s.get();
}

double euler_spt_exponent(std::int64_t r1, double aE) {
  double first = 2.0 / (2.0 * static_cast<double>(r1) + 1.0);
  if (std::isinf(aE)) return first;
  if (!(aE > inv_two_ln3))
    throw invalid_argument_error("euler_spt_exponent: requires aE > 1/(2 ln 3)");
  return std::max(first, 2.0 / (2.0 * aE * ln3 - 1.0));
}

std::pair<double, double> wiener_spt_exponent_bounds(std::int64_t r1, double s) {
  if (!(s > 0.5)) throw invalid_argument_error("wiener_spt_exponent_bounds: requires s > 1/2");
  double rate = 2.0 / (2.0 * s - 1.0);
  double lo = std::max(2.0 / (2.0 * static_cast<double>(r1) + 1.0), rate);
  double hi = std::max(rate, 3.0);
  return {lo, hi};
}

double poly_criterion_log(Process process, const SmoothnessSequence& seq, double tau, double q,
                          std::int64_t d, CriterionOptions opts) {
  if (d < 1) throw invalid_argument_error("poly_criterion_log: d must be >= 1");
  double r1 = static_cast<double>(seq(1));
  if (!(tau > 1.0 / (2.0 * r1 + 2.0) && tau < 1.0))
    throw invalid_argument_error("poly_criterion_log: tau outside the convergence range (1/(2 r1 + 2), 1)");
  KahanSum s;
  for (std::int64_t k = 1; k <= d; ++k) {
    int r = static_cast<int>(seq(k));
    if (process == Process::euler) {
      s.add(euler_log_tau_sum(r, tau) / tau - euler_log_tau_sum(r, 1.0));
    } else {
      double sig = WienerFactorModel::sigma_tau(r, tau, opts.wiener_mode);
      double rho = WienerFactorModel::rho(r, opts.wiener_mode);
      s.add(std::log1p(sig) / tau - std::log1p(rho));
    }
  }
  return s.get() - q * std::log(static_cast<double>(d));
}

double poly_n_bound(double C, double tau, double q, std::int64_t d, double eps) {
  if (!(tau > 0.0 && tau < 1.0)) throw invalid_argument_error("poly_n_bound: tau must lie in (0,1)");
  double expo = tau / (1.0 - tau);
  return (std::pow(tau * C / (1.0 - tau), expo) + 1.0) *
         std::pow(static_cast<double>(d), q * expo) * std::pow(eps, -2.0 * expo);
}

double weak_criterion(Process process, const SmoothnessSequence& seq, double tau, std::int64_t d,
                      CriterionOptions opts) {
  if (d < 1) throw invalid_argument_error("weak_criterion: d must be >= 1");
  double lo = process == Process::euler ? 0.5 : 0.6;
  if (!(tau > lo && tau < 1.0))
    throw invalid_argument_error("weak_criterion: tau outside the admissible range");
  KahanSum s;
  for (std::int64_t k = 1; k <= d; ++k) {
    int r = static_cast<int>(seq(k));
    if (process == Process::euler) {
      s.add(dirichlet_odd_tail(2.0 * tau * (r + 1.0)));
    } else {
      s.add(WienerFactorModel::sigma_tau(r, tau, opts.wiener_mode));
    }
  }
  return s.get() / static_cast<double>(d);
}

double qpt_criterion_general_log(Process process, const SmoothnessSequence& seq, double delta,
                                 std::int64_t d, CriterionOptions opts) {
  if (d < 1) throw invalid_argument_error("qpt_criterion_general_log: d must be >= 1");
  if (!(delta > 0.0)) throw invalid_argument_error("qpt_criterion_general_log: delta must be > 0");
  double tau_d = 1.0 - delta / ln_plus(static_cast<double>(d));
  double r1 = static_cast<double>(seq(1));
  if (!(tau_d > 1.0 / (2.0 * r1 + 2.0)))
    throw invalid_argument_error(
        "qpt_criterion_general_log: per-factor exponent violates convergence at this d");
  KahanSum s;
  for (std::int64_t k = 1; k <= d; ++k) {
    int r = static_cast<int>(seq(k));
    if (process == Process::euler) {
      s.add(euler_log_tau_sum(r, tau_d) - tau_d * euler_log_tau_sum(r, 1.0));
    } else {
      double sig = WienerFactorModel::sigma_tau(r, tau_d, opts.wiener_mode);
      double rho = WienerFactorModel::rho(r, opts.wiener_mode);
      s.add(std::log1p(sig) - tau_d * std::log1p(rho));
    }
  }
  return s.get();
}

namespace {

// certified tail of sum_{j>J} p_j ln(1/p_j) for the Euler factor: the
// summand is decreasing there, so the integral from J dominates
double euler_entropy_tail(int r, std::int64_t J, double log_trace) {
  double s = 2.0 * r + 2.0;
  double U = M_PI * (static_cast<double>(J) + 0.5);
  double lnU = std::log(U);
  double Upow = std::exp((1.0 - s) * lnU);
  double i0 = Upow / (s - 1.0);                         // int u^-s
  double i1 = Upow * (lnU / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));  // int u^-s ln u
  return (s * i1 + log_trace * i0) / (M_PI * std::exp(log_trace));
}

} // namespace

QptNecessary qpt_necessary_sum(Process process, const SmoothnessSequence& seq, std::int64_t d,
                               CriterionOptions opts) {
  if (d < 1) throw invalid_argument_error("qpt_necessary_sum: d must be >= 1");
  KahanSum full, j2;
  for (std::int64_t k = 1; k <= d; ++k) {
    int r = static_cast<int>(seq(k));
    if (process == Process::euler) {
      double log_trace = euler_log_trace(r);
      KahanSum ent;
      const std::int64_t J = 64;
      for (std::int64_t j = 1; j <= J; ++j) {
        double lp = euler_log_eigenvalue(j, r) - log_trace;
        double p = std::exp(lp);
        if (p > 0.0) ent.add(-p * lp);
      }
      ent.add(euler_entropy_tail(r, J, log_trace));
      full.add(ent.get());
      double lp2 = euler_log_eigenvalue(2, r) - log_trace;
      j2.add(-std::exp(lp2) * lp2);
    } else {
      (void)opts;
      full.add(WienerFactorModel::entropy(r));
      j2.add(WienerFactorModel::entropy_j2(r));
    }
  }
  double norm = ln_plus(static_cast<double>(d));
  return {full.get() / norm, j2.get() / norm};
}

// --- trend tests --------------------------------------------------------------

double top_decade_slope(const std::vector<std::int64_t>& d, const std::vector<double>& value) {
  if (d.size() != value.size() || d.size() < 2)
    throw invalid_argument_error("top_decade_slope: need matching series with >= 2 points");
  double dmax = static_cast<double>(d.back());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (static_cast<double>(d[i]) < dmax / 10.0) continue;
    double x = std::log(static_cast<double>(d[i]));
    sx += x;
    sy += value[i];
    sxx += x * x;
    sxy += x * value[i];
    ++n;
  }
  if (n < 2) throw invalid_argument_error("top_decade_slope: top decade has < 2 grid points");
  double det = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / det;
}

double last_decade_increment(const std::vector<std::int64_t>& d, const std::vector<double>& value) {
  if (d.size() != value.size() || d.empty())
    throw invalid_argument_error("last_decade_increment: need a non-empty series");
  double dmax = static_cast<double>(d.back());
  std::size_t i10 = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (static_cast<double>(d[i]) <= dmax / 10.0) i10 = i;
  double denom = std::max(std::abs(value.back()), 1e-300);
  return (value.back() - value[i10]) / denom;
}

std::vector<std::int64_t> default_d_grid(std::int64_t dmax, int per_decade) {
  if (dmax < 10) throw invalid_argument_error("default_d_grid: dmax must be >= 10");
  std::vector<std::int64_t> grid;
  double lmin = std::log10(10.0), lmax = std::log10(static_cast<double>(dmax));
  int steps = static_cast<int>(std::ceil((lmax - lmin) * per_decade));
  for (int i = 0; i <= steps; ++i) {
    double l = lmin + (lmax - lmin) * i / steps;
    auto v = static_cast<std::int64_t>(std::llround(std::pow(10.0, l)));
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }
  if (grid.back() != dmax) grid.push_back(dmax);
  return grid;
}

// --- classification -------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::evidence_for: return "evidence-for";
    case Verdict::evidence_against: return "evidence-against";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// cumulative sums evaluated once over k = 1..dmax, sampled at the grid
CriterionTrack make_cumulative_track(std::string name, const std::vector<std::int64_t>& d_grid,
                                     const std::function<double(std::int64_t)>& summand,
                                     bool normalize_by_lnd) {
  CriterionTrack t;
  t.name = std::move(name);
  t.d = d_grid;
  t.value.reserve(d_grid.size());
  KahanSum s;
  std::int64_t k = 0;
  for (auto d : d_grid) {
    while (k < d) {
      ++k;
      s.add(summand(k));
    }
    t.value.push_back(normalize_by_lnd ? s.get() / ln_plus(static_cast<double>(d)) : s.get());
  }
  t.slope = top_decade_slope(t.d, t.value);
  t.rel_increment = last_decade_increment(t.d, t.value);
  return t;
}

} // namespace

TractabilityReport classify(Process process, const SmoothnessSequence& seq,
                            const std::vector<std::int64_t>& d_grid, ClassifyConfig config) {
  if (d_grid.empty() || d_grid.front() < 1)
    throw invalid_argument_error("classify: d_grid must be non-empty ascending positive");
  for (std::size_t i = 1; i < d_grid.size(); ++i)
    if (d_grid[i] <= d_grid[i - 1])
      throw invalid_argument_error("classify: d_grid must be strictly ascending");

  TractabilityReport rep;
  rep.process = process;
  rep.sequence_spec = seq.spec();
  rep.config = config;
  const std::int64_t dmax = d_grid.back();

  // quasi-polynomial criterion trajectory
  if (process == Process::euler) {
    rep.tracks.push_back(make_cumulative_track(
        "qpt", d_grid,
        [&seq](std::int64_t k) {
          double r = static_cast<double>(seq(k));
          return (1.0 + r) * std::exp(-2.0 * r * ln3);
        },
        true));
  } else {
    rep.tracks.push_back(make_cumulative_track(
        "qpt", d_grid,
        [&seq](std::int64_t k) {
          double r = static_cast<double>(seq(k));
          return ln_plus(r) / ((1.0 + r) * (1.0 + r));
        },
        true));
  }
  const CriterionTrack& qpt = rep.tracks.back();
  Verdict vq = Verdict::inconclusive;
  if (qpt.slope < config.slope_bounded) vq = Verdict::evidence_for;
  else if (qpt.slope > config.slope_divergent) vq = Verdict::evidence_against;
  rep.verdicts["qpt"] = vq;

  // strong polynomial / polynomial evidence
  Verdict vs = Verdict::inconclusive;
  if (process == Process::euler) {
    bool any_conv = false, all_div = true;
    for (double tau : config.spt_taus) {
      auto t = make_cumulative_track(
          "spt[tau=" + std::to_string(tau).substr(0, 4) + "]", d_grid,
          [&seq, tau](std::int64_t k) {
            return std::exp(-2.0 * tau * static_cast<double>(seq(k)) * ln3);
          },
          false);
      if (t.rel_increment < config.sum_converged) any_conv = true;
      if (t.rel_increment <= config.sum_divergent) all_div = false;
      rep.tracks.push_back(std::move(t));
    }
    if (any_conv) vs = Verdict::evidence_for;
    else if (all_div) vs = Verdict::evidence_against;
    if (vs == Verdict::evidence_for) {
      double aE = rate_estimate(seq, RateMode::log_rate, dmax);
      if (aE > inv_two_ln3) rep.spt_exponent = euler_spt_exponent(seq.r1(), aE);
    }
  } else {
    // liminf r_k / k^s > 0 for some s > 1/2: trend of the running minimum
    bool any_up = false, all_down = true;
    for (double s : {0.51, 0.6, 0.75, 1.0}) {
      CriterionTrack t;
      t.name = "power-rate[s=" + std::to_string(s).substr(0, 4) + "]";
      t.d = d_grid;
      double running = std::numeric_limits<double>::infinity();
      std::int64_t k = 0;
      for (auto d : d_grid) {
        while (k < d) {
          ++k;
          running = std::min(running,
                             static_cast<double>(seq(k)) / std::pow(static_cast<double>(k), s));
        }
        t.value.push_back(running);
      }
      t.slope = top_decade_slope(t.d, t.value);
      t.rel_increment = last_decade_increment(t.d, t.value);
      double mid = t.value[t.value.size() / 2];
      double end = t.value.back();
      if (end > 0.0 && end >= mid * 0.999) any_up = true;
      bool down = end == 0.0 || (mid > 0.0 && end < mid * 0.7);
      if (!down) all_down = false;
      rep.tracks.push_back(std::move(t));
    }
    if (any_up) vs = Verdict::evidence_for;
    else if (all_down) vs = Verdict::evidence_against;
    if (vs == Verdict::evidence_for) {
      // prefix fit of s in r_k ~ k^s over the top decade
      std::vector<std::int64_t> ks;
      std::vector<double> lnr;
      for (std::int64_t k = std::max<std::int64_t>(2, dmax / 10); k <= dmax;
           k += std::max<std::int64_t>(1, dmax / 200)) {
        ks.push_back(k);
        lnr.push_back(std::log(std::max<double>(1.0, static_cast<double>(seq(k)))));
      }
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        double x = std::log(static_cast<double>(ks[i]));
        sx += x; sy += lnr[i]; sxx += x * x; sxy += x * lnr[i];
      }
      double n = static_cast<double>(ks.size());
      double shat = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      if (shat > 0.5) rep.spt_exponent_bounds = wiener_spt_exponent_bounds(seq.r1(), shat);
    }
  }
  rep.verdicts["spt"] = vs;
  rep.verdicts["pt"] = vs;  // the two notions coincide for these processes

  // weak tractability: r_k must grow; constant tails mean the curse
  {
    double tau = 0.8;
    CriterionTrack t = make_cumulative_track(
        "weak[tau=0.8]", d_grid,
        [&](std::int64_t k) {
          int r = static_cast<int>(seq(k));
          return process == Process::euler ? dirichlet_odd_tail(2.0 * tau * (r + 1.0))
                                           : WienerFactorModel::sigma_tau(r, tau, config.criteria.wiener_mode);
        },
        false);
    // convert the cumulative sum to the (1/d) average
    for (std::size_t i = 0; i < t.value.size(); ++i) t.value[i] /= static_cast<double>(t.d[i]);
    t.slope = top_decade_slope(t.d, t.value);
    t.rel_increment = last_decade_increment(t.d, t.value);
    bool r_flat = seq(dmax) == seq(std::max<std::int64_t>(1, dmax / 10));
    Verdict vw = Verdict::inconclusive;
    if (r_flat) vw = Verdict::evidence_against;
    else if (t.rel_increment < -0.05) vw = Verdict::evidence_for;
    rep.verdicts["weak"] = vw;
    rep.tracks.push_back(std::move(t));
  }

  return rep;
}

nlohmann::json TractabilityReport::to_json() const {
  nlohmann::json tracks_json = nlohmann::json::array();
  for (const auto& t : tracks) {
    tracks_json.push_back({{"name", t.name},
                           {"d", t.d},
                           {"value", t.value},
                           {"slope", t.slope},
                           {"relIncrement", t.rel_increment}});
  }
  nlohmann::json verdicts_json;
  for (const auto& [k, v] : verdicts) verdicts_json[k] = to_string(v);
  nlohmann::json j{{"format", "tractlab.scan.v1"},
                   {"process", tractlab::to_string(process)},
                   {"sequence", sequence_spec},
                   {"tracks", tracks_json},
                   {"verdicts", verdicts_json},
                   {"config",
                    {{"sptTaus", config.spt_taus},
                     {"slopeBounded", config.slope_bounded},
                     {"slopeDivergent", config.slope_divergent},
                     {"sumConverged", config.sum_converged},
                     {"sumDivergent", config.sum_divergent},
                     {"wienerMode",
                      config.criteria.wiener_mode == WienerCriterionMode::fitted ? "fitted" : "raw"}}}};
  if (spt_exponent) j["sptExponentEstimate"] = *spt_exponent;
  if (spt_exponent_bounds)
    j["sptExponentBounds"] = {spt_exponent_bounds->first, spt_exponent_bounds->second};
  return j;
}

std::string TractabilityReport::to_csv() const {
  std::string out = "#schema=tractlab.v1.scan\n";
  out += "#process=" + tractlab::to_string(process) + " sequence=" + sequence_spec + "\n";
  out += "d";
  for (const auto& t : tracks) out += "," + t.name;
  out += "\n";
  char buf[64];
  if (!tracks.empty()) {
    for (std::size_t i = 0; i < tracks.front().d.size(); ++i) {
      out += std::to_string(tracks.front().d[i]);
      for (const auto& t : tracks) {
        std::snprintf(buf, sizeof buf, ",%.17g", t.value[i]);
        out += buf;
      }
      out += "\n";
    }
  }
  for (const auto& [k, v] : verdicts) out += "#verdict." + k + "=" + tractlab::to_string(v) + "\n";
  return out;
}

} // namespace tractlab
