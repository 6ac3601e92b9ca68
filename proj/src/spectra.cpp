#include "tractlab/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <nlohmann/json.hpp>

#include "tractlab/quadrature.hpp"
#include "tractlab/special.hpp"
#include "tractlab/util.hpp"

namespace tractlab {

const std::vector<double>& scaled_euler_poly(int r);  // euler_poly.cpp

std::string to_string(Process p) { return p == Process::euler ? "euler" : "wiener"; }

Process process_from_string(std::string_view s) {
  if (s == "euler") return Process::euler;
  if (s == "wiener") return Process::wiener;
  throw invalid_argument_error("unknown process '" + std::string(s) + "'");
}

double UnivariateSpectrum::log_eigenvalue(std::size_t j) const {
  if (j < 1 || j > log_eigenvalues.size())
    throw invalid_argument_error("spectrum: eigenvalue index out of range");
  return log_eigenvalues[j - 1];
}

double UnivariateSpectrum::eigenvalue(std::size_t j) const { return std::exp(log_eigenvalue(j)); }
double UnivariateSpectrum::trace() const { return std::exp(log_trace); }
double UnivariateSpectrum::tail() const { return std::exp(log_tail); }

nlohmann::json UnivariateSpectrum::to_json() const {
  return nlohmann::json{{"format", "tractlab.spectrum.v1"},
                        {"process", tractlab::to_string(process)},
                        {"r", r},
                        {"logEigenvalues", log_eigenvalues},
                        {"logTrace", log_trace},
                        {"logTail", log_tail},
                        {"twoGridError", two_grid_error},
                        {"method",
                         {{"solver", method.solver},
                          {"N", method.grid},
                          {"coarseN", method.coarse_grid},
                          {"tolerance", method.tolerance},
                          {"richardson", method.richardson}}}};
}

UnivariateSpectrum UnivariateSpectrum::from_json(const nlohmann::json& j) {
  if (j.at("format").get<std::string>() != "tractlab.spectrum.v1")
    throw invalid_argument_error("spectrum record: unknown format tag");
  UnivariateSpectrum s;
  s.process = process_from_string(j.at("process").get<std::string>());
  s.r = j.at("r").get<int>();
  s.log_eigenvalues = j.at("logEigenvalues").get<std::vector<double>>();
  s.log_trace = j.at("logTrace").get<double>();
  s.log_tail = j.at("logTail").get<double>();
  s.two_grid_error = j.at("twoGridError").get<std::vector<double>>();
  const auto& m = j.at("method");
  s.method.solver = m.at("solver").get<std::string>();
  s.method.grid = m.at("N").get<int>();
  s.method.coarse_grid = m.at("coarseN").get<int>();
  s.method.tolerance = m.at("tolerance").get<double>();
  s.method.richardson = m.at("richardson").get<bool>();
  return s;
}

// --- Euler ------------------------------------------------------------------

double euler_log_eigenvalue(std::int64_t j, int r) {
  if (j < 1) throw invalid_argument_error("euler_log_eigenvalue: j must be >= 1");
  if (r < 0) throw invalid_argument_error("euler_log_eigenvalue: r must be >= 0");
  return -(2.0 * r + 2.0) * std::log(M_PI * (static_cast<double>(j) - 0.5));
}

double euler_eigenvalue(std::int64_t j, int r) { return std::exp(euler_log_eigenvalue(j, r)); }

double euler_log_trace(int r) {
  if (r < 0) throw invalid_argument_error("euler_log_trace: r must be >= 0");
  double s = 2.0 * r + 2.0;
  return s * std::log(2.0 / M_PI) + log_dirichlet_odd_sum(s);
}

double euler_trace(int r) { return std::exp(euler_log_trace(r)); }

double euler_log_tail(std::int64_t J, int r) {
  if (J < 0) throw invalid_argument_error("euler_log_tail: J must be >= 0");
  if (J == 0) return euler_log_trace(r);
  double s = 2.0 * r + 2.0;
  // small inflation keeps the bound valid after double rounding downstream
  return euler_log_eigenvalue(J + 1, r) + std::log(half_shift_tail_ratio(J, s)) + 1e-13;
}

UnivariateSpectrum euler_spectrum(int r, std::size_t J) {
  if (J == 0) throw invalid_argument_error("euler_spectrum: J must be >= 1");
  UnivariateSpectrum s;
  s.process = Process::euler;
  s.r = r;
  s.log_eigenvalues.reserve(J);
  for (std::size_t j = 1; j <= J; ++j)
    s.log_eigenvalues.push_back(euler_log_eigenvalue(static_cast<std::int64_t>(j), r));
  s.log_trace = euler_log_trace(r);
  s.log_tail = euler_log_tail(static_cast<std::int64_t>(J), r);
  s.method.solver = "closed-form";
  return s;
}

double euler_kernel(double x, double y, int r) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw invalid_argument_error("euler_kernel: arguments must lie in [0,1]");
  const auto& coef = scaled_euler_poly(r);
  auto poly = [&coef](double t) {
    double acc = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  double diff = poly(0.5 * std::abs(x - y)) - poly(0.5 * (x + y));
  return (r % 2 == 0 ? -diff : diff);
}

// --- Wiener -----------------------------------------------------------------

double wiener_kernel(double x, double y, int r) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw invalid_argument_error("wiener_kernel: arguments must lie in [0,1]");
  if (r < 0) throw invalid_argument_error("wiener_kernel: r must be >= 0");
  double m = std::min(x, y);
  if (m == 0.0) return 0.0;
  double a = x - m, b = y - m;
  // binomial row
  std::vector<double> binom(static_cast<std::size_t>(r) + 1);
  binom[0] = 1.0;
  for (int i = 1; i <= r; ++i)
    binom[static_cast<std::size_t>(i)] =
        binom[static_cast<std::size_t>(i - 1)] * (r - i + 1) / static_cast<double>(i);
  std::vector<double> pa(static_cast<std::size_t>(r) + 1), pb(static_cast<std::size_t>(r) + 1),
      pm(static_cast<std::size_t>(2 * r) + 2);
  pa[0] = pb[0] = pm[0] = 1.0;
  for (int i = 1; i <= r; ++i) {
    pa[static_cast<std::size_t>(i)] = pa[static_cast<std::size_t>(i - 1)] * a;
    pb[static_cast<std::size_t>(i)] = pb[static_cast<std::size_t>(i - 1)] * b;
  }
  for (int i = 1; i <= 2 * r + 1; ++i) pm[static_cast<std::size_t>(i)] = pm[static_cast<std::size_t>(i - 1)] * m;
  KahanSum sum;
  for (int i = 0; i <= r; ++i) {
    double ci = binom[static_cast<std::size_t>(i)] * pa[static_cast<std::size_t>(r - i)];
    if (ci == 0.0) continue;
    for (int j = 0; j <= r; ++j) {
      sum.add(ci * binom[static_cast<std::size_t>(j)] * pb[static_cast<std::size_t>(r - j)] *
              pm[static_cast<std::size_t>(i + j + 1)] / static_cast<double>(i + j + 1));
    }
  }
  return sum.get() * std::exp(-2.0 * std::lgamma(static_cast<double>(r) + 1.0));
}

double wiener_log_trace(int r) {
  if (r < 0) throw invalid_argument_error("wiener_log_trace: r must be >= 0");
  return -(std::log(2.0 * r + 2.0) + std::log(2.0 * r + 1.0) +
           2.0 * std::lgamma(static_cast<double>(r) + 1.0));
}

double wiener_trace(int r) { return std::exp(wiener_log_trace(r)); }

std::pair<double, double> wiener_largest_predictions(int r) {
  if (r < 1) throw invalid_argument_error("wiener_largest_predictions: r must be >= 1");
  double log_fact2 = 2.0 * std::lgamma(static_cast<double>(r) + 1.0);
  double lam1 = std::exp(-(std::log(2.0 * r + 2.0) + std::log(2.0 * r + 1.0) + log_fact2));
  double lam2_scale = std::exp(-(log_fact2 + 4.0 * std::log(static_cast<double>(r))));
  return {lam1, lam2_scale};
}

namespace {

// Plain double Nystrom eigenvalues: symmetrized W^{1/2} K W^{1/2} on an
// N-point Gauss-Legendre grid; descending eigenvalues.
std::vector<double> nystrom_eigs(int r, int N, std::size_t J) {
  const auto& rule = gauss_legendre(static_cast<std::size_t>(N));
  Eigen::MatrixXd A(N, N);
  std::vector<double> sw(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) sw[static_cast<std::size_t>(i)] = std::sqrt(rule.weights[static_cast<std::size_t>(i)]);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) {
      double v = wiener_kernel(rule.nodes[static_cast<std::size_t>(i)], rule.nodes[static_cast<std::size_t>(j)], r) *
                 sw[static_cast<std::size_t>(i)] * sw[static_cast<std::size_t>(j)];
      A(i, j) = v;
      A(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw numerical_error("nystrom: eigensolver failed");
  const auto& ev = solver.eigenvalues();  // ascending
  std::vector<double> out(J);
  for (std::size_t j = 0; j < J; ++j) out[j] = ev(N - 1 - static_cast<int>(j));
  return out;
}

UnivariateSpectrum wiener_r0_closed_form(std::size_t J) {
  UnivariateSpectrum s = euler_spectrum(0, J);
  s.process = Process::wiener;
  s.method.solver = "closed-form-min-kernel";
  return s;
}

} // namespace

UnivariateSpectrum wiener_spectrum(int r, std::size_t J, WienerOptions opts) {
  if (r < 0) throw invalid_argument_error("wiener_spectrum: r must be >= 0");
  if (J == 0) throw invalid_argument_error("wiener_spectrum: J must be >= 1");
  if (r == 0 && !opts.force_nystrom) return wiener_r0_closed_form(J);

  // default grid: the forced r = 0 path needs a dense rule because of the
  // diagonal kink; smooth kernels are spectrally accurate at N = 4J
  int N = opts.grid;
  if (N <= 0) N = r == 0 ? std::max<int>(static_cast<int>(4 * J), 1536) : std::max<int>(static_cast<int>(4 * J), 64);
  if (N < static_cast<int>(4 * J))
    throw invalid_argument_error("wiener_spectrum: grid must satisfy N >= 4J");

  bool high = opts.precision == SpectrumPrecision::high;
  if (opts.precision == SpectrumPrecision::automatic && r >= 1) {
    // smallest requested eigenvalue relative to lambda_1, predicted from the
    // asymptotic decay; below ~1e-10 the double eigensolver floor bites
    double log_ratio = euler_log_eigenvalue(static_cast<std::int64_t>(J), r) -
                       (wiener_log_trace(r));
    high = log_ratio < std::log(1e-10);
  }

  UnivariateSpectrum s;
  s.process = Process::wiener;
  s.r = r;
  s.log_trace = wiener_log_trace(r);
  s.method.tolerance = opts.tolerance;
  s.method.grid = N;
  s.method.coarse_grid = N / 2;

  if (high && r >= 1) {
    s.method.solver = "nystrom-gl-mp50";
    s.log_eigenvalues = wiener_nystrom_log_eigenvalues_mp(r, J, N);
    std::vector<double> coarse = wiener_nystrom_log_eigenvalues_mp(r, J, N / 2);
    s.two_grid_error.resize(J);
    for (std::size_t j = 0; j < J; ++j)
      s.two_grid_error[j] = std::abs(std::exp(s.log_eigenvalues[j]) - std::exp(coarse[j]));
  } else {
    s.method.solver = "nystrom-gl";
    bool richardson = (r == 0);  // kink on the diagonal: O(N^-2) single grid
    s.method.richardson = richardson;
    std::vector<double> fine = nystrom_eigs(r, N, J);
    std::vector<double> coarse = nystrom_eigs(r, N / 2, J);
    s.log_eigenvalues.resize(J);
    s.two_grid_error.resize(J);
    for (std::size_t j = 0; j < J; ++j) {
      double est = std::abs(fine[j] - coarse[j]);
      double lam = richardson ? fine[j] + (fine[j] - coarse[j]) / 3.0 : fine[j];
      if (!(lam > 0.0))
        throw numerical_error("wiener_spectrum: non-positive eigenvalue at j=" +
                              std::to_string(j + 1) + " (increase N or precision)");
      s.log_eigenvalues[j] = std::log(lam);
      s.two_grid_error[j] = est;
    }
  }

  double lamJ = std::exp(s.log_eigenvalues[J - 1]);
  if (s.two_grid_error[J - 1] > opts.tolerance * lamJ)
    throw numerical_error("wiener_spectrum: two-grid estimate for lambda_J exceeds tolerance");

  // tail := trace - stored mass, certified up to the two-grid error and a
  // small arithmetic slack; computed relative to lambda_1 to avoid underflow
  double log_l1 = s.log_eigenvalues[0];
  KahanSum mass;
  for (double lv : s.log_eigenvalues) mass.add(std::exp(lv - log_l1));
  KahanSum err;
  for (double e : s.two_grid_error) err.add(e);
  double trace_rel = std::exp(s.log_trace - log_l1);
  double tail_rel = trace_rel - mass.get();
  double slack = 16.0 * std::numeric_limits<double>::epsilon() * trace_rel +
                 err.get() / std::exp(log_l1);
  tail_rel = std::max(tail_rel, 0.0) + slack;
  s.log_tail = log_l1 + std::log(tail_rel);
  return s;
}

const UnivariateSpectrum& cached_wiener_spectrum(int r, std::size_t J, SpectrumPrecision precision,
                                                 double tolerance) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::size_t, int, double>, UnivariateSpectrum> cache;
  auto key = std::make_tuple(r, J, static_cast<int>(precision), tolerance);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  // computed outside the lock so distinct spectra can build concurrently; a
  // racing duplicate computes the same value and the first insert wins
  WienerOptions opts;
  opts.precision = precision;
  opts.tolerance = tolerance;
  UnivariateSpectrum sp = wiener_spectrum(r, J, opts);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(sp)).first->second;
}

} // namespace tractlab
