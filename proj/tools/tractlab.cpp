// tractlab: spectra, information complexity and tractability criteria for
// integrated-process approximation, from the command line.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "tractlab/complexity.hpp"
#include "tractlab/io.hpp"
#include "tractlab/rank_approx.hpp"
#include "tractlab/smoothness.hpp"
#include "tractlab/spectra.hpp"
#include "tractlab/tensor.hpp"
#include "tractlab/tractability.hpp"
#include "tractlab/util.hpp"

namespace {

using nlohmann::json;
using namespace tractlab;

struct RunConfig {
  std::string subcommand;
  std::string process = "euler";
  std::string seq = "const:0";
  double eps = 0.5;
  int d = 1;
  double tau = 0.9;
  double q = 0.0;
  double delta = 0.5;
  double dmax = 1e4;
  int r = 0;
  int rmax = 8;
  std::int64_t count = 10;
  std::string grid = "16";
  int quad_grid = 0;  // quadrature size for eigen; 0 = automatic
  int samples = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  double tolerance = 1e-3;
  bool tau_set = false;
  std::string notion = "all";
  bool require_certified = false;
  double lemma3_c = 2.0 / M_PI;
  std::int64_t budget = 2'000'000;

  json to_json() const {
    return json{{"subcommand", subcommand}, {"process", process}, {"seq", seq},
                {"eps", eps},               {"d", d},             {"tau", tau},
                {"q", q},                   {"delta", delta},     {"dmax", dmax},
                {"r", r},                   {"rmax", rmax},       {"count", count},
                {"grid", grid},             {"samples", samples}, {"seed", seed},
                {"format", format},         {"out", out},         {"notion", notion},
                {"requireCertified", require_certified},          {"lemma3C", lemma3_c},
                {"budget", budget},                                {"tolerance", tolerance},
                {"quadGrid", quad_grid}};
  }

};

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> pts;
  if (spec.find(',') == std::string::npos && spec.find('.') == std::string::npos) {
    int n = std::stoi(spec);
    if (n < 1) throw invalid_argument_error("--grid: need at least one point");
    for (int i = 1; i <= n; ++i) pts.push_back(static_cast<double>(i) / n);
    return pts;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    auto next = spec.find(',', pos);
    pts.push_back(std::stod(spec.substr(pos, next == std::string::npos ? spec.size() - pos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return pts;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    write_file_atomic(cfg.out, content);
  }
}

std::string config_comment(const RunConfig& cfg) {
  return "#config=" + cfg.to_json().dump() + "\n";
}

int run_eigen(const RunConfig& cfg) {
  Process p = process_from_string(cfg.process);
  UnivariateSpectrum sp;
  std::size_t J = static_cast<std::size_t>(cfg.count);
  if (p == Process::euler) {
    sp = euler_spectrum(cfg.r, J);
  } else {
    WienerOptions opts;
    opts.tolerance = cfg.tolerance;
    if (cfg.quad_grid > 0) opts.grid = cfg.quad_grid;
    sp = wiener_spectrum(cfg.r, J, opts);
  }
  if (cfg.format == "json") {
    json out = sp.to_json();
    out["config"] = cfg.to_json();
    emit(cfg, out.dump(2) + "\n");
  } else {
    std::string out = "#schema=tractlab.v1.eigen\n" + config_comment(cfg) + "j,lambda,logLambda\n";
    for (std::size_t j = 1; j <= sp.size(); ++j)
      out += std::to_string(j) + "," + format_g17(sp.eigenvalue(j)) + "," +
             format_g17(sp.log_eigenvalue(j)) + "\n";
    emit(cfg, out);
  }
  return 0;
}

int run_kernel(const RunConfig& cfg) {
  Process p = process_from_string(cfg.process);
  auto pts = parse_grid(cfg.grid);
  std::string out = "#schema=tractlab.v1.kernel\n" + config_comment(cfg) + "x,y,value\n";
  for (double x : pts)
    for (double y : pts) {
      double v = p == Process::euler ? euler_kernel(x, y, cfg.r) : wiener_kernel(x, y, cfg.r);
      out += format_g17(x) + "," + format_g17(y) + "," + format_g17(v) + "\n";
    }
  if (cfg.format == "json") {
    json rows = json::array();
    for (double x : pts)
      for (double y : pts)
        rows.push_back({{"x", x},
                        {"y", y},
                        {"value", p == Process::euler ? euler_kernel(x, y, cfg.r)
                                                      : wiener_kernel(x, y, cfg.r)}});
    emit(cfg, json{{"format", "tractlab.kernel.v1"}, {"rows", rows}, {"config", cfg.to_json()}}.dump(2) + "\n");
  } else {
    emit(cfg, out);
  }
  return 0;
}

int run_complexity(const RunConfig& cfg) {
  Process p = process_from_string(cfg.process);
  auto seq = SmoothnessSequence::parse(cfg.seq);
  ComplexityOptions opts;
  opts.budget = cfg.budget;
  ComplexityResult res = n_eps(cfg.eps, cfg.d, p, seq, opts);
  if (cfg.format == "json") {
    json out = res.to_json();
    out["config"] = cfg.to_json();
    emit(cfg, out.dump(2) + "\n");
  } else {
    std::string out = "#schema=tractlab.v1.complexity\n" + config_comment(cfg) +
                      "eps,d,n,errorFraction,certification,nLo,nHi\n";
    out += format_g17(res.eps) + "," + std::to_string(res.d) + "," + std::to_string(res.n) + "," +
           format_g17(res.achieved_error_fraction) + "," + to_string(res.certification) + "," +
           std::to_string(res.n_lo) + "," + std::to_string(res.n_hi) + "\n";
    emit(cfg, out);
  }
  if (cfg.require_certified && res.certification != Certification::certified) return 3;
  return 0;
}

int run_scan(const RunConfig& cfg) {
  Process p = process_from_string(cfg.process);
  auto seq = SmoothnessSequence::parse(cfg.seq);
  auto grid = default_d_grid(static_cast<std::int64_t>(cfg.dmax));
  ClassifyConfig cc;
  if (cfg.tau_set) cc.spt_taus = {cfg.tau};
  TractabilityReport rep = classify(p, seq, grid, cc);
  if (cfg.notion == "pt") {
    // polynomial-criterion trajectory at the requested (tau, q)
    CriterionTrack t;
    t.name = "poly[tau,q]";
    t.d = grid;
    for (auto d : grid) t.value.push_back(poly_criterion_log(p, seq, cfg.tau, cfg.q, d));
    t.slope = top_decade_slope(t.d, t.value);
    t.rel_increment = last_decade_increment(t.d, t.value);
    rep.tracks.push_back(std::move(t));
  }
  if (cfg.notion != "all") {
    // keep only the requested notion's verdict; trajectories stay for context
    auto it = rep.verdicts.find(cfg.notion);
    if (it == rep.verdicts.end())
      throw invalid_argument_error("--notion must be one of weak|qpt|pt|spt|all");
    std::map<std::string, Verdict> kept{{it->first, it->second}};
    rep.verdicts = std::move(kept);
  }
  if (cfg.format == "json") {
    json out = rep.to_json();
    out["config"]["cli"] = cfg.to_json();
    emit(cfg, out.dump(2) + "\n");
  } else {
    emit(cfg, "#schema=tractlab.v1.scan-wrapper\n" + config_comment(cfg) + rep.to_csv());
  }
  return 0;
}

int run_verify_lemmas(const RunConfig& cfg) {
  std::string out = "#schema=tractlab.v1.verify-lemmas\n" + config_comment(cfg) +
                    "r,quantity,logValue,logBound,ratio\n";
  auto add = [&out](const LemmaCheck& c) {
    out += std::to_string(c.r) + "," + c.quantity + "," + format_g17(c.log_value) + "," +
           format_g17(c.log_bound) + "," + format_g17(c.ratio()) + "\n";
  };
  json jrows = json::array();
  auto addj = [&jrows](const LemmaCheck& c) {
    jrows.push_back({{"r", c.r},
                     {"quantity", c.quantity},
                     {"logValue", c.log_value},
                     {"logBound", c.log_bound},
                     {"ratio", c.ratio()}});
  };
  for (int r = 2; r <= cfg.rmax; ++r) {
    auto c = rank1_sq_error_l2(r);
    add(c); addj(c);
  }
  for (int r = 3; r <= cfg.rmax; ++r) {
    auto c = rank2_sq_error_l2(r);
    add(c); addj(c);
  }
  for (int r = 1; r <= std::min(4, cfg.rmax); ++r) {
    for (auto& c : check_lemma3(r, 10, cfg.lemma3_c)) {
      add(c); addj(c);
    }
  }
  if (cfg.format == "json") {
    emit(cfg, json{{"format", "tractlab.lemmas.v1"}, {"rows", jrows}, {"config", cfg.to_json()}}.dump(2) + "\n");
  } else {
    emit(cfg, out);
  }
  return 0;
}

int run_simulate(const RunConfig& cfg) {
  auto grid = parse_grid(cfg.grid);
  auto paths = sample_paths(cfg.r, grid, cfg.samples, cfg.seed);
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& ps : paths) rows.push_back(ps.values);
    emit(cfg, json{{"format", "tractlab.paths.v1"},
                   {"grid", grid},
                   {"samples", rows},
                   {"config", cfg.to_json()}}.dump(2) + "\n");
    return 0;
  }
  std::string out = "#schema=tractlab.v1.simulate\n" + config_comment(cfg) + "t";
  for (int s = 1; s <= cfg.samples; ++s) out += ",sample" + std::to_string(s);
  out += "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_g17(grid[i]);
    for (const auto& ps : paths) out += "," + format_g17(ps.values[i]);
    out += "\n";
  }
  emit(cfg, out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"spectra, complexity and tractability of integrated-process approximation"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--process", cfg.process)->check(CLI::IsMember({"euler", "wiener"}));
    sub->add_option("--seq", cfg.seq);
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out);
    sub->add_option("--seed", cfg.seed);
    sub->add_flag("--require-certified", cfg.require_certified);
  };

  CLI::App* eigen = app.add_subcommand("eigen", "univariate eigenvalues");
  eigen->add_option("--r", cfg.r);
  eigen->add_option("--count", cfg.count);
  eigen->add_option("--grid", cfg.quad_grid);
  eigen->add_option("--tolerance", cfg.tolerance);
  add_common(eigen);

  CLI::App* kernel = app.add_subcommand("kernel", "covariance kernel on a grid");
  kernel->add_option("--r", cfg.r);
  kernel->add_option("--grid", cfg.grid);
  add_common(kernel);

  CLI::App* complexity = app.add_subcommand("complexity", "information complexity n(eps, d)");
  complexity->add_option("--eps", cfg.eps);
  complexity->add_option("--d", cfg.d);
  complexity->add_option("--budget", cfg.budget);
  add_common(complexity);

  CLI::App* scan = app.add_subcommand("scan", "tractability criterion trajectories");
  scan->add_option("--dmax", cfg.dmax);
  scan->add_option("--notion", cfg.notion)
      ->check(CLI::IsMember({"all", "weak", "qpt", "pt", "spt"}));
  scan->add_option("--tau", cfg.tau)->trigger_on_parse()
      ->each([&cfg](const std::string&) { cfg.tau_set = true; });
  scan->add_option("--q", cfg.q);
  scan->add_option("--delta", cfg.delta);
  add_common(scan);

  CLI::App* lemmas = app.add_subcommand("verify-lemmas", "deterministic bound checks");
  lemmas->add_option("--rmax", cfg.rmax);
  lemmas->add_option("--lemma3-c", cfg.lemma3_c);
  add_common(lemmas);

  CLI::App* simulate = app.add_subcommand("simulate", "sample process paths");
  simulate->add_option("--r", cfg.r);
  simulate->add_option("--grid", cfg.grid);
  simulate->add_option("--samples", cfg.samples);
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eigen->parsed()) { cfg.subcommand = "eigen"; return run_eigen(cfg); }
    if (kernel->parsed()) { cfg.subcommand = "kernel"; return run_kernel(cfg); }
    if (complexity->parsed()) { cfg.subcommand = "complexity"; return run_complexity(cfg); }
    if (scan->parsed()) { cfg.subcommand = "scan"; return run_scan(cfg); }
    if (lemmas->parsed()) { cfg.subcommand = "verify-lemmas"; return run_verify_lemmas(cfg); }
    if (simulate->parsed()) { cfg.subcommand = "simulate"; return run_simulate(cfg); }
  } catch (const invalid_argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
