#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TRACTLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) res.out.append(buf.data(), n);
  int status = pclose(p);
  res.code = WEXITSTATUS(status);
  return res;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("eigen emits the euler closed-form values") {
  auto res = run_cli("eigen --process euler --r 0 --count 3");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("#schema=tractlab.v1.eigen") == 0);
  auto lines = data_lines(res.out);
  REQUIRE(lines.size() == 4);  // header + 3 rows
  CHECK(lines[0] == "j,lambda,logLambda");
  double l1 = std::stod(lines[1].substr(2));
  double l2 = std::stod(lines[2].substr(2));
  double l3 = std::stod(lines[3].substr(2));
  CHECK(l1 == doctest::Approx(0.40528473456935108578).epsilon(1e-12));
  CHECK(l2 == doctest::Approx(0.045031637174372343).epsilon(1e-12));
  CHECK(l3 == doctest::Approx(0.016211389382774043).epsilon(1e-12));
}

TEST_CASE("complexity answers the canonical query") {
  auto res = run_cli("complexity --process euler --seq const:0 --d 1 --eps 0.5 --format json");
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j.at("n").get<long long>() == 1);
  CHECK(j.at("certified").get<bool>());
  CHECK(j.at("config").at("eps").get<double>() == 0.5);
  CHECK(j.at("config").at("seq").get<std::string>() == "const:0");
}

TEST_CASE("json report config echo round-trips through a re-run") {
  auto first = run_cli("complexity --process euler --seq explicit:0,1 --d 2 --eps 0.4 --format json");
  REQUIRE(first.code == 0);
  json cfg = json::parse(first.out).at("config");
  std::string rebuilt = "complexity --process " + cfg.at("process").get<std::string>() +
                        " --seq " + cfg.at("seq").get<std::string>() + " --d " +
                        std::to_string(cfg.at("d").get<int>()) + " --eps " +
                        std::to_string(cfg.at("eps").get<double>()) + " --format json";
  auto second = run_cli(rebuilt);
  REQUIRE(second.code == 0);
  CHECK(json::parse(second.out).at("n") == json::parse(first.out).at("n"));
}

TEST_CASE("scan reports a bounded quasi trajectory for the wiener half-power rule") {
  auto res = run_cli("scan --process wiener --seq power-wiener:s=0.5 --notion qpt --dmax 10000 --format json");
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j.at("verdicts").at("qpt").get<std::string>() == "evidence-for");
  CHECK(j.at("config").at("cli").at("seq").get<std::string>() == "power-wiener:s=0.5");
}

TEST_CASE("scan pt notion carries a poly trajectory") {
  auto res = run_cli(
      "scan --process euler --seq power:c=1,s=1 --notion pt --tau 0.9 --dmax 2000 --format json");
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j.at("verdicts").at("pt").get<std::string>() == "evidence-for");
  bool has_poly = false;
  for (const auto& t : j.at("tracks"))
    if (t.at("name").get<std::string>() == "poly[tau,q]") has_poly = true;
  CHECK(has_poly);
}

TEST_CASE("deterministic output: identical config, identical bytes") {
  const std::string cmd = "simulate --r 2 --grid 12 --samples 4 --seed 7";
  auto a = run_cli(cmd);
  auto b = run_cli(cmd);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto sa = run_cli("scan --process euler --seq log-euler:a=1 --dmax 1000 --format json");
  auto sb = run_cli("scan --process euler --seq log-euler:a=1 --dmax 1000 --format json");
  CHECK(sa.out == sb.out);
}

TEST_CASE("atomic file output") {
  auto tmp = std::filesystem::temp_directory_path() / "tractlab_cli_out.csv";
  std::filesystem::remove(tmp);
  auto res = run_cli("kernel --process wiener --r 1 --grid 4 --out " + tmp.string());
  REQUIRE(res.code == 0);
  CHECK(res.out.empty());
  std::ifstream is(tmp);
  REQUIRE(is.good());
  std::string first;
  std::getline(is, first);
  CHECK(first == "#schema=tractlab.v1.kernel");
  CHECK(!std::filesystem::exists(tmp.string() + ".tmp"));
  std::filesystem::remove(tmp);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("complexity --no-such-flag 1").code == 2);
  CHECK(run_cli("eigen --process klingon").code == 2);
  // eps out of range surfaces as config error
  CHECK(run_cli("complexity --process euler --seq const:0 --d 1 --eps 1.5").code == 2);
  // certification failure with --require-certified
  auto rc = run_cli(
      "complexity --process euler --seq const:0 --d 1 --eps 0.2 --budget 2 --require-certified");
  CHECK(rc.code == 3);
}

TEST_CASE("verify-lemmas rows stay within their bounds") {
  auto res = run_cli("verify-lemmas --rmax 5 --format csv");
  REQUIRE(res.code == 0);
  auto lines = data_lines(res.out);
  REQUIRE(lines.size() > 10);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto last = lines[i].rfind(',');
    double ratio = std::stod(lines[i].substr(last + 1));
    CHECK(ratio <= 1.0 + 1e-10);
  }
}

TEST_SUITE_END();
