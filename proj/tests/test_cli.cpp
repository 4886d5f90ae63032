#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SCHEDLAB_CLI_PATH) + " " + args +
                          " > cli_stdout.txt 2> cli_stderr.txt";
  const int status = std::system(cmd.c_str());
#ifdef _WIN32
  return status;
#else
  return WEXITSTATUS(status);
#endif
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(slurp("cli_stdout.txt").find("bounds") != std::string::npos);
}

TEST_CASE("missing subcommand and unknown flags are usage errors") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("bounds --no-such-flag") == 2);
  CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("bounds emits csv to stdout and to a file") {
  REQUIRE(run_cli("bounds --formulas kk") == 0);
  const std::string out = slurp("cli_stdout.txt");
  CHECK(out.rfind("formula,m,delta,alpha,value\n", 0) == 0);
  CHECK(out.find("kk,,,,1.20710678") != std::string::npos);

  REQUIRE(run_cli("bounds --formulas msu --m 2,inf --delta-grid 0,1 "
                  "--out bounds_out.csv") == 0);
  const std::string file = slurp("bounds_out.csv");
  CHECK(file.find("msu,2,0,,1.25") != std::string::npos);
  CHECK(file.find("msu,inf,1,,2") != std::string::npos);
}

TEST_CASE("bounds json format") {
  REQUIRE(run_cli("bounds --formulas kk-alpha --alpha 0.5,1 --format json") == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_stdout.txt"));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["formula"] == "kk-alpha");
  CHECK(doc[0]["alpha"] == 0.5);
  CHECK(doc[0]["value"].get<double>() == Catch::Approx(4.0 / 3.0));
}

TEST_CASE("bounds with an unknown formula fails") {
  CHECK(run_cli("bounds --formulas nope") == 2);
  CHECK(!slurp("cli_stderr.txt").empty());
}

TEST_CASE("bounds with a missing required grid fails") {
  CHECK(run_cli("bounds --formulas msu") == 2);  // msu needs --m
}

TEST_CASE("wspt-curve and surface tables") {
  REQUIRE(run_cli("wspt-curve --m-max 5 --out curve.csv") == 0);
  const std::string curve = slurp("curve.csv");
  CHECK(curve.rfind("m,k_m,x_m,wspt_m,kk\n", 0) == 0);
  CHECK(curve.find("\n2,1,") != std::string::npos);
  CHECK(curve.find("1.1830127") != std::string::npos);

  REQUIRE(run_cli("surface --m-max 4") == 0);
  const std::string surf = slurp("cli_stdout.txt");
  CHECK(surf.rfind("m,k,lambda\n", 0) == 0);
}

TEST_CASE("evaluate a deterministic instance with the exact oracle") {
  write("det.json", R"({"machines": 2, "jobs": [
    {"id": "a", "weight": 3, "ptime": 3},
    {"id": "b", "weight": 3, "ptime": 3},
    {"id": "c", "weight": 2, "ptime": 2}]})");
  REQUIRE(run_cli("evaluate det.json --oracle exact "
                  "--schedule-out sched.csv") == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_stdout.txt"));
  CHECK(doc["wspt_value"].get<double>() == Catch::Approx(28.0));
  CHECK(doc["ratio_report"]["oracle_value"].get<double>() ==
        Catch::Approx(28.0));
  CHECK(doc["ratio_report"]["ratio"].get<double>() == Catch::Approx(1.0));
  CHECK(doc["ratio_report"]["bound"]["formula"] == "wspt-m");

  const std::string csv = slurp("sched.csv");
  CHECK(csv.rfind("job_id,machine,start,completion\n", 0) == 0);
  CHECK(csv.find("a,0,0,3") != std::string::npos);
  CHECK(csv.find("c,0,3,5") != std::string::npos);
}

TEST_CASE("evaluate with the structural oracle") {
  write("unit.json", R"({"machines": 2, "jobs": [
    {"id": "s1", "weight": 0.5, "ptime": 0.5},
    {"id": "s2", "weight": 0.5, "ptime": 0.5},
    {"id": "s3", "weight": 0.5, "ptime": 0.5},
    {"id": "s4", "weight": 0.5, "ptime": 0.5},
    {"id": "l1", "weight": 2.8, "ptime": 2.8}]})");
  REQUIRE(run_cli("evaluate unit.json --oracle structural") == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_stdout.txt"));
  CHECK(doc["ratio_report"]["ratio"].get<double>() >= 1.0);
}

TEST_CASE("evaluate rejects malformed files with exit code 2") {
  write("broken.json", "{ not json");
  CHECK(run_cli("evaluate broken.json") == 2);
  CHECK(slurp("cli_stderr.txt").find("error:") != std::string::npos);

  write("badfield.json", R"({"machines": 2, "jobs": [{"id": "a"}]})");
  CHECK(run_cli("evaluate badfield.json") == 2);
  CHECK(run_cli("evaluate does_not_exist.json") == 2);

  write("badvalue.json",
        R"({"machines": 0, "jobs": [{"id": "a", "weight": 1, "ptime": 1}]})");
  CHECK(run_cli("evaluate badvalue.json") == 2);
}

TEST_CASE("evaluate a stochastic instance") {
  write("stoch.json", R"({"machines": 2, "jobs": [
    {"id": "a", "weight": 2, "dist": {"kind": "two-point",
      "low": 1, "p_low": 0.5, "high": 3}},
    {"id": "b", "weight": 1, "dist": {"kind": "point", "value": 2}}]})");
  REQUIRE(run_cli("evaluate stoch.json --samples 200 --seed 4") == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_stdout.txt"));
  CHECK(doc["samples"] == 200);
  CHECK(doc["delta"].get<double>() == Catch::Approx(0.25));
  CHECK(doc["estimate"]["mean"].get<double>() > 0.0);
}

TEST_CASE("stochastic subcommand with the mdp oracle") {
  REQUIRE(run_cli("stochastic stoch.json --samples 100 --seed 4 "
                  "--oracle mdp") == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_stdout.txt"));
  CHECK(doc["ratio_report"]["ratio"].get<double>() >= 1.0 - 1e-9);
  CHECK(doc["ratio_report"]["bound"]["formula"] == "composite");
  CHECK(doc.contains("exact_wsept"));
}

TEST_CASE("stochastic subcommand rejects a deterministic instance") {
  CHECK(run_cli("stochastic det.json") == 2);
}

TEST_CASE("worstcase families round-trip through evaluate") {
  REQUIRE(run_cli("worstcase --family fixed-m --m 2 --eps 0.25 "
                  "--out family.json") == 0);
  const auto doc = nlohmann::json::parse(slurp("family.json"));
  CHECK(doc["machines"] == 2);
  CHECK(doc["jobs"].size() == 9);

  REQUIRE(run_cli("evaluate family.json --oracle exact") == 0);
  const auto eval = nlohmann::json::parse(slurp("cli_stdout.txt"));
  const double ratio = eval["ratio_report"]["ratio"].get<double>();
  CHECK(ratio > 1.05);
  CHECK(ratio <= eval["ratio_report"]["bound"]["value"].get<double>() + 1e-9);

  REQUIRE(run_cli("worstcase --family kk-alpha --m 3 --alpha 0.5 "
                  "--eps 0.5") == 0);
  const auto kkdoc = nlohmann::json::parse(slurp("cli_stdout.txt"));
  CHECK(kkdoc["machines"] == 3);
  CHECK(run_cli("worstcase --family fixed-m --m 2 --eps 0.3") == 2);
}

TEST_CASE("fuzz passes on clean settings and reports its bound") {
  REQUIRE(run_cli("fuzz --count 40 --n-max 6 --m 2 --seed 11") == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_stdout.txt"));
  CHECK(doc["count"] == 40);
  CHECK(doc["violations"] == 0);
  CHECK(doc["max_ratio"].get<double>() <= doc["bound"].get<double>() + 1e-9);
}
