// Command-line surface: closed-form bound tables, worst-case generators,
// instance evaluation against the exact oracles, and fuzzing.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schedlab/bounds.hpp"
#include "schedlab/curves.hpp"
#include "schedlab/exact.hpp"
#include "schedlab/fuzz.hpp"
#include "schedlab/io.hpp"
#include "schedlab/stochastic.hpp"
#include "schedlab/worst_case.hpp"

namespace {

using namespace schedlab;
using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(s);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

// "0,0.5,1" or a linspace "lo:hi:count".
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> grid;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw io::ParseError("grid must be lo:hi:count");
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    if (count < 1) throw io::ParseError("grid count must be >= 1");
    for (int i = 0; i < count; ++i)
      grid.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    return grid;
  }
  for (const std::string& part : split(s, ',')) grid.push_back(std::stod(part));
  return grid;
}

bounds::MachineCount parse_machines(const std::string& s) {
  if (s == "inf") return bounds::MachineCount::infinite();
  return bounds::MachineCount::finite(std::stoi(s));
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    io::write_file_atomic(out_path, content);
}

int cmd_bounds(const std::string& formulas, const std::string& m_list,
               const std::string& delta_grid, const std::string& alpha_grid,
               const std::string& out, const std::string& format) {
  curves::CurveRequest req;
  for (const std::string& id : split(formulas, ',')) {
    const auto f = bounds::formula_from_id(id);
    if (!f) throw io::ParseError("unknown formula id: " + id);
    req.formulas.push_back(*f);
  }
  for (const std::string& m : split(m_list, ','))
    if (!m.empty()) req.m_values.push_back(parse_machines(m));
  if (!delta_grid.empty()) req.delta_grid = parse_grid(delta_grid);
  if (!alpha_grid.empty()) req.alpha_grid = parse_grid(alpha_grid);

  const auto rows = curves::bounds_table(req);
  if (format == "json") {
    json doc = json::array();
    for (const auto& row : rows) doc.push_back(io::to_json(row));
    emit(out, doc.dump(2) + "\n");
  } else {
    emit(out, curves::bounds_csv(rows));
  }
  return 0;
}

int cmd_evaluate(const std::string& path, double alpha,
                 const std::string& oracle, std::size_t samples,
                 std::uint64_t seed, const std::string& out,
                 const std::string& schedule_out) {
  const json doc = io::parse_file(path);
  if (io::is_stochastic_instance(doc)) {
    const StochasticInstance inst = io::stochastic_from_json(doc);
    json report;
    report["delta"] = delta(inst);
    report["samples"] = samples;
    report["seed"] = seed;
    const auto est = stochastic::monte_carlo_wsept(inst, samples, seed, alpha);
    report["estimate"] = {{"mean", est.mean}, {"half_width", est.half_width}};
    if (oracle == "exact") {
      const RatioReport r =
          stochastic::empirical_ratio(inst, stochastic::RatioMode::MonteCarlo,
                                      samples, seed);
      report["ratio_report"] = io::to_json(r);
    }
    emit(out, report.dump(2) + "\n");
    return 0;
  }

  const DeterministicInstance inst = io::deterministic_from_json(doc);
  const Schedule wspt = wspt_schedule(inst);
  if (!schedule_out.empty())
    io::write_file_atomic(schedule_out, io::schedule_csv(inst, wspt));

  json report;
  report["wspt_value"] = weighted_alpha_objective(inst, wspt, alpha);
  if (oracle == "exact") {
    report["ratio_report"] = io::to_json(ratio(inst, alpha, TieMode::Given));
  } else if (oracle == "structural") {
    const auto cls = worst_case::classify(inst);
    const double opt = worst_case::structural_optimum(inst, cls, alpha);
    RatioReport r;
    r.algorithm_value = weighted_alpha_objective(inst, wspt, alpha);
    r.oracle_value = opt;
    r.ratio = r.algorithm_value / opt;
    r.bound = bounds::evaluate(bounds::Formula::WsptM,
                               bounds::MachineCount::finite(inst.machines),
                               std::nullopt, std::nullopt);
    r.margin = r.bound.value - r.ratio;
    report["ratio_report"] = io::to_json(r);
  }
  emit(out, report.dump(2) + "\n");
  return 0;
}

int cmd_fuzz(std::size_t count, int n_max, int m, double alpha,
             std::uint64_t seed, const std::string& out) {
  const fuzz::FuzzResult result = fuzz::run(count, n_max, m, alpha, seed);
  json report{{"count", result.count},
              {"max_ratio", result.max_ratio},
              {"bound", result.bound},
              {"violations", result.violations}};
  emit(out, report.dump(2) + "\n");
  return result.violations == 0 ? 0 : 1;
}

int cmd_worstcase(const std::string& family, int m, double alpha, double eps,
                  const std::string& out) {
  DeterministicInstance inst;
  if (family == "kk-alpha")
    inst = worst_case::kk_alpha_instance(m, alpha, eps);
  else if (family == "fixed-m")
    inst = worst_case::fixed_m_worst_instance(m, eps);
  else
    throw io::ParseError("unknown family: " + family);
  emit(out, io::to_json(inst).dump(2) + "\n");
  return 0;
}

int cmd_stochastic(const std::string& path, std::size_t samples,
                   std::uint64_t seed, double alpha, const std::string& oracle,
                   const std::string& out) {
  const StochasticInstance inst =
      io::stochastic_from_json(io::parse_file(path));
  json report;
  report["instance"] = {{"machines", inst.machines},
                        {"jobs", inst.jobs.size()}};
  report["delta"] = delta(inst);
  report["samples"] = samples;
  report["seed"] = seed;
  const auto est = stochastic::monte_carlo_wsept(inst, samples, seed, alpha);
  report["estimate"] = {{"mean", est.mean}, {"half_width", est.half_width}};
  if (inst.all_discrete()) {
    report["exact_wsept"] = stochastic::exact_wsept_value(inst, alpha);
  }
  if (oracle == "mdp") {
    const RatioReport r =
        stochastic::empirical_ratio(inst, stochastic::RatioMode::Exact);
    report["ratio_report"] = io::to_json(r);
  }
  emit(out, report.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel-machine WSPT/WSEPT scheduling laboratory"};
  app.require_subcommand(1);

  std::string out, format = "csv", schedule_out;
  std::string formulas = "msu,wsept-red,wsept-orange,wsept-green";
  std::string m_list, delta_grid = "0:1.5:61", alpha_grid;
  auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form bound tables");
  bounds_cmd->add_option("--formulas", formulas, "Comma-separated formula ids");
  bounds_cmd->add_option("--m", m_list, "Machine counts (int or inf, comma list)");
  bounds_cmd->add_option("--delta-grid", delta_grid, "Delta grid (list or lo:hi:count)");
  bounds_cmd->add_option("--alpha", alpha_grid, "Alpha grid (list or lo:hi:count)");
  bounds_cmd->add_option("--out", out, "Output path (default stdout)");
  bounds_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  int m_max = 25;
  auto* curve_cmd = app.add_subcommand("wspt-curve", "Fixed-m tight ratio table");
  curve_cmd->add_option("--m-max", m_max);
  curve_cmd->add_option("--out", out);

  auto* surface_cmd = app.add_subcommand("surface", "Per-k worst-case ratio table");
  surface_cmd->add_option("--m-max", m_max);
  surface_cmd->add_option("--out", out);

  std::string instance_path, oracle = "none";
  double alpha = 1.0;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate an instance file");
  eval_cmd->add_option("instance", instance_path)->required();
  eval_cmd->add_option("--alpha", alpha);
  eval_cmd->add_option("--oracle", oracle)
      ->check(CLI::IsMember({"exact", "structural", "none"}));
  eval_cmd->add_option("--samples", samples);
  eval_cmd->add_option("--seed", seed);
  eval_cmd->add_option("--out", out);
  eval_cmd->add_option("--schedule-out", schedule_out, "WSPT schedule CSV path");

  std::size_t count = 100;
  int n_max = 8, m = 2;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random-instance bound checks");
  fuzz_cmd->add_option("--count", count);
  fuzz_cmd->add_option("--n-max", n_max);
  fuzz_cmd->add_option("--m", m);
  fuzz_cmd->add_option("--alpha", alpha);
  fuzz_cmd->add_option("--seed", seed);
  fuzz_cmd->add_option("--out", out);

  std::string family = "fixed-m";
  double eps = 0.01;
  auto* worst_cmd = app.add_subcommand("worstcase", "Emit a tightness instance");
  worst_cmd->add_option("--family", family)
      ->check(CLI::IsMember({"kk-alpha", "fixed-m"}));
  worst_cmd->add_option("--m", m);
  worst_cmd->add_option("--alpha", alpha);
  worst_cmd->add_option("--eps", eps);
  worst_cmd->add_option("--out", out);

  auto* stoch_cmd = app.add_subcommand("stochastic", "Monte Carlo / MDP driver");
  stoch_cmd->add_option("instance", instance_path)->required();
  stoch_cmd->add_option("--samples", samples);
  stoch_cmd->add_option("--seed", seed);
  stoch_cmd->add_option("--alpha", alpha);
  stoch_cmd->add_option("--oracle", oracle)
      ->check(CLI::IsMember({"mdp", "none"}));
  stoch_cmd->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds_cmd->parsed())
      return cmd_bounds(formulas, m_list, delta_grid, alpha_grid, out, format);
    if (curve_cmd->parsed()) {
      emit(out, curves::wspt_curve_csv(curves::wspt_curve(m_max)));
      return 0;
    }
    if (surface_cmd->parsed()) {
      emit(out, curves::surface_csv(curves::surface(m_max)));
      return 0;
    }
    if (eval_cmd->parsed())
      return cmd_evaluate(instance_path, alpha, oracle, samples, seed, out,
                          schedule_out);
    if (fuzz_cmd->parsed())
      return cmd_fuzz(count, n_max, m, alpha, seed, out);
    if (worst_cmd->parsed())
      return cmd_worstcase(family, m, alpha, eps, out);
    if (stoch_cmd->parsed())
      return cmd_stochastic(instance_path, samples, seed, alpha, oracle, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
