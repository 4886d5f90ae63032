#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "schedlab/instance.hpp"
#include "schedlab/report.hpp"
#include "schedlab/schedule.hpp"

namespace schedlab::io {

using nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Instance files.
// Deterministic: {"machines": m, "jobs": [{"id", "weight", "ptime"}]}
// Stochastic:    {"machines": m, "jobs": [{"id", "weight", "dist": {...}}]}
// ---------------------------------------------------------------------------

inline json to_json(const DeterministicInstance& inst) {
  json jobs = json::array();
  for (const Job& j : inst.jobs)
    jobs.push_back({{"id", j.id}, {"weight", j.weight}, {"ptime", j.ptime}});
  return {{"machines", inst.machines}, {"jobs", jobs}};
}

inline json to_json(const Distribution& d) {
  using Kind = Distribution::Kind;
  const auto& p = d.params();
  switch (d.kind()) {
    case Kind::PointMass:
      return {{"kind", "point"}, {"value", p[0]}};
    case Kind::Exponential:
      return {{"kind", "exponential"}, {"rate", p[0]}};
    case Kind::TwoPoint:
      return {{"kind", "two-point"}, {"low", p[0]},
              {"p_low", d.probabilities()[0]}, {"high", p[1]}};
    case Kind::Discrete:
      return {{"kind", "discrete"}, {"values", p},
              {"probs", d.probabilities()}};
    case Kind::Uniform:
      return {{"kind", "uniform"}, {"low", p[0]}, {"high", p[1]}};
  }
  throw std::logic_error("unreachable");
}

inline json to_json(const StochasticInstance& inst) {
  json jobs = json::array();
  for (const StochasticJob& j : inst.jobs)
    jobs.push_back(
        {{"id", j.id}, {"weight", j.weight}, {"dist", to_json(j.dist)}});
  return {{"machines", inst.machines}, {"jobs", jobs}};
}

inline Distribution distribution_from_json(const json& d) {
  const std::string kind = d.at("kind").get<std::string>();
  if (kind == "point")
    return Distribution::point_mass(d.at("value").get<double>());
  if (kind == "exponential")
    return Distribution::exponential(d.at("rate").get<double>());
  if (kind == "two-point")
    return Distribution::two_point(d.at("low").get<double>(),
                                   d.at("p_low").get<double>(),
                                   d.at("high").get<double>());
  if (kind == "discrete")
    return Distribution::discrete(d.at("values").get<std::vector<double>>(),
                                  d.at("probs").get<std::vector<double>>());
  if (kind == "uniform")
    return Distribution::uniform(d.at("low").get<double>(),
                                 d.at("high").get<double>());
  throw ParseError("unknown distribution kind: " + kind);
}

inline bool is_stochastic_instance(const json& doc) {
  const auto& jobs = doc.at("jobs");
  return !jobs.empty() && jobs.front().contains("dist");
}

inline DeterministicInstance deterministic_from_json(const json& doc) {
  try {
    DeterministicInstance inst;
    inst.machines = doc.at("machines").get<int>();
    for (const json& j : doc.at("jobs"))
      inst.jobs.push_back({j.at("id").get<std::string>(),
                           j.at("weight").get<double>(),
                           j.at("ptime").get<double>()});
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed deterministic instance: ") + e.what());
  }
}

inline StochasticInstance stochastic_from_json(const json& doc) {
  try {
    StochasticInstance inst;
    inst.machines = doc.at("machines").get<int>();
    for (const json& j : doc.at("jobs"))
      inst.jobs.push_back({j.at("id").get<std::string>(),
                           j.at("weight").get<double>(),
                           distribution_from_json(j.at("dist"))});
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed stochastic instance: ") + e.what());
  }
}

inline json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Output helpers.
// ---------------------------------------------------------------------------

/// Floats are printed with 9 significant digits throughout the CLI output.
inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

/// Writes via a temporary file in the same directory, then renames.
inline void write_file_atomic(const std::string& path,
                              const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

/// Schedule export: CSV rows (job_id, machine, start, completion).
inline std::string schedule_csv(const DeterministicInstance& inst,
                                const Schedule& s) {
  std::ostringstream out;
  out << "job_id,machine,start,completion\n";
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    out << inst.jobs[j].id << ',' << s.entries[j].machine << ','
        << format_value(s.entries[j].start) << ','
        << format_value(s.entries[j].completion) << '\n';
  return out.str();
}

inline json to_json(const bounds::BoundValue& b) {
  json out{{"formula", bounds::formula_id(b.formula)}, {"value", b.value}};
  if (b.m) out["m"] = b.m->is_infinite() ? json("inf") : json(b.m->value());
  if (b.delta) out["delta"] = *b.delta;
  if (b.alpha) out["alpha"] = *b.alpha;
  return out;
}

inline json to_json(const RatioReport& r) {
  return {{"algorithm_value", r.algorithm_value},
          {"oracle_value", r.oracle_value},
          {"ratio", r.ratio},
          {"bound", to_json(r.bound)},
          {"margin", r.margin}};
}

}  // namespace schedlab::io
