#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "schedlab/distribution.hpp"

namespace schedlab {

struct Job {
  std::string id;
  double weight = 0.0;
  double ptime = 0.0;
};

/// Jobs plus machine count for P||sum w_j C_j. The input order of the job
/// list doubles as the tie-break order for equal Smith ratios.
struct DeterministicInstance {
  std::vector<Job> jobs;
  int machines = 1;

  void validate() const {
    if (machines < 1) throw std::invalid_argument("machine count must be >= 1");
    if (jobs.empty()) throw std::invalid_argument("instance needs at least one job");
    for (const Job& j : jobs)
      if (!(j.weight > 0.0) || !(j.ptime > 0.0))
        throw std::invalid_argument("job weights and processing times must be positive");
  }

  bool unit_ratio() const {
    return std::all_of(jobs.begin(), jobs.end(),
                       [](const Job& j) { return j.weight == j.ptime; });
  }

  double total_ptime() const {
    return std::accumulate(jobs.begin(), jobs.end(), 0.0,
                           [](double a, const Job& j) { return a + j.ptime; });
  }
};

struct StochasticJob {
  std::string id;
  double weight = 0.0;
  Distribution dist;
};

struct StochasticInstance {
  std::vector<StochasticJob> jobs;
  int machines = 1;

  void validate() const {
    if (machines < 1) throw std::invalid_argument("machine count must be >= 1");
    if (jobs.empty()) throw std::invalid_argument("instance needs at least one job");
    for (const StochasticJob& j : jobs)
      if (!(j.weight > 0.0))
        throw std::invalid_argument("job weights must be positive");
  }

  bool all_discrete() const {
    return std::all_of(jobs.begin(), jobs.end(), [](const StochasticJob& j) {
      return j.dist.is_discrete();
    });
  }
};

/// Max squared coefficient of variation over the jobs (the Delta parameter).
inline double delta(const StochasticInstance& inst) {
  inst.validate();
  double d = 0.0;
  for (const StochasticJob& j : inst.jobs) d = std::max(d, j.dist.scv());
  return d;
}

namespace detail {

// Ratio comparison w1/p1 > w2/p2 by cross multiplication, avoiding the
// rounding of two divisions when the products are exact.
inline bool smith_greater(double w1, double p1, double w2, double p2) {
  return w1 * p2 > w2 * p1;
}

inline std::vector<std::size_t> stable_ratio_order(
    const std::vector<double>& w, const std::vector<double>& p) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return smith_greater(w[a], p[a], w[b], p[b]);
                   });
  return order;
}

}  // namespace detail

/// Indices of the jobs sorted by non-increasing w/p, ties kept in input order.
inline std::vector<std::size_t> smith_order(const DeterministicInstance& inst) {
  inst.validate();
  std::vector<double> w, p;
  w.reserve(inst.jobs.size());
  p.reserve(inst.jobs.size());
  for (const Job& j : inst.jobs) {
    w.push_back(j.weight);
    p.push_back(j.ptime);
  }
  return detail::stable_ratio_order(w, p);
}

/// Same ordering with E[p] in place of p.
inline std::vector<std::size_t> wsept_order(const StochasticInstance& inst) {
  inst.validate();
  std::vector<double> w, p;
  w.reserve(inst.jobs.size());
  p.reserve(inst.jobs.size());
  for (const StochasticJob& j : inst.jobs) {
    w.push_back(j.weight);
    p.push_back(j.dist.mean());
  }
  return detail::stable_ratio_order(w, p);
}

namespace detail {

// splitmix64; used to derive independent per-job and per-sample streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x51ed2701a4fe1a1bULL));
}

}  // namespace detail

/// Draw one realization vector; weights and job order are preserved.
/// Each job uses its own generator derived from (seed, job index), so the
/// realization is reproducible and jobs are independent.
inline DeterministicInstance sample_realization(const StochasticInstance& inst,
                                                std::uint64_t seed) {
  inst.validate();
  DeterministicInstance out;
  out.machines = inst.machines;
  out.jobs.reserve(inst.jobs.size());
  for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
    std::mt19937_64 rng(detail::derive_seed(seed, i));
    out.jobs.push_back(
        {inst.jobs[i].id, inst.jobs[i].weight, inst.jobs[i].dist.sample(rng)});
  }
  return out;
}

/// The deterministic instance on the expected processing times.
inline DeterministicInstance expected_instance(const StochasticInstance& inst) {
  inst.validate();
  DeterministicInstance out;
  out.machines = inst.machines;
  for (const StochasticJob& j : inst.jobs)
    out.jobs.push_back({j.id, j.weight, j.dist.mean()});
  return out;
}

}  // namespace schedlab
