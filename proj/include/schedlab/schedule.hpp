#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "schedlab/instance.hpp"

namespace schedlab {

struct ScheduledJob {
  std::size_t job = 0;  // index into the instance's job list
  int machine = 0;
  double start = 0.0;
  double completion = 0.0;
};

/// Result of list scheduling: per-job times plus per-machine sequences.
/// Immutable once built; alpha-point queries are O(1) per job.
struct Schedule {
  std::vector<ScheduledJob> entries;           // indexed by job
  std::vector<std::vector<std::size_t>> machine_sequences;

  int machines() const { return static_cast<int>(machine_sequences.size()); }

  double start(std::size_t job) const { return entries.at(job).start; }
  double completion(std::size_t job) const { return entries.at(job).completion; }

  /// Time at which the job has received alpha * p units of processing.
  double alpha_point(std::size_t job, double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("alpha must lie in [0,1]");
    const ScheduledJob& e = entries.at(job);
    return e.start + alpha * (e.completion - e.start);
  }
};

/// Greedy list schedule: jobs in priority order, each on a currently
/// least-loaded machine (tie: lowest index), no deliberate idling.
inline Schedule list_schedule(const DeterministicInstance& inst,
                              const std::vector<std::size_t>& priority) {
  inst.validate();
  const std::size_t n = inst.jobs.size();
  if (priority.size() != n)
    throw std::invalid_argument("priority list is not a permutation");
  std::vector<char> seen(n, 0);
  for (std::size_t j : priority) {
    if (j >= n || seen[j])
      throw std::invalid_argument("priority list is not a permutation");
    seen[j] = 1;
  }

  Schedule s;
  s.entries.resize(n);
  s.machine_sequences.resize(inst.machines);
  std::vector<double> load(inst.machines, 0.0);
  for (std::size_t j : priority) {
    const int i = static_cast<int>(
        std::min_element(load.begin(), load.end()) - load.begin());
    s.entries[j] = {j, i, load[i], load[i] + inst.jobs[j].ptime};
    load[i] = s.entries[j].completion;
    s.machine_sequences[i].push_back(j);
  }
  return s;
}

inline Schedule wspt_schedule(const DeterministicInstance& inst) {
  return list_schedule(inst, smith_order(inst));
}

/// Sum over jobs of w_j * (S_j + alpha p_j).
inline double weighted_alpha_objective(const DeterministicInstance& inst,
                                       const Schedule& s, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0,1]");
  double total = 0.0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    total += inst.jobs[j].weight * s.alpha_point(j, alpha);
  return total;
}

inline double weighted_completion_objective(const DeterministicInstance& inst,
                                            const Schedule& s) {
  return weighted_alpha_objective(inst, s, 1.0);
}

inline std::vector<double> machine_loads(const DeterministicInstance& inst,
                                         const Schedule& s) {
  std::vector<double> loads(s.machines(), 0.0);
  for (const ScheduledJob& e : s.entries)
    loads[e.machine] += inst.jobs[e.job].ptime;
  return loads;
}

/// Half the sum of squared machine loads. For unit-Smith-ratio instances and
/// gapless schedules this equals sum p_j C_j(1/2).
inline double halfpoint_load_value(const DeterministicInstance& inst,
                                   const Schedule& s) {
  if (!inst.unit_ratio())
    throw std::invalid_argument("load identity requires w_j = p_j");
  for (const std::vector<std::size_t>& seq : s.machine_sequences) {
    double t = 0.0;
    for (std::size_t j : seq) {
      if (s.entries[j].start > t + 1e-9 * (1.0 + t))
        throw std::invalid_argument("load identity requires a gapless schedule");
      t = s.entries[j].completion;
    }
  }
  double value = 0.0;
  for (double load : machine_loads(inst, s)) value += load * load;
  return 0.5 * value;
}

}  // namespace schedlab
