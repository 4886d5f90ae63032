#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "schedlab/bounds.hpp"
#include "schedlab/exact.hpp"
#include "schedlab/instance.hpp"
#include "schedlab/report.hpp"
#include "schedlab/schedule.hpp"

namespace schedlab::stochastic {

/// One WSEPT rollout on a sampled realization.
struct PolicyRunResult {
  std::uint64_t seed = 0;
  DeterministicInstance realization;
  Schedule schedule;

  double objective() const {
    return weighted_completion_objective(realization, schedule);
  }
  double alpha_objective(double alpha) const {
    return weighted_alpha_objective(realization, schedule, alpha);
  }
};

inline PolicyRunResult wsept_run(const StochasticInstance& inst,
                                 std::uint64_t seed) {
  const std::vector<std::size_t> priority = wsept_order(inst);
  PolicyRunResult run;
  run.seed = seed;
  run.realization = sample_realization(inst, seed);
  run.schedule = list_schedule(run.realization, priority);
  return run;
}

struct EstimateCI {
  double mean = 0.0;
  double half_width = 0.0;  // 1.96 * stddev / sqrt(samples)
  std::size_t samples = 0;
};

namespace detail {

// Fixed-order pairwise summation, deterministic regardless of how samples
// were produced.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                           std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

// Upper normal quantile z with P[Z > z] = q, by Newton iteration on erfc.
inline double normal_upper_quantile(double q) {
  double z = 2.0;
  for (int it = 0; it < 60; ++it) {
    const double tail = 0.5 * std::erfc(z / std::sqrt(2.0));
    const double density =
        std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846);
    const double step = (tail - q) / density;
    z += step;
    if (std::abs(step) < 1e-12) break;
  }
  return z;
}

inline EstimateCI estimate(const std::vector<double>& samples) {
  EstimateCI est;
  est.samples = samples.size();
  est.mean = pairwise_sum(samples, 0, samples.size()) / samples.size();
  if (samples.size() >= 2) {
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double d = samples[i] - est.mean;
      sq[i] = d * d;
    }
    const double var =
        pairwise_sum(sq, 0, sq.size()) / (samples.size() - 1);
    est.half_width = 1.96 * std::sqrt(var / samples.size());
  }
  return est;
}

}  // namespace detail

/// Sample mean of the weighted sum of alpha-points under WSEPT, with a 95%
/// normal confidence interval. Sample i uses the seed derived from (seed, i).
inline EstimateCI monte_carlo_wsept(const StochasticInstance& inst,
                                    std::size_t samples, std::uint64_t seed,
                                    double alpha = 1.0) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  const std::vector<std::size_t> priority = wsept_order(inst);
  std::vector<double> values(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const DeterministicInstance real =
        sample_realization(inst, schedlab::detail::derive_seed(seed, i));
    values[i] = weighted_alpha_objective(real, list_schedule(real, priority),
                                         alpha);
  }
  return detail::estimate(values);
}

/// One row of the variance-identity report: the sample mean of
/// p_j C_j(alpha) - E[p_j] C_j(alpha) against its closed-form target.
struct IdentityCheck {
  std::string job_id;
  double alpha = 1.0;
  double estimate = 0.0;     // mean of p C(alpha) - E[p] C(alpha)
  double target = 0.0;       // alpha * Var[p]
  double half_width = 0.0;
  bool ok = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_ok = true;
};

/// Verifies E[p_j C_j(alpha)] = E[p_j] E[C_j(alpha)] + alpha Var[p_j] under
/// the WSEPT policy, per job, within the sampled confidence interval. The
/// alpha = 1 rows are the completion-time form of the identity.
inline IdentityReport variance_identity_check(const StochasticInstance& inst,
                                              std::size_t samples,
                                              std::uint64_t seed,
                                              double alpha) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  const std::vector<std::size_t> priority = wsept_order(inst);
  const std::size_t n = inst.jobs.size();
  std::vector<std::vector<double>> centered(n, std::vector<double>(samples));
  for (std::size_t i = 0; i < samples; ++i) {
    const DeterministicInstance real =
        sample_realization(inst, schedlab::detail::derive_seed(seed, i));
    const Schedule s = list_schedule(real, priority);
    for (std::size_t j = 0; j < n; ++j) {
      const double c = s.alpha_point(j, alpha);
      centered[j][i] = (real.jobs[j].ptime - inst.jobs[j].dist.mean()) * c;
    }
  }
  IdentityReport report;
  // Bonferroni adjustment: the n per-job checks form one joint 95% test.
  const double joint_z = detail::normal_upper_quantile(0.025 / n);
  for (std::size_t j = 0; j < n; ++j) {
    const EstimateCI est = detail::estimate(centered[j]);
    IdentityCheck check;
    check.job_id = inst.jobs[j].id;
    check.alpha = alpha;
    check.estimate = est.mean;
    check.target = alpha * inst.jobs[j].dist.variance();
    check.half_width = est.half_width;
    check.ok = std::abs(check.estimate - check.target) <=
               (joint_z / 1.96) * check.half_width +
                   1e-9 * (1.0 + std::abs(check.target));
    report.all_ok = report.all_ok && check.ok;
    report.checks.push_back(check);
  }
  return report;
}

struct MdpCaps {
  std::size_t max_jobs = 6;
  int max_machines = 3;
  long max_support = 8;       // after integer scaling
  bool allow_idling = true;   // restricting to greedy policies is a test hook
};

struct MdpResult {
  double value = 0.0;
  std::uint64_t states_explored = 0;
};

namespace detail {

// Integer-scaled discrete law: probs[v] over support values 1..probs.size().
struct ScaledLaw {
  std::vector<double> probs;      // indexed by value-1
  std::vector<double> tail;       // tail[e] = P[p > e]

  double hazard(long elapsed) const {
    // P[p = elapsed+1 | p > elapsed]
    if (tail[elapsed] <= 0.0) return 1.0;
    return std::clamp(probs[elapsed] / tail[elapsed], 0.0, 1.0);
  }
};

inline long integer_scale(const StochasticInstance& inst) {
  for (long scale = 1; scale <= 10000; ++scale) {
    bool ok = true;
    for (const StochasticJob& j : inst.jobs) {
      for (double v : j.dist.support()) {
        const double scaled = v * scale;
        if (std::abs(scaled - std::round(scaled)) > 1e-9) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) return scale;
  }
  throw std::invalid_argument(
      "supports are not rationals with a small common denominator");
}

class MdpSolver {
 public:
  MdpSolver(const StochasticInstance& inst, const MdpCaps& caps)
      : inst_(inst), caps_(caps) {
    scale_ = integer_scale(inst);
    long max_value = 0;
    for (const StochasticJob& j : inst.jobs) {
      ScaledLaw law;
      long job_max = 0;
      for (double v : j.dist.support())
        job_max = std::max(job_max, std::lround(v * scale_));
      if (job_max > caps_.max_support)
        throw SizeError("scaled support exceeds the MDP cap");
      law.probs.assign(job_max, 0.0);
      const auto& support = j.dist.support();
      const auto& probs = j.dist.probabilities();
      for (std::size_t i = 0; i < support.size(); ++i)
        law.probs[std::lround(support[i] * scale_) - 1] += probs[i];
      law.tail.assign(job_max, 0.0);
      double acc = 1.0;
      for (long e = 0; e < job_max; ++e) {
        law.tail[e] = acc;
        acc -= law.probs[e];
      }
      laws_.push_back(std::move(law));
      weights_.push_back(j.weight);
      max_value = std::max(max_value, job_max);
    }
    radix_ = static_cast<std::uint64_t>(max_value) + 2;
  }

  MdpResult solve() {
    std::vector<long> status(inst_.jobs.size(), kPending);
    MdpResult result;
    result.value = value(status) / scale_;
    result.states_explored = memo_.size();
    return result;
  }

 private:
  static constexpr long kPending = -2;
  static constexpr long kDone = -1;

  std::uint64_t encode(const std::vector<long>& status) const {
    std::uint64_t key = 0;
    for (long s : status) key = key * radix_ + static_cast<std::uint64_t>(s + 2);
    return key;
  }

  // Expected remaining cost, counting one unit of every incomplete job's
  // weight per time step.
  double value(std::vector<long>& status) {
    double incomplete_weight = 0.0;
    std::vector<std::size_t> pending, running;
    for (std::size_t j = 0; j < status.size(); ++j) {
      if (status[j] == kDone) continue;
      incomplete_weight += weights_[j];
      (status[j] == kPending ? pending : running).push_back(j);
    }
    if (pending.empty() && running.empty()) return 0.0;

    const std::uint64_t key = encode(status);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::size_t free_machines =
        static_cast<std::size_t>(inst_.machines) - running.size();
    const std::size_t max_start = std::min(free_machines, pending.size());
    double best = std::numeric_limits<double>::infinity();
    // Choose which pending jobs to start; the empty choice is deliberate
    // idling and is only admissible when something is already running.
    for (std::uint64_t mask = 0; mask < (1ULL << pending.size()); ++mask) {
      const std::size_t started =
          static_cast<std::size_t>(__builtin_popcountll(mask));
      if (started > max_start) continue;
      if (started == 0 && running.empty()) continue;
      if (!caps_.allow_idling && started < max_start) continue;

      std::vector<std::size_t> active = running;
      for (std::size_t i = 0; i < pending.size(); ++i)
        if (mask & (1ULL << i)) {
          status[pending[i]] = 0;
          active.push_back(pending[i]);
        }

      best = std::min(best, incomplete_weight + step(status, active, 0, 1.0));

      for (std::size_t i = 0; i < pending.size(); ++i)
        if (mask & (1ULL << i)) status[pending[i]] = kPending;
    }
    memo_.emplace(key, best);
    return best;
  }

  // Branches over which active jobs finish during the current unit step.
  double step(std::vector<long>& status, const std::vector<std::size_t>& active,
              std::size_t i, double prob) {
    if (prob == 0.0) return 0.0;
    if (i == active.size()) return prob * value(status);
    const std::size_t j = active[i];
    const long elapsed = status[j];
    const double h = laws_[j].hazard(elapsed);
    double expectation = 0.0;
    if (h > 0.0) {
      status[j] = kDone;
      expectation += step(status, active, i + 1, prob * h);
    }
    if (h < 1.0) {
      status[j] = elapsed + 1;
      expectation += step(status, active, i + 1, prob * (1.0 - h));
    }
    status[j] = elapsed;
    return expectation;
  }

  const StochasticInstance& inst_;
  MdpCaps caps_;
  long scale_ = 1;
  std::uint64_t radix_ = 2;
  std::vector<ScaledLaw> laws_;
  std::vector<double> weights_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace detail

/// Exact expected weighted completion time of an optimal non-anticipative
/// policy, by backward recursion over the integer-grid state graph.
inline MdpResult mdp_optimal(const StochasticInstance& inst,
                             const MdpCaps& caps = {}) {
  inst.validate();
  if (!inst.all_discrete())
    throw std::invalid_argument("the policy oracle requires finite-support laws");
  if (inst.jobs.size() > caps.max_jobs)
    throw SizeError("instance exceeds the MDP job cap");
  if (inst.machines > caps.max_machines)
    throw SizeError("instance exceeds the MDP machine cap");
  return detail::MdpSolver(inst, caps).solve();
}

/// Exact E[sum w_j C_j(alpha)] under WSEPT by enumerating all realization
/// vectors of a finite-support instance.
inline double exact_wsept_value(const StochasticInstance& inst,
                                double alpha = 1.0,
                                std::uint64_t max_realizations = 1000000) {
  inst.validate();
  if (!inst.all_discrete())
    throw std::invalid_argument("exact evaluation requires finite-support laws");
  std::uint64_t count = 1;
  for (const StochasticJob& j : inst.jobs) {
    count *= j.dist.support().size();
    if (count > max_realizations)
      throw SizeError("realization count exceeds the enumeration cap");
  }
  const std::vector<std::size_t> priority = wsept_order(inst);
  DeterministicInstance real = expected_instance(inst);

  double total = 0.0;
  std::vector<std::size_t> choice(inst.jobs.size(), 0);
  const auto recurse = [&](auto&& self, std::size_t j, double prob) -> void {
    if (prob == 0.0) return;
    if (j == inst.jobs.size()) {
      total += prob * weighted_alpha_objective(
                          real, list_schedule(real, priority), alpha);
      return;
    }
    const auto& support = inst.jobs[j].dist.support();
    const auto& probs = inst.jobs[j].dist.probabilities();
    for (std::size_t v = 0; v < support.size(); ++v) {
      real.jobs[j].ptime = support[v];
      self(self, j + 1, prob * probs[v]);
    }
  };
  recurse(recurse, 0, 1.0);
  return total;
}

enum class RatioMode { Exact, MonteCarlo };

/// E[WSEPT]/E[optimal policy] against the composite closed-form bound.
inline RatioReport empirical_ratio(const StochasticInstance& inst,
                                   RatioMode mode,
                                   std::size_t samples = 10000,
                                   std::uint64_t seed = 1,
                                   const MdpCaps& caps = {}) {
  const MdpResult opt = mdp_optimal(inst, caps);
  RatioReport report;
  if (mode == RatioMode::Exact) {
    report.algorithm_value = exact_wsept_value(inst);
  } else {
    report.algorithm_value = monte_carlo_wsept(inst, samples, seed).mean;
  }
  report.oracle_value = opt.value;
  report.ratio = report.algorithm_value / report.oracle_value;
  report.bound = bounds::evaluate(
      bounds::Formula::Composite,
      bounds::MachineCount::finite(inst.machines), delta(inst), std::nullopt);
  report.margin = report.bound.value - report.ratio;
  return report;
}

}  // namespace schedlab::stochastic
