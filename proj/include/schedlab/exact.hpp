#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "schedlab/bounds.hpp"
#include "schedlab/report.hpp"
#include "schedlab/schedule.hpp"

namespace schedlab {

/// Instance exceeds the configured oracle caps.
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExactCaps {
  std::size_t max_jobs = 12;
  int max_machines = 4;
  std::size_t max_tie_class = 6;
};

struct OptimalResult {
  Schedule schedule;
  double value = 0.0;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

// Branch and bound over machine assignments. Jobs are taken in Smith order,
// so every machine's sequence is Smith-sequenced and thus optimal for the
// fixed assignment (the alpha-shift makes this independent of alpha).
class AssignmentSearch {
 public:
  AssignmentSearch(const DeterministicInstance& inst, double alpha)
      : inst_(inst), alpha_(alpha), order_(smith_order(inst)) {
    // Remaining-cost lower bound: every unassigned job contributes at least
    // w * alpha * p (it cannot start before time 0).
    suffix_min_.assign(order_.size() + 1, 0.0);
    for (std::size_t i = order_.size(); i-- > 0;) {
      const Job& j = inst_.jobs[order_[i]];
      suffix_min_[i] = suffix_min_[i + 1] + j.weight * alpha * j.ptime;
    }
  }

  OptimalResult run() {
    load_.assign(inst_.machines, 0.0);
    assign_.assign(order_.size(), 0);
    best_assign_.clear();
    best_ = std::numeric_limits<double>::infinity();
    nodes_ = 0;
    dfs(0, 0.0);

    OptimalResult out;
    out.nodes_explored = nodes_;
    out.value = best_;
    out.schedule.entries.resize(order_.size());
    out.schedule.machine_sequences.resize(inst_.machines);
    std::vector<double> load(inst_.machines, 0.0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const std::size_t j = order_[i];
      const int mi = best_assign_[i];
      out.schedule.entries[j] = {j, mi, load[mi], load[mi] + inst_.jobs[j].ptime};
      load[mi] = out.schedule.entries[j].completion;
      out.schedule.machine_sequences[mi].push_back(j);
    }
    return out;
  }

 private:
  void dfs(std::size_t i, double cost) {
    ++nodes_;
    if (i == order_.size()) {
      if (cost < best_) {
        best_ = cost;
        best_assign_ = assign_;
      }
      return;
    }
    if (cost + suffix_min_[i] >= best_) return;
    const Job& j = inst_.jobs[order_[i]];
    for (int mi = 0; mi < inst_.machines; ++mi) {
      // Machines with equal load are interchangeable; try only the first.
      bool duplicate = false;
      for (int prev = 0; prev < mi; ++prev)
        if (load_[prev] == load_[mi]) { duplicate = true; break; }
      if (duplicate) continue;
      const double added = j.weight * (load_[mi] + alpha_ * j.ptime);
      assign_[i] = mi;
      load_[mi] += j.ptime;
      dfs(i + 1, cost + added);
      load_[mi] -= j.ptime;
    }
  }

  const DeterministicInstance& inst_;
  double alpha_;
  std::vector<std::size_t> order_;
  std::vector<double> suffix_min_;
  std::vector<double> load_;
  std::vector<int> assign_;
  std::vector<int> best_assign_;
  double best_ = 0.0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact minimizer of the weighted sum of alpha-points over all schedules.
inline OptimalResult optimal(const DeterministicInstance& inst, double alpha,
                             const ExactCaps& caps = {}) {
  inst.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0,1]");
  if (inst.jobs.size() > caps.max_jobs)
    throw SizeError("instance exceeds the exact solver's job cap");
  if (inst.machines > caps.max_machines)
    throw SizeError("instance exceeds the exact solver's machine cap");
  return detail::AssignmentSearch(inst, alpha).run();
}

enum class TieMode { Given, Worst };

namespace detail {

// Groups the Smith order into maximal runs of equal ratio.
inline std::vector<std::pair<std::size_t, std::size_t>> tie_classes(
    const DeterministicInstance& inst, const std::vector<std::size_t>& order) {
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    const bool boundary =
        i == order.size() ||
        inst.jobs[order[i - 1]].weight * inst.jobs[order[i]].ptime !=
            inst.jobs[order[i]].weight * inst.jobs[order[i - 1]].ptime;
    if (boundary) {
      classes.emplace_back(begin, i);
      begin = i;
    }
  }
  return classes;
}

inline void worst_tie_value(const DeterministicInstance& inst,
                            std::vector<std::size_t>& order,
                            const std::vector<std::pair<std::size_t, std::size_t>>& classes,
                            std::size_t ci, double alpha, double& worst) {
  if (ci == classes.size()) {
    worst = std::max(worst, weighted_alpha_objective(
                                inst, list_schedule(inst, order), alpha));
    return;
  }
  const auto [begin, end] = classes[ci];
  std::sort(order.begin() + begin, order.begin() + end);
  do {
    worst_tie_value(inst, order, classes, ci + 1, alpha, worst);
  } while (std::next_permutation(order.begin() + begin, order.begin() + end));
}

inline bounds::BoundValue applicable_bound(int m, double alpha) {
  using namespace bounds;
  if (alpha == 1.0 && m >= 2)
    return evaluate(Formula::WsptM, MachineCount::finite(m), std::nullopt, alpha);
  if (alpha >= 0.5)
    return evaluate(Formula::KkAlpha, MachineCount::finite(m), std::nullopt, alpha);
  return evaluate(Formula::EeiAlpha, MachineCount::finite(m), std::nullopt, alpha);
}

}  // namespace detail

/// WSPT-vs-optimal ratio; with TieMode::Worst the WSPT value is maximized
/// over all orders of jobs with equal Smith ratio.
inline RatioReport ratio(const DeterministicInstance& inst, double alpha,
                         TieMode tie_mode, const ExactCaps& caps = {}) {
  const OptimalResult opt = optimal(inst, alpha, caps);
  std::vector<std::size_t> order = smith_order(inst);
  double wspt_value =
      weighted_alpha_objective(inst, list_schedule(inst, order), alpha);
  if (tie_mode == TieMode::Worst) {
    const auto classes = detail::tie_classes(inst, order);
    for (const auto& [begin, end] : classes)
      if (end - begin > caps.max_tie_class)
        throw SizeError("Smith-ratio tie class exceeds the enumeration cap");
    detail::worst_tie_value(inst, order, classes, 0, alpha, wspt_value);
  }
  RatioReport report;
  report.algorithm_value = wspt_value;
  report.oracle_value = opt.value;
  report.ratio = wspt_value / opt.value;
  report.bound = detail::applicable_bound(inst.machines, alpha);
  report.margin = report.bound.value - report.ratio;
  return report;
}

}  // namespace schedlab
