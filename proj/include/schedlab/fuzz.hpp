#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "schedlab/bounds.hpp"
#include "schedlab/exact.hpp"

namespace schedlab::fuzz {

/// Random instance with n in [1, n_max] and real weights/times in [lo, hi].
inline DeterministicInstance random_instance(std::mt19937_64& rng, int n_max,
                                             int m, double lo = 1.0,
                                             double hi = 10.0) {
  std::uniform_int_distribution<int> size_dist(1, n_max);
  std::uniform_real_distribution<double> value_dist(lo, hi);
  DeterministicInstance inst;
  inst.machines = m;
  const int n = size_dist(rng);
  for (int i = 0; i < n; ++i)
    inst.jobs.push_back(
        {"j" + std::to_string(i + 1), value_dist(rng), value_dist(rng)});
  return inst;
}

struct FuzzResult {
  std::size_t count = 0;
  double max_ratio = 0.0;
  double bound = 0.0;
  std::size_t violations = 0;
  std::vector<DeterministicInstance> violating;
};

/// Runs random instances through the exact solver with worst tie order and
/// checks the ratio against the applicable closed-form upper bound.
inline FuzzResult run(std::size_t count, int n_max, int m, double alpha,
                      std::uint64_t seed, double tolerance = 1e-9) {
  double bound = bounds::kk_alpha(alpha);
  if (alpha == 1.0 && m >= 2) bound = std::min(bound, bounds::wspt_m(m));
  FuzzResult result;
  result.count = count;
  result.bound = bound;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const DeterministicInstance inst = random_instance(rng, n_max, m);
    const RatioReport report = ratio(inst, alpha, TieMode::Worst);
    result.max_ratio = std::max(result.max_ratio, report.ratio);
    if (report.ratio > bound + tolerance) {
      ++result.violations;
      result.violating.push_back(inst);
    }
  }
  return result;
}

}  // namespace schedlab::fuzz
