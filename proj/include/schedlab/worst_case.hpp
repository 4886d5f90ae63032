#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "schedlab/bounds.hpp"
#include "schedlab/schedule.hpp"

namespace schedlab::worst_case {

/// Long/medium/short partition of a unit-Smith-ratio instance.
struct JobClassification {
  std::vector<std::size_t> long_jobs;
  std::vector<std::size_t> medium_jobs;
  std::vector<std::size_t> short_jobs;
  int ell = 0;
};

/// Partitions jobs of a unit-ratio instance: the ell largest jobs are long
/// (ell via the tail-average rule), jobs starting before the least WSPT
/// machine load are short, the rest are medium.
inline JobClassification classify(const DeterministicInstance& inst) {
  inst.validate();
  if (!inst.unit_ratio())
    throw std::invalid_argument("classification requires w_j = p_j");
  const std::size_t n = inst.jobs.size();

  std::vector<std::size_t> by_length(n);
  std::iota(by_length.begin(), by_length.end(), std::size_t{0});
  std::stable_sort(by_length.begin(), by_length.end(),
                   [&](std::size_t a, std::size_t b) {
                     return inst.jobs[a].ptime > inst.jobs[b].ptime;
                   });

  std::vector<double> tail(n + 1, 0.0);  // tail[i] = sum of lengths from rank i on
  for (std::size_t i = n; i-- > 0;)
    tail[i] = tail[i + 1] + inst.jobs[by_length[i]].ptime;

  int ell = 0;
  const std::size_t limit = std::min<std::size_t>(n, inst.machines);
  for (std::size_t i = 0; i < limit; ++i) {
    const double threshold = tail[i] / (inst.machines - static_cast<int>(i));
    if (inst.jobs[by_length[i]].ptime >= threshold)
      ell = static_cast<int>(i) + 1;
  }

  JobClassification cls;
  cls.ell = ell;
  std::vector<char> is_long(n, 0);
  for (int i = 0; i < ell; ++i) {
    cls.long_jobs.push_back(by_length[i]);
    is_long[by_length[i]] = 1;
  }

  const Schedule wspt = wspt_schedule(inst);
  const std::vector<double> loads = machine_loads(inst, wspt);
  const double min_load = *std::min_element(loads.begin(), loads.end());
  for (std::size_t j = 0; j < n; ++j) {
    if (is_long[j]) continue;
    if (wspt.start(j) < min_load)
      cls.short_jobs.push_back(j);
    else
      cls.medium_jobs.push_back(j);
  }
  return cls;
}

namespace detail {
inline void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
constexpr double kDomainSlack = 1e-12;
}  // namespace detail

/// Limit ratio when the non-short jobs are medium, as a function of the
/// non-short-to-machines ratio s and the non-short length x.
inline double lambda_M(double s, double x, double alpha) {
  detail::require(s >= 0.0 && s < 1.0, "lambda_M needs s in [0,1)");
  detail::require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
  detail::require(x >= 0.0 && x <= 1.0 / (1.0 - s) + detail::kDomainSlack,
                  "lambda_M needs 0 <= x <= 1/(1-s)");
  const double num = 2.0 * s * x * (alpha * x + 1.0) + 1.0;
  const double den =
      s * s * x * x + s * x * ((2.0 * alpha - 1.0) * x + 2.0) + 1.0;
  return num / den;
}

/// Limit ratio when the non-short jobs are long.
inline double lambda_L(double s, double x, double alpha) {
  detail::require(s >= 0.0 && s < 1.0, "lambda_L needs s in [0,1)");
  detail::require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
  detail::require(x >= 1.0 / (1.0 - s) - detail::kDomainSlack,
                  "lambda_L needs x >= 1/(1-s)");
  const double num = (1.0 - s) * (2.0 * s * x * (alpha * x + 1.0) + 1.0);
  const double den = 2.0 * alpha * s * (1.0 - s) * x * x + 1.0;
  return num / den;
}

/// Unique positive critical point of x -> lambda_L(s, x, alpha).
inline double x_s(double s, double alpha) {
  detail::require(s > 0.0 && s < 1.0, "x_s needs s in (0,1)");
  detail::require(alpha >= 0.5 && alpha <= 1.0, "alpha must lie in [1/2,1]");
  const double as = alpha * s;
  return (as + std::sqrt((2.0 * (1.0 - s) + as) * as)) /
         (2.0 * as * (1.0 - s));
}

/// Maximizing s for lambda_L(s, x_s, alpha).
inline double s_star(double alpha) {
  detail::require(alpha >= 0.5 && alpha <= 1.0, "alpha must lie in [1/2,1]");
  return 1.0 / (2.0 + std::sqrt(2.0 * alpha));
}

/// Fixed-m limit ratio in the long-job length x, the medium-job length y and
/// the long-job count k.
inline double lambda_m(double x, double y, int k, int m) {
  detail::require(m >= 1, "lambda_m needs m >= 1");
  detail::require(k >= 0 && k <= m - 1, "lambda_m needs k in {0..m-1}");
  if (k < m - 1)
    detail::require(
        y >= 0.0 && y <= double(m) / (m - k - 1) + detail::kDomainSlack,
        "lambda_m needs y in [0, m/(m-k-1)]");
  else
    detail::require(y == 0.0, "lambda_m needs y = 0 when k = m-1");
  detail::require(x >= (y + m) / double(m - k) - detail::kDomainSlack,
                  "lambda_m needs x >= (y+m)/(m-k)");
  const double num =
      (m - k) * (2.0 * k * x * x + 2.0 * k * x + 2.0 * y * y + 2.0 * y + m);
  const double den = (m - k) * (2.0 * k * x * x + y * y) +
                     (y + double(m)) * (y + double(m));
  return num / den;
}

/// Per-k maximizing long-job length m / (sqrt((2m-k)k) - k).
inline double x_km(int k, int m) {
  detail::require(k >= 1 && k <= m - 1, "x_km needs k in {1..m-1}");
  return m / (std::sqrt((2.0 * m - k) * k) - k);
}

/// Per-k maximum 1 + (sqrt((2m-k)k) - k)/(2m) of the fixed-m ratio.
inline double lambda_mk(int k, int m) {
  detail::require(m >= 1, "lambda_mk needs m >= 1");
  detail::require(k >= 0 && k <= m - 1, "lambda_mk needs k in {0..m-1}");
  if (k == 0) return 1.0;
  return 1.0 + (std::sqrt((2.0 * m - k) * k) - k) / (2.0 * m);
}

struct LambdaMaximum {
  double x = 0.0;
  double y = 0.0;
  int k = 0;
  double value = 1.0;
};

/// Maximizes lambda_m over its domain: the closed-form per-k optimizer,
/// confirmed by a coarse (x, y) grid sweep.
inline LambdaMaximum maximize_lambda_m(int m) {
  detail::require(m >= 2, "maximize_lambda_m needs m >= 2");
  LambdaMaximum best;
  for (int k = 1; k <= m - 1; ++k) {
    const double x = x_km(k, m);
    const double value = lambda_m(x, 0.0, k, m);
    if (value > best.value) best = {x, 0.0, k, value};
  }
  // Guard sweep over the full (x, y, k) domain.
  for (int k = 0; k <= m - 1; ++k) {
    const double y_max = (k < m - 1) ? double(m) / (m - k - 1) : 0.0;
    for (int yi = 0; yi <= 100; ++yi) {
      const double y = y_max * yi / 100.0;
      const double x_lo = (y + m) / double(m - k);
      const double x_hi = 10.0 * std::max(x_lo, k >= 1 ? x_km(k, m) : x_lo);
      for (int xi = 0; xi < 200; ++xi) {
        const double x = x_lo * std::pow(x_hi / x_lo, xi / 199.0);
        const double value = lambda_m(x, y, k, m);
        if (value > best.value) best = {x, y, k, value};
      }
      if (k == m - 1) break;
    }
  }
  return best;
}

namespace detail {

inline DeterministicInstance shorts_then_longs(int m, int n_short,
                                               double short_len, int n_long,
                                               double long_len) {
  DeterministicInstance inst;
  inst.machines = m;
  inst.jobs.reserve(n_short + n_long);
  for (int i = 0; i < n_short; ++i)
    inst.jobs.push_back({"s" + std::to_string(i + 1), short_len, short_len});
  for (int i = 0; i < n_long; ++i)
    inst.jobs.push_back({"l" + std::to_string(i + 1), long_len, long_len});
  return inst;
}

inline int epsilon_denominator(double eps) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0,1)");
  const double n = 1.0 / eps;
  const double rounded = std::round(n);
  require(std::abs(n - rounded) <= 1e-9 && rounded >= 2.0,
          "eps must equal 1/N for an integer N >= 2");
  return static_cast<int>(rounded);
}

}  // namespace detail

/// Unit-ratio tightness family for the alpha-dependent machine-independent
/// bound: short filler of total length m plus ~m/(2+sqrt(2 alpha)) long jobs
/// of length 1+sqrt(2/alpha). Shorts come first in the input order.
inline DeterministicInstance kk_alpha_instance(int m, double alpha, double eps) {
  detail::require(m >= 2, "kk_alpha_instance needs m >= 2");
  detail::require(alpha >= 0.5 && alpha <= 1.0, "alpha must lie in [1/2,1]");
  const int n = detail::epsilon_denominator(eps);
  const int n_long =
      static_cast<int>(std::floor(m / (2.0 + std::sqrt(2.0 * alpha)) + 0.5));
  const double long_len = 1.0 + std::sqrt(2.0 / alpha);
  return detail::shorts_then_longs(m, m * n, 1.0 / n, n_long, long_len);
}

/// Unit-ratio tightness family for the fixed-m bound: k_m long jobs of the
/// m-dependent length x_m plus short filler of total length m.
inline DeterministicInstance fixed_m_worst_instance(int m, double eps) {
  detail::require(m >= 2, "fixed_m_worst_instance needs m >= 2");
  const int n = detail::epsilon_denominator(eps);
  const int k = bounds::k_m(m);
  return detail::shorts_then_longs(m, m * n, 1.0 / n, k, x_km(k, m));
}

/// Objective value of the schedule that runs every long job alone and spreads
/// the short jobs as evenly as possible over the remaining machines. For the
/// generated families this schedule is optimal, so the exponential solver is
/// not needed.
inline double structural_optimum(const DeterministicInstance& inst,
                                 const JobClassification& cls, double alpha) {
  inst.validate();
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  detail::require(cls.medium_jobs.empty(),
                  "structural optimum requires an instance without medium jobs");
  detail::require(static_cast<int>(cls.long_jobs.size()) < inst.machines,
                  "structural optimum needs a machine left for the short jobs");
  double short_len = 0.0;
  for (std::size_t j : cls.short_jobs) {
    if (short_len == 0.0) short_len = inst.jobs[j].ptime;
    detail::require(inst.jobs[j].ptime == short_len,
                    "structural optimum requires equal-length short jobs");
  }

  double sum_sq_loads = 0.0;
  for (std::size_t j : cls.long_jobs)
    sum_sq_loads += inst.jobs[j].ptime * inst.jobs[j].ptime;

  const int free_machines = inst.machines - static_cast<int>(cls.long_jobs.size());
  const std::size_t n_short = cls.short_jobs.size();
  const std::size_t per_machine = n_short / free_machines;
  const std::size_t extra = n_short % free_machines;
  for (int i = 0; i < free_machines; ++i) {
    const double load =
        short_len * (per_machine + (static_cast<std::size_t>(i) < extra ? 1 : 0));
    sum_sq_loads += load * load;
  }

  double sum_sq_ptimes = 0.0;
  for (const Job& j : inst.jobs) sum_sq_ptimes += j.ptime * j.ptime;
  // Gapless, so the half-point value is half the sum of squared loads;
  // the alpha-shift adds (alpha - 1/2) sum p^2.
  return 0.5 * sum_sq_loads + (alpha - 0.5) * sum_sq_ptimes;
}

/// Prefix family I'_k: the first k jobs of the Smith order, reweighted to
/// unit Smith ratio. The worst member has at least the original's ratio.
inline std::vector<DeterministicInstance> unit_ratio_family(
    const DeterministicInstance& inst) {
  inst.validate();
  const std::vector<std::size_t> order = smith_order(inst);
  std::vector<DeterministicInstance> family;
  family.reserve(order.size());
  DeterministicInstance prefix;
  prefix.machines = inst.machines;
  for (std::size_t j : order) {
    const double p = inst.jobs[j].ptime;
    prefix.jobs.push_back({inst.jobs[j].id, p, p});
    family.push_back(prefix);
  }
  return family;
}

namespace detail {

inline double optimal_min_load(const DeterministicInstance& inst,
                               const JobClassification& cls) {
  double non_long = 0.0;
  for (std::size_t j : cls.medium_jobs) non_long += inst.jobs[j].ptime;
  for (std::size_t j : cls.short_jobs) non_long += inst.jobs[j].ptime;
  const int free_machines = inst.machines - cls.ell;
  require(free_machines >= 1, "all machines are taken by long jobs");
  return non_long / free_machines;
}

inline DeterministicInstance rebuild(const DeterministicInstance& inst,
                                     const JobClassification& cls,
                                     const std::vector<double>& medium_lengths,
                                     const std::vector<double>& long_lengths) {
  DeterministicInstance out;
  out.machines = inst.machines;
  for (std::size_t j : cls.short_jobs)
    out.jobs.push_back(inst.jobs[j]);
  for (std::size_t i = 0; i < medium_lengths.size(); ++i)
    out.jobs.push_back(
        {"m" + std::to_string(i + 1), medium_lengths[i], medium_lengths[i]});
  for (std::size_t i = 0; i < long_lengths.size(); ++i)
    out.jobs.push_back(
        {"l" + std::to_string(i + 1), long_lengths[i], long_lengths[i]});
  return out;
}

}  // namespace detail

/// Replaces the medium jobs by floor(p(M)/M*_min) jobs of size M*_min plus
/// one remainder job; zero remainders are dropped. The ratio cannot decrease.
inline DeterministicInstance merge_medium(const DeterministicInstance& inst) {
  const JobClassification cls = classify(inst);
  if (cls.medium_jobs.empty()) return inst;
  const double min_load = detail::optimal_min_load(inst, cls);
  double medium_total = 0.0;
  for (std::size_t j : cls.medium_jobs) medium_total += inst.jobs[j].ptime;

  const int full = static_cast<int>(std::floor(medium_total / min_load));
  const double remainder = medium_total - full * min_load;
  std::vector<double> medium_lengths(full, min_load);
  if (remainder > 1e-12 * std::max(1.0, medium_total))
    medium_lengths.push_back(remainder);

  std::vector<double> long_lengths;
  for (std::size_t j : cls.long_jobs)
    long_lengths.push_back(inst.jobs[j].ptime);
  return detail::rebuild(inst, cls, medium_lengths, long_lengths);
}

/// Replaces the long jobs by equally long jobs of the same total length.
inline DeterministicInstance equalize_long(const DeterministicInstance& inst) {
  const JobClassification cls = classify(inst);
  if (cls.long_jobs.empty()) return inst;
  double long_total = 0.0;
  for (std::size_t j : cls.long_jobs) long_total += inst.jobs[j].ptime;
  const double mean = long_total / cls.long_jobs.size();

  std::vector<double> medium_lengths;
  for (std::size_t j : cls.medium_jobs)
    medium_lengths.push_back(inst.jobs[j].ptime);
  const std::vector<double> long_lengths(cls.long_jobs.size(), mean);
  return detail::rebuild(inst, cls, medium_lengths, long_lengths);
}

}  // namespace schedlab::worst_case
