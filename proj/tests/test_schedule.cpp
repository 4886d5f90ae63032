#include <catch_amalgamated.hpp>

#include <random>

#include "schedlab/schedule.hpp"

using namespace schedlab;

namespace {

DeterministicInstance unit_ratio(int m, std::vector<double> p) {
  DeterministicInstance inst;
  inst.machines = m;
  int i = 0;
  for (double v : p) inst.jobs.push_back({"j" + std::to_string(++i), v, v});
  return inst;
}

DeterministicInstance random_instance(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> value(1.0, 10.0);
  DeterministicInstance inst;
  inst.machines = m;
  for (int i = 0; i < n; ++i)
    inst.jobs.push_back({"j" + std::to_string(i), value(rng), value(rng)});
  return inst;
}

}  // namespace

TEST_CASE("list schedule packs the hand-checked example") {
  const auto inst = unit_ratio(2, {2, 1, 1});
  const Schedule s = wspt_schedule(inst);
  CHECK(s.entries[0].machine == 0);
  CHECK(s.entries[0].start == 0.0);
  CHECK(s.entries[1].machine == 1);
  CHECK(s.entries[2].machine == 1);
  CHECK(s.entries[2].start == 1.0);
  CHECK(weighted_completion_objective(inst, s) == Catch::Approx(7.0));
  CHECK(machine_loads(inst, s) == std::vector<double>{2.0, 2.0});
}

TEST_CASE("single machine completions are prefix sums") {
  const auto inst = unit_ratio(1, {3, 1, 2});
  const Schedule s = list_schedule(inst, {2, 0, 1});
  CHECK(s.completion(2) == Catch::Approx(2.0));
  CHECK(s.completion(0) == Catch::Approx(5.0));
  CHECK(s.completion(1) == Catch::Approx(6.0));
}

TEST_CASE("with more machines than jobs everything starts at zero") {
  const auto inst = unit_ratio(4, {5, 2});
  const Schedule s = wspt_schedule(inst);
  for (const auto& e : s.entries) CHECK(e.start == 0.0);
}

TEST_CASE("invalid priority lists are rejected") {
  const auto inst = unit_ratio(2, {1, 1});
  CHECK_THROWS_AS(list_schedule(inst, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(list_schedule(inst, {0}), std::invalid_argument);
  CHECK_THROWS_AS(list_schedule(inst, {0, 5}), std::invalid_argument);
}

TEST_CASE("alpha points interpolate between start and completion") {
  const auto inst = unit_ratio(1, {3});
  Schedule s = wspt_schedule(inst);
  s.entries[0].start = 1.0;
  s.entries[0].completion = 4.0;
  CHECK(s.alpha_point(0, 0.0) == 1.0);
  CHECK(s.alpha_point(0, 1.0) == 4.0);
  CHECK(s.alpha_point(0, 0.5) == Catch::Approx(2.5));
  CHECK_THROWS_AS(s.alpha_point(0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(weighted_alpha_objective(inst, s, -0.1),
                  std::invalid_argument);
}

TEST_CASE("alpha shift identity on random schedules") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng, 9, 3);
    const Schedule s = wspt_schedule(inst);
    double wp = 0.0;
    for (const Job& j : inst.jobs) wp += j.weight * j.ptime;
    const double full = weighted_completion_objective(inst, s);
    for (int i = 0; i <= 100; ++i) {
      const double alpha = i / 100.0;
      const double expected = full - (1.0 - alpha) * wp;
      CHECK(weighted_alpha_objective(inst, s, alpha) ==
            Catch::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("halfpoint load identity") {
  const auto inst = unit_ratio(2, {2, 2, 2});
  const Schedule s = wspt_schedule(inst);
  // Loads {4, 2}: half the squared sum is 10.
  CHECK(halfpoint_load_value(inst, s) == Catch::Approx(10.0));
  CHECK(weighted_alpha_objective(inst, s, 0.5) == Catch::Approx(10.0));

  const auto single = unit_ratio(1, {1, 1});
  const Schedule ss = wspt_schedule(single);
  CHECK(halfpoint_load_value(single, ss) == Catch::Approx(2.0));
}

TEST_CASE("halfpoint load identity on random unit-ratio schedules") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> value(0.5, 8.0);
  for (int trial = 0; trial < 50; ++trial) {
    DeterministicInstance inst;
    inst.machines = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      const double p = value(rng);
      inst.jobs.push_back({"j" + std::to_string(i), p, p});
    }
    const Schedule s = wspt_schedule(inst);
    const double via_points = weighted_alpha_objective(inst, s, 0.5);
    const double via_loads = halfpoint_load_value(inst, s);
    CHECK(std::abs(via_points - via_loads) <=
          1e-9 * (1.0 + std::abs(via_loads)));
  }
}

TEST_CASE("halfpoint load value rejects non-unit ratios and gaps") {
  DeterministicInstance inst = unit_ratio(1, {1, 2});
  inst.jobs[0].weight = 3.0;
  CHECK_THROWS_AS(halfpoint_load_value(inst, wspt_schedule(inst)),
                  std::invalid_argument);

  const auto ur = unit_ratio(1, {1, 2});
  Schedule gapped = wspt_schedule(ur);
  gapped.entries[1].start += 1.0;
  gapped.entries[1].completion += 1.0;
  CHECK_THROWS_AS(halfpoint_load_value(ur, gapped), std::invalid_argument);
}

TEST_CASE("list scheduling start-time bound") {
  // S_j is at most the average load of all jobs preceding j in the list.
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance(rng, 10, 1 + static_cast<int>(rng() % 4));
    const auto order = smith_order(inst);
    const Schedule s = list_schedule(inst, order);
    double prefix = 0.0;
    for (std::size_t j : order) {
      CHECK(s.start(j) <= prefix / inst.machines + 1e-12);
      prefix += inst.jobs[j].ptime;
    }
  }
}

TEST_CASE("machine loads sum to the total processing time") {
  std::mt19937_64 rng(14);
  const auto inst = random_instance(rng, 12, 3);
  const Schedule s = wspt_schedule(inst);
  const auto loads = machine_loads(inst, s);
  double total = 0.0;
  for (double l : loads) total += l;
  CHECK(total == Catch::Approx(inst.total_ptime()));
}
