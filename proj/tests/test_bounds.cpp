#include <catch_amalgamated.hpp>

#include <cmath>

#include "schedlab/bounds.hpp"

using namespace schedlab::bounds;

TEST_CASE("kk constant") {
  CHECK(kk() == Catch::Approx(1.2071067811865475).epsilon(1e-15));
  CHECK(kk() == Catch::Approx(kk_alpha(1.0)).epsilon(1e-15));
  // Limit of the fixed-m ratio.
  CHECK(std::abs(kk() - wspt_m(1000000)) < 1e-6);
}

TEST_CASE("msu") {
  CHECK(msu(MachineCount::infinite(), 1.0) == Catch::Approx(2.0));
  CHECK(msu(MachineCount::finite(1), 3.7) == Catch::Approx(1.0));
  CHECK(msu(MachineCount::finite(2), 0.0) == Catch::Approx(1.25));
  CHECK_THROWS_AS(msu(MachineCount::finite(2), -0.5), std::invalid_argument);
}

TEST_CASE("wsept red") {
  CHECK(wsept_red(0.0) == Catch::Approx(kk()).epsilon(1e-15));
  CHECK(wsept_red(1.0) == Catch::Approx(std::sqrt(2.0)));
  for (double d = 0.0; d < 3.0; d += 0.1)
    CHECK(wsept_red(d + 0.1) > wsept_red(d));
}

TEST_CASE("wsept orange") {
  CHECK(wsept_orange(0.0) == Catch::Approx(4.0 / 3.0));
  CHECK(wsept_orange(1.0) == Catch::Approx(4.0 / 3.0));
  CHECK(wsept_orange(5.0) == Catch::Approx(2.0));
}

TEST_CASE("wsept green") {
  CHECK(wsept_green(1.0) == Catch::Approx(4.0 / 3.0));
  CHECK(wsept_green(0.0) == Catch::Approx(kk()).epsilon(1e-12));
  // Linear with slope 1/6 once the min saturates.
  for (double d = 1.0; d < 4.0; d += 0.5)
    CHECK(wsept_green(d + 0.5) - wsept_green(d) == Catch::Approx(0.5 / 6.0));
}

TEST_CASE("green is the lower envelope") {
  for (int i = 0; i <= 300; ++i) {
    const double d = i * 0.01;
    CHECK(wsept_green(d) <= wsept_red(d) + 1e-12);
    CHECK(wsept_green(d) <= wsept_orange(d) + 1e-12);
  }
}

TEST_CASE("eei alpha") {
  CHECK(eei_alpha(MachineCount::finite(4), 1.0) ==
        Catch::Approx(1.5 - 1.0 / 8.0));
  CHECK(eei_alpha(MachineCount::finite(1), 0.3) == Catch::Approx(1.0));
  CHECK(eei_alpha(MachineCount::infinite(), 0.5) == Catch::Approx(2.0));
  CHECK_THROWS_AS(eei_alpha(MachineCount::finite(2), 0.0),
                  std::invalid_argument);
}

TEST_CASE("kk alpha") {
  CHECK(kk_alpha(1.0) == Catch::Approx(kk()).epsilon(1e-15));
  CHECK(kk_alpha(0.5) == Catch::Approx(4.0 / 3.0));
  CHECK(kk_alpha(0.75) == Catch::Approx(1.0 + 1.0 / (1.5 + std::sqrt(6.0))));
  CHECK_THROWS_AS(kk_alpha(0.4), std::invalid_argument);
  CHECK_THROWS_AS(kk_alpha(1.1), std::invalid_argument);
  // Decreasing on [1/2, 1].
  for (double a = 0.5; a < 1.0; a += 0.05)
    CHECK(kk_alpha(std::min(1.0, a + 0.05)) < kk_alpha(a));
}

TEST_CASE("transfer theorem") {
  const double beta = 0.5 * (std::sqrt(2.0) - 1.0);
  for (double d = 0.0; d <= 2.0; d += 0.25) {
    CHECK(wsept_from_wspt(beta, d, 1.0, TransferObjective::CompletionTimes) ==
          Catch::Approx(wsept_red(d)));
    // The half-point route recovers the orange curve.
    CHECK(wsept_from_wspt(1.0 / 3.0, d, 0.5,
                          TransferObjective::CompletionTimes) ==
          Catch::Approx(wsept_orange(d)));
    CHECK(wsept_from_wspt(beta, d, 1.0, TransferObjective::AlphaPoints) ==
          Catch::Approx(1.0 + beta * (1.0 + d)));
  }
  // Routing the list-scheduling bound through the transfer never beats the
  // direct machine-dependent stochastic bound.
  for (int m = 2; m <= 6; ++m)
    for (double d = 0.0; d <= 2.0; d += 0.25)
      for (double a = 0.25; a <= 1.0; a += 0.25) {
        const double beta_eei = eei_alpha(MachineCount::finite(m), a) - 1.0;
        CHECK(wsept_from_wspt(beta_eei, d, a,
                              TransferObjective::CompletionTimes) >=
              msu(MachineCount::finite(m), d) - 1e-12);
      }
}

TEST_CASE("k_m values and interval") {
  CHECK(k_m(2) == 1);
  CHECK(k_m(7) == 2);
  for (int m = 2; m <= 10000; ++m) {
    const double u = u_m(m);
    CHECK(k_m(m) >= u - 0.5);
    CHECK(k_m(m) < u + 0.5);
  }
}

TEST_CASE("wspt_m") {
  CHECK(wspt_m(2) == Catch::Approx(1.0 + (std::sqrt(3.0) - 1.0) / 4.0));
  CHECK(wspt_m(1) == 1.0);
  for (int m = 2; m <= 25; ++m) {
    CHECK(wspt_m(m) > 1.18);
    CHECK(wspt_m(m) < kk());
  }
}

TEST_CASE("wspt_m approaches kk at rate 1/m^2") {
  for (int m = 10; m <= 10000; m *= 10)
    CHECK((kk() - wspt_m(m)) * m * m < 1.0);
}

TEST_CASE("k_m maximizes the per-k ratio") {
  for (int m = 2; m <= 100; ++m) {
    double best = 0.0;
    int best_k = 0;
    for (int k = 1; k <= m - 1; ++k) {
      const double v = 1.0 + (std::sqrt((2.0 * m - k) * k) - k) / (2.0 * m);
      if (v > best) {
        best = v;
        best_k = k;
      }
    }
    CHECK(best_k == k_m(m));
    CHECK(wspt_m(m) == Catch::Approx(best).epsilon(1e-15));
  }
}

TEST_CASE("composite") {
  CHECK(composite(MachineCount::infinite(), 0.0) ==
        Catch::Approx(kk()).epsilon(1e-12));
  CHECK(composite(MachineCount::finite(2), 0.0) ==
        Catch::Approx(1.1830127018922192).epsilon(1e-12));
  for (int m = 1; m <= 30; ++m)
    CHECK(composite(MachineCount::finite(m), 1.0) <= 4.0 / 3.0 + 1e-12);
  // Min of magenta and green wherever both are defined.
  for (int m = 2; m <= 20; ++m)
    for (double d = 0.0; d <= 3.0; d += 0.1)
      CHECK(composite(MachineCount::finite(m), d) ==
            Catch::Approx(std::min(wsept_magenta(m, d), wsept_green(d))));
}

TEST_CASE("wsept magenta") {
  for (double d = 0.0; d <= 2.0; d += 0.25)
    CHECK(wsept_magenta(2, d) ==
          Catch::Approx(1.0 + 0.25 * (std::sqrt(3.0) - 1.0) * (1.0 + d)));
  CHECK(wsept_magenta(2, 0.0) == Catch::Approx(wspt_m(2)));
  CHECK(wsept_magenta(2, 10.0) > wsept_green(10.0));
}

TEST_CASE("bound values stay at or above one") {
  for (int m = 1; m <= 20; ++m)
    for (double d = 0.0; d <= 5.0; d += 0.5) {
      CHECK(msu(MachineCount::finite(m), d) >= 1.0);
      CHECK(composite(MachineCount::finite(m), d) >= 1.0);
    }
  for (double a = 0.5; a <= 1.0; a += 0.05) CHECK(kk_alpha(a) >= 1.0);
}

TEST_CASE("formula ids round-trip") {
  for (Formula f : {Formula::Kk, Formula::Msu, Formula::WseptRed,
                    Formula::WseptOrange, Formula::WseptGreen,
                    Formula::EeiAlpha, Formula::KkAlpha, Formula::WsptM,
                    Formula::Composite, Formula::WseptMagenta})
    CHECK(formula_from_id(formula_id(f)) == f);
  CHECK(!formula_from_id("no-such-formula"));
}

TEST_CASE("evaluate dispatch checks required parameters") {
  CHECK(evaluate(Formula::Kk, std::nullopt, std::nullopt, std::nullopt).value ==
        Catch::Approx(kk()));
  CHECK_THROWS_AS(
      evaluate(Formula::Msu, std::nullopt, 1.0, std::nullopt),
      std::invalid_argument);
  const auto b = evaluate(Formula::Composite, MachineCount::finite(3), 0.5,
                          std::nullopt);
  CHECK(b.value == Catch::Approx(composite(MachineCount::finite(3), 0.5)));
}
