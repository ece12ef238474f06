#include <doctest.h>

#include <cmath>
#include <random>

#include "rjv/cost.hpp"
#include "rjv/cutoffs.hpp"
#include "rjv/errors.hpp"
#include "support.hpp"

using namespace rjv;

namespace {
const ProfitQuad kS1{1.0 / 9.0, 4.0 / 9.0, 1.0 / 36.0, 0.25};
const FinancingEnv kFin{0.01, 0.1};
} // namespace

TEST_CASE("ratio family evaluates and integrates in closed form") {
    auto cf = CostFunction::ratio(1.0);
    CHECK(cf.exact_mass());
    CHECK(std::string(cf.family()) == "ratio");
    CHECK(cf.value(0.0) == 0.0);
    CHECK(cf.value(0.5) == doctest::Approx(0.5 / 0.75).epsilon(1e-15));
    CHECK(cf.mass(0.198017) == doctest::Approx(0.0200000892189961).epsilon(1e-13));
    CHECK(cf.mass(0.279378) == doctest::Approx(0.0406332643473743).epsilon(1e-13));

    auto cf2 = CostFunction::ratio(2.0);
    CHECK(cf2.value(0.3) == doctest::Approx(2.0 * cf.value(0.3)).epsilon(1e-15));
    CHECK(cf2.mass(0.3) == doctest::Approx(2.0 * cf.mass(0.3)).epsilon(1e-13));

    CHECK_THROWS_AS(CostFunction::ratio(0.0), InvalidInputError);
    CHECK_THROWS_AS(CostFunction::ratio(-1.0), InvalidInputError);
    CHECK_THROWS_AS((void)cf.value(1.0), InvalidInputError);
    CHECK_THROWS_AS((void)cf.value(-0.1), InvalidInputError);
}

TEST_CASE("power family matches the ratio family at p = 1 up to quadrature") {
    auto p1 = CostFunction::power(1.0, 1.0);
    CHECK_FALSE(p1.exact_mass());
    // integral of theta/(1-theta) from 0 to 1/2 is ln 2 - 1/2
    CHECK(p1.mass(0.5) == doctest::Approx(0.193147180559945).epsilon(1e-10));
    auto p2 = CostFunction::power(1.0, 2.0);
    CHECK(p2.mass(0.5) == doctest::Approx(0.0681471805599453).epsilon(1e-10));
    CHECK(p2.value(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(CostFunction::power(1.0, 0.5), InvalidInputError);
}

TEST_CASE("tabulated family interpolates, integrates, and extends past the knots") {
    auto cf = CostFunction::tabulated({0.0, 0.5, 0.9}, {0.0, 0.5, 0.9});
    CHECK(cf.exact_mass());
    CHECK(cf.value(0.25) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(cf.mass(0.4) == doctest::Approx(0.08).epsilon(1e-14));
    // tail pole: C continues as 0.09/(1-theta) past 0.9
    CHECK(cf.value(0.95) == doctest::Approx(0.09 / 0.05).epsilon(1e-13));
    CHECK(cf.mass(0.95) == doctest::Approx(0.467383246250395).epsilon(1e-12));

    CHECK_THROWS_AS(CostFunction::tabulated({0.1, 0.5}, {0.1, 0.5}), InvalidInputError);
    CHECK_THROWS_AS(CostFunction::tabulated({0.0, 0.5}, {0.0}), InvalidInputError);
    CHECK_THROWS_AS(CostFunction::tabulated({0.0, 0.5, 0.4}, {0.0, 0.5, 0.6}),
                    InvalidInputError);
    CHECK_THROWS_AS(CostFunction::tabulated({0.0, 0.5, 0.6}, {0.0, 0.5, 0.4}),
                    InvalidInputError);
    CHECK_THROWS_AS(CostFunction::tabulated({0.0, 1.0}, {0.0, 5.0}), InvalidInputError);
}

TEST_CASE("cut-off solves agree with the closed form for the ratio family") {
    auto cf = CostFunction::ratio(1.0);
    CHECK(solve_value_cutoff(cf, 1.0 / 3.0, 0.1) ==
          doctest::Approx(0.279378138157474).epsilon(1e-11));
    CHECK(solve_value_cutoff(cf, 2.0 / 9.0, 0.1) ==
          doctest::Approx(0.194386633666993).epsilon(1e-11));
    CHECK(solve_value_cutoff(cf, 0.24, 0.0) ==
          doctest::Approx(0.227570770643674).epsilon(1e-11));
    CHECK(solve_value_cutoff(cf, 0.0, 0.1) == 0.0);
    CHECK_THROWS_AS(solve_value_cutoff(cf, -0.5, 0.1), InvalidInputError);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dv(0.001, 5.0), dr(0.0, 1.0), dk(0.2, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = dv(rng), r = dr(rng), k = dk(rng);
        auto cfk = CostFunction::ratio(k);
        const double got = solve_value_cutoff(cfk, v, r);
        CHECK(got == doctest::Approx(support::ratio_cutoff(v, r, k)).epsilon(1e-10));
    }
}

TEST_CASE("budget point inverts the mass and saturates for huge budgets") {
    auto cf = CostFunction::ratio(1.0);
    CHECK(budget_cutoff(cf, 0.02) == doctest::Approx(0.19801656710406).epsilon(1e-11));
    CHECK(cf.mass(budget_cutoff(cf, 0.1)) == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(budget_cutoff(cf, 0.0) == 0.0);
    CHECK(budget_cutoff(cf, 1e9) == 1.0);
}

TEST_CASE("pooled portfolio clamps the budget point into the bracket") {
    auto cf = CostFunction::ratio(1.0);
    // tight budget: stops at theta_rho and borrows
    auto p = pooled_portfolio_cutoffs(cf, 2.0 * (0.25 - 1.0 / 9.0), 0.02, 0.1);
    CHECK(p.theta_rho == doctest::Approx(0.238197466412763).epsilon(1e-11));
    CHECK(p.theta_u == doctest::Approx(0.2591260281974).epsilon(1e-11));
    CHECK(p.theta_b == doctest::Approx(0.19801656710406).epsilon(1e-11));
    CHECK(p.theta_star == p.theta_rho);
    CHECK(p.borrows);
    // ample budget: capped at the rate-free point, no borrowing
    auto a = pooled_portfolio_cutoffs(cf, 2.0 * (0.25 - 1.0 / 9.0), 0.5, 0.1);
    CHECK(a.theta_star == a.theta_u);
    CHECK_FALSE(a.borrows);
    // interior budget: stops exactly at the budget point
    const double mid = cf.mass(0.25);
    auto m = pooled_portfolio_cutoffs(cf, 2.0 * (0.25 - 1.0 / 9.0), mid, 0.1);
    CHECK(m.theta_star == doctest::Approx(0.25).epsilon(1e-10));
    CHECK_FALSE(m.borrows);
}

TEST_CASE("cut-off set reproduces the benchmark duopoly numbers") {
    auto cf = CostFunction::ratio(1.0);
    auto cs = compute_cutoff_set(kS1, MonopolyProfits{0.25, 0.5625}, cf, kFin);
    CHECK(cs.theta2 == doctest::Approx(0.194386633666993).epsilon(1e-11));
    CHECK(cs.theta1 == doctest::Approx(0.279378138157474).epsilon(1e-11));
    CHECK(cs.theta_rho == doctest::Approx(0.238197466412763).epsilon(1e-11));
    CHECK(cs.theta_u == doctest::Approx(0.2591260281974).epsilon(1e-11));
    CHECK(cs.theta_b == doctest::Approx(0.19801656710406).epsilon(1e-11));
    CHECK(cs.theta_star == cs.theta_rho); // budget point below the bracket
    REQUIRE(cs.theta_rho_m.has_value());
    CHECK(*cs.theta_rho_m == doctest::Approx(0.264252948620799).epsilon(1e-11));
    CHECK(*cs.theta_u_m == doctest::Approx(0.286796226411321).epsilon(1e-11));
    CHECK(*cs.theta_star_m == doctest::Approx(0.264252948620799).epsilon(1e-11));

    auto plain = compute_cutoff_set(kS1, std::nullopt, cf, kFin);
    CHECK_FALSE(plain.theta_rho_m.has_value());
    CHECK(plain.theta2 == cs.theta2);
}

TEST_CASE("threshold record carries the rate, budget, and interval hurdles") {
    auto cf = CostFunction::ratio(1.0);
    auto th = compute_thresholds(kS1, MonopolyProfits{0.25, 0.5625}, cf, kFin);
    REQUIRE_FALSE(th.rho_bar.infinite);
    CHECK(th.rho_bar.value == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(th.b_bar == doctest::Approx(0.0203166531066317).epsilon(1e-10));
    REQUIRE_FALSE(th.psi.infinite);
    CHECK(th.psi.value == doctest::Approx(-0.1).epsilon(1e-12));
    REQUIRE(th.rho_bar_m.has_value());
    CHECK(*th.rho_bar_m == doctest::Approx(1.0 / 15.0).epsilon(1e-12));

    CHECK(th.rho_bar.exceeded_by(0.25));
    CHECK_FALSE(th.rho_bar.exceeded_by(th.rho_bar.value)); // equality never exceeds
    CHECK_FALSE(th.rho_bar.exceeded_by(0.19));
    CHECK_FALSE(Threshold::inf().exceeded_by(1e12));

    // no joint gain: the rate threshold degenerates to infinity
    ProfitQuad flat{0.1, 0.5, 0.05, 0.1};
    auto inf = compute_thresholds(flat, std::nullopt, cf, kFin);
    CHECK(inf.rho_bar.infinite);
    CHECK(inf.psi.infinite);
}

TEST_CASE("financing screen rejects bad budgets and rates") {
    CHECK_NOTHROW(validate_financing(FinancingEnv{0.0, 0.0}));
    CHECK_THROWS_AS(validate_financing(FinancingEnv{-0.01, 0.1}), InvalidInputError);
    CHECK_THROWS_AS(validate_financing(FinancingEnv{0.01, -0.1}), InvalidInputError);
    CHECK_THROWS_AS(validate_financing(FinancingEnv{std::nan(""), 0.1}), InvalidInputError);
}
