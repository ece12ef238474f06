#include <doctest.h>

#include <cmath>
#include <random>

#include "rjv/errors.hpp"
#include "rjv/oracle.hpp"
#include "support.hpp"

using namespace rjv;

namespace {
const ProfitQuad kS1{1.0 / 9.0, 4.0 / 9.0, 1.0 / 36.0, 0.25};
const FinancingEnv kFin{0.01, 0.1};
const CostFunction kCf = CostFunction::ratio(1.0);

DiscreteStrategy bits(std::initializer_list<int> v) {
    DiscreteStrategy s;
    for (int b : v) s.push_back(static_cast<std::uint8_t>(b));
    return s;
}
} // namespace

TEST_CASE("cell payoffs match hand-computed expectations including the kink") {
    auto g = DiscreteGame::build(kS1, kCf, kFin, 4);
    REQUIRE(g.cell_cost.size() == 4);
    CHECK(g.cell_cost[0] == doctest::Approx(0.0322692605687856).epsilon(1e-12));
    CHECK(g.cell_cost[1] == doctest::Approx(0.111571775657105).epsilon(1e-12));

    auto a = bits({1, 0, 0, 0}), none = bits({0, 0, 0, 0});
    CHECK(g.firm_payoff(a, none) == doctest::Approx(0.15994825781878).epsilon(1e-12));
    CHECK(g.firm_payoff(none, a) ==
          doctest::Approx(0.25 * (1.0 / 36.0) + 0.75 * (1.0 / 9.0)).epsilon(1e-12));

    auto two = bits({1, 1, 0, 0}), one = bits({0, 1, 0, 0});
    CHECK(g.firm_payoff(two, one) == doctest::Approx(0.071941526818188).epsilon(1e-11));
    CHECK(g.firm_payoff(one, two) == doctest::Approx(0.003271046777184).epsilon(1e-11));

    CHECK_THROWS_AS((void)g.firm_payoff(bits({1, 0}), none), InvalidInputError);
}

TEST_CASE("game construction rejects bad sizes and values") {
    CHECK_THROWS_AS(DiscreteGame::build(kS1, kCf, kFin, 0), ConfigurationError);
    CHECK_THROWS_AS(DiscreteGame::build(kS1, kCf, kFin, 30000), ConfigurationError);
    ProfitQuad nan = kS1;
    nan.pi_II = std::nan("");
    CHECK_THROWS_AS(DiscreteGame::build(nan, kCf, kFin, 8), InvalidInputError);
    // exhaustive enumeration is capped; best-response mode is not
    auto big = DiscreteGame::build(kS1, kCf, kFin, 16);
    CHECK_THROWS_AS(solve_discrete_game(big, SolveMode::Exhaustive), ConfigurationError);
    CHECK_NOTHROW(solve_discrete_game(big, SolveMode::BestResponse));
}

TEST_CASE("benchmark duopoly at eight cells has one equilibrium, both firms in two cells") {
    auto g = DiscreteGame::build(kS1, kCf, kFin, 8);
    auto rep = solve_discrete_game(g, SolveMode::Exhaustive);
    CHECK(rep.equilibrium_count == 1);
    CHECK(rep.all_double_cutoff);
    CHECK(rep.unique_innovation_mass);
    CHECK_FALSE(rep.truncated);
    CHECK(rep.innovation_mass == doctest::Approx(0.25).epsilon(1e-12));
    REQUIRE(rep.equilibria.size() == 1);
    const auto& e = rep.equilibria[0];
    CHECK(e.double_cutoff);
    CHECK(e.strat1 == bits({1, 1, 0, 0, 0, 0, 0, 0}));
    CHECK(e.strat2 == bits({1, 1, 0, 0, 0, 0, 0, 0}));
    CHECK(e.payoff1 == e.payoff2);

    // pooled optimum lands within one cell of the continuum cut-off 0.2382
    auto rjv = discrete_rjv_optimum(g);
    CHECK(rjv.prefix == 2);

    // the same fixed point from both seeds of best-response dynamics
    auto br = solve_discrete_game(g, SolveMode::BestResponse);
    CHECK(br.seed_converged);
    CHECK(br.seeds_coincide);
    REQUIRE(br.equilibria.size() == 1);
    CHECK(br.equilibria[0].strat1 == e.strat1);
    CHECK(br.equilibria[0].strat2 == e.strat2);
}

TEST_CASE("worker count never changes the exhaustive report") {
    auto g = DiscreteGame::build(kS1, kCf, kFin, 9);
    auto r1 = solve_discrete_game(g, SolveMode::Exhaustive, 1);
    auto r4 = solve_discrete_game(g, SolveMode::Exhaustive, 4);
    CHECK(r1.equilibrium_count == r4.equilibrium_count);
    CHECK(r1.innovation_mass == r4.innovation_mass);
    REQUIRE(r1.equilibria.size() == r4.equilibria.size());
    for (size_t i = 0; i < r1.equilibria.size(); ++i) {
        CHECK(r1.equilibria[i].strat1 == r4.equilibria[i].strat1);
        CHECK(r1.equilibria[i].strat2 == r4.equilibria[i].strat2);
        CHECK(r1.equilibria[i].payoff1 == r4.equilibria[i].payoff1);
    }
}

TEST_CASE("best-response fixed points are exhaustive equilibria on random games") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = support::random_quad(rng);
        auto fin = support::random_financing(rng, kCf, d.q);
        auto g = DiscreteGame::build(d.q, kCf, fin, 7);
        auto ex = solve_discrete_game(g, SolveMode::Exhaustive);
        auto br = solve_discrete_game(g, SolveMode::BestResponse);
        CHECK(ex.equilibrium_count >= 1);
        for (const auto& f : br.equilibria) {
            bool found = false;
            for (const auto& e : ex.equilibria)
                if (e.strat1 == f.strat1 && e.strat2 == f.strat2) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("a coordination-heavy invalid quad yields several equilibria") {
    // decreasing differences put the catch-up value above the escape value,
    // so who funds the middle cells becomes a coordination problem
    ProfitQuad rev{0.3, 0.42, 0.0, 0.4};
    auto g = DiscreteGame::build(rev, kCf, FinancingEnv{0.001, 0.1}, 8);
    auto rep = solve_discrete_game(g, SolveMode::Exhaustive);
    CHECK(rep.equilibrium_count >= 2);
    // every reported profile survives all single-cell deviations
    for (const auto& e : rep.equilibria) {
        for (int i = 0; i < 8; ++i) {
            auto s1 = e.strat1;
            s1[i] ^= 1;
            CHECK(g.firm_payoff(s1, e.strat2) <= e.payoff1 + 1e-12);
            auto s2 = e.strat2;
            s2[i] ^= 1;
            CHECK(g.firm_payoff(s2, e.strat1) <= e.payoff2 + 1e-12);
        }
    }
}

TEST_CASE("two hundred cells track the continuum cut-offs within one cell") {
    const int n = 200;
    auto g = DiscreteGame::build(kS1, kCf, kFin, n);
    auto br = solve_discrete_game(g, SolveMode::BestResponse);
    REQUIRE(br.seed_converged);
    REQUIRE(br.equilibria.size() >= 1);
    const auto& e = br.equilibria[0];
    CHECK(e.double_cutoff);
    auto prefix_len = [](const DiscreteStrategy& s) {
        int k = 0;
        while (k < (int)s.size() && s[k]) ++k;
        return k;
    };
    const int k1 = prefix_len(e.strat1), k2 = prefix_len(e.strat2);
    const double hi = std::max(k1, k2), lo = std::min(k1, k2);
    CHECK(std::abs(lo - n * 0.194386633666993) <= 1.0);
    CHECK(std::abs(hi - n * 0.279378138157474) <= 1.0);

    auto rjv = discrete_rjv_optimum(g);
    CHECK(std::abs(rjv.prefix - n * 0.238197466412763) <= 1.0);
    // the reported payoff (joint profit including the no-innovation floor)
    // really is the max over prefix portfolios
    const double value = 2.0 * (kS1.pi_II - kS1.pi_00) / n;
    double best = 2.0 * kS1.pi_00, spend = 0;
    for (int k = 1; k <= n; ++k) {
        spend += g.cell_cost[k - 1];
        const double pay = 2.0 * kS1.pi_00 + k * value - spend -
                           kFin.rate * std::max(0.0, spend - 2.0 * kFin.budget);
        best = std::max(best, pay);
    }
    CHECK(rjv.payoff == doctest::Approx(best).epsilon(1e-12));
}
