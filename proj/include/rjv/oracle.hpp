#pragma once

#include <cstdint>
#include <vector>

#include "rjv/cutoffs.hpp"

namespace rjv {

// 4^N profiles are enumerated in exhaustive mode; 14 keeps that under a
// minute on one core.
inline constexpr int kMaxExhaustiveCells = 14;
inline constexpr int kMaxBestResponseCells = 20000;
inline constexpr int kMaxStoredEquilibria = 64;

// invest flag per cell
using DiscreteStrategy = std::vector<std::uint8_t>;

enum class SolveMode { Exhaustive, BestResponse };

// Uniform discretization of the project line: cell i covers
// [i/N, (i+1)/N), succeeds with probability 1/N, and costs its exact cost
// mass, so prefix strategies spend exactly what the continuum model does.
struct DiscreteGame {
    int cells = 0;
    ProfitQuad quad;
    FinancingEnv fin;
    std::vector<double> cell_cost;

    static DiscreteGame build(const ProfitQuad& q, const CostFunction& cf,
                              const FinancingEnv& fin, int cells);
    // Expected payoff of `mine` against `other`, including the borrowing kink.
    double firm_payoff(const DiscreteStrategy& mine, const DiscreteStrategy& other) const;
};

struct ProfileRecord {
    DiscreteStrategy strat1, strat2;
    double payoff1 = 0, payoff2 = 0;
    bool double_cutoff = false; // intersection and union are both prefixes
};

struct OracleReport {
    std::vector<ProfileRecord> equilibria; // capped at kMaxStoredEquilibria
    long long equilibrium_count = 0;
    bool truncated = false;
    bool all_double_cutoff = true;
    bool unique_innovation_mass = true;
    double innovation_mass = 0; // cells covered by at least one firm, over N
    // Best-response indifferences hit while solving; broken toward not
    // investing, since the continuum model's indifferences carry no mass.
    long long tie_breaks = 0;
    bool seed_converged = true; // best-response mode only
    bool seeds_coincide = true; // best-response mode only
};

// Exhaustive: every pure Nash profile, cross-checked against exact best
// responses. BestResponse: asynchronous best-response dynamics from the
// all-zero and all-one seeds, reporting the fixed points reached.
OracleReport solve_discrete_game(const DiscreteGame& g, SolveMode mode, int workers = 0);

// Single decision maker with pooled value 2*(pi_II - pi_00) per cell mass and
// pooled budget 2B; the optimum over prefix portfolios, ties toward shorter.
struct DiscreteRjvResult {
    int prefix = 0;
    double payoff = 0;
    DiscreteStrategy strategy;
};
DiscreteRjvResult discrete_rjv_optimum(const DiscreteGame& g);

} // namespace rjv
