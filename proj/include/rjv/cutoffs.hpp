#pragma once

#include <optional>

#include "rjv/cost.hpp"
#include "rjv/model.hpp"

namespace rjv {

struct FinancingEnv {
    double budget = 0; // per-firm internal funds B
    double rate = 0;   // borrowing premium rho
};
void validate_financing(const FinancingEnv& f); // budget >= 0, rate >= 0, finite

// Extended-real threshold; an infinite bound is never exceeded.
struct Threshold {
    double value = 0;
    bool infinite = false;
    static Threshold finite(double v) { return {v, false}; }
    static Threshold inf() { return {0, true}; }
    bool exceeded_by(double x) const { return !infinite && x > value; }
};

struct ThresholdRecord {
    Threshold rho_bar;                    // rate above which borrowing favors the pooled portfolio
    double b_bar = 0;                     // half the competitive spend; budgets above it are ample
    Threshold psi;                        // intense-regime profitability hurdle on the interval ratio
    std::optional<double> rho_bar_m;      // merger analogue of rho_bar
    std::optional<Threshold> rho_bar_lic; // licensing-adjusted variants
    std::optional<double> b_bar_lic;
    std::optional<Threshold> rho_bar_sp;  // spillover-adjusted variants (transformed quad)
    std::optional<double> b_bar_sp;
};

struct CutoffSet {
    double theta2 = 0;     // both firms invest below here
    double theta1 = 0;     // nobody invests above here
    double theta_rho = 0;  // pooled cut-off at the borrowing rate
    double theta_u = 0;    // pooled cut-off at rate zero
    double theta_b = 0;    // pooled budget exhaustion point
    double theta_star = 0; // pooled equilibrium cut-off
    std::optional<double> theta_rho_m, theta_u_m, theta_star_m; // merger analogues
};

// theta solving (1 + effective_rate) * C(theta) = delta_pi; 0 when delta_pi is 0.
double solve_value_cutoff(const CostFunction& cf, double delta_pi, double effective_rate);

// theta exhausting total_budget, i.e. mass(theta) = total_budget; returns 1.0
// when even the clamped mass stays below the budget.
double budget_cutoff(const CostFunction& cf, double total_budget);

// Cut-offs of a single decision maker with pooled project value, pooled budget
// and the borrowing kink: theta_rho when the budget runs out before theta_rho,
// otherwise the budget point capped at the rate-free optimum theta_u.
struct PooledCutoffs {
    double theta_rho = 0, theta_u = 0, theta_b = 0, theta_star = 0;
    bool borrows = false;
};
PooledCutoffs pooled_portfolio_cutoffs(const CostFunction& cf, double pooled_value,
                                       double pooled_budget, double rate);

ThresholdRecord compute_thresholds(const ProfitQuad& q, const std::optional<MonopolyProfits>& m,
                                   const CostFunction& cf, const FinancingEnv& fin);

CutoffSet compute_cutoff_set(const ProfitQuad& q, const std::optional<MonopolyProfits>& m,
                             const CostFunction& cf, const FinancingEnv& fin);

} // namespace rjv
