#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rjv/equilibria.hpp"

namespace rjv {

struct ConditionFlags {
    bool soft = false;
    bool moderate = false;
    bool intense = false;
    bool budget_above_threshold = false; // B > b_bar
    bool rate_above_threshold = false;   // rho > rho_bar
    bool profitability_guaranteed = false;  // some sufficient profitability rule fires
    bool profitable_innovation_cut = false; // net gain > 0 while innovation falls
};

// Deltas are alternative minus baseline. Spend deltas use total cost including
// financing. Probability deltas within 1e-9 read as equal, never strict.
struct ComparisonReport {
    double innovation_delta = 0;
    double spend_delta = 0;
    double net_profit_delta = 0;
    std::optional<double> cs_delta;
    ThresholdRecord thresholds;
    ConditionFlags flags;
    std::string verdict;
    PortfolioOutcome baseline, alternative;
    // merger comparison extras
    std::optional<bool> equal_investment_window;
    std::optional<std::string> cs_verdict; // "rjv-preferred" or "ambiguous"
    // extension extras
    std::optional<bool> licensing_occurs;
    std::vector<std::string> transformed_quad_violations;
};

// RJV versus the double cut-off competition equilibrium. The verdict is
// cross-checked against the innovation characterization (soft regimes raise
// innovation; otherwise it rises exactly when both the budget is tight and
// the rate is high, and a rise forces weakly lower spending); a mismatch
// beyond the equality band raises InvariantViolationError.
ComparisonReport compare_rjv_vs_competition(const ProfitQuad& q, const CostFunction& cf,
                                            const FinancingEnv& fin,
                                            const std::optional<CsTriple>& cs = std::nullopt,
                                            AssumptionPolicy policy = AssumptionPolicy::Enforce);

struct ProfitabilityReport {
    double net_profit_delta = 0;
    bool soft_rule = false;     // soft regime: formation always pays
    bool moderate_rule = false; // moderate regime + innovation gain
    bool intense_rule = false;  // intense regime + innovation gain + interval ratio above psi
    double interval_ratio = 0;  // (min{theta_b, theta_u} - theta1) / (theta1 - theta2)
    bool profitable_innovation_cut = false;
};
ProfitabilityReport rjv_profitability(const ProfitQuad& q, const CostFunction& cf,
                                      const FinancingEnv& fin,
                                      AssumptionPolicy policy = AssumptionPolicy::Enforce);

// Probability-weighted consumer surplus for a duopoly competition, RJV, or
// merger outcome; other regime labels are rejected. Requires the CS data to
// pass its sanity screens.
double expected_consumer_surplus(const CsTriple& cs, const PortfolioOutcome& outcome);

// RJV versus merger (baseline = merger, alternative = RJV). The innovation
// ranking follows the sign of 2*(pi_II - pi_00) - (pi_I - pi_0), with equality
// inside the budget window where both portfolios stop at the budget point.
ComparisonReport compare_rjv_vs_merger(const ProfitQuad& q, const MonopolyProfits& m,
                                       const CostFunction& cf, const FinancingEnv& fin,
                                       const std::optional<CsTriple>& cs = std::nullopt,
                                       AssumptionPolicy policy = AssumptionPolicy::Enforce);

namespace detail {
// Cross-check used by both the baseline and the transformed-profit comparison
// paths: the innovation verdict must match the threshold characterization
// (soft always raises it; otherwise a raise needs both threshold conditions).
void check_innovation_characterization(double innovation_delta, bool soft,
                                       bool budget_above, bool rate_above);
} // namespace detail

} // namespace rjv
