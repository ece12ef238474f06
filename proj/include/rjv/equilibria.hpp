#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rjv/cutoffs.hpp"

namespace rjv {

enum class RegimeLabel {
    Competition,
    RJV,
    Merger,
    ThreeFirmCompetition,
    ThreeFirmRJV,
    TwoRJVs,
};
const char* to_string(RegimeLabel r);

// Enforce: reject assumption violations. Permissive: compute anyway so callers
// can annotate; numbers then describe the formulas, not a verified equilibrium.
enum class AssumptionPolicy { Enforce, Permissive };

struct PortfolioOutcome {
    RegimeLabel label = RegimeLabel::Competition;
    double innovation_prob = 0;       // mass of projects funded by at least one agent
    double duplicated_mass = 0;       // mass funded by more than one
    double raw_spend = 0;             // industry R&D outlay before financing
    double financing_cost = 0;        // rate times total borrowed
    double total_cost = 0;            // raw_spend + financing_cost
    double expected_gross_profit = 0; // industry, before R&D costs
    double expected_net_profit = 0;
    bool borrows = false;
};

// Double cut-off equilibrium: both firms fund below theta2, exactly one on
// (theta2, theta1), none above. Aggregates are the same across the selection
// of who funds the middle interval; financing uses the per-firm kink, which
// under the budget assumption (B < mass(theta2)) is selection-invariant.
PortfolioOutcome competition_equilibrium(const ProfitQuad& q, const CostFunction& cf,
                                         const FinancingEnv& fin,
                                         AssumptionPolicy policy = AssumptionPolicy::Enforce);

// Pooled single cut-off portfolio with budget 2B and project value
// 2*(pi_II - pi_00); borrows exactly when the budget point falls short of the
// borrowing-rate cut-off.
PortfolioOutcome rjv_portfolio(const ProfitQuad& q, const CostFunction& cf,
                               const FinancingEnv& fin,
                               AssumptionPolicy policy = AssumptionPolicy::Enforce);

PortfolioOutcome merger_portfolio(const ProfitQuad& q, const MonopolyProfits& m,
                                  const CostFunction& cf, const FinancingEnv& fin,
                                  AssumptionPolicy policy = AssumptionPolicy::Enforce);

// Risk-dominance screen between the two asymmetric continuation equilibria on
// a deviation interval [lo, hi] inside (theta2 at rate_low, theta1 at
// rate_high). Firm 1 borrows at rate_low. dominant: firm 1 funding the
// interval is the risk-dominant selection (v1*v2 >= u1*u2). No regularity
// gate: diagnostic mode reports raw payoffs for any quad.
struct RiskDominanceReport {
    double u1 = 0, u2 = 0, v1 = 0, v2 = 0;
    double mass_d = 0, cost_d = 0;
    bool dominant = false;
};
RiskDominanceReport risk_dominance_check(const ProfitQuad& q, double rate_low, double rate_high,
                                         const CostFunction& cf, double lo, double hi);

// Three-firm profits by (own tech, number of successful rivals); symmetric in
// rival identities.
struct ThreeFirmProfits {
    double pi_000 = 0, pi_0I0 = 0, pi_0II = 0;
    double pi_I00 = 0, pi_II0 = 0, pi_III = 0;
};
// Codes A6i (negativity), A6ii (pi_III < pi_000), A6iii (rival innovation
// raises a no-tech profit), A6iv (differences not decreasing).
std::vector<std::string> validate_three_firm(const ThreeFirmProfits& p);

struct ThreeFirmOutcomes {
    double theta3 = 0, theta2 = 0, theta1 = 0;
    PortfolioOutcome competition, rjv;
};
ThreeFirmOutcomes three_firm_outcomes(const ThreeFirmProfits& p, const CostFunction& cf,
                                      const FinancingEnv& fin,
                                      AssumptionPolicy policy = AssumptionPolicy::Enforce);

// Four-firm profits by (own tech, count of rivals holding the tech).
struct FourFirmProfits {
    double with_tech[4] = {0, 0, 0, 0};
    double without_tech[4] = {0, 0, 0, 0};
};
// Codes A9i negativity, A9ii own-tech gain negative, A9iii rival tech raises a
// profit, A9iv own-tech gain not decreasing in rival count, A9v pair-level
// decreasing differences (needed for ordered pair cut-offs).
std::vector<std::string> validate_four_firm(const FourFirmProfits& p);

// Two rival RJVs, each pooling 2B. Requires the pooled budget to cover the
// leading pair's borrowing-rate cut-off, so neither pair borrows; cut-offs are
// the rate-free pair cut-offs capped at the budget point.
PortfolioOutcome two_rjv_equilibrium(const FourFirmProfits& p, const CostFunction& cf,
                                     const FinancingEnv& fin,
                                     AssumptionPolicy policy = AssumptionPolicy::Enforce);

} // namespace rjv
