#include "rjv/comparisons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

namespace detail {

void check_innovation_characterization(double innovation_delta, bool soft, bool budget_above,
                                       bool rate_above) {
    const bool expect_rise = soft || (budget_above && rate_above);
    if (innovation_delta > num::kProbTol && !expect_rise)
        throw InvariantViolationError(
            "innovation rose although neither softness nor both threshold conditions hold");
    if (innovation_delta < -num::kProbTol && expect_rise)
        throw InvariantViolationError(
            "innovation fell although the threshold characterization predicts a rise");
}

} // namespace detail

namespace {

// Same precedence as classify_regime but usable on transformed or invalid
// quads, where the regularity gate would get in the way.
MarketRegime classify_unchecked(const ProfitQuad& q) {
    if (q.pi_I0 - q.pi_II > q.pi_II - q.pi_0I) return MarketRegime::Intense;
    if (q.pi_I0 - q.pi_II < q.pi_II - q.pi_00) return MarketRegime::Soft;
    return MarketRegime::Moderate;
}

std::string innovation_verdict(double delta, const char* alt, const char* base) {
    if (delta > num::kProbTol) return std::string(alt) + "-more-innovative";
    if (delta < -num::kProbTol) return std::string(base) + "-more-innovative";
    return "equal-innovation";
}

ProfitabilityReport profitability_rules(const ProfitQuad& q, const CostFunction& cf,
                                        const FinancingEnv& fin, const ThresholdRecord& th,
                                        const PortfolioOutcome& comp, const PortfolioOutcome& rjv) {
    ProfitabilityReport rep;
    rep.net_profit_delta = rjv.expected_net_profit - comp.expected_net_profit;
    const double innovation_delta = rjv.innovation_prob - comp.innovation_prob;
    const double theta1 = comp.innovation_prob;
    const double theta2 = comp.duplicated_mass;
    const double theta_u = solve_value_cutoff(cf, 2.0 * (q.pi_II - q.pi_00), 0.0);
    const double theta_b = budget_cutoff(cf, 2.0 * fin.budget);
    const double numer = std::min(theta_b, theta_u) - theta1;
    const double denom = theta1 - theta2;
    if (denom > 0)
        rep.interval_ratio = numer / denom;
    else
        rep.interval_ratio = numer > 0   ? std::numeric_limits<double>::infinity()
                             : numer < 0 ? -std::numeric_limits<double>::infinity()
                                         : 0.0;
    const MarketRegime regime = classify_unchecked(q);
    rep.soft_rule = regime == MarketRegime::Soft;
    rep.moderate_rule = regime == MarketRegime::Moderate && innovation_delta > num::kProbTol;
    // The intense rule needs a nonempty asymmetric interval; a collapsed one
    // short-circuits to false rather than dividing by zero.
    rep.intense_rule = regime == MarketRegime::Intense && innovation_delta > num::kProbTol &&
                       denom > 0 && th.psi.exceeded_by(rep.interval_ratio);
    rep.profitable_innovation_cut = rep.net_profit_delta > 0 && innovation_delta < -num::kProbTol;
    return rep;
}

} // namespace

ComparisonReport compare_rjv_vs_competition(const ProfitQuad& q, const CostFunction& cf,
                                            const FinancingEnv& fin,
                                            const std::optional<CsTriple>& cs,
                                            AssumptionPolicy policy) {
    ComparisonReport r;
    r.baseline = competition_equilibrium(q, cf, fin, policy);
    r.alternative = rjv_portfolio(q, cf, fin, policy);
    r.thresholds = compute_thresholds(q, std::nullopt, cf, fin);
    r.innovation_delta = r.alternative.innovation_prob - r.baseline.innovation_prob;
    r.spend_delta = r.alternative.total_cost - r.baseline.total_cost;
    r.net_profit_delta = r.alternative.expected_net_profit - r.baseline.expected_net_profit;

    const MarketRegime regime = classify_unchecked(q);
    r.flags.soft = regime == MarketRegime::Soft;
    r.flags.moderate = regime == MarketRegime::Moderate;
    r.flags.intense = regime == MarketRegime::Intense;
    r.flags.budget_above_threshold = fin.budget > r.thresholds.b_bar;
    r.flags.rate_above_threshold = r.thresholds.rho_bar.exceeded_by(fin.rate);

    const ProfitabilityReport prof =
        profitability_rules(q, cf, fin, r.thresholds, r.baseline, r.alternative);
    r.flags.profitability_guaranteed = prof.soft_rule || prof.moderate_rule || prof.intense_rule;
    r.flags.profitable_innovation_cut = prof.profitable_innovation_cut;
    r.verdict = innovation_verdict(r.innovation_delta, "rjv", "competition");

    // The characterization is only a theorem for regular quads, and the strict
    // cut-off comparisons behind it degenerate when the upper cut-off pins at
    // 1; permissive callers feeding damaged quads get numbers, not guarantees.
    if (validate_regularity(q).empty() && r.baseline.innovation_prob < 1.0)
        detail::check_innovation_characterization(r.innovation_delta, r.flags.soft,
                                                  r.flags.budget_above_threshold,
                                                  r.flags.rate_above_threshold);

    if (cs)
        r.cs_delta = expected_consumer_surplus(*cs, r.alternative) -
                     expected_consumer_surplus(*cs, r.baseline);
    return r;
}

ProfitabilityReport rjv_profitability(const ProfitQuad& q, const CostFunction& cf,
                                      const FinancingEnv& fin, AssumptionPolicy policy) {
    const PortfolioOutcome comp = competition_equilibrium(q, cf, fin, policy);
    const PortfolioOutcome rjv = rjv_portfolio(q, cf, fin, policy);
    const ThresholdRecord th = compute_thresholds(q, std::nullopt, cf, fin);
    return profitability_rules(q, cf, fin, th, comp, rjv);
}

double expected_consumer_surplus(const CsTriple& cs, const PortfolioOutcome& outcome) {
    auto codes = validate_cs(cs);
    if (!codes.empty())
        throw AssumptionError("consumer surplus data fails its sanity screens", codes);
    switch (outcome.label) {
    case RegimeLabel::Competition: {
        const double theta1 = outcome.innovation_prob;
        const double theta2 = outcome.duplicated_mass;
        return theta2 * cs.cs_II + (theta1 - theta2) * cs.cs_I0 + (1.0 - theta1) * cs.cs_00;
    }
    case RegimeLabel::RJV:
        return outcome.innovation_prob * cs.cs_II + (1.0 - outcome.innovation_prob) * cs.cs_00;
    case RegimeLabel::Merger:
        return outcome.innovation_prob * cs.cs_mI + (1.0 - outcome.innovation_prob) * cs.cs_m0;
    default:
        throw InvalidInputError("expected consumer surplus covers the two-firm regimes only");
    }
}

ComparisonReport compare_rjv_vs_merger(const ProfitQuad& q, const MonopolyProfits& m,
                                       const CostFunction& cf, const FinancingEnv& fin,
                                       const std::optional<CsTriple>& cs,
                                       AssumptionPolicy policy) {
    ComparisonReport r;
    r.baseline = merger_portfolio(q, m, cf, fin, policy);
    r.alternative = rjv_portfolio(q, cf, fin, policy);
    if (policy == AssumptionPolicy::Enforce)
        (void)competition_equilibrium(q, cf, fin, policy); // the shared benchmark must be well posed
    r.thresholds = compute_thresholds(q, m, cf, fin);
    r.innovation_delta = r.alternative.innovation_prob - r.baseline.innovation_prob;
    r.spend_delta = r.alternative.total_cost - r.baseline.total_cost;
    r.net_profit_delta = r.alternative.expected_net_profit - r.baseline.expected_net_profit;

    const MarketRegime regime = classify_unchecked(q);
    r.flags.soft = regime == MarketRegime::Soft;
    r.flags.moderate = regime == MarketRegime::Moderate;
    r.flags.intense = regime == MarketRegime::Intense;
    r.flags.budget_above_threshold = fin.budget > r.thresholds.b_bar;
    r.flags.rate_above_threshold = r.thresholds.rho_bar.exceeded_by(fin.rate);

    const double value_gap = 2.0 * (q.pi_II - q.pi_00) - std::max(0.0, m.pi_I - m.pi_0);
    const double rjv_value = 2.0 * (q.pi_II - q.pi_00);
    const double merger_value = std::max(0.0, m.pi_I - m.pi_0);
    const double theta_rho = solve_value_cutoff(cf, rjv_value, fin.rate);
    const double theta_u = solve_value_cutoff(cf, rjv_value, 0.0);
    const double theta_rho_m = solve_value_cutoff(cf, merger_value, fin.rate);
    const double theta_u_m = solve_value_cutoff(cf, merger_value, 0.0);
    const double theta_b = budget_cutoff(cf, 2.0 * fin.budget);
    // Both portfolios sit exactly at the budget point when it falls between
    // their borrowing and rate-free cut-offs simultaneously.
    const double window_lo = std::max(theta_rho, theta_rho_m);
    const double window_hi = std::min(theta_u, theta_u_m);
    const bool in_window = theta_b >= window_lo && theta_b <= window_hi;
    r.equal_investment_window = in_window;
    const bool rjv_cs_safe =
        value_gap >= 0.0 || (theta_b >= theta_rho_m && theta_b <= theta_u);
    r.cs_verdict = rjv_cs_safe ? std::string("rjv-preferred") : std::string("ambiguous");
    r.verdict = innovation_verdict(r.innovation_delta, "rjv", "merger");

    if (policy == AssumptionPolicy::Enforce) {
        if (in_window && std::abs(r.innovation_delta) > num::kProbTol)
            throw InvariantViolationError(
                "both portfolios should stop at the shared budget point but differ");
        if (r.innovation_delta > num::kProbTol && value_gap <= 0)
            throw InvariantViolationError(
                "rjv out-innovated the merger without the larger pooled value");
        if (r.innovation_delta < -num::kProbTol && value_gap >= 0)
            throw InvariantViolationError(
                "merger out-innovated the rjv without the larger pooled value");
    }

    if (cs)
        r.cs_delta = expected_consumer_surplus(*cs, r.alternative) -
                     expected_consumer_surplus(*cs, r.baseline);
    return r;
}

} // namespace rjv
