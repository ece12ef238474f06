#include "rjv/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

const char* to_string(RegimeLabel r) {
    switch (r) {
    case RegimeLabel::Competition: return "competition";
    case RegimeLabel::RJV: return "rjv";
    case RegimeLabel::Merger: return "merger";
    case RegimeLabel::ThreeFirmCompetition: return "three_firm_competition";
    case RegimeLabel::ThreeFirmRJV: return "three_firm_rjv";
    case RegimeLabel::TwoRJVs: return "two_rjvs";
    }
    return "?";
}

namespace {

std::string fmt(double x) { return num::format_sig12(x); }

void enforce_budget_bound(double budget, double bound, const char* what) {
    if (!(budget < bound))
        throw AssumptionError(std::string("budget assumption fails for ") + what +
                                  ": B = " + fmt(budget) + " must be below " + fmt(bound),
                              {"A2"});
}

} // namespace

PortfolioOutcome competition_equilibrium(const ProfitQuad& q, const CostFunction& cf,
                                         const FinancingEnv& fin, AssumptionPolicy policy) {
    validate_financing(fin);
    if (policy == AssumptionPolicy::Enforce) require_regular(q);
    double theta2 = solve_value_cutoff(cf, q.pi_II - q.pi_0I, fin.rate);
    double theta1 = solve_value_cutoff(cf, q.pi_I0 - q.pi_00, fin.rate);
    if (theta2 > theta1)
        throw InvariantViolationError("competition cut-offs out of order");
    double m2 = cf.mass(std::min(theta2, num::kThetaCap));
    double m1 = cf.mass(std::min(theta1, num::kThetaCap));
    if (policy == AssumptionPolicy::Enforce)
        enforce_budget_bound(fin.budget, m2, "the double cut-off equilibrium");

    PortfolioOutcome out;
    out.label = RegimeLabel::Competition;
    out.innovation_prob = theta1;
    out.duplicated_mass = theta2;
    out.raw_spend = m1 + m2;
    // Risk-dominant selection: one firm funds [0, theta1), the other [0, theta2).
    // With B < mass(theta2) both borrow, so this equals rate * (raw - 2B).
    out.financing_cost = fin.rate * (std::max(0.0, m1 - fin.budget) +
                                     std::max(0.0, m2 - fin.budget));
    out.total_cost = out.raw_spend + out.financing_cost;
    out.expected_gross_profit = 2.0 * theta2 * q.pi_II +
                                (theta1 - theta2) * (q.pi_I0 + q.pi_0I) +
                                2.0 * (1.0 - theta1) * q.pi_00;
    out.expected_net_profit = out.expected_gross_profit - out.total_cost;
    out.borrows = m1 > fin.budget || m2 > fin.budget;
    return out;
}

PortfolioOutcome rjv_portfolio(const ProfitQuad& q, const CostFunction& cf,
                               const FinancingEnv& fin, AssumptionPolicy policy) {
    validate_financing(fin);
    if (policy == AssumptionPolicy::Enforce) require_regular(q);
    auto pc = pooled_portfolio_cutoffs(cf, 2.0 * (q.pi_II - q.pi_00), 2.0 * fin.budget, fin.rate);
    PortfolioOutcome out;
    out.label = RegimeLabel::RJV;
    out.innovation_prob = pc.theta_star;
    out.duplicated_mass = 0.0;
    out.raw_spend = cf.mass(std::min(pc.theta_star, num::kThetaCap));
    out.financing_cost = fin.rate * std::max(0.0, out.raw_spend - 2.0 * fin.budget);
    out.total_cost = out.raw_spend + out.financing_cost;
    out.expected_gross_profit = 2.0 * pc.theta_star * q.pi_II +
                                2.0 * (1.0 - pc.theta_star) * q.pi_00;
    out.expected_net_profit = out.expected_gross_profit - out.total_cost;
    out.borrows = pc.borrows;
    return out;
}

PortfolioOutcome merger_portfolio(const ProfitQuad& q, const MonopolyProfits& m,
                                  const CostFunction& cf, const FinancingEnv& fin,
                                  AssumptionPolicy policy) {
    validate_financing(fin);
    if (policy == AssumptionPolicy::Enforce) {
        require_regular(q);
        auto codes = validate_monopoly_gain(m);
        if (!codes.empty())
            throw AssumptionError("merged entity must gain from innovating (pi_I > pi_0)", codes);
    }
    double gain = std::max(0.0, m.pi_I - m.pi_0);
    auto pc = pooled_portfolio_cutoffs(cf, gain, 2.0 * fin.budget, fin.rate);
    PortfolioOutcome out;
    out.label = RegimeLabel::Merger;
    out.innovation_prob = pc.theta_star;
    out.duplicated_mass = 0.0;
    out.raw_spend = cf.mass(std::min(pc.theta_star, num::kThetaCap));
    out.financing_cost = fin.rate * std::max(0.0, out.raw_spend - 2.0 * fin.budget);
    out.total_cost = out.raw_spend + out.financing_cost;
    out.expected_gross_profit = pc.theta_star * m.pi_I + (1.0 - pc.theta_star) * m.pi_0;
    out.expected_net_profit = out.expected_gross_profit - out.total_cost;
    out.borrows = pc.borrows;
    return out;
}

RiskDominanceReport risk_dominance_check(const ProfitQuad& q, double rate_low, double rate_high,
                                         const CostFunction& cf, double lo, double hi) {
    if (!(rate_low > 0) || !(rate_high >= rate_low) || !std::isfinite(rate_high))
        throw InvalidInputError("risk dominance: need 0 < rate_low <= rate_high");
    double theta2_low = solve_value_cutoff(cf, q.pi_II - q.pi_0I, rate_low);
    double theta1_high = solve_value_cutoff(cf, q.pi_I0 - q.pi_00, rate_high);
    if (!(lo >= theta2_low && hi <= theta1_high && lo < hi))
        throw InvalidInputError("risk dominance: deviation interval must lie inside (" +
                                fmt(theta2_low) + ", " + fmt(theta1_high) + ")");
    RiskDominanceReport r;
    r.mass_d = hi - lo;
    r.cost_d = cf.mass(hi) - cf.mass(lo);
    double catch_loss = q.pi_0I - q.pi_II; // forgone catching up, <= 0 for regular quads
    double escape_gain = q.pi_I0 - q.pi_00;
    r.u1 = r.mass_d * catch_loss + (1.0 + rate_low) * r.cost_d;
    r.u2 = r.mass_d * escape_gain - (1.0 + rate_high) * r.cost_d;
    r.v1 = r.mass_d * escape_gain - (1.0 + rate_low) * r.cost_d;
    r.v2 = r.mass_d * catch_loss + (1.0 + rate_high) * r.cost_d;
    r.dominant = r.v1 * r.v2 >= r.u1 * r.u2;
    return r;
}

std::vector<std::string> validate_three_firm(const ThreeFirmProfits& p) {
    for (double x : {p.pi_000, p.pi_0I0, p.pi_0II, p.pi_I00, p.pi_II0, p.pi_III})
        if (!std::isfinite(x)) throw InvalidInputError("three-firm profits: non-finite entry");
    std::vector<std::string> codes;
    if (p.pi_000 < 0 || p.pi_0I0 < 0 || p.pi_0II < 0 || p.pi_I00 < 0 || p.pi_II0 < 0 ||
        p.pi_III < 0)
        codes.push_back("A6i");
    if (p.pi_III < p.pi_000) codes.push_back("A6ii");
    if (p.pi_000 < p.pi_0I0 || p.pi_0I0 < p.pi_0II) codes.push_back("A6iii");
    if (p.pi_I00 - p.pi_000 < p.pi_II0 - p.pi_0I0 ||
        p.pi_II0 - p.pi_0I0 < p.pi_III - p.pi_0II)
        codes.push_back("A6iv");
    return codes;
}

ThreeFirmOutcomes three_firm_outcomes(const ThreeFirmProfits& p, const CostFunction& cf,
                                      const FinancingEnv& fin, AssumptionPolicy policy) {
    validate_financing(fin);
    if (policy == AssumptionPolicy::Enforce) {
        auto codes = validate_three_firm(p);
        if (!codes.empty()) {
            std::string msg = "three-firm profits fail regularity:";
            for (const auto& c : codes) msg += " " + c;
            throw AssumptionError(msg, codes);
        }
    }
    ThreeFirmOutcomes out;
    out.theta1 = solve_value_cutoff(cf, p.pi_I00 - p.pi_000, fin.rate);
    out.theta2 = solve_value_cutoff(cf, p.pi_II0 - p.pi_0I0, fin.rate);
    out.theta3 = solve_value_cutoff(cf, p.pi_III - p.pi_0II, fin.rate);
    if (!(out.theta3 <= out.theta2 && out.theta2 <= out.theta1))
        throw InvariantViolationError("three-firm cut-offs out of order");
    double m1 = cf.mass(std::min(out.theta1, num::kThetaCap));
    double m2 = cf.mass(std::min(out.theta2, num::kThetaCap));
    double m3 = cf.mass(std::min(out.theta3, num::kThetaCap));
    if (policy == AssumptionPolicy::Enforce)
        enforce_budget_bound(fin.budget, m3, "the triple cut-off equilibrium");

    PortfolioOutcome& c = out.competition;
    c.label = RegimeLabel::ThreeFirmCompetition;
    c.innovation_prob = out.theta1;
    c.duplicated_mass = out.theta2;
    c.raw_spend = m1 + m2 + m3;
    c.financing_cost = fin.rate * (std::max(0.0, m1 - fin.budget) +
                                   std::max(0.0, m2 - fin.budget) +
                                   std::max(0.0, m3 - fin.budget));
    c.total_cost = c.raw_spend + c.financing_cost;
    c.expected_gross_profit = 3.0 * out.theta3 * p.pi_III +
                              (out.theta2 - out.theta3) * (2.0 * p.pi_II0 + p.pi_0II) +
                              (out.theta1 - out.theta2) * (p.pi_I00 + 2.0 * p.pi_0I0) +
                              3.0 * (1.0 - out.theta1) * p.pi_000;
    c.expected_net_profit = c.expected_gross_profit - c.total_cost;
    c.borrows = m1 > fin.budget || m2 > fin.budget || m3 > fin.budget;

    auto pc = pooled_portfolio_cutoffs(cf, 3.0 * (p.pi_III - p.pi_000), 3.0 * fin.budget,
                                       fin.rate);
    PortfolioOutcome& r = out.rjv;
    r.label = RegimeLabel::ThreeFirmRJV;
    r.innovation_prob = pc.theta_star;
    r.duplicated_mass = 0.0;
    r.raw_spend = cf.mass(std::min(pc.theta_star, num::kThetaCap));
    r.financing_cost = fin.rate * std::max(0.0, r.raw_spend - 3.0 * fin.budget);
    r.total_cost = r.raw_spend + r.financing_cost;
    r.expected_gross_profit = 3.0 * pc.theta_star * p.pi_III +
                              3.0 * (1.0 - pc.theta_star) * p.pi_000;
    r.expected_net_profit = r.expected_gross_profit - r.total_cost;
    r.borrows = pc.borrows;
    return out;
}

std::vector<std::string> validate_four_firm(const FourFirmProfits& p) {
    for (int n = 0; n < 4; ++n)
        if (!std::isfinite(p.with_tech[n]) || !std::isfinite(p.without_tech[n]))
            throw InvalidInputError("four-firm profits: non-finite entry");
    std::vector<std::string> codes;
    bool neg = false, gain_neg = false, rival_up = false, diff_up = false;
    for (int n = 0; n < 4; ++n) {
        if (p.with_tech[n] < 0 || p.without_tech[n] < 0) neg = true;
        if (p.with_tech[n] < p.without_tech[n]) gain_neg = true;
        if (n > 0) {
            if (p.with_tech[n] > p.with_tech[n - 1] ||
                p.without_tech[n] > p.without_tech[n - 1])
                rival_up = true;
            if (p.with_tech[n] - p.without_tech[n] >
                p.with_tech[n - 1] - p.without_tech[n - 1])
                diff_up = true;
        }
    }
    if (neg) codes.push_back("A9i");
    if (gain_neg) codes.push_back("A9ii");
    if (rival_up) codes.push_back("A9iii");
    if (diff_up) codes.push_back("A9iv");
    if (p.with_tech[1] - p.without_tech[0] < p.with_tech[3] - p.without_tech[2])
        codes.push_back("A9v");
    return codes;
}

PortfolioOutcome two_rjv_equilibrium(const FourFirmProfits& p, const CostFunction& cf,
                                     const FinancingEnv& fin, AssumptionPolicy policy) {
    validate_financing(fin);
    if (policy == AssumptionPolicy::Enforce) {
        auto codes = validate_four_firm(p);
        if (!codes.empty()) {
            std::string msg = "four-firm profits fail regularity:";
            for (const auto& c : codes) msg += " " + c;
            throw AssumptionError(msg, codes);
        }
    }
    // Pair project values: leading pair escapes against a no-tech pair, the
    // trailing pair catches up against a tech-holding pair.
    double value_hi = 2.0 * (p.with_tech[1] - p.without_tech[0]);
    double value_lo = 2.0 * (p.with_tech[3] - p.without_tech[2]);
    double theta1_u = solve_value_cutoff(cf, std::max(0.0, value_hi), 0.0);
    double theta2_u = solve_value_cutoff(cf, std::max(0.0, value_lo), 0.0);
    if (theta2_u > theta1_u)
        throw InvariantViolationError("two-RJV pair cut-offs out of order");
    double theta1_rho = solve_value_cutoff(cf, std::max(0.0, value_hi), fin.rate);
    double theta_b = budget_cutoff(cf, 2.0 * fin.budget);
    if (policy == AssumptionPolicy::Enforce &&
        !(2.0 * fin.budget > cf.mass(std::min(theta1_rho, num::kThetaCap))))
        throw AssumptionError("pooled pair budget must exceed the leading pair's borrowing "
                              "cut-off spend (2B > mass(" + fmt(theta1_rho) + "))",
                              {"A7"});
    double theta_h = std::min(theta1_u, theta_b);
    double theta_l = std::min(theta2_u, theta_b);

    PortfolioOutcome out;
    out.label = RegimeLabel::TwoRJVs;
    out.innovation_prob = theta_h;
    out.duplicated_mass = theta_l;
    out.raw_spend = cf.mass(std::min(theta_h, num::kThetaCap)) +
                    cf.mass(std::min(theta_l, num::kThetaCap));
    out.financing_cost = 0.0; // neither pair outspends its pooled budget
    out.total_cost = out.raw_spend;
    out.expected_gross_profit = theta_l * 4.0 * p.with_tech[3] +
                                (theta_h - theta_l) *
                                    (2.0 * p.with_tech[1] + 2.0 * p.without_tech[2]) +
                                (1.0 - theta_h) * 4.0 * p.without_tech[0];
    out.expected_net_profit = out.expected_gross_profit - out.total_cost;
    out.borrows = false;
    return out;
}

} // namespace rjv
