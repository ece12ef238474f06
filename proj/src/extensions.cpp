#include "rjv/extensions.hpp"

#include <algorithm>
#include <cmath>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

namespace {

std::string fmt(double x) { return num::format_sig12(x); }

std::string rjv_verdict(double innovation_delta) {
    if (innovation_delta > num::kProbTol) return "rjv-more-innovative";
    if (innovation_delta < -num::kProbTol) return "competition-more-innovative";
    return "equal-innovation";
}

} // namespace

SpilloverNoFinanceReport spillover_no_finance_compare(const ProfitQuad& q, SpilloverRate s,
                                                      const CostFunction& cf) {
    require_regular(q);
    const ProfitQuad tilde = spillover_transform(q, s);
    SpilloverNoFinanceReport rep;
    rep.theta1_nc = solve_value_cutoff(cf, tilde.pi_I0 - q.pi_00, 0.0);
    rep.theta2_nc = solve_value_cutoff(cf, q.pi_II - tilde.pi_0I, 0.0);
    rep.theta_u = solve_value_cutoff(cf, 2.0 * (q.pi_II - q.pi_00), 0.0);
    rep.rjv_better = rep.theta_u > rep.theta1_nc;

    if (q.pi_I0 > q.pi_II) {
        const double star = 1.0 - (q.pi_II - q.pi_00) / (q.pi_I0 - q.pi_II);
        if (star < 0.0)
            rep.sigma_star.kind = CriticalSpillover::Kind::Always;
        else if (star >= 1.0)
            rep.sigma_star.kind = CriticalSpillover::Kind::Never;
        else
            rep.sigma_star = {CriticalSpillover::Kind::Threshold, star};
    } else {
        // pi_I0 = pi_II: the blend never moves pi_I0, so the answer is fixed.
        rep.sigma_star.kind = q.pi_II > q.pi_00 ? CriticalSpillover::Kind::Always
                                                : CriticalSpillover::Kind::Never;
    }
    return rep;
}

ComparisonReport spillover_compare(const ProfitQuad& q, SpilloverRate s, const CostFunction& cf,
                                   const FinancingEnv& fin, AssumptionPolicy policy) {
    validate_financing(fin);
    if (policy == AssumptionPolicy::Enforce) require_regular(q);
    const ProfitQuad tilde = spillover_transform(q, s);

    ComparisonReport r;
    r.transformed_quad_violations = validate_regularity(tilde);
    if (policy == AssumptionPolicy::Enforce) {
        const double theta2_t = solve_value_cutoff(cf, tilde.pi_II - tilde.pi_0I, fin.rate);
        const double bound = cf.mass(std::min(theta2_t, num::kThetaCap));
        if (!(fin.budget < bound))
            throw AssumptionError("budget assumption fails for the leakage-adjusted game: B = " +
                                      fmt(fin.budget) + " must be below " + fmt(bound),
                                  {"A2"});
    }
    // The blended quad may fail the laggard inequality, so the equilibrium
    // call must not re-run the regularity gate.
    r.baseline = competition_equilibrium(tilde, cf, fin, AssumptionPolicy::Permissive);
    r.alternative = rjv_portfolio(q, cf, fin, policy);
    r.innovation_delta = r.alternative.innovation_prob - r.baseline.innovation_prob;
    r.spend_delta = r.alternative.total_cost - r.baseline.total_cost;
    r.net_profit_delta = r.alternative.expected_net_profit - r.baseline.expected_net_profit;

    r.thresholds = compute_thresholds(q, std::nullopt, cf, fin);
    const double joint_value = q.pi_II - q.pi_00;
    r.thresholds.rho_bar_sp =
        joint_value == 0.0
            ? Threshold::inf()
            : Threshold::finite((tilde.pi_I0 + q.pi_00 - 2.0 * q.pi_II) / (2.0 * joint_value));
    r.thresholds.b_bar_sp = 0.5 * cf.mass(std::min(r.baseline.innovation_prob, num::kThetaCap));

    // Classification of the blended game. When the laggard inequality fails,
    // the soft and intense branches are no longer exclusive; the exclusive
    // flags keep the intense-first precedence, while the characterization
    // check below needs the raw softness inequality.
    const bool soft_raw = tilde.pi_I0 - tilde.pi_II < tilde.pi_II - tilde.pi_00;
    r.flags.intense = tilde.pi_I0 - tilde.pi_II > tilde.pi_II - tilde.pi_0I;
    r.flags.soft = !r.flags.intense && soft_raw;
    r.flags.moderate = !r.flags.intense && !r.flags.soft;
    r.flags.budget_above_threshold = fin.budget > *r.thresholds.b_bar_sp;
    r.flags.rate_above_threshold = r.thresholds.rho_bar_sp->exceeded_by(fin.rate);
    r.flags.profitable_innovation_cut =
        r.net_profit_delta > 0 && r.innovation_delta < -num::kProbTol;
    r.verdict = rjv_verdict(r.innovation_delta);

    if (validate_regularity(q).empty() && r.baseline.innovation_prob < 1.0)
        detail::check_innovation_characterization(r.innovation_delta, soft_raw,
                                                  r.flags.budget_above_threshold,
                                                  r.flags.rate_above_threshold);
    return r;
}

ComparisonReport licensing_compare(const ProfitQuad& q, const LicensingTerms& t,
                                   const CostFunction& cf, const FinancingEnv& fin,
                                   AssumptionPolicy policy) {
    validate_financing(fin);
    if (policy == AssumptionPolicy::Enforce) require_regular(q);
    const LicensingOutcome lic = licensing_transform(q, t);
    // The adjusted quad keeps full regularity, so the standard pipeline
    // applies as-is; its thresholds are exactly the licensing-adjusted ones.
    ComparisonReport r = compare_rjv_vs_competition(lic.quad, cf, fin, std::nullopt, policy);
    const ThresholdRecord base = compute_thresholds(q, std::nullopt, cf, fin);
    r.thresholds.rho_bar_lic = r.thresholds.rho_bar;
    r.thresholds.b_bar_lic = r.thresholds.b_bar;
    r.thresholds.rho_bar = base.rho_bar;
    r.thresholds.b_bar = base.b_bar;
    r.licensing_occurs = lic.occurs;
    return r;
}

} // namespace rjv
