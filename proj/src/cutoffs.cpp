#include "rjv/cutoffs.hpp"

#include <cmath>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

void validate_financing(const FinancingEnv& f) {
    if (!std::isfinite(f.budget) || f.budget < 0)
        throw InvalidInputError("financing: budget must be finite and >= 0");
    if (!std::isfinite(f.rate) || f.rate < 0)
        throw InvalidInputError("financing: rate must be finite and >= 0");
}

double solve_value_cutoff(const CostFunction& cf, double delta_pi, double effective_rate) {
    if (!std::isfinite(delta_pi) || delta_pi < 0)
        throw InvalidInputError("value cut-off: profit difference must be finite and >= 0");
    if (!std::isfinite(effective_rate) || effective_rate < 0)
        throw InvalidInputError("value cut-off: rate must be finite and >= 0");
    double target = delta_pi / (1.0 + effective_rate);
    if (target == 0.0) return 0.0;
    if (cf.value(num::kThetaCap) <= target) return 1.0;
    return num::bisect_increasing([&cf](double t) { return cf.value(t); }, 0.0, num::kThetaCap,
                                  target);
}

double budget_cutoff(const CostFunction& cf, double total_budget) {
    if (!std::isfinite(total_budget) || total_budget < 0)
        throw InvalidInputError("budget cut-off: budget must be finite and >= 0");
    if (total_budget == 0.0) return 0.0;
    if (cf.mass(num::kThetaCap) <= total_budget) return 1.0;
    return num::bisect_increasing([&cf](double t) { return cf.mass(t); }, 0.0, num::kThetaCap,
                                  total_budget);
}

PooledCutoffs pooled_portfolio_cutoffs(const CostFunction& cf, double pooled_value,
                                       double pooled_budget, double rate) {
    PooledCutoffs out;
    out.theta_rho = solve_value_cutoff(cf, pooled_value, rate);
    out.theta_u = solve_value_cutoff(cf, pooled_value, 0.0);
    out.theta_b = budget_cutoff(cf, pooled_budget);
    if (out.theta_b < out.theta_rho) {
        out.theta_star = out.theta_rho;
        out.borrows = true;
    } else {
        out.theta_star = std::min(out.theta_b, out.theta_u);
    }
    return out;
}

ThresholdRecord compute_thresholds(const ProfitQuad& q, const std::optional<MonopolyProfits>& m,
                                   const CostFunction& cf, const FinancingEnv& fin) {
    require_regular(q);
    validate_financing(fin);
    ThresholdRecord rec;
    double joint = q.pi_II - q.pi_00;
    if (joint == 0.0) {
        rec.rho_bar = Threshold::inf();
        rec.psi = Threshold::inf();
    } else {
        rec.rho_bar = Threshold::finite((q.pi_I0 - 2.0 * q.pi_II + q.pi_00) / (2.0 * joint));
        rec.psi = Threshold::finite((q.pi_I0 + q.pi_0I - 2.0 * q.pi_II) / (2.0 * joint));
    }
    double theta1 = solve_value_cutoff(cf, q.pi_I0 - q.pi_00, fin.rate);
    rec.b_bar = 0.5 * cf.mass(std::min(theta1, num::kThetaCap));
    if (m) {
        auto codes = validate_monopoly_gain(*m);
        if (!codes.empty())
            throw AssumptionError("merged entity must gain from innovating (pi_I > pi_0)", codes);
        double gain = m->pi_I - m->pi_0;
        rec.rho_bar_m = (q.pi_I0 - q.pi_00 - gain) / gain;
    }
    return rec;
}

CutoffSet compute_cutoff_set(const ProfitQuad& q, const std::optional<MonopolyProfits>& m,
                             const CostFunction& cf, const FinancingEnv& fin) {
    require_regular(q);
    validate_financing(fin);
    CutoffSet cs;
    cs.theta2 = solve_value_cutoff(cf, q.pi_II - q.pi_0I, fin.rate);
    cs.theta1 = solve_value_cutoff(cf, q.pi_I0 - q.pi_00, fin.rate);
    auto pooled = pooled_portfolio_cutoffs(cf, 2.0 * (q.pi_II - q.pi_00), 2.0 * fin.budget,
                                           fin.rate);
    cs.theta_rho = pooled.theta_rho;
    cs.theta_u = pooled.theta_u;
    cs.theta_b = pooled.theta_b;
    cs.theta_star = pooled.theta_star;
    if (m) {
        auto codes = validate_monopoly_gain(*m);
        if (!codes.empty())
            throw AssumptionError("merged entity must gain from innovating (pi_I > pi_0)", codes);
        auto mp = pooled_portfolio_cutoffs(cf, m->pi_I - m->pi_0, 2.0 * fin.budget, fin.rate);
        cs.theta_rho_m = mp.theta_rho;
        cs.theta_u_m = mp.theta_u;
        cs.theta_star_m = mp.theta_star;
    }
    return cs;
}

} // namespace rjv
