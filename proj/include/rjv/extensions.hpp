#pragma once

#include "rjv/comparisons.hpp"

namespace rjv {

// Critical leakage rate above which the pooled portfolio out-innovates
// unconstrained competition; Always / Never when the answer does not depend
// on sigma within [0,1].
struct CriticalSpillover {
    enum class Kind { Threshold, Always, Never };
    Kind kind = Kind::Threshold;
    double value = 0; // meaningful for Threshold only
};

// Leakage comparison in the unconstrained benchmark (no budgets, rate zero).
struct SpilloverNoFinanceReport {
    double theta1_nc = 0; // competition upper cut-off under leakage
    double theta2_nc = 0; // competition lower cut-off under leakage
    double theta_u = 0;   // pooled rate-free cut-off; leakage does not move it
    bool rjv_better = false;
    CriticalSpillover sigma_star;
};
SpilloverNoFinanceReport spillover_no_finance_compare(const ProfitQuad& q, SpilloverRate s,
                                                      const CostFunction& cf);

// Financially constrained leakage comparison. Competition runs on the blended
// quad; the pooled portfolio runs on the original one (its output is shared
// either way). Thresholds rho_bar_sp / b_bar_sp and the condition flags refer
// to the blended game; rho_bar / b_bar stay at their sigma = 0 values. The
// blended quad can fail the laggard inequality (pi_00 >= blended pi_0I); that
// is reported in transformed_quad_violations, not treated as an error.
ComparisonReport spillover_compare(const ProfitQuad& q, SpilloverRate s, const CostFunction& cf,
                                   const FinancingEnv& fin,
                                   AssumptionPolicy policy = AssumptionPolicy::Enforce);

// Licensing comparison. Competition runs on the licensing-adjusted quad
// (lower cut-off unchanged, so the budget bound carries over); the pooled
// portfolio is unaffected. rho_bar_lic / b_bar_lic and the condition flags
// refer to the adjusted game; rho_bar / b_bar stay at the delta-free values.
ComparisonReport licensing_compare(const ProfitQuad& q, const LicensingTerms& t,
                                   const CostFunction& cf, const FinancingEnv& fin,
                                   AssumptionPolicy policy = AssumptionPolicy::Enforce);

} // namespace rjv
