#pragma once

#include "rjv/model.hpp"

namespace rjv {

// Linear Cournot duopoly with intercept a, slope b, marginal cost c, and an
// innovation cutting the cost by `innovation`. Everything depends on the
// primitives through alpha = a - c only.
struct CournotPrimitives {
    double a = 0;
    double b = 1;
    double c = 0;
    double innovation = 0;
    double alpha() const { return a - c; }
};

// Differentiated Bertrand duopoly with inverse demand p_i = 1 - q_i - b q_j,
// common marginal cost c, and a cost-cutting innovation.
struct BertrandPrimitives {
    double b = 0;
    double c = 0;
    double innovation = 0;
};

struct MarketBundle {
    ProfitQuad quad;
    MonopolyProfits monopoly;
    CsTriple cs;
};

// Largest cost reduction that still leaves the laggard with positive output;
// +infinity when b = 0 and the products do not compete.
double bertrand_innovation_bound(double b, double c);

// Both builders reject drastic innovations and out-of-range primitives with
// MarketValidityError. The monopoly counterfactual is the merged owner of
// both production lines; an innovation applies to both.
MarketBundle cournot_market(const CournotPrimitives& p);
MarketBundle bertrand_market(const BertrandPrimitives& p);

} // namespace rjv
