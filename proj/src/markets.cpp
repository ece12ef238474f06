#include "rjv/markets.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

namespace {

std::string fmt(double x) { return num::format_sig12(x); }

void require_finite(std::initializer_list<double> xs, const char* what) {
    for (double x : xs)
        if (!std::isfinite(x)) throw InvalidInputError(std::string(what) + ": non-finite primitive");
}

// Differentiated-Bertrand equilibrium output for a firm with cost ci facing cj.
double bertrand_quantity(double b, double ci, double cj) {
    const double numer = 2.0 - b - b * b - (2.0 - b * b) * ci + b * cj;
    return numer / ((4.0 - b * b) * (1.0 - b * b));
}

double bertrand_profit(double b, double ci, double cj) {
    const double q = bertrand_quantity(b, ci, cj);
    return q * q * (1.0 - b * b);
}

double bertrand_cs(double b, double c1, double c2) {
    const double q1 = bertrand_quantity(b, c1, c2);
    const double q2 = bertrand_quantity(b, c2, c1);
    return 0.5 * (q1 * q1 + q2 * q2 + 2.0 * b * q1 * q2);
}

} // namespace

double bertrand_innovation_bound(double b, double c) {
    if (b == 0.0) return std::numeric_limits<double>::infinity();
    return (2.0 - b - b * b - (2.0 - b * b) * c + b * c) / b;
}

MarketBundle cournot_market(const CournotPrimitives& p) {
    require_finite({p.a, p.b, p.c, p.innovation}, "cournot");
    if (!(p.b > 0)) throw MarketValidityError("cournot: demand slope must be positive");
    if (!(p.innovation > 0)) throw MarketValidityError("cournot: innovation must be positive");
    const double alpha = p.alpha();
    const double i = p.innovation;
    if (!(alpha > i))
        throw MarketValidityError("cournot: drastic innovation, alpha = " + fmt(alpha) +
                                  " must exceed the cost reduction " + fmt(i));
    const double nb = 9.0 * p.b;
    MarketBundle m;
    m.quad.pi_00 = alpha * alpha / nb;
    m.quad.pi_I0 = (alpha + 2.0 * i) * (alpha + 2.0 * i) / nb;
    m.quad.pi_0I = (alpha - i) * (alpha - i) / nb;
    m.quad.pi_II = (alpha + i) * (alpha + i) / nb;
    m.monopoly.pi_0 = alpha * alpha / (4.0 * p.b);
    m.monopoly.pi_I = (alpha + i) * (alpha + i) / (4.0 * p.b);
    m.cs.cs_00 = 2.0 * alpha * alpha / nb;
    m.cs.cs_I0 = (2.0 * alpha + i) * (2.0 * alpha + i) / (2.0 * nb);
    m.cs.cs_II = 2.0 * (alpha + i) * (alpha + i) / nb;
    m.cs.cs_m0 = alpha * alpha / (8.0 * p.b);
    m.cs.cs_mI = (alpha + i) * (alpha + i) / (8.0 * p.b);
    return m;
}

MarketBundle bertrand_market(const BertrandPrimitives& p) {
    require_finite({p.b, p.c, p.innovation}, "bertrand");
    if (!(p.b >= 0 && p.b < 1))
        throw MarketValidityError("bertrand: substitution parameter must lie in [0, 1)");
    if (!(p.c > 0 && p.c < 1))
        throw MarketValidityError("bertrand: marginal cost must lie in (0, 1)");
    if (!(p.innovation > 0 && p.innovation <= p.c))
        throw MarketValidityError("bertrand: innovation must lie in (0, c]");
    const double bound = bertrand_innovation_bound(p.b, p.c);
    if (!(p.innovation < bound))
        throw MarketValidityError("bertrand: drastic innovation, cost reduction " +
                                  fmt(p.innovation) + " must stay below " + fmt(bound));
    const double lo = p.c - p.innovation;
    MarketBundle m;
    m.quad.pi_00 = bertrand_profit(p.b, p.c, p.c);
    m.quad.pi_I0 = bertrand_profit(p.b, lo, p.c);
    m.quad.pi_0I = bertrand_profit(p.b, p.c, lo);
    m.quad.pi_II = bertrand_profit(p.b, lo, lo);
    // One owner pricing both products jointly; the innovation cuts cost on both.
    m.monopoly.pi_0 = (1.0 - p.c) * (1.0 - p.c) / (2.0 * (1.0 + p.b));
    m.monopoly.pi_I = (1.0 - lo) * (1.0 - lo) / (2.0 * (1.0 + p.b));
    m.cs.cs_00 = bertrand_cs(p.b, p.c, p.c);
    m.cs.cs_I0 = bertrand_cs(p.b, lo, p.c);
    m.cs.cs_II = bertrand_cs(p.b, lo, lo);
    m.cs.cs_m0 = (1.0 - p.c) * (1.0 - p.c) / (4.0 * (1.0 + p.b));
    m.cs.cs_mI = (1.0 - lo) * (1.0 - lo) / (4.0 * (1.0 + p.b));
    return m;
}

} // namespace rjv
