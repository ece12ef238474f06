#pragma once

#include <cmath>
#include <random>

#include "rjv/cost.hpp"
#include "rjv/cutoffs.hpp"
#include "rjv/model.hpp"

namespace support {

// Closed forms for the ratio cost family, independent of the library's
// bisection so the solves have something to disagree with.
inline double ratio_mass(double theta, double k = 1.0) {
    return -0.5 * k * std::log1p(-theta * theta);
}

inline double ratio_cutoff(double delta_pi, double rate, double k = 1.0) {
    if (delta_pi <= 0.0) return 0.0;
    const double K = delta_pi / ((1.0 + rate) * k);
    return (std::sqrt(1.0 + 4.0 * K * K) - 1.0) / (2.0 * K);
}

struct QuadDraw {
    rjv::ProfitQuad q;
    double u2 = 0, u3 = 0, u4 = 0;
};

// pi_0I = u1, pi_00 = u1 + u2, pi_II = u1 + u2 + u3, pi_I0 = u1 + 2u2 + u3 + u4
// passes every regularity inequality strictly when the gaps are positive;
// intense <=> u4 > u3, soft <=> u2 + u4 < u3.
template <class Rng>
QuadDraw random_quad(Rng& rng) {
    std::uniform_real_distribution<double> base(0.0, 0.5), gap(0.01, 1.0);
    QuadDraw d;
    const double u1 = base(rng);
    d.u2 = gap(rng);
    d.u3 = gap(rng);
    d.u4 = gap(rng);
    d.q.pi_0I = u1;
    d.q.pi_00 = u1 + d.u2;
    d.q.pi_II = u1 + d.u2 + d.u3;
    d.q.pi_I0 = u1 + 2.0 * d.u2 + d.u3 + d.u4;
    return d;
}

template <class Rng>
QuadDraw random_nonsoft_quad(Rng& rng) {
    for (;;) {
        QuadDraw d = random_quad(rng);
        if (d.u3 <= d.u2 + d.u4 - 0.01) return d;
    }
}

// Budget strictly inside (0, mass(theta2)), so the double cut-off equilibrium
// exists and both firms borrow at the margin.
template <class Rng>
rjv::FinancingEnv random_financing(Rng& rng, const rjv::CostFunction& cf,
                                   const rjv::ProfitQuad& q) {
    std::uniform_real_distribution<double> rate_d(0.01, 0.5), frac(0.05, 0.95);
    rjv::FinancingEnv fin;
    fin.rate = rate_d(rng);
    const double theta2 = rjv::solve_value_cutoff(cf, q.pi_II - q.pi_0I, fin.rate);
    fin.budget = frac(rng) * cf.mass(theta2);
    return fin;
}

// cs_II strictly dominates both duopoly states, monopoly states strictly
// below their duopoly counterparts; cs_I0 may dip below cs_00.
template <class Rng>
rjv::CsTriple random_cs(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    rjv::CsTriple c;
    c.cs_00 = 0.1 + u(rng);
    c.cs_I0 = c.cs_00 + 0.3 * (u(rng) - 0.2);
    c.cs_II = std::max(c.cs_00, c.cs_I0) + 0.01 + 0.5 * u(rng);
    c.cs_m0 = c.cs_00 * (0.3 + 0.6 * u(rng));
    c.cs_mI = c.cs_II * (0.3 + 0.6 * u(rng));
    return c;
}

} // namespace support
