#pragma once

#include <vector>

namespace rjv {

// Per-project cost schedule C on [0, 1): strictly increasing, C(0) = 0,
// diverging toward 1. mass() is the running integral, computed from a closed
// form where one exists (ratio and tabulated families) and by adaptive
// quadrature otherwise, with the upper limit clamped to 1 - 1e-9.
class CostFunction {
public:
    CostFunction() = default; // same schedule as ratio(1)

    // k * theta / (1 - theta^2)
    static CostFunction ratio(double k);
    // k * theta^p / (1 - theta), p >= 1
    static CostFunction power(double k, double p);
    // Monotone piecewise-linear through (theta_i, cost_i) starting at (0, 0);
    // past the last knot the curve continues as C(t_m)*(1-t_m)/(1-theta) so the
    // pole at 1 is preserved. Non-monotone samples are rejected.
    static CostFunction tabulated(std::vector<double> thetas, std::vector<double> costs);

    double value(double theta) const;
    double mass(double theta) const;
    bool exact_mass() const;
    const char* family() const;

private:
    enum class Family { Ratio, Power, Tabulated };

    Family family_ = Family::Ratio;
    double k_ = 1;
    double p_ = 1;
    std::vector<double> tab_theta_;
    std::vector<double> tab_cost_;
    std::vector<double> tab_mass_; // cumulative exact segment integrals
    double tail_scale_ = 0;        // C(t_m) * (1 - t_m)
};

} // namespace rjv
