#include "rjv/cost.hpp"

#include <algorithm>
#include <cmath>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

namespace {

void check_theta(double theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta >= 1.0)
        throw InvalidInputError("theta must lie in [0, 1)");
}

} // namespace

CostFunction CostFunction::ratio(double k) {
    if (!std::isfinite(k) || k <= 0) throw InvalidInputError("ratio cost: k must be positive");
    CostFunction cf;
    cf.family_ = Family::Ratio;
    cf.k_ = k;
    return cf;
}

CostFunction CostFunction::power(double k, double p) {
    if (!std::isfinite(k) || k <= 0) throw InvalidInputError("power cost: k must be positive");
    if (!std::isfinite(p) || p < 1) throw InvalidInputError("power cost: exponent must be >= 1");
    CostFunction cf;
    cf.family_ = Family::Power;
    cf.k_ = k;
    cf.p_ = p;
    return cf;
}

CostFunction CostFunction::tabulated(std::vector<double> thetas, std::vector<double> costs) {
    if (thetas.size() != costs.size() || thetas.size() < 2)
        throw InvalidInputError("tabulated cost: need matching sample arrays with >= 2 knots");
    if (thetas.front() != 0.0 || costs.front() != 0.0)
        throw InvalidInputError("tabulated cost: first knot must be (0, 0)");
    for (size_t i = 0; i < thetas.size(); ++i) {
        if (!std::isfinite(thetas[i]) || !std::isfinite(costs[i]))
            throw InvalidInputError("tabulated cost: non-finite knot");
        if (i > 0 && (thetas[i] <= thetas[i - 1] || costs[i] <= costs[i - 1]))
            throw InvalidInputError("tabulated cost: knots must be strictly increasing");
    }
    if (thetas.back() >= 1.0)
        throw InvalidInputError("tabulated cost: knots must stay below 1");
    CostFunction cf;
    cf.family_ = Family::Tabulated;
    cf.tab_mass_.resize(thetas.size(), 0.0);
    for (size_t i = 1; i < thetas.size(); ++i)
        cf.tab_mass_[i] = cf.tab_mass_[i - 1] +
                          0.5 * (costs[i] + costs[i - 1]) * (thetas[i] - thetas[i - 1]);
    cf.tail_scale_ = costs.back() * (1.0 - thetas.back());
    cf.tab_theta_ = std::move(thetas);
    cf.tab_cost_ = std::move(costs);
    return cf;
}

double CostFunction::value(double theta) const {
    check_theta(theta);
    switch (family_) {
    case Family::Ratio:
        return k_ * theta / (1.0 - theta * theta);
    case Family::Power:
        return k_ * std::pow(theta, p_) / (1.0 - theta);
    case Family::Tabulated: {
        if (theta >= tab_theta_.back())
            return tail_scale_ / (1.0 - theta);
        auto it = std::upper_bound(tab_theta_.begin(), tab_theta_.end(), theta);
        size_t i = static_cast<size_t>(it - tab_theta_.begin());
        double t0 = tab_theta_[i - 1], t1 = tab_theta_[i];
        double c0 = tab_cost_[i - 1], c1 = tab_cost_[i];
        return c0 + (c1 - c0) * (theta - t0) / (t1 - t0);
    }
    }
    return 0;
}

double CostFunction::mass(double theta) const {
    check_theta(theta);
    switch (family_) {
    case Family::Ratio:
        return -0.5 * k_ * std::log1p(-theta * theta);
    case Family::Power: {
        double upper = std::min(theta, num::kThetaCap);
        if (upper <= 0) return 0.0;
        return num::integrate([this](double t) { return k_ * std::pow(t, p_) / (1.0 - t); },
                              0.0, upper);
    }
    case Family::Tabulated: {
        if (theta >= tab_theta_.back())
            return tab_mass_.back() +
                   tail_scale_ * std::log((1.0 - tab_theta_.back()) / (1.0 - theta));
        auto it = std::upper_bound(tab_theta_.begin(), tab_theta_.end(), theta);
        size_t i = static_cast<size_t>(it - tab_theta_.begin());
        double t0 = tab_theta_[i - 1];
        double c0 = tab_cost_[i - 1];
        double c = value(theta);
        return tab_mass_[i - 1] + 0.5 * (c0 + c) * (theta - t0);
    }
    }
    return 0;
}

bool CostFunction::exact_mass() const { return family_ != Family::Power; }

const char* CostFunction::family() const {
    switch (family_) {
    case Family::Ratio: return "ratio";
    case Family::Power: return "power";
    case Family::Tabulated: return "tabulated";
    }
    return "?";
}

} // namespace rjv
