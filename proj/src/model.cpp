#include "rjv/model.hpp"

#include <cmath>

#include "rjv/errors.hpp"

namespace rjv {

namespace {

void require_finite(std::initializer_list<double> xs, const char* what) {
    for (double x : xs)
        if (!std::isfinite(x)) throw InvalidInputError(std::string(what) + ": non-finite entry");
}

} // namespace

const char* to_string(MarketRegime r) {
    switch (r) {
    case MarketRegime::Soft: return "Soft";
    case MarketRegime::Moderate: return "Moderate";
    case MarketRegime::Intense: return "Intense";
    }
    return "?";
}

SpilloverRate::SpilloverRate(double s) : sigma(s) {
    if (!std::isfinite(s) || s < 0.0 || s > 1.0)
        throw InvalidInputError("spillover rate must lie in [0, 1]");
}

std::vector<std::string> validate_regularity(const ProfitQuad& q) {
    require_finite({q.pi_00, q.pi_I0, q.pi_0I, q.pi_II}, "profit quad");
    std::vector<std::string> codes;
    if (q.pi_00 < 0 || q.pi_I0 < 0 || q.pi_0I < 0 || q.pi_II < 0) codes.push_back("A1i");
    if (q.pi_II < q.pi_00) codes.push_back("A1ii");
    if (q.pi_I0 < q.pi_II || q.pi_00 < q.pi_0I) codes.push_back("A1iii");
    if (q.pi_I0 - q.pi_00 < q.pi_II - q.pi_0I) codes.push_back("A1iv");
    return codes;
}

void require_regular(const ProfitQuad& q) {
    auto codes = validate_regularity(q);
    if (!codes.empty()) {
        std::string msg = "profit quad fails regularity:";
        for (const auto& c : codes) msg += " " + c;
        throw AssumptionError(msg, codes);
    }
}

MarketRegime classify_regime(const ProfitQuad& q) {
    require_regular(q);
    double escape = q.pi_I0 - q.pi_II;
    if (escape > q.pi_II - q.pi_0I) return MarketRegime::Intense;
    if (escape < q.pi_II - q.pi_00) return MarketRegime::Soft;
    return MarketRegime::Moderate;
}

ProfitQuad spillover_transform(const ProfitQuad& q, SpilloverRate s) {
    require_regular(q);
    double sig = s.sigma;
    ProfitQuad out = q;
    out.pi_I0 = (1.0 - sig) * q.pi_I0 + sig * q.pi_II;
    out.pi_0I = (1.0 - sig) * q.pi_0I + sig * q.pi_II;
    return out;
}

LicensingOutcome licensing_transform(const ProfitQuad& q, const LicensingTerms& t) {
    require_regular(q);
    if (!std::isfinite(t.delta) || t.delta < 0)
        throw InvalidInputError("licensing surplus must be finite and nonnegative");
    double licensed = 2.0 * q.pi_II + t.delta - q.pi_0I;
    LicensingOutcome out;
    out.occurs = licensed >= q.pi_I0;
    out.quad = q;
    out.quad.pi_I0 = out.occurs ? licensed : q.pi_I0;
    return out;
}

std::vector<std::string> validate_cs(const CsTriple& c) {
    require_finite({c.cs_00, c.cs_I0, c.cs_II, c.cs_m0, c.cs_mI}, "consumer surplus");
    std::vector<std::string> codes;
    if (!(c.cs_II > c.cs_00)) codes.push_back("A3a");
    if (!(c.cs_II > c.cs_I0)) codes.push_back("A3b");
    if (c.cs_00 < c.cs_m0) codes.push_back("A5a");
    if (c.cs_II < c.cs_mI) codes.push_back("A5b");
    return codes;
}

std::vector<std::string> validate_monopoly_gain(const MonopolyProfits& m) {
    require_finite({m.pi_0, m.pi_I}, "monopoly profits");
    std::vector<std::string> codes;
    if (!(m.pi_I > m.pi_0)) codes.push_back("A4");
    return codes;
}

} // namespace rjv
