#pragma once

#include <string>
#include <vector>

namespace rjv {

// Per-firm product-market profits indexed by (own tech, rival tech). pi_I0 is
// the lone innovator, pi_0I the laggard, pi_II / pi_00 the symmetric states.
struct ProfitQuad {
    double pi_00 = 0;
    double pi_I0 = 0;
    double pi_0I = 0;
    double pi_II = 0;
};

// Merged entity's profit without / with the innovation.
struct MonopolyProfits {
    double pi_0 = 0;
    double pi_I = 0;
};

// Consumer surplus by technology state, for the duopoly and for the merged
// monopoly counterfactual.
struct CsTriple {
    double cs_00 = 0;
    double cs_I0 = 0;
    double cs_II = 0;
    double cs_m0 = 0;
    double cs_mI = 0;
};

// Trichotomy over the relative value of escaping (pi_I0 - pi_II) versus
// catching up (pi_II - pi_0I) versus joint improvement (pi_II - pi_00).
enum class MarketRegime { Soft, Moderate, Intense };
const char* to_string(MarketRegime r);

struct SpilloverRate {
    double sigma = 0; // probability a discovery leaks to the non-investing rival
    explicit SpilloverRate(double s);
};

struct LicensingTerms {
    double delta = 0; // licensing surplus added on top of 2*pi_II - pi_0I
};

// One code per failed regularity inequality, empty when the quad is valid:
//   A1i   some profit negative
//   A1ii  pi_II < pi_00 (innovation does not raise joint profits)
//   A1iii pi_I0 < pi_II or pi_00 < pi_0I (rival innovation raises a profit)
//   A1iv  pi_I0 - pi_00 < pi_II - pi_0I (increasing differences)
// Non-finite entries are rejected outright.
std::vector<std::string> validate_regularity(const ProfitQuad& q);
void require_regular(const ProfitQuad& q); // throws AssumptionError carrying the codes

// Intense iff escaping beats catching up strictly; Soft iff escaping falls
// short of joint improvement strictly; Moderate otherwise (ties included).
MarketRegime classify_regime(const ProfitQuad& q);

// Blend the asymmetric states toward pi_II with weight sigma; diagonal
// untouched. Preserves A1i, A1ii, A1iv and pi_I0 >= pi_II for every sigma;
// pi_00 >= pi_0I can genuinely fail and is reported, not assumed.
ProfitQuad spillover_transform(const ProfitQuad& q, SpilloverRate s);

struct LicensingOutcome {
    ProfitQuad quad;     // pi_I0 replaced by max{pi_I0, 2*pi_II + delta - pi_0I}
    bool occurs = false; // true when the licensing branch attains the max
};
LicensingOutcome licensing_transform(const ProfitQuad& q, const LicensingTerms& t);

// Consumer-surplus codes: A3a cs_II <= cs_00, A3b cs_II <= cs_I0,
// A5a cs_00 < cs_m0, A5b cs_II < cs_mI.
std::vector<std::string> validate_cs(const CsTriple& c);

// "A4" when the merged entity gains nothing from innovating (pi_I <= pi_0).
std::vector<std::string> validate_monopoly_gain(const MonopolyProfits& m);

} // namespace rjv
