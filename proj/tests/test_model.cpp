#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rjv/errors.hpp"
#include "rjv/model.hpp"

using namespace rjv;

namespace {

const ProfitQuad kS1{1.0 / 9.0, 4.0 / 9.0, 1.0 / 36.0, 0.25};

bool has(const std::vector<std::string>& v, const std::string& code) {
    return std::find(v.begin(), v.end(), code) != v.end();
}

} // namespace

TEST_CASE("regularity screen passes a valid quad and names each failure") {
    CHECK(validate_regularity(kS1).empty());

    ProfitQuad neg = kS1;
    neg.pi_0I = -0.01;
    auto codes = validate_regularity(neg);
    CHECK(has(codes, "A1i"));

    ProfitQuad shrink{0.3, 0.31, 0.05, 0.2}; // joint profits fall
    CHECK(has(validate_regularity(shrink), "A1ii"));

    // two screens can fail at once; all of them must be reported
    ProfitQuad both{0.2, 0.1, 0.0, 0.3};
    codes = validate_regularity(both);
    CHECK(codes.size() == 2);
    CHECK(has(codes, "A1iii"));
    CHECK(has(codes, "A1iv"));

    ProfitQuad rev{0.3, 0.42, 0.0, 0.4}; // differences decrease
    codes = validate_regularity(rev);
    CHECK(codes == std::vector<std::string>{"A1iv"});

    CHECK_THROWS_AS(validate_regularity(ProfitQuad{0, std::nan(""), 0, 0}), InvalidInputError);
    CHECK_THROWS_AS((void)validate_regularity(
                        ProfitQuad{0, std::numeric_limits<double>::infinity(), 0, 0}),
                    InvalidInputError);
    CHECK_THROWS_AS(require_regular(both), AssumptionError);
    try {
        require_regular(both);
    } catch (const AssumptionError& e) {
        CHECK(e.codes.size() == 2);
    }
}

TEST_CASE("regime trichotomy with ties reading as moderate") {
    CHECK(classify_regime(kS1) == MarketRegime::Moderate);

    // escape 0.2 > catch-up 0.15: intense
    CHECK(classify_regime(ProfitQuad{0.1, 0.45, 0.1, 0.25}) == MarketRegime::Intense);
    // escape 0.05 < joint gain 0.15: soft
    CHECK(classify_regime(ProfitQuad{0.1, 0.30, 0.1, 0.25}) == MarketRegime::Soft);
    // escape ties with catch-up (both exactly 0.1875 in binary) and clears
    // the joint gain: the tie reads moderate, not intense
    CHECK(classify_regime(ProfitQuad{0.25, 0.5, 0.125, 0.3125}) == MarketRegime::Moderate);

    CHECK(std::string(to_string(MarketRegime::Soft)) == "Soft");
    CHECK(std::string(to_string(MarketRegime::Moderate)) == "Moderate");
    CHECK(std::string(to_string(MarketRegime::Intense)) == "Intense");
}

TEST_CASE("spillover blend moves asymmetric profits toward the symmetric pair") {
    CHECK_THROWS_AS(SpilloverRate(-0.1), InvalidInputError);
    CHECK_THROWS_AS(SpilloverRate(1.1), InvalidInputError);

    auto t = spillover_transform(kS1, SpilloverRate(0.5));
    CHECK(t.pi_00 == kS1.pi_00);
    CHECK(t.pi_II == kS1.pi_II);
    CHECK(t.pi_I0 == doctest::Approx(0.347222222222222).epsilon(1e-13));
    CHECK(t.pi_0I == doctest::Approx(0.138888888888889).epsilon(1e-13));

    // full leakage collapses both asymmetric states onto pi_II
    auto full = spillover_transform(kS1, SpilloverRate(1.0));
    CHECK(full.pi_I0 == doctest::Approx(kS1.pi_II).epsilon(1e-15));
    CHECK(full.pi_0I == doctest::Approx(kS1.pi_II).epsilon(1e-15));

    // the laggard inequality genuinely fails here: blended pi_0I > pi_00
    auto codes = validate_regularity(t);
    CHECK(codes == std::vector<std::string>{"A1iii"});
    // a milder rate keeps the quad fully regular
    CHECK(validate_regularity(spillover_transform(kS1, SpilloverRate(0.3))).empty());
}

TEST_CASE("licensing lifts the winner profit exactly when the bargain beats it") {
    auto out = licensing_transform(kS1, LicensingTerms{0.0});
    CHECK(out.occurs); // 2 * 0.25 - 1/36 = 0.4722... > 4/9
    CHECK(out.quad.pi_I0 == doctest::Approx(0.472222222222222).epsilon(1e-13));
    CHECK(out.quad.pi_00 == kS1.pi_00);
    CHECK(out.quad.pi_0I == kS1.pi_0I);
    CHECK(out.quad.pi_II == kS1.pi_II);

    // large enough stand-alone profit: the status quo wins and nothing moves
    ProfitQuad q{0.1, 0.9, 0.05, 0.3};
    auto keep = licensing_transform(q, LicensingTerms{0.0});
    CHECK_FALSE(keep.occurs);
    CHECK(keep.quad.pi_I0 == q.pi_I0);
    // a big enough surplus flips it
    auto flip = licensing_transform(q, LicensingTerms{0.5});
    CHECK(flip.occurs);
    CHECK(flip.quad.pi_I0 == doctest::Approx(2 * 0.3 + 0.5 - 0.05).epsilon(1e-15));

    CHECK_THROWS_AS(licensing_transform(q, LicensingTerms{-0.1}), InvalidInputError);
}

TEST_CASE("consumer surplus and monopoly screens") {
    CsTriple good{0.5, 0.55, 0.6, 0.3, 0.35};
    CHECK(validate_cs(good).empty());

    CsTriple bad = good;
    bad.cs_II = 0.4; // below both duopoly baselines
    auto codes = validate_cs(bad);
    CHECK(has(codes, "A3a"));
    CHECK(has(codes, "A3b"));

    bad = good;
    bad.cs_m0 = 0.55; // monopoly beating duopoly
    CHECK(validate_cs(bad) == std::vector<std::string>{"A5a"});
    bad = good;
    bad.cs_mI = 0.7;
    CHECK(validate_cs(bad) == std::vector<std::string>{"A5b"});

    CHECK(validate_monopoly_gain(MonopolyProfits{0.25, 0.5625}).empty());
    CHECK(validate_monopoly_gain(MonopolyProfits{0.5, 0.5}) == std::vector<std::string>{"A4"});
}
