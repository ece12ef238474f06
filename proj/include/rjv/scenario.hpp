#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rjv/extensions.hpp"
#include "rjv/markets.hpp"

namespace rjv {

// A scenario stays a JSON document so sweep axes can rewrite numbers in place
// before realization. parse_scenario validates structure (keys, types,
// cross-field rules); realize_scenario builds the model objects and may still
// reject bad values (drastic markets, malformed financing).
struct Scenario {
    nlohmann::ordered_json doc;
};

Scenario parse_scenario(nlohmann::ordered_json doc);
Scenario load_scenario_file(const std::string& path);

// Overwrites the number at a dotted path such as "market.alpha" or
// "financing.rate"; the path must already exist and hold a number.
void apply_parameter(Scenario& s, const std::string& path, double value);

enum class CompareTarget { Rjv, Merger, Both };

struct RealizedScenario {
    int firms = 2;
    std::string market_type; // "cournot" | "bertrand" | "abstract"
    ProfitQuad quad;
    std::optional<MonopolyProfits> monopoly;
    std::optional<CsTriple> cs;
    CostFunction cost;
    FinancingEnv fin;
    CompareTarget compare = CompareTarget::Rjv;
    std::optional<SpilloverRate> spillover;
    std::optional<LicensingTerms> licensing;
    std::optional<ThreeFirmProfits> three;
    std::optional<FourFirmProfits> four;
};
RealizedScenario realize_scenario(const Scenario& s);

// Full analysis report; every number is rounded to 12 significant digits.
// By default any assumption failure aborts with AssumptionError. With
// allow_violations the screens only annotate the report and blocks that
// cannot be computed are skipped with a note.
nlohmann::ordered_json analyze_scenario(const Scenario& s, bool allow_violations = false);

} // namespace rjv
