#include "rjv/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <utility>
#include <vector>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw ConfigurationError("scenario: " + msg); }

const ordered_json& need(const ordered_json& obj, const char* key, const char* ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) bad(std::string(ctx) + " requires \"" + key + "\"");
    return *it;
}

double need_num(const ordered_json& obj, const char* key, const char* ctx) {
    const auto& v = need(obj, key, ctx);
    if (!v.is_number()) bad(std::string(ctx) + "." + key + " must be a number");
    return v.get<double>();
}

std::vector<double> need_num_array(const ordered_json& obj, const char* key, const char* ctx) {
    const auto& v = need(obj, key, ctx);
    if (!v.is_array()) bad(std::string(ctx) + "." + key + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) bad(std::string(ctx) + "." + key + " must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

void check_keys(const ordered_json& obj, const char* ctx,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) bad(std::string(ctx) + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known) bad(std::string(ctx) + ": unknown key \"" + it.key() + "\"");
    }
}

CostFunction parse_cost(const ordered_json& c) {
    const auto& fam = need(c, "family", "cost");
    if (!fam.is_string()) bad("cost.family must be a string");
    const std::string name = fam.get<std::string>();
    if (name == "ratio") {
        check_keys(c, "cost", {"family", "k"});
        return CostFunction::ratio(need_num(c, "k", "cost"));
    }
    if (name == "power") {
        check_keys(c, "cost", {"family", "k", "p"});
        return CostFunction::power(need_num(c, "k", "cost"), need_num(c, "p", "cost"));
    }
    if (name == "tabulated") {
        check_keys(c, "cost", {"family", "theta", "cost"});
        return CostFunction::tabulated(need_num_array(c, "theta", "cost"),
                                       need_num_array(c, "cost", "cost"));
    }
    bad("cost.family must be ratio, power or tabulated");
}

void parse_market(const ordered_json& m, RealizedScenario& r) {
    const auto& type = need(m, "type", "market");
    if (!type.is_string()) bad("market.type must be a string");
    r.market_type = type.get<std::string>();
    if (r.market_type == "cournot") {
        check_keys(m, "market", {"type", "alpha", "a", "c", "b", "innovation"});
        CournotPrimitives p;
        if (m.contains("alpha")) {
            if (m.contains("a") || m.contains("c"))
                bad("market: give either alpha or the a/c pair, not both");
            p.a = need_num(m, "alpha", "market");
            p.c = 0.0;
        } else {
            p.a = need_num(m, "a", "market");
            p.c = need_num(m, "c", "market");
        }
        p.b = m.contains("b") ? need_num(m, "b", "market") : 1.0;
        p.innovation = need_num(m, "innovation", "market");
        const MarketBundle bundle = cournot_market(p);
        r.quad = bundle.quad;
        r.monopoly = bundle.monopoly;
        r.cs = bundle.cs;
    } else if (r.market_type == "bertrand") {
        check_keys(m, "market", {"type", "b", "c", "innovation"});
        BertrandPrimitives p;
        p.b = need_num(m, "b", "market");
        p.c = need_num(m, "c", "market");
        p.innovation = need_num(m, "innovation", "market");
        const MarketBundle bundle = bertrand_market(p);
        r.quad = bundle.quad;
        r.monopoly = bundle.monopoly;
        r.cs = bundle.cs;
    } else if (r.market_type == "abstract") {
        check_keys(m, "market", {"type", "profits", "monopoly", "consumer_surplus"});
        const auto& q = need(m, "profits", "market");
        check_keys(q, "market.profits", {"pi_00", "pi_I0", "pi_0I", "pi_II"});
        r.quad.pi_00 = need_num(q, "pi_00", "market.profits");
        r.quad.pi_I0 = need_num(q, "pi_I0", "market.profits");
        r.quad.pi_0I = need_num(q, "pi_0I", "market.profits");
        r.quad.pi_II = need_num(q, "pi_II", "market.profits");
        if (m.contains("monopoly")) {
            const auto& mo = m["monopoly"];
            check_keys(mo, "market.monopoly", {"pi_0", "pi_I"});
            r.monopoly = MonopolyProfits{need_num(mo, "pi_0", "market.monopoly"),
                                         need_num(mo, "pi_I", "market.monopoly")};
        }
        if (m.contains("consumer_surplus")) {
            const auto& cs = m["consumer_surplus"];
            check_keys(cs, "market.consumer_surplus", {"cs_00", "cs_I0", "cs_II", "cs_m0", "cs_mI"});
            r.cs = CsTriple{need_num(cs, "cs_00", "market.consumer_surplus"),
                            need_num(cs, "cs_I0", "market.consumer_surplus"),
                            need_num(cs, "cs_II", "market.consumer_surplus"),
                            need_num(cs, "cs_m0", "market.consumer_surplus"),
                            need_num(cs, "cs_mI", "market.consumer_surplus")};
        }
    } else {
        bad("market.type must be cournot, bertrand or abstract");
    }
}

ThreeFirmProfits parse_three(const ordered_json& p) {
    check_keys(p, "profits3", {"pi_000", "pi_0I0", "pi_0II", "pi_I00", "pi_II0", "pi_III"});
    ThreeFirmProfits out;
    out.pi_000 = need_num(p, "pi_000", "profits3");
    out.pi_0I0 = need_num(p, "pi_0I0", "profits3");
    out.pi_0II = need_num(p, "pi_0II", "profits3");
    out.pi_I00 = need_num(p, "pi_I00", "profits3");
    out.pi_II0 = need_num(p, "pi_II0", "profits3");
    out.pi_III = need_num(p, "pi_III", "profits3");
    return out;
}

FourFirmProfits parse_four(const ordered_json& p) {
    check_keys(p, "profits4", {"with_tech", "without_tech"});
    const auto with = need_num_array(p, "with_tech", "profits4");
    const auto without = need_num_array(p, "without_tech", "profits4");
    if (with.size() != 4 || without.size() != 4)
        bad("profits4 arrays must hold 4 entries (0..3 rivals with the tech)");
    FourFirmProfits out;
    std::copy(with.begin(), with.end(), out.with_tech);
    std::copy(without.begin(), without.end(), out.without_tech);
    return out;
}

ordered_json jnum(double x) { return num::round_sig12(x); }

ordered_json jthr(const Threshold& t) {
    if (t.infinite) return "inf";
    return jnum(t.value);
}

ordered_json quad_json(const ProfitQuad& q) {
    return {{"pi_00", jnum(q.pi_00)},
            {"pi_I0", jnum(q.pi_I0)},
            {"pi_0I", jnum(q.pi_0I)},
            {"pi_II", jnum(q.pi_II)}};
}

ordered_json outcome_json(const PortfolioOutcome& o) {
    return {{"label", to_string(o.label)},
            {"innovation_prob", jnum(o.innovation_prob)},
            {"duplicated_mass", jnum(o.duplicated_mass)},
            {"raw_spend", jnum(o.raw_spend)},
            {"financing_cost", jnum(o.financing_cost)},
            {"total_cost", jnum(o.total_cost)},
            {"expected_gross_profit", jnum(o.expected_gross_profit)},
            {"expected_net_profit", jnum(o.expected_net_profit)},
            {"borrows", o.borrows}};
}

ordered_json thresholds_json(const ThresholdRecord& t) {
    ordered_json j{{"rho_bar", jthr(t.rho_bar)}, {"b_bar", jnum(t.b_bar)}, {"psi", jthr(t.psi)}};
    if (t.rho_bar_m) j["rho_bar_merger"] = jnum(*t.rho_bar_m);
    if (t.rho_bar_lic) j["rho_bar_licensing"] = jthr(*t.rho_bar_lic);
    if (t.b_bar_lic) j["b_bar_licensing"] = jnum(*t.b_bar_lic);
    if (t.rho_bar_sp) j["rho_bar_spillover"] = jthr(*t.rho_bar_sp);
    if (t.b_bar_sp) j["b_bar_spillover"] = jnum(*t.b_bar_sp);
    return j;
}

ordered_json flags_json(const ConditionFlags& f) {
    return {{"soft", f.soft},
            {"moderate", f.moderate},
            {"intense", f.intense},
            {"budget_above_threshold", f.budget_above_threshold},
            {"rate_above_threshold", f.rate_above_threshold},
            {"profitability_guaranteed", f.profitability_guaranteed},
            {"profitable_innovation_cut", f.profitable_innovation_cut}};
}

ordered_json comparison_json(const ComparisonReport& r) {
    ordered_json j{{"verdict", r.verdict},
                   {"innovation_delta", jnum(r.innovation_delta)},
                   {"spend_delta", jnum(r.spend_delta)},
                   {"net_profit_delta", jnum(r.net_profit_delta)}};
    if (r.cs_delta) j["cs_delta"] = jnum(*r.cs_delta);
    if (r.cs_verdict) j["cs_verdict"] = *r.cs_verdict;
    if (r.equal_investment_window) j["equal_investment_window"] = *r.equal_investment_window;
    if (r.licensing_occurs) j["licensing_occurs"] = *r.licensing_occurs;
    j["flags"] = flags_json(r.flags);
    j["thresholds"] = thresholds_json(r.thresholds);
    j["baseline"] = outcome_json(r.baseline);
    j["alternative"] = outcome_json(r.alternative);
    if (!r.transformed_quad_violations.empty())
        j["transformed_quad_violations"] = r.transformed_quad_violations;
    return j;
}

ordered_json cutoffs_json(const CutoffSet& c) {
    ordered_json j{{"theta2", jnum(c.theta2)},   {"theta1", jnum(c.theta1)},
                   {"theta_rho", jnum(c.theta_rho)}, {"theta_u", jnum(c.theta_u)},
                   {"theta_b", jnum(c.theta_b)}, {"theta_star", jnum(c.theta_star)}};
    if (c.theta_rho_m) j["theta_rho_merger"] = jnum(*c.theta_rho_m);
    if (c.theta_u_m) j["theta_u_merger"] = jnum(*c.theta_u_m);
    if (c.theta_star_m) j["theta_star_merger"] = jnum(*c.theta_star_m);
    return j;
}

std::string join_codes(const std::vector<std::string>& codes) {
    std::string out;
    for (const auto& c : codes) {
        if (!out.empty()) out += " ";
        out += c;
    }
    return out;
}

} // namespace

Scenario parse_scenario(ordered_json doc) {
    Scenario s{std::move(doc)};
    try {
        realize_scenario(s); // structural errors propagate
    } catch (const MarketValidityError&) {
        // value-level market failure; the document itself is well-formed
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open scenario file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInputError("scenario parse error in " + path + ": " + e.what());
    }
    return parse_scenario(std::move(doc));
}

void apply_parameter(Scenario& s, const std::string& path, double value) {
    ordered_json* node = &s.doc;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = path.find('.', pos);
        const std::string key =
            dot == std::string::npos ? path.substr(pos) : path.substr(pos, dot - pos);
        if (key.empty() || !node->is_object() || !node->contains(key))
            throw InvalidInputError("parameter path not found: " + path);
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    if (!node->is_number())
        throw InvalidInputError("parameter path must point at a number: " + path);
    *node = value;
}

RealizedScenario realize_scenario(const Scenario& s) {
    const ordered_json& doc = s.doc;
    if (!doc.is_object()) bad("top level must be an object");
    check_keys(doc, "scenario",
               {"schema_version", "market", "cost", "financing", "firms", "compare", "extension",
                "profits3", "profits4"});
    const auto& ver = need(doc, "schema_version", "scenario");
    if (!ver.is_number_integer() || ver.get<int>() != 1) bad("schema_version must be 1");

    RealizedScenario r;
    if (doc.contains("firms")) {
        const auto& f = doc["firms"];
        if (!f.is_number_integer()) bad("firms must be an integer");
        r.firms = f.get<int>();
        if (r.firms != 2 && r.firms != 3 && r.firms != 4) bad("firms must be 2, 3 or 4");
    }

    r.cost = doc.contains("cost") ? parse_cost(doc["cost"]) : CostFunction::ratio(1.0);

    const auto& fin = need(doc, "financing", "scenario");
    check_keys(fin, "financing", {"budget", "rate"});
    r.fin.budget = need_num(fin, "budget", "financing");
    r.fin.rate = need_num(fin, "rate", "financing");
    validate_financing(r.fin);

    if (doc.contains("compare")) {
        if (r.firms != 2) bad("compare applies to two-firm scenarios only");
        const auto& cm = doc["compare"];
        if (!cm.is_string()) bad("compare must be a string");
        const std::string name = cm.get<std::string>();
        if (name == "rjv")
            r.compare = CompareTarget::Rjv;
        else if (name == "merger")
            r.compare = CompareTarget::Merger;
        else if (name == "both")
            r.compare = CompareTarget::Both;
        else
            bad("compare must be rjv, merger or both");
    }

    if (doc.contains("extension")) {
        if (r.firms != 2) bad("extensions apply to two-firm scenarios only");
        const auto& ext = doc["extension"];
        check_keys(ext, "extension", {"spillover", "licensing"});
        const bool sp = ext.contains("spillover"), lic = ext.contains("licensing");
        if (sp && lic) bad("extension: spillover and licensing are mutually exclusive");
        if (!sp && !lic) bad("extension must name spillover or licensing");
        if (r.compare != CompareTarget::Rjv)
            bad("extensions combine with the rjv comparison only");
        if (sp) {
            const auto& block = ext["spillover"];
            check_keys(block, "extension.spillover", {"sigma"});
            r.spillover = SpilloverRate(need_num(block, "sigma", "extension.spillover"));
        } else {
            const auto& block = ext["licensing"];
            check_keys(block, "extension.licensing", {"delta"});
            const double delta = need_num(block, "delta", "extension.licensing");
            if (delta < 0.0) bad("extension.licensing.delta must be nonnegative");
            r.licensing = LicensingTerms{delta};
        }
    }

    if (r.firms == 2) {
        if (doc.contains("profits3") || doc.contains("profits4"))
            bad("profits3/profits4 require the matching firm count");
        parse_market(need(doc, "market", "scenario"), r);
        if (r.compare != CompareTarget::Rjv && !r.monopoly)
            bad("merger comparison needs monopoly profits");
    } else {
        if (doc.contains("market"))
            bad("three and four firm scenarios take profits3/profits4, not market");
        if (r.firms == 3) {
            if (doc.contains("profits4")) bad("profits4 requires firms = 4");
            r.three = parse_three(need(doc, "profits3", "scenario"));
        } else {
            if (doc.contains("profits3")) bad("profits3 requires firms = 3");
            r.four = parse_four(need(doc, "profits4", "scenario"));
        }
    }
    return r;
}

nlohmann::ordered_json analyze_scenario(const Scenario& s, bool allow_violations) {
    const RealizedScenario r = realize_scenario(s);
    const AssumptionPolicy pol =
        allow_violations ? AssumptionPolicy::Permissive : AssumptionPolicy::Enforce;

    ordered_json rep;
    rep["schema_version"] = 1;

    std::vector<std::string> notes;
    auto guarded = [&](const char* what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            if (!allow_violations) throw;
            notes.push_back(std::string(what) + " unavailable: " + e.what());
        }
    };

    if (r.firms == 3) {
        std::vector<std::string> violations = validate_three_firm(*r.three);
        const double theta3 =
            solve_value_cutoff(r.cost, r.three->pi_III - r.three->pi_0II, r.fin.rate);
        if (!(r.fin.budget < r.cost.mass(std::min(theta3, num::kThetaCap))))
            violations.push_back("A2");
        if (!violations.empty() && !allow_violations)
            throw AssumptionError("scenario fails assumption screens: " + join_codes(violations),
                                  violations);
        rep["assumptions"] = {{"enforced", !allow_violations}, {"violations", violations}};
        guarded("three-firm outcomes", [&] {
            const ThreeFirmOutcomes out = three_firm_outcomes(*r.three, r.cost, r.fin, pol);
            rep["three_firm"] = {{"cutoffs",
                                  {{"theta3", jnum(out.theta3)},
                                   {"theta2", jnum(out.theta2)},
                                   {"theta1", jnum(out.theta1)}}},
                                 {"outcomes",
                                  {{"competition", outcome_json(out.competition)},
                                   {"rjv", outcome_json(out.rjv)}}}};
        });
        if (!notes.empty()) rep["assumptions"]["notes"] = notes;
        return rep;
    }
    if (r.firms == 4) {
        std::vector<std::string> violations = validate_four_firm(*r.four);
        const double value_hi = 2.0 * (r.four->with_tech[1] - r.four->without_tech[0]);
        const double theta1_rho = solve_value_cutoff(r.cost, std::max(0.0, value_hi), r.fin.rate);
        if (!(2.0 * r.fin.budget > r.cost.mass(std::min(theta1_rho, num::kThetaCap))))
            violations.push_back("A7");
        if (!violations.empty() && !allow_violations)
            throw AssumptionError("scenario fails assumption screens: " + join_codes(violations),
                                  violations);
        rep["assumptions"] = {{"enforced", !allow_violations}, {"violations", violations}};
        guarded("two-RJV outcome", [&] {
            rep["two_rjvs"] = {{"outcome", outcome_json(two_rjv_equilibrium(*r.four, r.cost,
                                                                            r.fin, pol))}};
        });
        if (!notes.empty()) rep["assumptions"]["notes"] = notes;
        return rep;
    }

    // two-firm path
    std::vector<std::string> violations = validate_regularity(r.quad);
    if (r.cs)
        for (auto& c : validate_cs(*r.cs)) violations.push_back(c);
    if (r.monopoly && r.compare != CompareTarget::Rjv)
        for (auto& c : validate_monopoly_gain(*r.monopoly)) violations.push_back(c);
    ProfitQuad effective = r.quad; // quad the double cut-off equilibrium runs on
    if (r.spillover) effective = spillover_transform(r.quad, *r.spillover);
    if (r.licensing) effective = licensing_transform(r.quad, *r.licensing).quad;
    const double theta2_eff =
        solve_value_cutoff(r.cost, effective.pi_II - effective.pi_0I, r.fin.rate);
    if (!(r.fin.budget < r.cost.mass(std::min(theta2_eff, num::kThetaCap))))
        violations.push_back("A2");
    if (!violations.empty() && !allow_violations)
        throw AssumptionError("scenario fails assumption screens: " + join_codes(violations),
                              violations);

    ordered_json market{{"type", r.market_type},
                        {"regime", to_string(classify_regime(r.quad))},
                        {"profits", quad_json(r.quad)}};
    if (r.monopoly)
        market["monopoly"] = {{"pi_0", jnum(r.monopoly->pi_0)}, {"pi_I", jnum(r.monopoly->pi_I)}};
    if (r.cs)
        market["consumer_surplus"] = {{"cs_00", jnum(r.cs->cs_00)},
                                      {"cs_I0", jnum(r.cs->cs_I0)},
                                      {"cs_II", jnum(r.cs->cs_II)},
                                      {"cs_m0", jnum(r.cs->cs_m0)},
                                      {"cs_mI", jnum(r.cs->cs_mI)}};
    rep["market"] = market;
    rep["assumptions"] = {{"enforced", !allow_violations}, {"violations", violations}};

    const bool want_merger = r.compare != CompareTarget::Rjv;
    const std::optional<MonopolyProfits> mono_for_cutoffs =
        want_merger ? r.monopoly : std::nullopt;
    guarded("cut-offs", [&] {
        rep["cutoffs"] = cutoffs_json(compute_cutoff_set(r.quad, mono_for_cutoffs, r.cost, r.fin));
    });
    guarded("thresholds", [&] {
        rep["thresholds"] =
            thresholds_json(compute_thresholds(r.quad, mono_for_cutoffs, r.cost, r.fin));
    });

    ordered_json outcomes;
    guarded("competition outcome", [&] {
        outcomes["competition"] = outcome_json(competition_equilibrium(r.quad, r.cost, r.fin, pol));
    });
    guarded("rjv outcome",
            [&] { outcomes["rjv"] = outcome_json(rjv_portfolio(r.quad, r.cost, r.fin, pol)); });
    if (want_merger)
        guarded("merger outcome", [&] {
            outcomes["merger"] =
                outcome_json(merger_portfolio(r.quad, *r.monopoly, r.cost, r.fin, pol));
        });
    rep["outcomes"] = outcomes;

    ordered_json comparisons;
    guarded("rjv versus competition", [&] {
        comparisons["rjv_vs_competition"] =
            comparison_json(compare_rjv_vs_competition(r.quad, r.cost, r.fin, r.cs, pol));
    });
    if (want_merger)
        guarded("rjv versus merger", [&] {
            comparisons["rjv_vs_merger"] = comparison_json(
                compare_rjv_vs_merger(r.quad, *r.monopoly, r.cost, r.fin, r.cs, pol));
        });
    rep["comparisons"] = comparisons;

    if (r.spillover) {
        ordered_json block{{"sigma", jnum(r.spillover->sigma)}};
        guarded("spillover comparison", [&] {
            block["comparison"] =
                comparison_json(spillover_compare(r.quad, *r.spillover, r.cost, r.fin, pol));
        });
        guarded("spillover no-financing benchmark", [&] {
            const auto nf = spillover_no_finance_compare(r.quad, *r.spillover, r.cost);
            ordered_json star;
            switch (nf.sigma_star.kind) {
            case CriticalSpillover::Kind::Always: star = {{"kind", "always"}}; break;
            case CriticalSpillover::Kind::Never: star = {{"kind", "never"}}; break;
            case CriticalSpillover::Kind::Threshold:
                star = {{"kind", "threshold"}, {"value", jnum(nf.sigma_star.value)}};
                break;
            }
            block["no_finance"] = {{"theta1_nc", jnum(nf.theta1_nc)},
                                   {"theta2_nc", jnum(nf.theta2_nc)},
                                   {"theta_u", jnum(nf.theta_u)},
                                   {"rjv_better", nf.rjv_better},
                                   {"sigma_star", star}};
        });
        rep["extension"] = ordered_json{{"spillover", block}};
    } else if (r.licensing) {
        const LicensingOutcome lic = licensing_transform(r.quad, *r.licensing);
        ordered_json block{{"delta", jnum(r.licensing->delta)},
                           {"occurs", lic.occurs},
                           {"adjusted_pi_I0", jnum(lic.quad.pi_I0)}};
        guarded("licensing comparison", [&] {
            block["comparison"] =
                comparison_json(licensing_compare(r.quad, *r.licensing, r.cost, r.fin, pol));
        });
        rep["extension"] = ordered_json{{"licensing", block}};
    }

    if (!notes.empty()) rep["assumptions"]["notes"] = notes;
    return rep;
}

} // namespace rjv
