#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"
#include "rjv/oracle.hpp"
#include "rjv/scenario.hpp"
#include "rjv/sweep.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rjv;

SweepAxis parse_axis(const std::string& spec, const char* which) {
    // path:min:max:steps
    SweepAxis a;
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t colon = spec.find(':', pos);
        parts.push_back(colon == std::string::npos ? spec.substr(pos)
                                                   : spec.substr(pos, colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() != 4)
        throw InvalidInputError(std::string("--") + which +
                                " expects path:min:max:steps, got \"" + spec + "\"");
    a.path = parts[0];
    try {
        std::size_t used = 0;
        a.min = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        a.max = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
        a.steps = std::stoi(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
    } catch (const std::exception&) {
        throw InvalidInputError(std::string("--") + which + ": cannot parse \"" + spec + "\"");
    }
    return a;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot open output file: " + path);
    out << text;
    if (!out) throw InvalidInputError("failed writing output file: " + path);
}

int run_analyze(const std::string& scenario_path, const std::string& out_path, bool allow) {
    const Scenario s = load_scenario_file(scenario_path);
    const ordered_json rep = analyze_scenario(s, allow);
    const std::string text = rep.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return 0;
}

int run_sweep_cmd(const std::string& scenario_path, const std::string& xspec,
                  const std::string& yspec, const std::string& csv_path,
                  const std::string& svg_path, int workers) {
    const Scenario s = load_scenario_file(scenario_path);
    const SweepAxis xa = parse_axis(xspec, "x");
    const SweepAxis ya = parse_axis(yspec, "y");
    const auto rows = run_sweep(s, xa, ya, workers);
    {
        std::ostringstream csv;
        write_sweep_csv(rows, csv);
        write_text_file(csv_path, csv.str());
    }
    if (!svg_path.empty()) {
        std::ostringstream svg;
        write_sweep_svg(rows, xa, ya, svg);
        write_text_file(svg_path, svg.str());
    }
    return 0;
}

std::string bits_string(const DiscreteStrategy& s) {
    std::string out(s.size(), '0');
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) out[i] = '1';
    return out;
}

// longest all-ones prefix length; -1 when the profile is not prefix shaped
int prefix_length(const DiscreteStrategy& s) {
    int k = 0;
    bool seen_zero = false;
    for (auto v : s) {
        if (v) {
            if (seen_zero) return -1;
            ++k;
        } else {
            seen_zero = true;
        }
    }
    return k;
}

int run_oracle_cmd(const std::string& scenario_path, int cells, const std::string& mode_name,
                   int workers) {
    const Scenario s = load_scenario_file(scenario_path);
    const RealizedScenario r = realize_scenario(s);
    if (r.firms != 2)
        throw ConfigurationError("oracle needs a two-firm scenario");
    if (r.spillover || r.licensing)
        throw ConfigurationError("oracle covers the base game; drop the extension block");
    const SolveMode mode =
        mode_name == "exhaustive" ? SolveMode::Exhaustive : SolveMode::BestResponse;

    const DiscreteGame game = DiscreteGame::build(r.quad, r.cost, r.fin, cells);
    const OracleReport report = solve_discrete_game(game, mode, workers);
    const DiscreteRjvResult rjv = discrete_rjv_optimum(game);
    const CutoffSet cs = compute_cutoff_set(r.quad, std::nullopt, r.cost, r.fin);

    auto jnum = [](double v) { return num::round_sig12(v); };
    ordered_json out;
    out["cells"] = cells;
    out["mode"] = mode_name;
    out["equilibrium_count"] = report.equilibrium_count;
    out["truncated"] = report.truncated;
    out["all_double_cutoff"] = report.all_double_cutoff;
    out["unique_innovation_mass"] = report.unique_innovation_mass;
    out["innovation_mass"] = jnum(report.innovation_mass);
    out["tie_breaks"] = report.tie_breaks;
    if (mode == SolveMode::BestResponse) {
        out["seed_converged"] = report.seed_converged;
        out["seeds_coincide"] = report.seeds_coincide;
    }
    out["analytic"] = {{"theta2", jnum(cs.theta2)},
                       {"theta1", jnum(cs.theta1)},
                       {"theta_star", jnum(cs.theta_star)}};

    // deviations measured in cell widths against the analytic cut-offs
    std::optional<double> max_dev;
    ordered_json eqs = ordered_json::array();
    for (const auto& pr : report.equilibria) {
        ordered_json e{{"payoff1", jnum(pr.payoff1)},
                       {"payoff2", jnum(pr.payoff2)},
                       {"double_cutoff", pr.double_cutoff}};
        if (pr.double_cutoff) {
            DiscreteStrategy both(pr.strat1.size()), either(pr.strat1.size());
            for (std::size_t i = 0; i < pr.strat1.size(); ++i) {
                both[i] = pr.strat1[i] && pr.strat2[i];
                either[i] = pr.strat1[i] || pr.strat2[i];
            }
            const int k2 = prefix_length(both), k1 = prefix_length(either);
            e["both_prefix"] = k2;
            e["either_prefix"] = k1;
            const double dev = std::max(std::abs(k2 - cells * cs.theta2),
                                        std::abs(k1 - cells * cs.theta1));
            e["cutoff_deviation_cells"] = jnum(dev);
            max_dev = std::max(max_dev.value_or(0.0), dev);
        } else {
            e["strat1"] = bits_string(pr.strat1);
            e["strat2"] = bits_string(pr.strat2);
        }
        eqs.push_back(e);
    }
    out["max_cutoff_deviation_cells"] = max_dev ? ordered_json(jnum(*max_dev)) : ordered_json();
    out["rjv"] = {{"prefix", rjv.prefix},
                  {"payoff", jnum(rjv.payoff)},
                  {"deviation_cells", jnum(std::abs(rjv.prefix - cells * cs.theta_star))}};
    out["equilibria"] = eqs;
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibria of financially constrained R&D project choice: "
                 "competition, RJV and merger portfolios"};
    app.require_subcommand(1);

    std::string an_scenario, an_out;
    bool an_allow = false;
    auto* analyze = app.add_subcommand("analyze", "Analyze one scenario into a JSON report");
    analyze->add_option("scenario", an_scenario, "scenario JSON file")->required();
    analyze->add_option("--out", an_out, "write the report to this file instead of stdout");
    analyze->add_flag("--allow-violations", an_allow,
                      "annotate assumption failures instead of aborting");

    std::string sw_scenario, sw_x, sw_y, sw_csv, sw_svg;
    int sw_workers = 0;
    auto* sweep = app.add_subcommand("sweep", "Two-parameter region sweep");
    sweep->add_option("scenario", sw_scenario, "scenario JSON file")->required();
    sweep->add_option("--x", sw_x, "x axis as path:min:max:steps")->required();
    sweep->add_option("--y", sw_y, "y axis as path:min:max:steps")->required();
    sweep->add_option("--csv", sw_csv, "CSV output file")->required();
    sweep->add_option("--svg", sw_svg, "optional SVG region plot");
    sweep->add_option("--workers", sw_workers, "worker threads (0 = hardware)");

    std::string or_scenario, or_mode;
    int or_cells = 0, or_workers = 0;
    auto* oracle = app.add_subcommand("oracle", "Discretized-game cross-check");
    oracle->add_option("scenario", or_scenario, "scenario JSON file")->required();
    oracle->add_option("--cells", or_cells, "grid cells")->required();
    oracle->add_option("--mode", or_mode, "exhaustive | bestresponse")
        ->required()
        ->check(CLI::IsMember({"exhaustive", "bestresponse"}));
    oracle->add_option("--workers", or_workers, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return run_analyze(an_scenario, an_out, an_allow);
        if (*sweep) return run_sweep_cmd(sw_scenario, sw_x, sw_y, sw_csv, sw_svg, sw_workers);
        return run_oracle_cmd(or_scenario, or_cells, or_mode, or_workers);
    } catch (const InvariantViolationError& e) {
        std::cerr << "invariant violation (this is a bug): " << e.what() << "\n";
        return 4;
    } catch (const AssumptionError& e) {
        std::cerr << "assumption violation: " << e.what() << "\n";
        return 3;
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
