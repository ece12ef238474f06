#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rjv/scenario.hpp"

namespace rjv {

struct SweepAxis {
    std::string path; // dotted parameter path into the scenario document
    double min = 0;
    double max = 0;
    int steps = 0; // >= 2, endpoints included
};

// Fixed label set; SVG colors are keyed by this declaration order.
enum class RegionLabel {
    ExcludedDrastic,
    ExcludedBudget,
    RjvUpProfitable,
    RjvUpUnprofitable,
    RjvDownProfitable,
    RjvDownUnprofitable,
    Equal,
};
const char* to_string(RegionLabel l);

// One grid point. Every number is pre-rounded to 12 significant digits, so
// the label can be re-derived exactly from the CSV. Excluded points leave the
// comparison fields empty; the market screen additionally leaves the regime
// empty, which is what distinguishes the two exclusion kinds.
struct SweepRow {
    double x = 0, y = 0;
    std::string regime;
    std::optional<double> theta1, theta2, theta_star;
    std::optional<double> innov_comp, innov_rjv, spend_comp, spend_rjv, net_profit_delta;
    RegionLabel label = RegionLabel::ExcludedDrastic;
};

// Label from the row fields alone (used both while sweeping and by tests that
// re-derive labels from emitted CSV).
RegionLabel classify_point(const SweepRow& row);

// Evaluates the grid x-major then y; rows land at index ix * y.steps + iy.
// Workers split the x range and write disjoint slices, so the result is
// byte-identical for every worker count. workers = 0 means hardware default.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepAxis& x, const SweepAxis& y,
                                int workers = 0);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);
void write_sweep_svg(const std::vector<SweepRow>& rows, const SweepAxis& x, const SweepAxis& y,
                     std::ostream& os);

} // namespace rjv
