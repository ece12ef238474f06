#include "rjv/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

namespace {

void validate_axis(const SweepAxis& a, const char* which) {
    if (a.path.empty()) throw InvalidInputError(std::string(which) + " axis needs a parameter path");
    if (!(std::isfinite(a.min) && std::isfinite(a.max) && a.min < a.max))
        throw InvalidInputError(std::string(which) + " axis needs finite min < max");
    if (a.steps < 2) throw InvalidInputError(std::string(which) + " axis needs at least 2 steps");
}

double axis_value(const SweepAxis& a, int i) {
    return num::round_sig12(a.min + (a.max - a.min) * i / (a.steps - 1));
}

SweepRow evaluate_point(const Scenario& base, const SweepAxis& xa, const SweepAxis& ya,
                        double xv, double yv) {
    SweepRow row;
    row.x = xv;
    row.y = yv;

    Scenario s{base.doc};
    apply_parameter(s, xa.path, xv);
    apply_parameter(s, ya.path, yv);

    RealizedScenario r;
    try {
        r = realize_scenario(s);
    } catch (const MarketValidityError&) {
        row.label = RegionLabel::ExcludedDrastic;
        return row;
    }
    if (!validate_regularity(r.quad).empty()) {
        row.label = RegionLabel::ExcludedDrastic;
        return row;
    }
    row.regime = to_string(classify_regime(r.quad));

    // Budget screen on the quad the double cut-off equilibrium actually uses.
    ProfitQuad effective = r.quad;
    if (r.spillover) effective = spillover_transform(r.quad, *r.spillover);
    if (r.licensing) effective = licensing_transform(r.quad, *r.licensing).quad;
    const double theta2_eff =
        solve_value_cutoff(r.cost, effective.pi_II - effective.pi_0I, r.fin.rate);
    if (!(r.fin.budget < r.cost.mass(std::min(theta2_eff, num::kThetaCap)))) {
        row.label = RegionLabel::ExcludedBudget;
        return row;
    }

    ComparisonReport rep;
    try {
        if (r.spillover)
            rep = spillover_compare(r.quad, *r.spillover, r.cost, r.fin);
        else if (r.licensing)
            rep = licensing_compare(r.quad, *r.licensing, r.cost, r.fin);
        else
            rep = compare_rjv_vs_competition(r.quad, r.cost, r.fin);
    } catch (const AssumptionError&) {
        row.label = RegionLabel::ExcludedBudget;
        return row;
    }

    row.theta1 = num::round_sig12(rep.baseline.innovation_prob);
    row.theta2 = num::round_sig12(rep.baseline.duplicated_mass);
    row.theta_star = num::round_sig12(rep.alternative.innovation_prob);
    row.innov_comp = row.theta1;
    row.innov_rjv = row.theta_star;
    row.spend_comp = num::round_sig12(rep.baseline.total_cost);
    row.spend_rjv = num::round_sig12(rep.alternative.total_cost);
    row.net_profit_delta = num::round_sig12(rep.net_profit_delta);
    row.label = classify_point(row);
    return row;
}

} // namespace

const char* to_string(RegionLabel l) {
    switch (l) {
    case RegionLabel::ExcludedDrastic: return "EXCLUDED_DRASTIC";
    case RegionLabel::ExcludedBudget: return "EXCLUDED_BUDGET";
    case RegionLabel::RjvUpProfitable: return "RJV_UP_PROFITABLE";
    case RegionLabel::RjvUpUnprofitable: return "RJV_UP_UNPROFITABLE";
    case RegionLabel::RjvDownProfitable: return "RJV_DOWN_PROFITABLE";
    case RegionLabel::RjvDownUnprofitable: return "RJV_DOWN_UNPROFITABLE";
    case RegionLabel::Equal: return "EQUAL";
    }
    return "?";
}

RegionLabel classify_point(const SweepRow& row) {
    if (row.regime.empty()) return RegionLabel::ExcludedDrastic;
    if (!row.innov_comp || !row.innov_rjv || !row.net_profit_delta)
        return RegionLabel::ExcludedBudget;
    const double delta = *row.innov_rjv - *row.innov_comp;
    if (std::abs(delta) <= num::kProbTol) return RegionLabel::Equal;
    const bool profitable = *row.net_profit_delta > 0.0;
    if (delta > 0.0)
        return profitable ? RegionLabel::RjvUpProfitable : RegionLabel::RjvUpUnprofitable;
    return profitable ? RegionLabel::RjvDownProfitable : RegionLabel::RjvDownUnprofitable;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepAxis& x, const SweepAxis& y,
                                int workers) {
    validate_axis(x, "x");
    validate_axis(y, "y");
    if (x.path == y.path) throw InvalidInputError("sweep axes must use distinct parameter paths");
    {
        // resolve both paths up front so a typo aborts before any worker runs
        Scenario probe{base.doc};
        apply_parameter(probe, x.path, x.min);
        apply_parameter(probe, y.path, y.min);
    }

    std::vector<double> xs(x.steps), ys(y.steps);
    for (int i = 0; i < x.steps; ++i) xs[i] = axis_value(x, i);
    for (int j = 0; j < y.steps; ++j) ys[j] = axis_value(y, j);

    std::vector<SweepRow> rows(static_cast<std::size_t>(x.steps) * y.steps);
    int nw = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    nw = std::clamp(nw, 1, x.steps);

    auto slice = [&](int lo, int hi, std::exception_ptr& err) {
        try {
            for (int i = lo; i < hi; ++i)
                for (int j = 0; j < y.steps; ++j)
                    rows[static_cast<std::size_t>(i) * y.steps + j] =
                        evaluate_point(base, x, y, xs[i], ys[j]);
        } catch (...) {
            err = std::current_exception();
        }
    };

    std::vector<std::exception_ptr> errs(nw);
    if (nw == 1) {
        slice(0, x.steps, errs[0]);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (x.steps + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(x.steps, lo + chunk);
            pool.emplace_back(slice, lo, hi, std::ref(errs[w]));
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "x,y,regime,theta1,theta2,theta_star,innov_comp,innov_rjv,spend_comp,spend_rjv,"
          "net_profit_delta,region_label\n";
    auto cell = [](const std::optional<double>& v) {
        return v ? num::format_sig12(*v) : std::string();
    };
    for (const auto& r : rows) {
        os << num::format_sig12(r.x) << ',' << num::format_sig12(r.y) << ',' << r.regime << ','
           << cell(r.theta1) << ',' << cell(r.theta2) << ',' << cell(r.theta_star) << ','
           << cell(r.innov_comp) << ',' << cell(r.innov_rjv) << ',' << cell(r.spend_comp) << ','
           << cell(r.spend_rjv) << ',' << cell(r.net_profit_delta) << ',' << to_string(r.label)
           << '\n';
    }
}

void write_sweep_svg(const std::vector<SweepRow>& rows, const SweepAxis& x, const SweepAxis& y,
                     std::ostream& os) {
    static const char* kPalette[7] = {"#404040", "#9e9e9e", "#2e7d32", "#a5d6a7",
                                      "#c62828", "#ef9a9a", "#ffe082"};
    const int sx = x.steps, sy = y.steps;
    if (rows.size() != static_cast<std::size_t>(sx) * sy)
        throw InvalidInputError("sweep row count does not match the axis grid");
    const int cw = std::max(1, 600 / sx), ch = std::max(1, 600 / sy);
    const int pw = cw * sx, ph = ch * sy;
    const int ml = 70, mt = 28, mr = 220, mb = 52;
    const int W = ml + pw + mr, H = mt + ph + mb;

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
       << "\" fill=\"#ffffff\"/>\n"
       << "<g font-family=\"monospace\" font-size=\"12\" fill=\"#222222\">\n";

    // cells, merged along vertical runs of equal label
    for (int i = 0; i < sx; ++i) {
        int j = 0;
        while (j < sy) {
            int j2 = j + 1;
            const RegionLabel lab = rows[static_cast<std::size_t>(i) * sy + j].label;
            while (j2 < sy && rows[static_cast<std::size_t>(i) * sy + j2].label == lab) ++j2;
            const int yc = mt + (sy - j2) * ch;
            os << "<rect x=\"" << ml + i * cw << "\" y=\"" << yc << "\" width=\"" << cw
               << "\" height=\"" << (j2 - j) * ch << "\" fill=\""
               << kPalette[static_cast<int>(lab)] << "\"/>\n";
            j = j2;
        }
    }

    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"#222222\"/>\n";

    // axis annotations
    os << "<text x=\"" << ml << "\" y=\"" << mt - 10 << "\">" << y.path << "</text>\n";
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << mt + ph + 44
       << "\" text-anchor=\"middle\">" << x.path << "</text>\n";
    os << "<text x=\"" << ml << "\" y=\"" << mt + ph + 20 << "\">"
       << num::format_sig12(num::round_sig12(x.min)) << "</text>\n";
    os << "<text x=\"" << ml + pw << "\" y=\"" << mt + ph + 20 << "\" text-anchor=\"end\">"
       << num::format_sig12(num::round_sig12(x.max)) << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + ph << "\" text-anchor=\"end\">"
       << num::format_sig12(num::round_sig12(y.min)) << "</text>\n";
    os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 12 << "\" text-anchor=\"end\">"
       << num::format_sig12(num::round_sig12(y.max)) << "</text>\n";

    // legend in enum order
    for (int k = 0; k < 7; ++k) {
        const int ly = mt + k * 22;
        os << "<rect x=\"" << ml + pw + 20 << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" "
           << "fill=\"" << kPalette[k] << "\" stroke=\"#222222\"/>\n"
           << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 12 << "\">"
           << to_string(static_cast<RegionLabel>(k)) << "</text>\n";
    }
    os << "</g>\n</svg>\n";
}

} // namespace rjv
