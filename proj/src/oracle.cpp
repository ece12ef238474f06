#include "rjv/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include "rjv/errors.hpp"
#include "rjv/numeric.hpp"

namespace rjv {

namespace {

double kink_cost(double spend, double budget, double rate) {
    return spend + rate * std::max(0.0, spend - budget);
}

bool is_prefix_mask(std::uint32_t m) { return (m & (m + 1)) == 0; }

bool is_prefix_vector(const DiscreteStrategy& s) {
    bool seen_zero = false;
    for (auto v : s) {
        if (!v)
            seen_zero = true;
        else if (seen_zero)
            return false;
    }
    return true;
}

DiscreteStrategy mask_to_strategy(std::uint32_t m, int n) {
    DiscreteStrategy s(n, 0);
    for (int i = 0; i < n; ++i) s[i] = static_cast<std::uint8_t>((m >> i) & 1u);
    return s;
}

struct BestResponseResult {
    double payoff = 0; // full expected payoff, opponent-driven constants included
    int take_covered = 0;
    int take_uncovered = 0;
    long long ties = 0;
};

// Exact best response against a fixed opponent. Cells split into two classes,
// those the opponent covers and those it does not; within a class all cells
// carry the same marginal value and strictly increasing costs, so some
// cheapest-first class-prefix pair is optimal, and the whole (a, b) lattice
// is scanned through its per-column optima on both sides of the borrowing
// kink (each column is unimodal on each side).
BestResponseResult best_response(const DiscreteGame& g, const DiscreteStrategy& opp) {
    const int n = g.cells;
    const double inv_n = 1.0 / n;
    const double v_cov = (g.quad.pi_II - g.quad.pi_0I) * inv_n;
    const double v_unc = (g.quad.pi_I0 - g.quad.pi_00) * inv_n;
    const double budget = g.fin.budget;
    const double rate = g.fin.rate;

    double base = 0.0;
    std::vector<double> sp_cov(1, 0.0), sp_unc(1, 0.0); // prefix spends per class
    for (int i = 0; i < n; ++i) {
        if (opp[i]) {
            base += g.quad.pi_0I * inv_n;
            sp_cov.push_back(sp_cov.back() + g.cell_cost[i]);
        } else {
            base += g.quad.pi_00 * inv_n;
            sp_unc.push_back(sp_unc.back() + g.cell_cost[i]);
        }
    }
    const int ncov = static_cast<int>(sp_cov.size()) - 1;
    const int nunc = static_cast<int>(sp_unc.size()) - 1;

    long long ties = 0;
    auto threshold = [&ties](const std::vector<double>& sp, double v, double scale) {
        const int m = static_cast<int>(sp.size()) - 1;
        int k = 0;
        while (k < m) {
            const double c = (sp[k + 1] - sp[k]) * scale;
            if (c < v) {
                ++k;
            } else {
                if (c == v) ++ties;
                break;
            }
        }
        return k;
    };
    const int b1 = threshold(sp_unc, v_unc, 1.0);
    const int b2 = threshold(sp_unc, v_unc, 1.0 + rate);

    auto f1 = [&](int a, int b) {
        return a * v_cov + b * v_unc - (sp_cov[a] + sp_unc[b]);
    };
    auto f2 = [&](int a, int b) {
        const double s = sp_cov[a] + sp_unc[b];
        return a * v_cov + b * v_unc - (1.0 + rate) * s + rate * budget;
    };

    struct Cand {
        double val;
        int a, b;
    };
    std::vector<Cand> cands;
    cands.reserve(2 * (ncov + 1));
    int b_fit = nunc; // largest b with spend(a, b) <= budget, nonincreasing in a
    int b_min = nunc; // smallest b with spend(a, b) >= budget, nonincreasing in a
    for (int a = 0; a <= ncov; ++a) {
        bool have_le = false;
        int ble = 0;
        if (sp_cov[a] <= budget) {
            while (b_fit > 0 && sp_cov[a] + sp_unc[b_fit] > budget) --b_fit;
            ble = std::min(b1, b_fit);
            cands.push_back({f1(a, ble), a, ble});
            have_le = true;
        }
        while (b_min > 0 && sp_cov[a] + sp_unc[b_min - 1] >= budget) --b_min;
        if (sp_cov[a] + sp_unc[b_min] >= budget) {
            const int bge = std::clamp(b2, b_min, nunc);
            if (!(have_le && bge == ble)) // same point at the kink, count once
                cands.push_back({f2(a, bge), a, bge});
        }
    }

    BestResponseResult out;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t besti = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (cands[i].val > best) {
            best = cands[i].val;
            besti = i;
        }
    }
    const double tol = 1e-12 * (1.0 + std::abs(best));
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (i != besti && cands[i].val >= best - tol) ++ties;

    out.payoff = best + base;
    out.take_covered = cands[besti].a;
    out.take_uncovered = cands[besti].b;
    out.ties = ties;
    return out;
}

DiscreteStrategy realize_best_response(const DiscreteStrategy& opp, int take_covered,
                                       int take_uncovered) {
    DiscreteStrategy s(opp.size(), 0);
    int cov = 0, unc = 0;
    for (std::size_t i = 0; i < opp.size(); ++i) {
        if (opp[i]) {
            if (cov < take_covered) {
                s[i] = 1;
                ++cov;
            }
        } else if (unc < take_uncovered) {
            s[i] = 1;
            ++unc;
        }
    }
    return s;
}

OracleReport solve_exhaustive(const DiscreteGame& g, int workers) {
    const int n = g.cells;
    if (n > kMaxExhaustiveCells)
        throw ConfigurationError("exhaustive mode handles at most " +
                                 std::to_string(kMaxExhaustiveCells) + " cells");
    const std::uint32_t nmask = 1u << n;
    const double inv_n = 1.0 / n;

    std::vector<double> spend(nmask, 0.0), cost_total(nmask), brval(nmask), brtol(nmask);
    std::vector<std::uint8_t> bits(nmask);
    OracleReport rep;
    for (std::uint32_t m = 0; m < nmask; ++m) {
        if (m) spend[m] = spend[m & (m - 1)] + g.cell_cost[std::countr_zero(m)];
        cost_total[m] = kink_cost(spend[m], g.fin.budget, g.fin.rate);
        bits[m] = static_cast<std::uint8_t>(std::popcount(m));
        const auto br = best_response(g, mask_to_strategy(m, n));
        brval[m] = br.payoff;
        brtol[m] = 1e-12 * (1.0 + std::abs(br.payoff));
        rep.tie_breaks += br.ties;
    }

    int nw = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    nw = std::clamp(nw, 1, static_cast<int>(nmask));
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> found(nw);
    const double pi_00 = g.quad.pi_00, pi_I0 = g.quad.pi_I0;
    const double pi_0I = g.quad.pi_0I, pi_II = g.quad.pi_II;
    auto scan = [&](int w, std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t m1 = lo; m1 < hi; ++m1) {
            const int pc1 = bits[m1];
            for (std::uint32_t m2 = 0; m2 < nmask; ++m2) {
                const int pc11 = std::popcount(m1 & m2);
                const int pc2 = bits[m2];
                const double shared =
                    pi_II * pc11 + pi_00 * (n - pc1 - pc2 + pc11);
                const double p1 =
                    (shared + pi_I0 * (pc1 - pc11) + pi_0I * (pc2 - pc11)) * inv_n -
                    cost_total[m1];
                if (p1 < brval[m2] - brtol[m2]) continue;
                const double p2 =
                    (shared + pi_I0 * (pc2 - pc11) + pi_0I * (pc1 - pc11)) * inv_n -
                    cost_total[m2];
                if (p2 < brval[m1] - brtol[m1]) continue;
                found[w].emplace_back(m1, m2);
            }
        }
    };
    if (nw == 1) {
        scan(0, 0, nmask);
    } else {
        std::vector<std::thread> pool;
        const std::uint32_t chunk = (nmask + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const std::uint32_t lo = w * chunk;
            const std::uint32_t hi = std::min(nmask, lo + chunk);
            pool.emplace_back(scan, w, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    int first_cover = -1;
    for (int w = 0; w < nw; ++w) {
        for (auto [m1, m2] : found[w]) {
            ++rep.equilibrium_count;
            const std::uint32_t inter = m1 & m2, uni = m1 | m2;
            const bool dc = is_prefix_mask(inter) && is_prefix_mask(uni);
            rep.all_double_cutoff = rep.all_double_cutoff && dc;
            const int cover = std::popcount(uni);
            if (first_cover < 0) {
                first_cover = cover;
                rep.innovation_mass = static_cast<double>(cover) * inv_n;
            } else if (cover != first_cover) {
                rep.unique_innovation_mass = false;
            }
            if (rep.equilibrium_count <= kMaxStoredEquilibria) {
                ProfileRecord pr;
                pr.strat1 = mask_to_strategy(m1, n);
                pr.strat2 = mask_to_strategy(m2, n);
                pr.payoff1 = g.firm_payoff(pr.strat1, pr.strat2);
                pr.payoff2 = g.firm_payoff(pr.strat2, pr.strat1);
                pr.double_cutoff = dc;
                rep.equilibria.push_back(std::move(pr));
            }
        }
    }
    rep.truncated = rep.equilibrium_count > kMaxStoredEquilibria;
    return rep;
}

OracleReport solve_best_response_mode(const DiscreteGame& g) {
    const int n = g.cells;
    OracleReport rep;
    struct Fixed {
        bool converged = false;
        DiscreteStrategy s1, s2;
    };
    auto run_seed = [&](std::uint8_t fill) {
        Fixed fx;
        DiscreteStrategy s1(n, fill), s2(n, fill);
        for (int round = 0; round < 200; ++round) {
            const auto r1 = best_response(g, s2);
            rep.tie_breaks += r1.ties;
            DiscreteStrategy n1 = realize_best_response(s2, r1.take_covered, r1.take_uncovered);
            const bool moved1 = n1 != s1;
            s1 = std::move(n1);
            const auto r2 = best_response(g, s1);
            rep.tie_breaks += r2.ties;
            DiscreteStrategy n2 = realize_best_response(s1, r2.take_covered, r2.take_uncovered);
            const bool moved2 = n2 != s2;
            s2 = std::move(n2);
            if (!moved1 && !moved2) {
                fx.converged = true;
                fx.s1 = s1;
                fx.s2 = s2;
                return fx;
            }
        }
        return fx;
    };

    const Fixed lo = run_seed(0), hi = run_seed(1);
    rep.seed_converged = lo.converged && hi.converged;
    rep.seeds_coincide =
        lo.converged && hi.converged && lo.s1 == hi.s1 && lo.s2 == hi.s2;
    int first_cover = -1;
    auto add_fixed = [&](const Fixed& fx) {
        if (!fx.converged) return;
        for (const auto& pr : rep.equilibria)
            if (pr.strat1 == fx.s1 && pr.strat2 == fx.s2) return;
        ProfileRecord pr;
        pr.strat1 = fx.s1;
        pr.strat2 = fx.s2;
        pr.payoff1 = g.firm_payoff(fx.s1, fx.s2);
        pr.payoff2 = g.firm_payoff(fx.s2, fx.s1);
        DiscreteStrategy inter(n, 0), uni(n, 0);
        int cover = 0;
        for (int i = 0; i < n; ++i) {
            inter[i] = fx.s1[i] && fx.s2[i];
            uni[i] = fx.s1[i] || fx.s2[i];
            cover += uni[i];
        }
        pr.double_cutoff = is_prefix_vector(inter) && is_prefix_vector(uni);
        rep.all_double_cutoff = rep.all_double_cutoff && pr.double_cutoff;
        if (first_cover < 0) {
            first_cover = cover;
            rep.innovation_mass = static_cast<double>(cover) / n;
        } else if (cover != first_cover) {
            rep.unique_innovation_mass = false;
        }
        ++rep.equilibrium_count;
        rep.equilibria.push_back(std::move(pr));
    };
    add_fixed(lo);
    add_fixed(hi);
    return rep;
}

} // namespace

DiscreteGame DiscreteGame::build(const ProfitQuad& q, const CostFunction& cf,
                                 const FinancingEnv& fin, int cells) {
    if (cells < 1)
        throw ConfigurationError("discretization needs at least one cell");
    if (cells > kMaxBestResponseCells)
        throw ConfigurationError("discretization capped at " +
                                 std::to_string(kMaxBestResponseCells) + " cells");
    validate_financing(fin);
    for (double x : {q.pi_00, q.pi_I0, q.pi_0I, q.pi_II})
        if (!std::isfinite(x)) throw InvalidInputError("discrete game: non-finite profit");
    DiscreteGame g;
    g.cells = cells;
    g.quad = q;
    g.fin = fin;
    g.cell_cost.resize(cells);
    double lo_mass = 0.0;
    for (int i = 0; i < cells; ++i) {
        const double hi = std::min((i + 1.0) / cells, num::kThetaCap);
        const double hi_mass = cf.mass(hi);
        g.cell_cost[i] = hi_mass - lo_mass;
        lo_mass = hi_mass;
    }
    return g;
}

double DiscreteGame::firm_payoff(const DiscreteStrategy& mine, const DiscreteStrategy& other) const {
    if (static_cast<int>(mine.size()) != cells || static_cast<int>(other.size()) != cells)
        throw InvalidInputError("strategy length must equal the cell count");
    double gross = 0.0, total = 0.0;
    for (int i = 0; i < cells; ++i) {
        if (mine[i]) total += cell_cost[i];
        gross += mine[i] ? (other[i] ? quad.pi_II : quad.pi_I0)
                         : (other[i] ? quad.pi_0I : quad.pi_00);
    }
    return gross / cells - kink_cost(total, fin.budget, fin.rate);
}

OracleReport solve_discrete_game(const DiscreteGame& g, SolveMode mode, int workers) {
    if (mode == SolveMode::Exhaustive) return solve_exhaustive(g, workers);
    return solve_best_response_mode(g);
}

DiscreteRjvResult discrete_rjv_optimum(const DiscreteGame& g) {
    const int n = g.cells;
    const double v = 2.0 * (g.quad.pi_II - g.quad.pi_00) / n;
    const double budget = 2.0 * g.fin.budget;
    DiscreteRjvResult best;
    best.payoff = 2.0 * g.quad.pi_00;
    double spend = 0.0;
    for (int k = 1; k <= n; ++k) {
        spend += g.cell_cost[k - 1];
        const double val = 2.0 * g.quad.pi_00 + k * v - kink_cost(spend, budget, g.fin.rate);
        if (val > best.payoff) {
            best.payoff = val;
            best.prefix = k;
        }
    }
    best.strategy.assign(n, 0);
    std::fill(best.strategy.begin(), best.strategy.begin() + best.prefix, 1);
    return best;
}

} // namespace rjv
