#include "gct/branch_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gct/error.hpp"

namespace gct {

namespace {

// Least-squares slope of log(dist) against the letter index, over the window
// where the distances are meaningfully positive and already contracting.
double fit_log_slope(const std::vector<double>& dist) {
    std::vector<std::pair<double, double>> xy;
    for (size_t n = 0; n < dist.size(); ++n) {
        if (dist[n] > 1e-13 && dist[n] < 0.5) xy.push_back({double(n), std::log(dist[n])});
    }
    if (xy.size() < 4) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(xy.size());
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

// Longest run of curve samples inside V, preferring the run holding the deepest point.
struct VRun {
    size_t lo = 0, hi = 0; // inclusive sample range
    bool found = false;
};

VRun deepest_v_run(const KoenigsChart& chart, const Curve& c) {
    VRun best;
    double best_depth = -1e300;
    size_t i = 0;
    while (i < c.size()) {
        if (!chart.in_V(c.pts[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        double depth = -1e300;
        while (j + 1 < c.size() && chart.in_V(c.pts[j + 1])) ++j;
        for (size_t k = i; k <= j; ++k)
            depth = std::max(depth, chart.level_a - chart.relog(c.pts[k]));
        if (depth > best_depth) {
            best_depth = depth;
            best = {i, j, true};
        }
        i = j + 1;
    }
    return best;
}

} // namespace

PeriodicBranchResult find_periodic_branch(const CodingTree& tree, const KoenigsChart& chart,
                                          int max_period, BranchSearchOptions opt) {
    PeriodicBranchResult res;
    const int d = tree.degree();
    const int m = chart.period;
    const cplx q = chart.q;

    // Constant base curve sitting at q short-circuits to the constant address.
    for (int j = 1; j <= d; ++j) {
        const Curve& b = tree.base_curves()[size_t(j) - 1];
        bool constant = true;
        for (const cplx& p : b.pts)
            if (std::abs(p - q) > 1e-10) constant = false;
        if (constant) {
            res.found = true;
            res.degenerate = true;
            res.address = Address{SymbolWord{}, SymbolWord{j}};
            res.expected_rate = std::pow(std::abs(chart.lambda), -1.0 / double(m));
            auto lim = tree.coding_limit(res.address, 1e-12, 40);
            res.landing_residual = chordal(lim.point, q);
            res.vertex_distances.assign(20, 0.0);
            return res;
        }
    }

    // Shrink the level until V misses the root and the base curves, when possible.
    KoenigsChart V = chart;
    {
        bool ok = false;
        for (int k = 0; k < 60; ++k) {
            bool hit = V.in_V(tree.root());
            for (const Curve& b : tree.base_curves())
                for (const cplx& p : b.pts)
                    if (V.in_V(p)) hit = true;
            if (!hit) {
                ok = true;
                break;
            }
            V = V.with_level(V.level_a - V.log_abs_lambda());
        }
        res.level_excludes_tree_base = ok;
        res.entry_level_a = V.level_a;
    }

    // Find a word whose edge enters V: exhaustive to full_depth, then a beam
    // over the words whose vertices sit closest to q.
    SymbolWord entry;
    Curve entry_edge;
    {
        bool found = false;
        std::vector<SymbolWord> frontier;
        for (int level = 0; level <= opt.entry_depth_cap && !found; ++level) {
            std::vector<SymbolWord> next;
            if (level == 0) {
                for (int j = 1; j <= d; ++j) next.push_back(SymbolWord{j});
            } else {
                for (const auto& w : frontier)
                    for (int j = 1; j <= d; ++j) next.push_back(w.appended(uint8_t(j)));
            }
            std::vector<std::pair<double, SymbolWord>> scored;
            for (const auto& w : next) {
                Curve e = tree.edge(w);
                if (deepest_v_run(V, e).found) {
                    entry = w;
                    entry_edge = e;
                    found = true;
                    break;
                }
                scored.push_back({std::abs(e.back() - q), w});
            }
            if (found) break;
            if (level >= opt.full_depth && int(scored.size()) > opt.beam_width) {
                std::nth_element(scored.begin(), scored.begin() + opt.beam_width, scored.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                scored.resize(size_t(opt.beam_width));
            }
            frontier.clear();
            for (auto& [s, w] : scored) frontier.push_back(std::move(w));
        }
        if (!found) {
            res.failure = "no entry into V";
            return res;
        }
    }
    res.entry_word = entry;

    // Repeated inverse-branch application.  Each application lifts the entered
    // piece by the branch of f^{-m} fixing q and prepends one m-letter block,
    // identified by matching the lifted start point against the candidate edges.
    VRun run = deepest_v_run(V, entry_edge);
    std::vector<double> piece_ts(entry_edge.ts.begin() + long(run.lo),
                                 entry_edge.ts.begin() + long(run.hi) + 1);
    std::vector<cplx> piece(entry_edge.pts.begin() + long(run.lo),
                            entry_edge.pts.begin() + long(run.hi) + 1);
    SymbolWord word = entry;
    std::vector<SymbolWord> blocks;
    std::vector<SymbolWord> block_words; // full candidate words per step (diagnostics)

    std::vector<SymbolWord> letter_blocks; // all d^m blocks of length m
    {
        letter_blocks.push_back(SymbolWord{});
        for (int i = 0; i < m; ++i) {
            std::vector<SymbolWord> next;
            for (const auto& w : letter_blocks)
                for (int j = 1; j <= d; ++j) next.push_back(w.appended(uint8_t(j)));
            letter_blocks = std::move(next);
        }
    }

    auto try_address = [&](const Address& cand) -> bool {
        auto lim = tree.coding_limit(cand, 1e-10, 300);
        return lim.converged && chordal(lim.point, q) < opt.landing_tol;
    };

    for (int step = 1; step <= opt.max_isteps; ++step) {
        std::vector<cplx> lifted(piece.size());
        bool ok = true;
        for (size_t i = 0; i < piece.size(); ++i) {
            try {
                lifted[i] = chart.apply_inverse(piece[i]);
            } catch (const Error&) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            res.failure = "inverse branch failed inside V";
            return res;
        }

        // Identify the prepended block: the lifted piece must lie on the edge of
        // exactly one of the d^m candidate words.
        double best = 1e300, second = 1e300;
        SymbolWord best_block;
        for (const auto& blk : letter_blocks) {
            SymbolWord cand = blk.concat(word);
            Curve e = tree.edge(cand);
            double err = 0.0;
            for (size_t i = 0; i < lifted.size(); ++i)
                err = std::max(err, std::abs(lifted[i] - e.eval(piece_ts[i])));
            if (err < best) {
                second = best;
                best = err;
                best_block = blk;
            } else {
                second = std::min(second, err);
            }
        }
        if (!(best < 0.25 * second) && second < 1e200) {
            res.failure = "ambiguous block match (best " + std::to_string(best) + ", second " +
                          std::to_string(second) + ")";
            return res;
        }
        blocks.push_back(best_block);
        word = best_block.concat(word);
        block_words.push_back(word);
        piece = lifted;
        res.isteps_used = step;

        // Block recurrence: the most recent blocks repeat with period p.
        for (int p = 1; 2 * p <= int(blocks.size()); ++p) {
            bool periodic = true;
            for (int j = 0; j < p && periodic; ++j) {
                const auto& a = blocks[blocks.size() - 1 - size_t(j)];
                const auto& b = blocks[blocks.size() - 1 - size_t(j) - size_t(p)];
                periodic = (a == b);
            }
            if (!periodic) continue;
            if (p * m > max_period) continue;
            // Period word: most recent block first.
            SymbolWord C;
            for (int j = 0; j < p; ++j) C = C.concat(blocks[blocks.size() - 1 - size_t(j)]);
            Address cand{SymbolWord{}, C};
            cand = cand.canonical();
            if (try_address(cand)) {
                res.found = true;
                res.address = cand;
                goto rate_report;
            }
        }
    }
    res.failure = "no recurrence within the iteration budget";
    return res;

rate_report:
    auto lim = tree.coding_limit(res.address, 1e-12, opt.rate_depth);
    res.landing_residual = chordal(lim.point, q);
    res.vertex_distances.clear();
    for (int n = 0; n < opt.rate_depth; ++n) {
        cplx v = tree.vertex(res.address.prefix(size_t(n) + 1));
        res.vertex_distances.push_back(chordal(v, q));
    }
    res.expected_rate = std::pow(std::abs(chart.lambda), -1.0 / double(m));
    double slope = fit_log_slope(res.vertex_distances);
    res.fitted_rate = std::exp(slope);
    res.rate_rel_error = std::abs(res.fitted_rate - res.expected_rate) / res.expected_rate;
    return res;
}

EnumerationResult enumerate_converging_branches(const CodingTree& tree, SpherePoint q, int bound,
                                                int depth_budget, double tol) {
    EnumerationResult out;
    out.bound = bound;
    const int d = tree.degree();

    std::vector<Address> hits;
    std::vector<Address> seen;

    // All words of each length, reused for preperiod and period parts.
    std::vector<std::vector<SymbolWord>> words(size_t(bound) + 1);
    words[0] = {SymbolWord{}};
    for (int L = 1; L <= bound; ++L)
        for (const auto& w : words[size_t(L) - 1])
            for (int j = 1; j <= d; ++j) words[size_t(L)].push_back(w.appended(uint8_t(j)));

    for (int pre = 0; pre < bound; ++pre) {
        for (int per = 1; pre + per <= bound; ++per) {
            for (const auto& u : words[size_t(pre)]) {
                for (const auto& v : words[size_t(per)]) {
                    Address a{u, v};
                    Address c = a.canonical();
                    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
                    seen.push_back(c);
                    ++out.candidates_tested;
                    auto lim = tree.coding_limit(c, tol * 1e-2, depth_budget);
                    if (lim.converged && chordal(SpherePoint(lim.point), q) < tol)
                        hits.push_back(c);
                }
            }
        }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    out.addresses = hits;
    return out;
}

RelogBoundResult relog_uniform_bound(const CodingTree& tree, const KoenigsChart& chart, int depth,
                                     uint64_t seed) {
    // The uniform bound is claimed only when q avoids the base curves.
    for (const Curve& b : tree.base_curves())
        for (const cplx& p : b.pts)
            if (std::abs(p - chart.q) < 1e-12)
                throw ConfigError("base curves pass through the chart point");

    RelogBoundResult res;
    bool all_exhaustive = true;
    tree.sweep_levels(depth, seed, [&](const SymbolWord& w, const Curve& c) {
        double lo = 1e300, hi = -1e300;
        for (const cplx& p : c.pts) {
            if (!chart.in_V(p)) continue;
            if (std::abs(p - chart.q) == 0.0) continue;
            double v = chart.relog(p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi >= lo) {
            ++res.edges_with_v_hits;
            if (hi - lo > res.bound) {
                res.bound = hi - lo;
                res.worst_level = int(w.size()) - 1;
            }
        }
        return true;
    });
    double total = std::pow(double(tree.degree()), double(depth + 1));
    all_exhaustive = total <= double(tree.options().exhaustive_budget);
    res.exhaustive = all_exhaustive;
    return res;
}

} // namespace gct
