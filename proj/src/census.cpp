#include "gct/census.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct {

CensusReport annulus_census(const CodingTree& tree, const KoenigsChart& chart,
                            const Address& branch, const CensusParams& params) {
    if (!(params.E > 3.0 / params.kappa))
        throw ConfigError("census needs E > 3/kappa");

    CensusReport rep;
    rep.k = params.k;
    rep.E = params.E;
    rep.kappa = params.kappa;
    rep.eta = 1.0 - 3.0 / (params.E * params.kappa);

    const cplx q = chart.q;
    const MapSpec& f = tree.map();

    // Telescope at the landing point; the trace rings replace the chart annuli.
    GoodTimesReport gt = good_times(f, q, params.gp, 2 * params.k + 10);
    Telescope tel = build_telescope(f, q, gt.good_times, params.gp, params.k, &tree);
    rep.times = tel.times;

    auto member = [&](int l, cplx z) -> bool {
        if (l <= 0) return chordal(SpherePoint(z), SpherePoint(q)) < params.gp.r;
        return tel.trace[size_t(l) - 1].contains(z);
    };
    auto deepest = [&](cplx z) -> int {
        if (!member(0, z)) return -1;
        int l = 0;
        while (l + 1 <= params.k && member(l + 1, z)) ++l;
        return l;
    };

    // Walk the branch until an edge meets the deepest trace region.
    int T = -1;
    std::vector<std::vector<int>> ring(size_t(params.depth_cap) + 1);
    for (int t = 0; t <= params.depth_cap; ++t) {
        Curve e = tree.edge(branch.prefix(size_t(t) + 1));
        ring[size_t(t)].reserve(e.size());
        for (const cplx& p : e.pts) ring[size_t(t)].push_back(deepest(p));
        bool hit_bottom = false;
        for (int r : ring[size_t(t)])
            if (r >= params.k) hit_bottom = true;
        if (hit_bottom) {
            T = t;
            break;
        }
    }
    if (T < 0) throw Error("branch never reached the deepest trace region within the depth cap");
    rep.T = T;

    // Edge T counts only up to the end of its first run inside the deepest region.
    {
        auto& rT = ring[size_t(T)];
        size_t first = 0;
        while (first < rT.size() && rT[first] < params.k) ++first;
        size_t last = first;
        while (last + 1 < rT.size() && rT[last + 1] >= params.k) ++last;
        rT.resize(last + 1);
    }

    // hits[t][m]: edge t has a sample whose deepest region is exactly m.
    // tail_min[t]: min ring over edges t..T (containment of the branch tail).
    std::vector<std::vector<bool>> hits(size_t(T) + 1, std::vector<bool>(size_t(params.k) + 1, false));
    std::vector<int> edge_min(size_t(T) + 1, params.k);
    for (int t = 0; t <= T; ++t) {
        for (int r : ring[size_t(t)]) {
            if (r >= 0) hits[size_t(t)][size_t(std::min(r, params.k))] = true;
            edge_min[size_t(t)] = std::min(edge_min[size_t(t)], r);
        }
    }
    std::vector<int> tail_min(size_t(T) + 2, params.k);
    for (int t = T; t >= 0; --t)
        tail_min[size_t(t)] = std::min(edge_min[size_t(t)], tail_min[size_t(t) + 1]);

    // suffix_ok(t, m): some sample of edge t sits exactly in ring m and every later
    // sample of the edge stays at depth >= m.
    auto suffix_ok = [&](int t, int m) -> bool {
        const auto& r = ring[size_t(t)];
        int suffmin = params.k;
        for (size_t i = r.size(); i-- > 0;) {
            suffmin = std::min(suffmin, r[i]);
            if (r[i] == m && suffmin >= m) return true;
        }
        return false;
    };

    auto n_eps = tree.n_epsilon(params.gp.delta / double(params.E), params.n_eps_budget,
                                params.seed);
    rep.n_eps = n_eps.n;
    rep.n_eps_trustworthy = n_eps.attained_inside;

    rep.bound_all_ok = true;
    std::vector<bool> in_aplus(size_t(params.k), false);
    for (int m = 1; m < params.k; ++m) {
        for (int t = 0; t <= T; ++t) {
            if (!suffix_ok(t, m)) continue;
            if (tail_min[size_t(t) + 1] < m) continue;
            // Neighbor rings within the E-window.
            int E1 = -1, E2 = -1;
            for (int e2 = 0; e2 < params.E && E2 < 0; ++e2)
                if (t + e2 <= T && hits[size_t(t + e2)][size_t(m + 1)]) E2 = e2;
            if (E2 < 0) continue;
            for (int e1 = 0; e1 + E2 < params.E && E1 < 0; ++e1)
                if (t - e1 >= 0 && hits[size_t(t - e1)][size_t(m - 1)]) E1 = e1;
            if (E1 < 0) continue;

            CensusElement el;
            el.t = t;
            el.m = m;
            el.E1 = E1;
            el.E2 = E2;
            el.bound_ok = t <= rep.times[size_t(m) + 1] + params.E + rep.n_eps;
            rep.bound_all_ok = rep.bound_all_ok && el.bound_ok;
            rep.elements.push_back(el);
            in_aplus[size_t(m)] = true;
        }
    }
    for (int m = 1; m < params.k; ++m)
        (in_aplus[size_t(m)] ? rep.a_plus : rep.a_minus).push_back(m);

    rep.count_ok = double(rep.a_plus.size()) >= params.k * rep.eta;

    // Prefix refinement: #A+(M) >= eta M from some threshold on.
    for (int M : rep.a_plus) {
        int count = 0;
        for (int m : rep.a_plus)
            if (m < M) ++count;
        rep.prefix_grid.push_back({M, double(count) >= rep.eta * double(M)});
    }
    rep.m0 = -1;
    for (size_t i = 0; i < rep.prefix_grid.size(); ++i) {
        bool all = true;
        for (size_t j = i; j < rep.prefix_grid.size(); ++j) all = all && rep.prefix_grid[j].second;
        if (all) {
            rep.m0 = rep.prefix_grid[i].first;
            break;
        }
    }
    rep.prefix_counts_ok = rep.m0 >= 0;
    if (rep.a_plus.empty()) {
        rep.prefix_counts_ok = params.k <= 1; // vacuous census
        rep.count_ok = rep.count_ok || params.k <= 1;
        rep.note = "no census elements";
    }
    return rep;
}

} // namespace gct
