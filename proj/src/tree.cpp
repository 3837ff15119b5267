#include "gct/tree.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "gct/error.hpp"

namespace gct {

CodingTree::CodingTree(MapSpec map, cplx root, std::vector<Curve> base_curves, TreeOptions opt)
    : map_(std::move(map)), root_(root), base_(std::move(base_curves)), opt_(opt) {
    if (base_.empty()) throw ConfigError("tree needs at least one base curve");
    if (int(base_.size()) != map_.degree)
        throw ConfigError("full tree requires one base curve per preimage: degree " +
                          std::to_string(map_.degree) + ", got " + std::to_string(base_.size()));

    auto pre = finite_preimages(map_, root_);
    std::vector<bool> taken(pre.size(), false);
    for (auto& c : base_) {
        c.validate();
        if (std::abs(c.front() - root_) > 1e-9)
            throw ConfigError("base curve does not start at the root");
        if (chordal(evaluate(map_, SpherePoint(c.back())), SpherePoint(root_)) > 1e-8)
            throw ConfigError("base curve endpoint is not a preimage of the root");
        // Each preimage must be hit exactly once (multiplicities give repeated slots).
        bool matched = false;
        for (size_t i = 0; i < pre.size(); ++i) {
            if (taken[i]) continue;
            if (std::abs(pre[i] - c.back()) < 1e-6 * (1.0 + std::abs(pre[i]))) {
                taken[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) throw ConfigError("base curve endpoints do not cover the root preimages");
        c = c.refined(opt_.lift.max_gap);
    }
    crit_values_ = critical_values(map_);
}

Curve CodingTree::compute_edge(const SymbolWord& w) const {
    if (w.empty()) throw ConfigError("edge words must be non-empty");
    for (uint8_t l : w.letters)
        if (l < 1 || int(l) > degree()) throw ConfigError("edge word letter outside alphabet");
    if (w.size() == 1) return base_[size_t(w[0]) - 1];

    Curve shifted_edge = edge_cached(w.shifted());
    cplx start = edge_cached(w.parent()).back();
    try {
        return lift_curve(map_, shifted_edge, start, crit_values_, opt_.lift);
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " [while lifting edge " + w.str() + "]");
    }
}

Curve CodingTree::edge_cached(const SymbolWord& w) const {
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
    }
    Curve c = compute_edge(w);
    {
        std::unique_lock lock(mutex_);
        auto it = cache_.find(w);
        if (it == cache_.end()) {
            while (cache_.size() >= opt_.cache_cap && !fifo_.empty()) {
                cache_.erase(fifo_.front());
                fifo_.pop_front();
            }
            cache_.emplace(w, c);
            fifo_.push_back(w);
        }
    }
    return c;
}

Curve CodingTree::edge(const SymbolWord& w) const { return edge_cached(w); }

cplx CodingTree::vertex(const SymbolWord& w) const { return edge_cached(w).back(); }

void CodingTree::clear_cache() const {
    std::unique_lock lock(mutex_);
    cache_.clear();
    fifo_.clear();
}

size_t CodingTree::cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
}

void CodingTree::sweep_levels(int depth, uint64_t seed,
                              const std::function<bool(const SymbolWord&, const Curve&)>& fn) const {
    const int d = degree();
    Rng rng(seed);
    double level_count = 1.0;
    bool exhaustive = true;
    std::vector<SymbolWord> frontier; // exhaustive mode: all words of the previous level
    for (int n = 0; n <= depth; ++n) {
        level_count *= d;
        exhaustive = exhaustive && level_count <= double(opt_.exhaustive_budget);
        if (exhaustive) {
            std::vector<SymbolWord> level;
            if (n == 0) {
                for (int j = 1; j <= d; ++j) level.push_back(SymbolWord{j});
            } else {
                level.reserve(frontier.size() * size_t(d));
                for (const auto& w : frontier)
                    for (int j = 1; j <= d; ++j) level.push_back(w.appended(uint8_t(j)));
            }
            for (const auto& w : level)
                if (!fn(w, edge_cached(w))) return;
            frontier = std::move(level);
        } else {
            frontier.clear();
            Rng level_rng = rng.fork(uint64_t(n));
            for (int s = 0; s < opt_.sample_per_level; ++s) {
                SymbolWord w;
                w.letters.reserve(size_t(n) + 1);
                for (int i = 0; i <= n; ++i)
                    w.letters.push_back(uint8_t(1 + level_rng.below(uint64_t(d))));
                if (!fn(w, edge_cached(w))) return;
            }
        }
    }
}

std::vector<CodingTree::LevelEntry> CodingTree::diameter_profile(int depth, uint64_t seed) const {
    std::vector<LevelEntry> profile(size_t(depth) + 1);
    for (int n = 0; n <= depth; ++n) profile[size_t(n)] = {n, 0.0, true, 0};
    double level_count = 1.0;
    bool exhaustive = true;
    int d = degree();
    for (int n = 0; n <= depth; ++n) {
        level_count *= d;
        exhaustive = exhaustive && level_count <= double(opt_.exhaustive_budget);
        profile[size_t(n)].exhaustive = exhaustive;
    }
    sweep_levels(depth, seed, [&](const SymbolWord& w, const Curve& c) {
        auto& e = profile[w.size() - 1];
        e.max_diameter = std::max(e.max_diameter, curve_diameter(c));
        ++e.words_visited;
        return true;
    });
    return profile;
}

CodingTree::NEpsilonResult CodingTree::n_epsilon(double eps, int depth_budget, uint64_t seed) const {
    if (!(eps > 0.0)) throw ConfigError("n_epsilon needs eps > 0");
    auto profile = diameter_profile(depth_budget, seed);
    NEpsilonResult r;
    r.budget = depth_budget;
    r.eps = eps;
    r.n = 0;
    for (const auto& e : profile)
        if (e.max_diameter >= eps) r.n = e.level;
    r.attained_inside = r.n < depth_budget;
    return r;
}

CodingTree::LimitResult CodingTree::coding_limit(const Address& address, double tol,
                                                 int max_depth) const {
    LimitResult res;
    int consecutive = 0;
    cplx prev = vertex(address.prefix(1));
    for (int n = 1; n <= max_depth; ++n) {
        cplx cur = vertex(address.prefix(size_t(n) + 1));
        double gap = chordal(prev, cur);
        res.residuals.push_back(gap);
        res.point = cur;
        res.depth_used = n;
        res.last_residual = gap;
        consecutive = (gap < tol) ? consecutive + 1 : 0;
        if (consecutive >= 5) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    res.converged = false;
    return res;
}

std::vector<cplx> CodingTree::limit_set_sample(int depth, uint64_t seed) const {
    std::vector<cplx> pts;
    sweep_levels(depth, seed, [&](const SymbolWord& w, const Curve& c) {
        if (int(w.size()) - 1 == depth) pts.push_back(c.back());
        return true;
    });
    return pts;
}

} // namespace gct
