#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "gct/curve.hpp"
#include "gct/lift.hpp"
#include "gct/map.hpp"
#include "gct/rng.hpp"
#include "gct/word.hpp"

namespace gct {

struct TreeOptions {
    LiftOptions lift;
    size_t cache_cap = 150000;   // cached edges before FIFO eviction
    int exhaustive_budget = 4096; // enumerate every word while d^n stays below this
    int sample_per_level = 512;   // random words per level beyond the budget
};

/// The tree of iterated preimages of a root point, with edges the lifted
/// connecting curves addressed by finite words over {1..d}.
///
/// A word w of length n+1 names the level-n edge: the level-0 edge of letter j is
/// the j-th base curve, and the edge of w is the inverse-branch lift of the edge
/// of the shifted word, started at the endpoint of the edge of the parent word.
/// Edges therefore satisfy f(edge(w)(t)) = edge(shift w)(t) and concatenate:
/// edge(w)(0) = edge(parent w)(1).
class CodingTree {
  public:
    /// Base curve j must run from the root to a preimage of the root, one curve
    /// per preimage (the full tree).  Validated on construction.
    CodingTree(MapSpec map, cplx root, std::vector<Curve> base_curves, TreeOptions opt = {});

    const MapSpec& map() const { return map_; }
    cplx root() const { return root_; }
    int degree() const { return int(base_.size()); }
    const std::vector<Curve>& base_curves() const { return base_; }
    const TreeOptions& options() const { return opt_; }

    /// The level-(|w|-1) edge for the word w; memoized, recomputed on cache miss.
    Curve edge(const SymbolWord& w) const;
    /// Edge endpoint (the tree vertex for w).
    cplx vertex(const SymbolWord& w) const;

    void clear_cache() const;
    size_t cache_size() const;

    struct LevelEntry {
        int level;              // n
        double max_diameter;    // over visited words
        bool exhaustive;        // every word visited, or sampled
        size_t words_visited;
    };

    /// Max edge diameter per level up to `depth`.  Exhaustive while d^(n+1) fits
    /// the budget, uniform random words (seeded) beyond; decay is reported, never
    /// asserted.
    std::vector<LevelEntry> diameter_profile(int depth, uint64_t seed = 1) const;

    struct NEpsilonResult {
        int n = 0;                // sup of levels with a sampled edge of diameter >= eps
        bool attained_inside = false; // trustworthy iff strictly below the budget
        int budget = 0;
        double eps = 0.0;
    };
    NEpsilonResult n_epsilon(double eps, int depth_budget, uint64_t seed = 1) const;

    struct LimitResult {
        cplx point{0.0};
        bool converged = false;
        int depth_used = 0;
        double last_residual = 0.0;
        std::vector<double> residuals; // consecutive vertex gaps (chordal)
    };

    /// Follows the vertices of an eventually periodic address until five
    /// consecutive gaps fall below tol, or the depth cap is hit.
    LimitResult coding_limit(const Address& address, double tol = 1e-9, int max_depth = 400) const;

    /// Vertices at the given level (the visited words' endpoints).
    std::vector<cplx> limit_set_sample(int depth, uint64_t seed = 1) const;

    /// Visits each level n = 0..depth and calls fn(word, edge) for every visited
    /// word; exhaustive per level within the budget, sampled beyond.  The visitor
    /// may return false to stop the sweep early.
    void sweep_levels(int depth, uint64_t seed,
                      const std::function<bool(const SymbolWord&, const Curve&)>& fn) const;

  private:
    Curve compute_edge(const SymbolWord& w) const;
    Curve edge_cached(const SymbolWord& w) const;

    MapSpec map_;
    cplx root_;
    std::vector<Curve> base_;
    TreeOptions opt_;
    std::vector<SpherePoint> crit_values_;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<SymbolWord, Curve, WordHash> cache_;
    mutable std::deque<SymbolWord> fifo_;
};

} // namespace gct
