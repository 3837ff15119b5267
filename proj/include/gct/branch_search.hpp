#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gct/koenigs.hpp"
#include "gct/tree.hpp"

namespace gct {

struct BranchSearchOptions {
    int entry_depth_cap = 40;  // deepest level searched for an edge entering V
    int full_depth = 10;       // exhaustive search down to here, beam search after
    int beam_width = 256;
    int max_isteps = 200;      // inverse-branch applications before giving up
    double landing_tol = 1e-6; // required closeness of the address's limit to q
    int rate_depth = 80;       // vertices used for the contraction-rate fit
    uint64_t seed = 1;
};

struct PeriodicBranchResult {
    bool found = false;
    Address address;
    std::string failure;          // "no entry into V" / "no recurrence" when not found
    bool degenerate = false;      // constant base curve at q
    int isteps_used = 0;
    SymbolWord entry_word;
    double entry_level_a = 0.0;   // level actually used after shrinking V
    bool level_excludes_tree_base = true;
    double landing_residual = 0.0;
    double fitted_rate = 0.0;     // contraction per letter from the vertex distances
    double expected_rate = 0.0;   // |lambda|^(-1/period)
    double rate_rel_error = 0.0;
    std::vector<double> vertex_distances; // chordal |z_n - q|
    std::string condition_1_1 = "sampled"; // inverse steps stayed inside the chart
};

/// Searches for an eventually periodic address whose branch converges to the
/// chart's base point: finds an edge entering V, repeatedly applies the inverse
/// branch of the return map fixing q, identifies the prepended letter block by
/// matching the lifted curve against tree edges, and reads the periodic address
/// off the recurring block sequence.  The reported rate is fitted on the vertex
/// distances and compared against 1/|lambda|^(1/letters-per-cycle).
PeriodicBranchResult find_periodic_branch(const CodingTree& tree, const KoenigsChart& chart,
                                          int max_period, BranchSearchOptions opt = {});

struct EnumerationResult {
    std::vector<Address> addresses; // canonical, sorted
    int candidates_tested = 0;
    int bound = 0;
    bool budget_exhausted = false;
};

/// Exhaustive scan of eventually periodic addresses with preperiod+period length
/// at most `bound` whose coding limit lands within tol of q.
EnumerationResult enumerate_converging_branches(const CodingTree& tree, SpherePoint q, int bound,
                                                int depth_budget = 300, double tol = 1e-6);

struct RelogBoundResult {
    double bound = 0.0;          // max observed diam_relog(edge ∩ V)
    int edges_with_v_hits = 0;
    int worst_level = -1;
    bool exhaustive = true;
};

/// Max over sampled edges (levels <= depth) of the radial-log diameter of the
/// edge's intersection with V.  Requires q off the base curves.
RelogBoundResult relog_uniform_bound(const CodingTree& tree, const KoenigsChart& chart, int depth,
                                     uint64_t seed = 1);

} // namespace gct
