#pragma once

#include <string>
#include <vector>

#include "gct/koenigs.hpp"
#include "gct/telescope.hpp"
#include "gct/tree.hpp"
#include "gct/word.hpp"

namespace gct {

struct CensusParams {
    int k = 20;
    int E = 16;         // neighbor-window width; requires E > 3/kappa
    double kappa = 1.0; // density constant entering eta = 1 - 3/(E kappa)
    GoodPointParams gp; // ball radius / clearance for the underlying telescope
    int n_eps_budget = 22;
    int depth_cap = 64; // deepest branch edge examined
    uint64_t seed = 1;
};

struct CensusElement {
    int t = 0, m = 0;
    int E1 = 0, E2 = 0; // witnesses for the neighbor-ring conditions
    bool bound_ok = false; // t <= n_{m+1} + E + N(delta/E)
};

struct CensusReport {
    int k = 0, E = 0, T = 0;
    double kappa = 0.0, eta = 0.0;
    int n_eps = 0; // N(delta/E) from the tree profile
    bool n_eps_trustworthy = false;
    std::vector<int> times; // telescope times n_0..n_k
    std::vector<CensusElement> elements;
    std::vector<int> a_plus, a_minus;
    bool bound_all_ok = false;     // every element meets the time bound
    bool count_ok = false;         // #A+ >= k * eta
    int m0 = -1;                   // threshold from which the prefix counts hold
    bool prefix_counts_ok = false; // #A+(M) >= eta M for all M in A+ with M >= m0
    std::vector<std::pair<int, bool>> prefix_grid; // (M, #A+(M) >= eta M) for M in A+
    std::string note;

    bool all_ok() const { return bound_all_ok && count_ok && prefix_counts_ok; }
};

/// Ring census along a concrete branch converging to the chart point: builds a
/// k-link telescope at q, forms the nested trace rings, records which branch
/// edges cross which rings with near-monotone passage (the E-window neighbor
/// conditions and the containment of the branch tail), and checks the time bound,
/// the count bound #A+ >= k(1 - 3/(E kappa)), and its prefix refinement.
CensusReport annulus_census(const CodingTree& tree, const KoenigsChart& chart,
                            const Address& branch, const CensusParams& params);

} // namespace gct
