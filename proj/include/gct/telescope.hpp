#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gct/good_points.hpp"
#include "gct/region.hpp"
#include "gct/tree.hpp"

namespace gct {

struct TelescopeLink {
    int n_prev = 0;
    int n_t = 0;
    Region component;      // component of the pullback of D_t contained in D_{t-1}
    double margin = 0.0;   // measured clearance of the component inside D_{t-1}
};

/// Chain of ball regions D_t = B(orbit(n_t), r) along strictly increasing times
/// 0 = n_0 < n_1 < ... < n_k, with the pullback component of each D_t nested in
/// D_{t-1} with clearance delta, and the fully pulled-back nested trace at time 0.
struct Telescope {
    cplx q{0.0};
    GoodPointParams params;
    double kappa_effective = 0.0; // params.kappa / Delta after time thinning
    std::vector<int> times;       // n_0 = 0, ..., n_k
    std::vector<cplx> centers;    // orbit points at those times
    std::vector<TelescopeLink> links; // t = 1..k
    std::vector<Region> trace;        // D_{t,0} for t = 1..k
    int significance_level = -1;      // smallest tree level meeting D_k, -1 if none found

    int k() const { return int(links.size()); }
};

struct TelescopeBuildError : Error {
    using Error::Error;
};
struct NoSignificantComponent : TelescopeBuildError {
    int smallest_sufficient_n0;
    explicit NoSignificantComponent(int n0)
        : TelescopeBuildError("deepest region meets no tree edge at the significance horizon"
                              " (smallest sufficient level: " + std::to_string(n0) + ")"),
          smallest_sufficient_n0(n0) {}
};

struct SignificanceResult {
    bool significant = false;
    int first_level = -1; // smallest level with an edge meeting the region
    bool exhaustive = true;
};

/// Does any tree edge of level <= n0 meet the chordal ball?  Exhaustive while the
/// level population fits the tree budget, sampled (and labeled) beyond.
SignificanceResult significance(cplx center, double radius, const CodingTree& tree, int n0);

/// Builds a k-link telescope from a supplied good-time set: every Delta-th good
/// time is selected, D_t are the balls at those orbit points, components are traced
/// by boundary lifting, and the trace is pulled all the way back to time 0.
/// Throws TelescopeBuildError / NoSignificantComponent on failure.
Telescope build_telescope(const MapSpec& f, cplx q, const std::vector<int>& good_time_set,
                          const GoodPointParams& params, int k,
                          const CodingTree* tree_for_significance = nullptr,
                          int boundary_samples = 96);

struct LinkCheck {
    int t;
    bool time_ok;        // t / n_t > kappa_effective
    double margin;       // re-measured clearance
    bool margin_ok;      // margin > delta
    double forward_deviation; // how far the forward image of the component boundary is from round
};

struct TelescopeVerifyReport {
    std::vector<LinkCheck> links;
    bool time_condition_ok = true;
    bool clearance_ok = true;
    bool nesting_ok = true; // trace regions nest (sampled)
    int first_failed_link = -1;
    bool all_ok() const { return time_condition_ok && clearance_ok && nesting_ok; }
};

/// Re-checks the structure independently of construction: the integer time
/// density, the sampled boundary clearances, the forward images of the traced
/// components, and trace nesting.
TelescopeVerifyReport verify_telescope(const MapSpec& f, const Telescope& tel);

enum class Verdict { Good, Undetermined };

struct GoodPointVerdict {
    Verdict verdict = Verdict::Undetermined;
    std::string reason;
    int telescopes_built = 0;
    std::vector<double> sup_trace_distance; // index l: sup over telescopes of reach from q
    double final_sup = 0.0;
    bool decay_ok = false;
};

/// Builds `count` telescopes of lengths min_len .. min_len+count-1 at q, computes
/// their traces, and tests the uniform decay of the trace distance to q.
GoodPointVerdict good_point_verdict(const MapSpec& f, cplx q, const CodingTree& tree,
                                    const GoodPointParams& params, int count, int min_len = 12,
                                    int horizon = 0, int boundary_samples = 96);

} // namespace gct
