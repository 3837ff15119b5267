#pragma once

#include <cmath>
#include <vector>

#include "gct/map.hpp"
#include "gct/tree.hpp"

namespace fixtures {

using gct::cplx;

/// z^2
inline gct::MapSpec squaring() {
    return gct::MapSpec::make({0.0, 0.0, 1.0}, {1.0});
}

/// z^2 - 1
inline gct::MapSpec basilica() {
    return gct::MapSpec::make({-1.0, 0.0, 1.0}, {1.0});
}

/// lambda z (degree 1, chart fixture)
inline gct::MapSpec linear(cplx lambda) {
    return gct::MapSpec::make({0.0, lambda}, {1.0}, 1);
}

/// Tree for z^2 rooted at 4: a real segment to 2 and an upper arc to -2.
inline gct::CodingTree squaring_tree(gct::TreeOptions opt = {}) {
    std::vector<gct::Curve> base;
    base.push_back(gct::Curve::segment(4.0, 2.0, 33));
    base.push_back(gct::Curve::spiral_arc(4.0, -2.0, 65));
    return gct::CodingTree(squaring(), 4.0, std::move(base), opt);
}

/// Tree for z^2 - 1 rooted at 4 (basin of infinity): preimages +-sqrt(5).
inline gct::CodingTree basilica_tree(gct::TreeOptions opt = {}) {
    double s5 = std::sqrt(5.0);
    std::vector<gct::Curve> base;
    base.push_back(gct::Curve::segment(4.0, s5, 33));
    base.push_back(gct::Curve::spiral_arc(4.0, -s5, 65));
    return gct::CodingTree(basilica(), 4.0, std::move(base), opt);
}

/// Degenerate degree-1 tree: root at the fixed point 0 of lambda z with a
/// constant base curve.
inline gct::CodingTree linear_tree(cplx lambda) {
    gct::Curve c;
    for (int i = 0; i < 5; ++i) {
        c.ts.push_back(i / 4.0);
        c.pts.push_back(0.0);
    }
    return gct::CodingTree(linear(lambda), 0.0, {c});
}

/// Independent preimage cloud for z^2 + c by the closed-form square root:
/// all 2^depth inverse images of the root (no curves involved).
inline std::vector<cplx> quadratic_preimage_cloud(cplx c, cplx root, int depth) {
    std::vector<cplx> cur{root};
    for (int n = 0; n < depth; ++n) {
        std::vector<cplx> next;
        next.reserve(cur.size() * 2);
        for (cplx w : cur) {
            cplx s = std::sqrt(w - c);
            next.push_back(s);
            next.push_back(-s);
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace fixtures
