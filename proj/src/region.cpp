#include "gct/region.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"

namespace gct {

bool Region::contains(cplx z) const {
    // Winding number of the closed boundary polyline.
    double angle = 0.0;
    for (size_t i = 1; i < boundary.pts.size(); ++i) {
        cplx a = boundary.pts[i - 1] - z;
        cplx b = boundary.pts[i] - z;
        double na = std::norm(a), nb = std::norm(b);
        if (na < 1e-300 || nb < 1e-300) return true; // on the boundary
        angle += std::arg(b / a);
    }
    return std::abs(angle) > M_PI; // |winding| >= 1
}

double Region::max_chordal_from(cplx c) const {
    double d = chordal(witness, c);
    for (const cplx& p : boundary.pts) d = std::max(d, chordal(p, c));
    for (const cplx& p : spine.pts) d = std::max(d, chordal(p, c));
    return d;
}

double Region::min_boundary_chordal_from(cplx c) const {
    double d = 1e300;
    for (const cplx& p : boundary.pts) d = std::min(d, chordal(p, c));
    return d;
}

double Region::diameter() const { return point_diameter(boundary.pts); }

Region Region::chordal_ball(cplx center, double r, int boundary_samples) {
    double K = r * r * (1.0 + std::norm(center)) / 4.0;
    if (K >= 1.0)
        throw Error("chordal ball of radius " + std::to_string(r) +
                    " around |z|=" + std::to_string(std::abs(center)) +
                    " covers infinity; not representable");
    cplx ec = center / (1.0 - K);
    double er = std::sqrt(K * (1.0 + std::norm(center) - K)) / (1.0 - K);
    Region reg;
    reg.witness = center;
    reg.boundary = Curve::circle(ec, er, boundary_samples);
    reg.spine = Curve::segment(center, reg.boundary.pts.front(),
                               std::max(9, boundary_samples / 8));
    return reg;
}

PullbackResult pull_back_once(const MapSpec& f, const Region& src, cplx preimage_witness,
                              const PullbackOptions& opt) {
    PullbackResult out;
    LiftOptions lift_opt = opt.lift;
    // Keep the lift grid proportional to the source scale.
    lift_opt.max_gap = std::min(lift_opt.max_gap, std::max(1e-12, 0.15 * src.diameter()));

    if (chordal(evaluate(f, SpherePoint(preimage_witness)), SpherePoint(src.witness)) > 1e-7) {
        out.failure = "witness is not a preimage of the source witness";
        return out;
    }

    Curve spine_lift;
    try {
        spine_lift = lift_curve(f, src.spine, preimage_witness, lift_opt);
    } catch (const Error& e) {
        out.failure = std::string("spine lift failed: ") + e.what();
        return out;
    }
    cplx yb = spine_lift.back();

    // Closure threshold: a quarter of the separation between distinct preimages
    // of the boundary base point.
    double sep = 1e300;
    {
        auto pre = finite_preimages(f, src.boundary.pts.front());
        for (size_t i = 0; i < pre.size(); ++i)
            for (size_t j = i + 1; j < pre.size(); ++j)
                if (std::abs(pre[i] - pre[j]) > 1e-13)
                    sep = std::min(sep, std::abs(pre[i] - pre[j]));
        if (!(sep < 1e300)) sep = 4.0 * std::max(1e-12, src.diameter());
    }

    int max_loops = opt.max_loops > 0 ? opt.max_loops : f.degree;
    std::vector<Curve> arcs;
    cplx ycur = yb;
    bool closed = false;
    for (int loop = 0; loop < max_loops; ++loop) {
        Curve arc;
        try {
            arc = lift_curve(f, src.boundary, ycur, lift_opt);
        } catch (const Error& e) {
            out.failure = std::string("boundary lift failed: ") + e.what();
            return out;
        }
        arcs.push_back(arc);
        ycur = arc.back();
        if (std::abs(ycur - yb) < 0.25 * sep) {
            closed = true;
            break;
        }
    }
    if (!closed) {
        out.failure = "boundary lift did not close after " + std::to_string(max_loops) + " loops";
        return out;
    }

    Region reg;
    reg.witness = preimage_witness;
    reg.spine = spine_lift;
    const double nloops = double(arcs.size());
    for (size_t a = 0; a < arcs.size(); ++a) {
        const Curve& arc = arcs[a];
        size_t start = (a == 0) ? 0 : 1; // drop duplicated joints
        for (size_t i = start; i < arc.size(); ++i) {
            reg.boundary.ts.push_back((double(a) + arc.ts[i]) / nloops);
            reg.boundary.pts.push_back(arc.pts[i]);
        }
    }
    // Pin the loop closed.
    reg.boundary.pts.back() = reg.boundary.pts.front();
    reg.boundary.ts.back() = 1.0;

    if (!reg.contains(preimage_witness)) {
        out.failure = "witness not enclosed by the lifted boundary";
        return out;
    }
    out.region = std::move(reg);
    out.local_degree = int(arcs.size());
    out.ok = true;
    return out;
}

} // namespace gct
