#include "gct/polylike.hpp"

#include <algorithm>
#include <cmath>

#include "gct/error.hpp"
#include "gct/rng.hpp"

namespace gct {

bool DomainSpec::contains(cplx z) const {
    if (kind == Disk) return std::abs(z - center) < radius;
    double angle = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i) {
        cplx a = vertices[i] - z;
        cplx b = vertices[(i + 1) % vertices.size()] - z;
        if (std::norm(a) < 1e-300 || std::norm(b) < 1e-300) return true;
        angle += std::arg(b / a);
    }
    return std::abs(angle) > M_PI;
}

double DomainSpec::boundary_distance(cplx z) const {
    if (kind == Disk) return std::abs(radius - std::abs(z - center));
    double d = 1e300;
    for (size_t i = 0; i < vertices.size(); ++i) {
        cplx a = vertices[i], b = vertices[(i + 1) % vertices.size()];
        cplx ab = b - a;
        double t = std::clamp(((z - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
        d = std::min(d, std::abs(z - (a + t * ab)));
    }
    return d;
}

Curve DomainSpec::boundary(int samples) const {
    if (kind == Disk) return Curve::circle(center, radius, samples);
    Curve c;
    for (int i = 0; i <= samples; ++i) {
        double t = double(i) / samples;
        c.ts.push_back(t);
        c.pts.push_back(boundary_point(t == 1.0 ? 0.0 : t));
    }
    c.pts.back() = c.pts.front();
    return c;
}

cplx DomainSpec::boundary_point(double t) const {
    if (kind == Disk) {
        double th = 2.0 * M_PI * t;
        return center + radius * cplx(std::cos(th), std::sin(th));
    }
    double total = 0.0;
    std::vector<double> lens(vertices.size());
    for (size_t i = 0; i < vertices.size(); ++i) {
        lens[i] = std::abs(vertices[(i + 1) % vertices.size()] - vertices[i]);
        total += lens[i];
    }
    double s = t * total;
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (s <= lens[i] || i + 1 == vertices.size()) {
            double a = lens[i] > 0 ? s / lens[i] : 0.0;
            return vertices[i] * (1.0 - a) + vertices[(i + 1) % vertices.size()] * a;
        }
        s -= lens[i];
    }
    return vertices[0];
}

DomainSpec DomainSpec::polygon(std::vector<cplx> vs) {
    if (vs.size() < 3) throw ConfigError("polygon needs at least three vertices");
    DomainSpec d;
    d.kind = Polygon;
    d.vertices = std::move(vs);
    cplx c = 0.0;
    for (const cplx& v : d.vertices) c += v;
    d.center = c / double(d.vertices.size());
    return d;
}

PolyLikeSpec PolyLikeSpec::make(MapSpec map, DomainSpec W, DomainSpec W1, int probe_targets) {
    PolyLikeSpec s;
    s.map = std::move(map);
    s.W = std::move(W);
    s.W1 = std::move(W1);
    s.degree = s.map.degree;

    // cl W1 inside W with positive margin.
    double margin = 1e300;
    Curve b1 = s.W1.boundary(128);
    for (const cplx& p : b1.pts) {
        if (!s.W.contains(p)) throw ConfigError("W1 is not compactly contained in W");
        margin = std::min(margin, s.W.boundary_distance(p));
    }
    s.containment_margin = margin;
    if (!(margin > 0.0)) throw ConfigError("containment margin is not positive");

    // Properness: each sampled target in W has exactly deg preimages inside W1.
    Rng rng(41);
    for (int i = 0; i < probe_targets; ++i) {
        cplx w;
        do {
            if (s.W.kind == DomainSpec::Disk) {
                double rr = s.W.radius * std::sqrt(rng.uniform());
                double th = rng.uniform(0.0, 2.0 * M_PI);
                w = s.W.center + rr * cplx(std::cos(th), std::sin(th));
            } else {
                w = s.W.center; // centroid probe for polygons
            }
        } while (!s.W.contains(w));
        int count = 0;
        for (const auto& p : preimages(s.map, SpherePoint(w)))
            if (p.point.finite() && s.W1.contains(p.point.value)) count += p.multiplicity;
        if (count != s.degree)
            throw ConfigError("map is not proper of full degree from W1 onto W (target got " +
                              std::to_string(count) + " of " + std::to_string(s.degree) +
                              " preimages)");
    }
    return s;
}

int escape_steps(const PolyLikeSpec& spec, cplx z, int cap) {
    SpherePoint p(z);
    for (int n = 0; n < cap; ++n) {
        if (p.at_infinity || !spec.W.contains(p.value)) return n;
        p = evaluate(spec.map, p);
    }
    return cap;
}

bool in_filled_k(const PolyLikeSpec& spec, cplx z, int cap) {
    return escape_steps(spec, z, cap) >= cap;
}

} // namespace gct
