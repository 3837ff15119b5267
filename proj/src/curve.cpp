#include "gct/curve.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "gct/error.hpp"

namespace gct {

cplx Curve::eval(double t) const {
    if (pts.empty()) throw ConfigError("cannot evaluate an empty curve");
    if (t <= ts.front()) return pts.front();
    if (t >= ts.back()) return pts.back();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    size_t i = size_t(it - ts.begin());
    double t0 = ts[i - 1], t1 = ts[i];
    double a = (t - t0) / (t1 - t0);
    return pts[i - 1] * (1.0 - a) + pts[i] * a;
}

void Curve::validate() const {
    if (pts.size() != ts.size()) throw ConfigError("curve sample/parameter size mismatch");
    if (pts.size() < 1) throw ConfigError("curve has no samples");
    if (std::abs(ts.front()) > 1e-12 || std::abs(ts.back() - 1.0) > 1e-12)
        throw ConfigError("curve parameters must run from 0 to 1");
    for (size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) throw ConfigError("curve parameters must be strictly increasing");
    for (const cplx& p : pts)
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
            throw ConfigError("curve contains a non-finite sample");
}

Curve Curve::reversed() const {
    Curve r;
    r.ts.reserve(ts.size());
    r.pts.assign(pts.rbegin(), pts.rend());
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) r.ts.push_back(1.0 - *it);
    return r;
}

Curve Curve::refined(double max_gap) const {
    Curve r;
    if (pts.empty()) return r;
    r.ts.push_back(ts.front());
    r.pts.push_back(pts.front());
    for (size_t i = 1; i < pts.size(); ++i) {
        double gap = chordal(pts[i - 1], pts[i]);
        int splits = std::max(1, int(std::ceil(gap / max_gap)));
        for (int k = 1; k <= splits; ++k) {
            double a = double(k) / splits;
            r.ts.push_back(ts[i - 1] * (1.0 - a) + ts[i] * a);
            r.pts.push_back(pts[i - 1] * (1.0 - a) + pts[i] * a);
        }
    }
    return r;
}

Curve Curve::segment(cplx a, cplx b, int samples) {
    Curve c;
    for (int i = 0; i < samples; ++i) {
        double t = double(i) / (samples - 1);
        c.ts.push_back(t);
        c.pts.push_back(a * (1.0 - t) + b * t);
    }
    return c;
}

Curve Curve::circle(cplx center, double radius, int samples) {
    Curve c;
    for (int i = 0; i <= samples; ++i) {
        double t = double(i) / samples;
        double th = 2.0 * M_PI * t;
        c.ts.push_back(t);
        c.pts.push_back(center + radius * cplx(std::cos(th), std::sin(th)));
    }
    return c;
}

Curve Curve::spiral_arc(cplx a, cplx b, int samples) {
    double ra = std::abs(a), rb = std::abs(b);
    double tha = std::arg(a);
    double dth = std::arg(b / a);
    Curve c;
    for (int i = 0; i < samples; ++i) {
        double t = double(i) / (samples - 1);
        double r = ra * (1.0 - t) + rb * t;
        double th = tha + dth * t;
        c.ts.push_back(t);
        c.pts.push_back(r * cplx(std::cos(th), std::sin(th)));
    }
    // Pin the endpoints exactly.
    c.pts.front() = a;
    c.pts.back() = b;
    return c;
}

std::string Curve::to_json_string() const {
    nlohmann::json j = nlohmann::json::array();
    for (size_t i = 0; i < pts.size(); ++i)
        j.push_back({ts[i], pts[i].real(), pts[i].imag()});
    return j.dump();
}

Curve Curve::from_json_string(const std::string& s) {
    nlohmann::json j = nlohmann::json::parse(s);
    Curve c;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) throw ConfigError("curve sample must be [t, re, im]");
        c.ts.push_back(e[0].get<double>());
        c.pts.push_back(cplx(e[1].get<double>(), e[2].get<double>()));
    }
    c.validate();
    return c;
}

double point_diameter(const std::vector<cplx>& pts) {
    double d = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, chordal(pts[i], pts[j]));
    return d;
}

double curve_diameter(const Curve& c) { return point_diameter(c.pts); }

} // namespace gct
