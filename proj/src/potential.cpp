#include "gct/potential.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "gct/error.hpp"

namespace gct {

PotentialM PotentialM::build(const PolyLikeSpec& spec, PotentialOptions opt) {
    PotentialM pot;
    pot.spec_ = spec;
    pot.opt_ = opt;
    pot.center_ = spec.W1.center;
    pot.scale_in_ = (spec.W1.kind == DomainSpec::Disk) ? spec.W1.radius : 1.0;
    pot.scale_out_ = (spec.W.kind == DomainSpec::Disk) ? spec.W.radius : 1.0;

    const int K = opt.basis_order;
    const int n_basis = 2 + 4 * K;
    const int n_rows = 2 * opt.collocation;

    auto fill_row = [&](cplx z, double* row) {
        cplx u = z - pot.center_;
        row[0] = 1.0;
        row[1] = std::log(std::abs(u));
        cplx w = u / pot.scale_out_;
        cplx v = pot.scale_in_ / u;
        cplx wp = w, vp = v;
        for (int k = 0; k < K; ++k) {
            row[2 + 4 * k + 0] = wp.real();
            row[2 + 4 * k + 1] = wp.imag();
            row[2 + 4 * k + 2] = vp.real();
            row[2 + 4 * k + 3] = vp.imag();
            wp *= w;
            vp *= v;
        }
    };

    Eigen::MatrixXd A(n_rows, n_basis);
    Eigen::VectorXd b(n_rows);
    for (int i = 0; i < opt.collocation; ++i) {
        double t = (i + 0.5) / opt.collocation;
        cplx zo = spec.W.boundary_point(t);
        cplx zi = spec.W1.boundary_point(t);
        std::vector<double> row(static_cast<size_t>(n_basis));
        fill_row(zo, row.data());
        for (int j = 0; j < n_basis; ++j) A(i, j) = row[size_t(j)];
        b(i) = 0.0;
        fill_row(zi, row.data());
        for (int j = 0; j < n_basis; ++j) A(opt.collocation + i, j) = row[size_t(j)];
        b(opt.collocation + i) = 1.0;
    }

    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    pot.coeffs_.assign(x.data(), x.data() + n_basis);

    Eigen::VectorXd res = A * x - b;
    pot.boundary_residual_ = res.cwiseAbs().maxCoeff();
    return pot;
}

double PotentialM::base_value(cplx z) const {
    cplx u = z - center_;
    const int K = opt_.basis_order;
    double val = coeffs_[0] + coeffs_[1] * std::log(std::abs(u));
    cplx w = u / scale_out_, v = scale_in_ / u;
    cplx wp = w, vp = v;
    for (int k = 0; k < K; ++k) {
        val += coeffs_[2 + 4 * size_t(k) + 0] * wp.real();
        val += coeffs_[2 + 4 * size_t(k) + 1] * wp.imag();
        val += coeffs_[2 + 4 * size_t(k) + 2] * vp.real();
        val += coeffs_[2 + 4 * size_t(k) + 3] * vp.imag();
        wp *= w;
        vp *= v;
    }
    return val;
}

cplx PotentialM::base_grad(cplx z) const {
    // For M = Re(H) with H holomorphic, grad M = conj(H'); Im(H) contributes
    // conj(i H') = -i conj(H').  Assemble H' term by term.
    cplx u = z - center_;
    const int K = opt_.basis_order;
    cplx hp = coeffs_[1] / u; // d/dz of log|u| as Re(log u)
    cplx w = u / scale_out_, v = scale_in_ / u;
    cplx wp = 1.0, vp = 1.0; // w^(k-1), v^(k-1)
    for (int k = 1; k <= K; ++k) {
        cplx dwk = double(k) * wp / scale_out_;          // d/dz w^k
        cplx dvk = double(k) * vp * v * (-1.0 / u);      // d/dz v^k = -k v^k / u
        cplx cw(coeffs_[2 + 4 * size_t(k - 1) + 0], -coeffs_[2 + 4 * size_t(k - 1) + 1]);
        cplx cv(coeffs_[2 + 4 * size_t(k - 1) + 2], -coeffs_[2 + 4 * size_t(k - 1) + 3]);
        // a Re(w^k) + b Im(w^k) = Re((a - i b) w^k)
        hp += cw * dwk + cv * dvk;
        wp *= w;
        vp *= v;
    }
    return std::conj(hp);
}

PotentialM::Eval PotentialM::eval(cplx z) const {
    Eval ev;
    if (!spec_.W.contains(z)) {
        ev.why = "outside W";
        return ev;
    }
    cplx zc = z;
    cplx chain = 1.0;
    int n = 0;
    while (spec_.W1.contains(zc)) {
        if (n >= opt_.escape_cap) {
            ev.why = "orbit stays in W1 (filled set)";
            return ev;
        }
        chain *= derivative(spec_.map, zc);
        SpherePoint p = evaluate(spec_.map, SpherePoint(zc));
        if (!p.finite()) {
            ev.why = "orbit escaped to infinity inside W1";
            return ev;
        }
        zc = p.value;
        ++n;
    }
    ev.ok = true;
    ev.M = base_value(zc) + n;
    ev.grad = std::conj(chain) * base_grad(zc);
    ev.depth = n;
    return ev;
}

double PotentialM::value(cplx z) const {
    Eval ev = eval(z);
    if (!ev.ok) throw Error(std::string("potential undefined: ") + ev.why);
    return ev.M;
}

double PotentialM::functional_residual(Rng& rng, int n_points) const {
    double worst = 0.0;
    int tested = 0;
    int guard = 0;
    while (tested < n_points && guard < 100 * n_points) {
        ++guard;
        // Sample inside W1 so that both z and f(z) can carry a value.
        cplx z;
        if (spec_.W1.kind == DomainSpec::Disk) {
            double rr = spec_.W1.radius * std::sqrt(rng.uniform());
            double th = rng.uniform(0.0, 2.0 * M_PI);
            z = spec_.W1.center + rr * cplx(std::cos(th), std::sin(th));
        } else {
            z = spec_.W1.center;
        }
        Eval a = eval(z);
        if (!a.ok) continue;
        SpherePoint fz = evaluate(spec_.map, SpherePoint(z));
        if (!fz.finite()) continue;
        Eval b = eval(fz.value);
        if (!b.ok) continue;
        worst = std::max(worst, std::abs(b.M - (a.M - 1.0)));
        ++tested;
    }
    return worst;
}

} // namespace gct
