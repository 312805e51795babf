#include "g2sp/hyperpoint.hpp"

#include <cmath>

#include "g2sp/errors.hpp"

namespace g2sp {

const char* to_string(ReebPosition p) {
    switch (p) {
        case ReebPosition::D_PERP: return "D_PERP";
        case ReebPosition::D: return "D";
        case ReebPosition::OBLIQUE: return "OBLIQUE";
    }
    return "?";
}

double HypersurfacePoint::u_norm() const {
    return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
}

Vec HypersurfacePoint::phi_xi(int a) const { return matvec(phi, xi_a[static_cast<size_t>(a)]); }

namespace {

// Deterministic orthonormal basis of N^perp: project coordinate vectors,
// skipping the coordinate most aligned with N.
std::vector<Vec> make_tangent_basis(const Vec& N) {
    const int d = static_cast<int>(N.size());
    int skip = 0;
    for (int j = 1; j < d; ++j)
        if (std::fabs(N[static_cast<size_t>(j)]) > std::fabs(N[static_cast<size_t>(skip)])) skip = j;

    std::vector<Vec> cand;
    cand.reserve(static_cast<size_t>(d - 1));
    for (int j = 0; j < d; ++j) {
        if (j == skip) continue;
        Vec v(static_cast<size_t>(d), 0.0);
        v[static_cast<size_t>(j)] = 1.0;
        axpy(-N[static_cast<size_t>(j)], N, v);
        cand.push_back(v);
    }
    std::vector<Vec> basis = mgs_orthonormalize(cand, 1e-8);
    if (static_cast<int>(basis.size()) != d - 1)
        throw numeric_error("make_tangent_basis: rank deficiency");
    return basis;
}

} // namespace

HypersurfacePoint build_point(const AmbientModel& model, const Vec& N) {
    if (static_cast<int>(N.size()) != model.dim)
        throw param_error("build_point: normal has wrong dimension");
    if (std::fabs(norm(N) - 1.0) > 1e-10)
        throw param_error("build_point: normal is not unit");

    HypersurfacePoint p;
    p.model = model;
    p.N = N;
    p.P = Mat::identity(model.dim) - outer(N, N);
    p.phi = p.P * model.J * p.P;
    p.xi = -1.0 * matvec(model.J, N);
    for (int a = 0; a < 3; ++a) {
        const Mat& Jaa = model.Ja[static_cast<size_t>(a)];
        p.phi_a[static_cast<size_t>(a)] = p.P * Jaa * p.P;
        p.theta_a[static_cast<size_t>(a)] = p.P * (Jaa * model.J) * p.P;
        p.xi_a[static_cast<size_t>(a)] = -1.0 * matvec(Jaa, N);
        p.u[static_cast<size_t>(a)] = dot(p.xi, p.xi_a[static_cast<size_t>(a)]);
    }
    p.tangent_basis = make_tangent_basis(N);
    return p;
}

std::pair<HypersurfacePoint, GaugeRotation> adapt_gauge(const HypersurfacePoint& point) {
    const double len = point.u_norm();
    if (len < 1e-14) return {point, GaugeRotation::identity()};

    const Vec v = {point.u[0] / len, point.u[1] / len, point.u[2] / len};
    // second row: coordinate axis least aligned with v, projected out
    int k = 0;
    for (int j = 1; j < 3; ++j)
        if (std::fabs(v[static_cast<size_t>(j)]) < std::fabs(v[static_cast<size_t>(k)])) k = j;
    Vec w(3, 0.0);
    w[static_cast<size_t>(k)] = 1.0;
    axpy(-dot(w, v), v, w);
    w = normalized(w);
    const Vec x = {v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2], v[0] * w[1] - v[1] * w[0]};

    Mat R(3, 3);
    for (int j = 0; j < 3; ++j) {
        R(0, j) = v[static_cast<size_t>(j)];
        R(1, j) = w[static_cast<size_t>(j)];
        R(2, j) = x[static_cast<size_t>(j)];
    }
    GaugeRotation rot{R};
    return {build_point(rotate_gauge(point.model, rot), point.N), rot};
}

Vec oblique_normal(const AmbientModel& model, double t) {
    Vec n = std::cos(t) * quaternion_unit(model, 0, 0);
    axpy(std::sin(t), quaternion_unit(model, 1, 2), n);
    return n;
}

SubspaceReport subspace_analysis(const HypersurfacePoint& point, double tol) {
    if (tol <= 0.0) throw param_error("subspace_analysis: tol must be positive");
    SubspaceReport rep;

    std::vector<Vec> gens = {point.xi};
    for (int a = 0; a < 3; ++a) gens.push_back(point.xi_a[static_cast<size_t>(a)]);
    for (int a = 0; a < 3; ++a) gens.push_back(point.phi_xi(a));
    rep.hperp_basis = mgs_orthonormalize(gens, 1e-8);

    std::vector<Vec> excluded = rep.hperp_basis;
    excluded.push_back(point.N);
    rep.h_basis = orthogonal_complement(excluded, point.model.dim, 1e-8);
    rep.h_dim = static_cast<int>(rep.h_basis.size());

    for (int a = 0; a < 3; ++a) {
        const Mat& th = point.theta_a[static_cast<size_t>(a)];
        for (int s = 0; s < 2; ++s) {
            const double eps = (s == 0) ? 1.0 : -1.0;
            std::vector<Vec> cand;
            cand.reserve(rep.h_basis.size());
            // (Id + eps*theta_a)/2 is an exact projector on H
            for (const Vec& v : rep.h_basis) {
                Vec w = matvec(th, v);
                Vec c = 0.5 * (v + eps * w);
                cand.push_back(c);
            }
            rep.ha_eigenbases[static_cast<size_t>(a)][static_cast<size_t>(s)] =
                mgs_orthonormalize(cand, 1e-8);
        }
    }

    const double un = point.u_norm();
    if (un >= 1.0 - tol) {
        rep.position = ReebPosition::D_PERP;
    } else if (un <= tol) {
        rep.position = ReebPosition::D;
    } else {
        rep.position = ReebPosition::OBLIQUE;
        const double gap = std::min(un, 1.0 - un);
        rep.near_threshold = gap <= 10.0 * tol;
    }
    return rep;
}

std::map<std::string, double> point_identity_residuals(const HypersurfacePoint& p) {
    std::map<std::string, double> r;
    const int d = p.model.dim;

    r["normal_unit"] = std::fabs(norm(p.N) - 1.0);
    r["xi_unit"] = std::fabs(norm(p.xi) - 1.0);
    r["xi_tangent"] = std::fabs(dot(p.xi, p.N));
    for (int a = 0; a < 3; ++a) {
        const std::string sa = std::to_string(a + 1);
        r["xia_unit_" + sa] = std::fabs(norm(p.xi_a[static_cast<size_t>(a)]) - 1.0);
        r["xia_tangent_" + sa] = std::fabs(dot(p.xi_a[static_cast<size_t>(a)], p.N));
    }

    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        const int c = (a + 2) % 3;
        const std::string sa = std::to_string(a + 1);
        const Mat& pa = p.phi_a[static_cast<size_t>(a)];
        const Mat& pb = p.phi_a[static_cast<size_t>(b)];
        const Mat& pc = p.phi_a[static_cast<size_t>(c)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        const Vec& xb = p.xi_a[static_cast<size_t>(b)];
        const Vec& xc = p.xi_a[static_cast<size_t>(c)];

        r["phia_product_" + sa] = max_abs(pa * pb - outer(xa, xb) - pc);
        r["phia_xi_cycle_" + sa] = std::max(max_abs(matvec(pa, xb) - xc),
                                            max_abs(matvec(pb, xa) + xc));
        r["phia_phi_swap_" + sa] =
            max_abs((pa * p.phi - outer(xa, p.xi)) - (p.phi * pa - outer(p.xi, xa)));
        r["phi_xia_vs_phia_xi_" + sa] = max_abs(matvec(p.phi, xa) - matvec(pa, p.xi));
    }

    for (int a = 0; a < 3; ++a) {
        const std::string sa = std::to_string(a + 1);
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const Vec w = p.phi_xi(a);
        r["theta_symmetric_" + sa] = max_abs(th - transpose(th));
        r["theta_trace_" + sa] = std::fabs(trace(th) - p.u[static_cast<size_t>(a)]);
        r["theta_square_" + sa] = max_abs(th * th - (p.P - outer(w, w)));
        r["theta_xi_" + sa] = max_abs(matvec(th, p.xi) + p.xi_a[static_cast<size_t>(a)]);
        r["theta_xia_" + sa] = max_abs(matvec(th, p.xi_a[static_cast<size_t>(a)]) + p.xi);
        r["theta_phixia_" + sa] = max_abs(matvec(th, w) - p.u[static_cast<size_t>(a)] * w);
    }

    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        const int c = (a + 2) % 3;
        const std::string sa = std::to_string(a + 1);
        const Mat& tha = p.theta_a[static_cast<size_t>(a)];
        const Mat& thb = p.theta_a[static_cast<size_t>(b)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        const Vec& xb = p.xi_a[static_cast<size_t>(b)];
        const Vec& xc = p.xi_a[static_cast<size_t>(c)];
        const Vec wa = p.phi_xi(a);
        const Vec wb = p.phi_xi(b);
        const Vec wc = p.phi_xi(c);
        const double ua = p.u[static_cast<size_t>(a)];
        const double ub = p.u[static_cast<size_t>(b)];

        r["theta_xi_next_" + sa] = std::max(max_abs(matvec(tha, xb) - wc),
                                            max_abs(matvec(thb, xa) + wc));
        r["theta_phixi_next_" + sa] = max_abs(matvec(tha, wb) - (ub * wa - xc));
        r["theta_next_phixi_" + sa] = max_abs(matvec(thb, wa) - (xc + ua * wb));
    }

    (void)d;
    return r;
}

} // namespace g2sp
