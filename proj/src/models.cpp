#include "g2sp/models.hpp"

#include <algorithm>
#include <cmath>

#include "g2sp/errors.hpp"
#include "g2sp/rng.hpp"

namespace g2sp {

std::vector<Vec> ModelSurface::adapted_basis() const {
    std::vector<Vec> basis = T_alpha;
    basis.insert(basis.end(), T_beta.begin(), T_beta.end());
    basis.insert(basis.end(), T_gamma.begin(), T_gamma.end());
    basis.insert(basis.end(), T_lambda.begin(), T_lambda.end());
    basis.insert(basis.end(), T_mu.begin(), T_mu.end());
    return basis;
}

namespace {

Mat projector_onto(const std::vector<Vec>& on_basis, int dim) {
    Mat p(dim, dim);
    for (const Vec& v : on_basis) p = p + outer(v, v);
    return p;
}

} // namespace

ModelSurface build_type_a(const AmbientModel& model, const TypeASpec& spec) {
    if (spec.m != model.m) throw param_error("build_type_a: spec.m does not match the model");
    if (!(spec.r > 0.0 && spec.r < TypeASpec::r_sup()))
        throw param_error("build_type_a: r must lie in (0, pi/sqrt(8))");

    const Vec N = quaternion_unit(model, 0, 0);
    auto [point, rot] = adapt_gauge(build_point(model, N));
    (void)rot;
    if (std::fabs(point.u[0] - 1.0) > 1e-10 || std::fabs(point.u[1]) > 1e-10 ||
        std::fabs(point.u[2]) > 1e-10)
        throw numeric_error("build_type_a: gauge adaptation did not reach u = (1,0,0)");
    if (max_abs(point.xi_a[0] - point.xi) > 1e-10)
        throw numeric_error("build_type_a: xi_1 != xi after gauge adaptation");

    ModelSurface s{point, zero_shape(point), {}, {}, {}, {}, {}};
    s.T_alpha = {point.xi};
    s.T_beta = {point.xi_a[1], point.xi_a[2]};

    const SubspaceReport sub = subspace_analysis(point);
    s.T_lambda = sub.ha_eigenbases[0][1]; // theta_1 = -1  <=>  JX = +J1X
    s.T_mu = sub.ha_eigenbases[0][0];     // theta_1 = +1  <=>  JX = -J1X
    if (static_cast<int>(s.T_lambda.size()) != 2 * model.m - 2 ||
        static_cast<int>(s.T_mu.size()) != 2 * model.m - 2)
        throw numeric_error("build_type_a: unexpected eigenspace dimensions");

    const int d = model.dim;
    Mat A = spec.alpha() * projector_onto(s.T_alpha, d);
    A = A + spec.beta() * projector_onto(s.T_beta, d);
    A = A + spec.lambda() * projector_onto(s.T_lambda, d);
    A = A + spec.mu() * projector_onto(s.T_mu, d);
    s.A = ShapeOperator{A};
    return s;
}

ModelSurface build_type_b(const AmbientModel& model, const TypeBSpec& spec, uint64_t seed) {
    if (spec.m != model.m) throw param_error("build_type_b: spec.m does not match the model");
    if (spec.m % 2 != 0 || spec.m < 4) throw param_error("build_type_b: m must be even and >= 4");
    if (!(spec.r > 0.0 && spec.r < TypeBSpec::r_sup()))
        throw param_error("build_type_b: r must lie in (0, pi/4)");

    const double quarter_pi = 3.14159265358979323846 / 4.0;
    const HypersurfacePoint point = build_point(model, oblique_normal(model, quarter_pi));
    if (point.u_norm() > 1e-12)
        throw numeric_error("build_type_b: normal does not place xi in the D distribution");

    ModelSurface s{point, zero_shape(point), {}, {}, {}, {}, {}};
    s.T_alpha = {point.xi};
    for (int a = 0; a < 3; ++a) s.T_beta.push_back(point.xi_a[static_cast<size_t>(a)]);
    for (int a = 0; a < 3; ++a) s.T_gamma.push_back(point.phi_xi(a));

    // greedy quaternionic-line splitting of H into T_lambda and T_mu:
    // pick X with <X, theta_a X> = 0 for all a, then HX is orthogonal to
    // H(JX) and both are 4-dimensional J_a-invariant blocks
    const SubspaceReport sub = subspace_analysis(point);
    std::vector<Vec> unassigned = sub.h_basis;
    const int d = model.dim;

    while (!unassigned.empty()) {
        if (static_cast<int>(unassigned.size()) % 8 != 0)
            throw numeric_error("build_type_b: unassigned subspace dimension is not a multiple of 8");
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            SplitRng rng(seed, 0x7B5Eull * static_cast<uint64_t>(attempt + 1) +
                                   static_cast<uint64_t>(unassigned.size()));
            Vec cand(static_cast<size_t>(d), 0.0);
            for (const Vec& b : unassigned) axpy(rng.next_gaussian(), b, cand);
            if (norm(cand) < 1e-6) continue;
            cand = normalized(cand);

            const Mat& th1 = point.theta_a[0];
            Vec plus = 0.5 * (cand + matvec(th1, cand));
            Vec minus = 0.5 * (cand - matvec(th1, cand));
            if (norm(plus) < 0.1 || norm(minus) < 0.1) continue;
            plus = normalized(plus);
            const Vec v2 = matvec(point.theta_a[1], plus);
            const Vec v3 = matvec(point.theta_a[2], plus);
            axpy(-dot(v2, minus), v2, minus);
            axpy(-dot(v3, minus), v3, minus);
            if (norm(minus) < 1e-6) continue;
            minus = normalized(minus);

            Vec X = (1.0 / std::sqrt(2.0)) * (plus + minus);
            std::vector<Vec> lam_block = {X};
            for (int a = 0; a < 3; ++a) lam_block.push_back(matvec(model.Ja[static_cast<size_t>(a)], X));
            const Vec JX = matvec(model.J, X);
            std::vector<Vec> mu_block = {JX};
            for (int a = 0; a < 3; ++a) mu_block.push_back(matvec(model.Ja[static_cast<size_t>(a)], JX));

            std::vector<Vec> eight = lam_block;
            eight.insert(eight.end(), mu_block.begin(), mu_block.end());
            double gram_residual = 0.0;
            for (size_t i = 0; i < 8; ++i)
                for (size_t j = 0; j < 8; ++j)
                    gram_residual = std::max(gram_residual,
                                             std::fabs(dot(eight[i], eight[j]) - (i == j ? 1.0 : 0.0)));
            for (const Vec& v : eight) {
                for (const Vec& t : s.T_lambda) gram_residual = std::max(gram_residual, std::fabs(dot(v, t)));
                for (const Vec& t : s.T_mu) gram_residual = std::max(gram_residual, std::fabs(dot(v, t)));
            }
            if (gram_residual > 1e-8) continue;

            s.T_lambda.insert(s.T_lambda.end(), lam_block.begin(), lam_block.end());
            s.T_mu.insert(s.T_mu.end(), mu_block.begin(), mu_block.end());
            std::vector<Vec> taken = s.T_lambda;
            taken.insert(taken.end(), s.T_mu.begin(), s.T_mu.end());
            taken.insert(taken.end(), sub.hperp_basis.begin(), sub.hperp_basis.end());
            taken.push_back(point.N);
            unassigned = orthogonal_complement(taken, d, 1e-8);
            placed = true;
        }
        if (!placed)
            throw numeric_error("build_type_b: failed to find a regular quaternionic line "
                                "after 64 seeded attempts");
    }

    if (static_cast<int>(s.T_lambda.size()) != 2 * model.m - 4 ||
        static_cast<int>(s.T_mu.size()) != 2 * model.m - 4)
        throw numeric_error("build_type_b: unexpected T_lambda/T_mu dimensions");

    Mat A = spec.alpha() * projector_onto(s.T_alpha, d);
    A = A + spec.beta() * projector_onto(s.T_beta, d);
    A = A + spec.gamma() * projector_onto(s.T_gamma, d);
    A = A + spec.lambda() * projector_onto(s.T_lambda, d);
    A = A + spec.mu() * projector_onto(s.T_mu, d);
    s.A = ShapeOperator{A};
    return s;
}

SpectrumReport principal_spectrum(const HypersurfacePoint& point, const ShapeOperator& A,
                                  double cluster_tol) {
    if (max_abs(A.A - transpose(A.A)) > 1e-10)
        throw param_error("principal_spectrum: operator is not symmetric");

    const int n = point.tangent_dim();
    Mat hatA(n, n);
    for (int p = 0; p < n; ++p) {
        const Vec img = matvec(A.A, point.tangent_basis[static_cast<size_t>(p)]);
        for (int q = 0; q < n; ++q) hatA(q, p) = dot(point.tangent_basis[static_cast<size_t>(q)], img);
    }
    hatA = symmetrize(hatA);

    SpectrumReport rep;
    rep.eigen = jacobi_eigensym(hatA, 1e-12, 64);
    rep.eigensolver_off = rep.eigen.off_achieved;
    rep.cluster_tol = cluster_tol;
    if (cluster_tol < rep.eigensolver_off)
        throw param_error("principal_spectrum: cluster_tol below achieved eigensolver accuracy");

    for (double v : rep.eigen.values) {
        if (!rep.clusters.empty() && std::fabs(v - rep.clusters.back().value) <= cluster_tol) {
            SpectrumCluster& c = rep.clusters.back();
            c.value = (c.value * c.multiplicity + v) / (c.multiplicity + 1);
            ++c.multiplicity;
        } else {
            rep.clusters.push_back({v, 1});
        }
    }
    return rep;
}

const char* to_string(ProofStepId id) {
    switch (id) {
        case ProofStepId::TYPE_A_FINAL: return "TYPE_A_FINAL";
        case ProofStepId::TYPE_B_AXI: return "TYPE_B_AXI";
        case ProofStepId::OBLIQUE_THETA1: return "OBLIQUE_THETA1";
    }
    return "?";
}

ProofStepId parse_proof_step(const std::string& s) {
    if (s == "TYPE_A_FINAL") return ProofStepId::TYPE_A_FINAL;
    if (s == "TYPE_B_AXI") return ProofStepId::TYPE_B_AXI;
    if (s == "OBLIQUE_THETA1") return ProofStepId::OBLIQUE_THETA1;
    throw param_error("unknown proof step: " + s);
}

std::map<std::string, double> proof_step(const HypersurfacePoint& point, const ShapeOperator& A,
                                         ProofStepId id) {
    std::map<std::string, double> out;
    const CurvatureOperator R(point, A);

    switch (id) {
        case ProofStepId::TYPE_A_FINAL: {
            if (std::fabs(point.u_norm() - 1.0) > 1e-8)
                throw param_error("proof_step TYPE_A_FINAL: point does not have xi in D_perp");
            const Vec& xi2 = point.xi_a[1];
            const Vec Axi = matvec(A.A, point.xi);
            const double alpha = dot(Axi, point.xi);
            if (max_abs(Axi - alpha * point.xi) > 1e-8)
                throw param_error("proof_step TYPE_A_FINAL: xi is not principal for A");
            const double beta = dot(matvec(A.A, xi2), xi2);

            const SubspaceReport sub = subspace_analysis(point);
            const std::vector<Vec>& tmu = sub.ha_eigenbases[0][0]; // theta_1 = +1
            if (tmu.empty()) throw numeric_error("proof_step TYPE_A_FINAL: empty T_mu");

            double braces_min = 0.0, braces_max = 0.0;
            bool first = true;
            for (const Vec& yj : tmu) {
                double b = 1.0;
                for (int a = 0; a < 3; ++a) {
                    const Mat& th = point.theta_a[static_cast<size_t>(a)];
                    b += dot(matvec(th, yj), yj) * dot(matvec(th, xi2), xi2);
                }
                if (first || b < braces_min) braces_min = b;
                if (first || b > braces_max) braces_max = b;
                first = false;
            }
            const Vec& yj0 = tmu.front();
            double braces0 = 1.0;
            for (int a = 0; a < 3; ++a) {
                const Mat& th = point.theta_a[static_cast<size_t>(a)];
                braces0 += dot(matvec(th, yj0), yj0) * dot(matvec(th, xi2), xi2);
            }
            out["braces"] = braces0;
            out["braces_spread"] = braces_max - braces_min;
            out["defect_entry"] = R.defect_entry(xi2, yj0, yj0, xi2);
            out["minus_two_beta"] = -2.0 * beta;
            break;
        }
        case ProofStepId::TYPE_B_AXI: {
            if (point.u_norm() > 1e-8)
                throw param_error("proof_step TYPE_B_AXI: point does not have xi in D");
            for (int a = 0; a < 3; ++a)
                if (max_abs(matvec(A.A, point.phi_xi(a))) > 1e-8)
                    throw param_error("proof_step TYPE_B_AXI: A phi xi_a != 0");
            const Vec w = point.phi_xi(0);
            out["d"] = R.defect_entry(w, point.xi, point.xi, w);
            out["four_alpha"] = 4.0 * dot(matvec(A.A, point.xi), point.xi);
            break;
        }
        case ProofStepId::OBLIQUE_THETA1: {
            const double un = point.u_norm();
            if (un < 1e-6 || un > 1.0 - 1e-6)
                throw param_error("proof_step OBLIQUE_THETA1: point is not oblique");
            if (std::fabs(point.u[1]) > 1e-10 || std::fabs(point.u[2]) > 1e-10)
                throw param_error("proof_step OBLIQUE_THETA1: gauge not adapted (u2 = u3 = 0 required)");
            const Mat& th1 = point.theta_a[0];
            const Vec& xi = point.xi;
            const Vec& xi1 = point.xi_a[0];
            const Vec& xi2 = point.xi_a[1];
            const Vec& xi3 = point.xi_a[2];
            const Vec w1 = point.phi_xi(0);
            const Vec w2 = point.phi_xi(1);
            const Vec w3 = point.phi_xi(2);

            struct Pair { Vec v; double eps; };
            const std::vector<Pair> list = {
                {w1, point.u[0]}, {xi + xi1, -1.0}, {xi - xi1, 1.0},
                {xi2 + w3, 1.0},  {xi2 - w3, -1.0}, {xi3 + w2, -1.0}, {xi3 - w2, 1.0}};
            double worst = 0.0;
            for (const Pair& pr : list) {
                const double len = norm(pr.v);
                if (len < 1e-12) throw numeric_error("proof_step OBLIQUE_THETA1: degenerate eigenvector");
                worst = std::max(worst, norm(matvec(th1, pr.v) - pr.eps * pr.v) / len);
            }
            out["max_eigen_residual"] = worst;
            out["u1"] = point.u[0];
            break;
        }
    }
    return out;
}

} // namespace g2sp
