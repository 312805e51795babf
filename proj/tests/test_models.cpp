#include <doctest.h>

#include <cmath>

#include "g2sp/curvature.hpp"
#include "g2sp/errors.hpp"
#include "g2sp/models.hpp"
#include "g2sp/rng.hpp"

using namespace g2sp;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

void check_clusters(const SpectrumReport& rep, const std::vector<std::pair<double, int>>& want,
                    double tol) {
    REQUIRE(rep.clusters.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i) {
        INFO("cluster ", i);
        CHECK(std::fabs(rep.clusters[i].value - want[i].first) <= tol);
        CHECK(rep.clusters[i].multiplicity == want[i].second);
    }
}
} // namespace

TEST_CASE("type A spectrum at r = pi/(8 sqrt 2)") {
    const AmbientModel model = build_ambient_model(3);
    const double r = kPi / (8.0 * kSqrt2);
    const ModelSurface s = build_type_a(model, {3, r});

    // alpha = 2 sqrt2, beta = sqrt2 + 2, lambda = -(2 - sqrt2), mu = 0
    check_clusters(principal_spectrum(s.point, s.A),
                   {{-(2.0 - kSqrt2), 4}, {0.0, 4}, {2.0 * kSqrt2, 1}, {kSqrt2 + 2.0, 2}}, 1e-10);
}

TEST_CASE("type A spectrum merges alpha with mu at r = pi/(4 sqrt 2)") {
    const AmbientModel model = build_ambient_model(3);
    const double r = kPi / (4.0 * kSqrt2);
    const ModelSurface s = build_type_a(model, {3, r});
    check_clusters(principal_spectrum(s.point, s.A), {{-kSqrt2, 4}, {0.0, 5}, {kSqrt2, 2}}, 1e-10);
}

TEST_CASE("type A eigenspace geometry") {
    const AmbientModel model = build_ambient_model(3);
    const ModelSurface s = build_type_a(model, {3, 0.4});
    // the adapted gauge (J_1 N = J N) lives on the point's model
    const AmbientModel& gm = s.point.model;

    // every T_lambda vector satisfies JX = J1X
    for (const Vec& x : s.T_lambda)
        CHECK(max_abs(matvec(gm.J, x) - matvec(gm.Ja[0], x)) <= 1e-10);
    for (const Vec& x : s.T_mu)
        CHECK(max_abs(matvec(gm.J, x) + matvec(gm.Ja[0], x)) <= 1e-10);

    // xi_2, xi_3 span the orthogonal complement of C xi inside H xi:
    // both lie in span{J_2 xi, J_3 xi}
    const Vec j2xi = matvec(model.Ja[1], s.point.xi);
    const Vec j3xi = matvec(model.Ja[2], s.point.xi);
    for (const Vec& v : {s.point.xi_a[1], s.point.xi_a[2]}) {
        Vec res = v;
        axpy(-dot(v, j2xi), j2xi, res);
        axpy(-dot(v, j3xi), j3xi, res);
        CHECK(norm(res) <= 1e-10);
    }

    // A commutes with theta_1 on H
    const SubspaceReport sub = subspace_analysis(s.point);
    Mat ph(model.dim, model.dim);
    for (const Vec& b : sub.h_basis) ph = ph + outer(b, b);
    const Mat comm = ph * (s.A.A * s.point.theta_a[0] - s.point.theta_a[0] * s.A.A) * ph;
    CHECK(max_abs(comm) <= 1e-10);

    CHECK_THROWS_AS(build_type_a(model, {3, 0.0}), param_error);
    CHECK_THROWS_AS(build_type_a(model, {3, TypeASpec::r_sup()}), param_error);
    CHECK_THROWS_AS(build_type_a(model, {4, 0.4}), param_error);
}

TEST_CASE("type B spectrum at m = 4, r = pi/8") {
    const AmbientModel model = build_ambient_model(4);
    const ModelSurface s = build_type_b(model, {4, kPi / 8.0});
    // alpha = -2, beta = 2, gamma = 0, lambda = 1 + sqrt2, mu = 1 - sqrt2
    check_clusters(principal_spectrum(s.point, s.A),
                   {{-2.0, 1}, {1.0 - kSqrt2, 4}, {0.0, 3}, {2.0, 3}, {1.0 + kSqrt2, 4}}, 1e-10);
}

TEST_CASE("type B eigenspace geometry") {
    const AmbientModel model = build_ambient_model(4);
    const ModelSurface s = build_type_b(model, {4, 0.3});

    // A phi xi_a = 0: the gamma = 0 eigenspace carries J xi directions
    for (int a = 0; a < 3; ++a)
        CHECK(max_abs(matvec(s.A.A, s.point.phi_xi(a))) <= 1e-10);

    // phi maps T_lambda into T_mu, and both are J_a-invariant
    auto proj_residual = [&](const Vec& v, const std::vector<Vec>& basis) {
        Vec res = v;
        for (const Vec& b : basis) axpy(-dot(v, b), b, res);
        return norm(res);
    };
    for (const Vec& x : s.T_lambda) {
        CHECK(proj_residual(matvec(s.point.phi, x), s.T_mu) <= 1e-10);
        for (int a = 0; a < 3; ++a)
            CHECK(proj_residual(matvec(model.Ja[static_cast<size_t>(a)], x), s.T_lambda) <= 1e-10);
    }
    for (const Vec& x : s.T_mu)
        for (int a = 0; a < 3; ++a)
            CHECK(proj_residual(matvec(model.Ja[static_cast<size_t>(a)], x), s.T_mu) <= 1e-10);

    CHECK(s.T_lambda.size() == 4);
    CHECK(s.T_mu.size() == 4);

    CHECK_THROWS_AS(build_type_b(build_ambient_model(5), {5, 0.3}), param_error);
    CHECK_THROWS_AS(build_type_b(model, {4, 0.0}), param_error);
    CHECK_THROWS_AS(build_type_b(model, {4, kPi / 4.0}), param_error);
}

TEST_CASE("type B construction is reproducible for a fixed seed") {
    const AmbientModel model = build_ambient_model(4);
    const ModelSurface s1 = build_type_b(model, {4, 0.3}, 11);
    const ModelSurface s2 = build_type_b(model, {4, 0.3}, 11);
    CHECK(max_abs(s1.A.A - s2.A.A) == 0.0);
    // a different seed gives a different splitting but identical spectrum
    const ModelSurface s3 = build_type_b(model, {4, 0.3}, 12);
    const SpectrumReport r1 = principal_spectrum(s1.point, s1.A);
    const SpectrumReport r3 = principal_spectrum(s3.point, s3.A);
    REQUIRE(r1.clusters.size() == r3.clusters.size());
    for (size_t i = 0; i < r1.clusters.size(); ++i) {
        CHECK(r1.clusters[i].multiplicity == r3.clusters[i].multiplicity);
        CHECK(r1.clusters[i].value == doctest::Approx(r3.clusters[i].value).epsilon(1e-10));
    }
}

TEST_CASE("principal_spectrum basics and validation") {
    const AmbientModel model = build_ambient_model(3);
    SplitRng rng(9, 0);
    const HypersurfacePoint p = build_point(model, rng.unit_vec(model.dim));

    const SpectrumReport zero = principal_spectrum(p, zero_shape(p));
    REQUIRE(zero.clusters.size() == 1);
    CHECK(zero.clusters[0].value == 0.0);
    CHECK(zero.clusters[0].multiplicity == 4 * 3 - 1);

    const ShapeOperator A = random_shape(p, rng, 1.0);
    const SpectrumReport spec = principal_spectrum(p, A);
    int total = 0;
    for (const auto& c : spec.clusters) total += c.multiplicity;
    CHECK(total == p.tangent_dim());
    // eigenbasis sanity: |A v - lambda v| small for every reported vector
    const int n = p.tangent_dim();
    for (int k = 0; k < n; ++k) {
        Vec v(static_cast<size_t>(model.dim), 0.0);
        for (int q = 0; q < n; ++q)
            axpy(spec.eigen.vectors(q, k), p.tangent_basis[static_cast<size_t>(q)], v);
        CHECK(norm(matvec(A.A, v) - spec.eigen.values[static_cast<size_t>(k)] * v) <= 1e-9);
    }

    Mat skew(model.dim, model.dim);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(principal_spectrum(p, ShapeOperator{skew}), param_error);
    CHECK_THROWS_AS(principal_spectrum(p, A, -1.0), param_error);
}

TEST_CASE("proof steps reproduce the pointwise contradiction data") {
    const AmbientModel m3 = build_ambient_model(3);
    const double rA = kPi / (8.0 * kSqrt2);
    const ModelSurface sa = build_type_a(m3, {3, rA});
    const auto a_step = proof_step(sa.point, sa.A, ProofStepId::TYPE_A_FINAL);
    CHECK(a_step.at("braces") == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(a_step.at("braces_spread") <= 1e-9);
    CHECK(a_step.at("defect_entry") ==
          doctest::Approx(-2.0 * (kSqrt2 + 2.0)).epsilon(1e-10));

    const AmbientModel m4 = build_ambient_model(4);
    const ModelSurface sb = build_type_b(m4, {4, kPi / 8.0});
    const auto b_step = proof_step(sb.point, sb.A, ProofStepId::TYPE_B_AXI);
    CHECK(b_step.at("d") == doctest::Approx(-8.0).epsilon(1e-10));
    CHECK(b_step.at("four_alpha") == doctest::Approx(-8.0).epsilon(1e-10));

    // hypothesis mismatches
    CHECK_THROWS_AS(proof_step(sb.point, sb.A, ProofStepId::TYPE_A_FINAL), param_error);
    CHECK_THROWS_AS(proof_step(sa.point, sa.A, ProofStepId::TYPE_B_AXI), param_error);
    CHECK_THROWS_AS(proof_step(sa.point, sa.A, ProofStepId::OBLIQUE_THETA1), param_error);

    auto [oblique, rot] = adapt_gauge(build_point(m3, oblique_normal(m3, kPi / 8.0)));
    (void)rot;
    const auto o_step = proof_step(oblique, zero_shape(oblique), ProofStepId::OBLIQUE_THETA1);
    CHECK(o_step.at("max_eigen_residual") <= 1e-9);
    CHECK(o_step.at("u1") == doctest::Approx(std::cos(kPi / 4.0)).epsilon(1e-12));
}

TEST_CASE("type A defect stays above 2 beta across the r grid") {
    for (int m : {3, 4}) {
        const AmbientModel model = build_ambient_model(m);
        const double lo = 0.05;
        const double hi = TypeASpec::r_sup() - 0.05;
        for (int i = 0; i < 50; ++i) {
            const double r = lo + (hi - lo) * i / 49.0;
            TypeASpec spec{m, r};
            const ModelSurface s = build_type_a(model, spec);
            const double frob = semiparallel_defect(s.point, s.A).frobenius;
            INFO("m=", m, " r=", r);
            CHECK(frob >= 2.0 * spec.beta());
        }
    }
}

TEST_CASE("type B defect stays above |4 alpha| across the r grid") {
    const AmbientModel model = build_ambient_model(4);
    const double lo = 0.05;
    const double hi = TypeBSpec::r_sup() - 0.05;
    for (int i = 0; i < 50; ++i) {
        const double r = lo + (hi - lo) * i / 49.0;
        TypeBSpec spec{4, r};
        const ModelSurface s = build_type_b(model, spec);
        const double frob = semiparallel_defect(s.point, s.A).frobenius;
        INFO("r=", r);
        CHECK(frob >= std::fabs(4.0 * spec.alpha()));
    }
}

TEST_CASE("cluster values of the model spectra are separated by the tolerance") {
    const AmbientModel model = build_ambient_model(3);
    const ModelSurface s = build_type_a(model, {3, 0.35});
    const SpectrumReport rep = principal_spectrum(s.point, s.A);
    for (size_t i = 1; i < rep.clusters.size(); ++i)
        CHECK(rep.clusters[i].value - rep.clusters[i - 1].value > rep.cluster_tol);
}
