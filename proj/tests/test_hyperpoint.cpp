#include <doctest.h>

#include <cmath>

#include "g2sp/errors.hpp"
#include "g2sp/hyperpoint.hpp"
#include "g2sp/rng.hpp"

using namespace g2sp;

namespace {
constexpr double kPi = 3.14159265358979323846;

// quaternion-arithmetic oracle for the two-line normal family
// N(t) = cos(t) (1,0,...) + sin(t) (0,j,...):  u = (-cos 2t, 0, 0)
double family_u1(double t) { return -std::cos(2.0 * t); }
} // namespace

TEST_CASE("build_point closed-form u on named normals") {
    const AmbientModel model = build_ambient_model(3);

    const HypersurfacePoint at_e1 = build_point(model, quaternion_unit(model, 0, 0));
    CHECK(at_e1.u_norm() == doctest::Approx(1.0).epsilon(1e-13));

    const HypersurfacePoint at_d = build_point(model, oblique_normal(model, kPi / 4.0));
    CHECK(at_d.u_norm() <= 1e-13);

    for (double t : {0.1, kPi / 8.0, 0.6}) {
        const HypersurfacePoint p = build_point(model, oblique_normal(model, t));
        CHECK(p.u[0] == doctest::Approx(family_u1(t)).epsilon(1e-13));
        CHECK(std::fabs(p.u[1]) <= 1e-13);
        CHECK(std::fabs(p.u[2]) <= 1e-13);
    }
}

TEST_CASE("build_point rejects bad normals") {
    const AmbientModel model = build_ambient_model(3);
    Vec n(12, 0.0);
    n[0] = 0.5;
    CHECK_THROWS_AS(build_point(model, n), param_error);
    CHECK_THROWS_AS(build_point(model, Vec(11, 0.0)), param_error);
}

TEST_CASE("pointwise identities hold for seeded random normals") {
    for (int m : {3, 4, 5}) {
        const AmbientModel model = build_ambient_model(m);
        const int trials = 100;
        for (int t = 0; t < trials; ++t) {
            SplitRng rng(31337, static_cast<uint64_t>(100 * m + t));
            const HypersurfacePoint p = build_point(model, rng.unit_vec(model.dim));
            for (const auto& [name, value] : point_identity_residuals(p)) {
                INFO("m=", m, " trial=", t, " ", name);
                CHECK(value <= 1e-9);
            }
        }
    }
}

TEST_CASE("gauge covariance of u and theta") {
    const AmbientModel model = build_ambient_model(3);
    for (int t = 0; t < 100; ++t) {
        SplitRng rng(5150, static_cast<uint64_t>(t));
        const Vec N = rng.unit_vec(model.dim);
        const HypersurfacePoint p = build_point(model, N);
        const GaugeRotation rot = GaugeRotation::random(rng);
        const HypersurfacePoint q = build_point(rotate_gauge(model, rot), N);
        for (int a = 0; a < 3; ++a) {
            double ua = 0.0;
            Mat th(model.dim, model.dim);
            for (int b = 0; b < 3; ++b) {
                ua += rot.R(a, b) * p.u[static_cast<size_t>(b)];
                th = th + rot.R(a, b) * p.theta_a[static_cast<size_t>(b)];
            }
            CHECK(std::fabs(q.u[static_cast<size_t>(a)] - ua) <= 1e-10);
            CHECK(max_abs(q.theta_a[static_cast<size_t>(a)] - th) <= 1e-10);
        }
    }
}

TEST_CASE("adapt_gauge normal forms") {
    const AmbientModel model = build_ambient_model(3);

    // u = 0 returns the identity rotation and the unchanged point
    const HypersurfacePoint at_d = build_point(model, oblique_normal(model, kPi / 4.0));
    auto [same, rot0] = adapt_gauge(at_d);
    CHECK(max_abs(rot0.R - Mat::identity(3)) == 0.0);
    CHECK(max_abs(same.theta_a[0] - at_d.theta_a[0]) == 0.0);

    // u = (0.3, 0, 0.4) -> (0.5, 0, 0): realize |u| = 0.5 on the family, then
    // scramble the gauge so u points along (0.6, 0, 0.8)
    const double t_half = kPi / 6.0; // cos 2t = 1/2
    const HypersurfacePoint base = build_point(model, oblique_normal(model, t_half));
    CHECK(base.u[0] == doctest::Approx(-0.5).epsilon(1e-13));
    Mat scramble(3, 3); // SO(3), first column (-0.6, 0, -0.8)
    scramble(0, 0) = -0.6; scramble(0, 2) = -0.8;
    scramble(1, 1) = -1.0;
    scramble(2, 0) = -0.8; scramble(2, 2) = 0.6;
    const HypersurfacePoint scrambled = build_point(rotate_gauge(model, GaugeRotation{scramble}), base.N);
    CHECK(scrambled.u[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(scrambled.u[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(scrambled.u[2] == doctest::Approx(0.4).epsilon(1e-12));
    auto [adapted, rot] = adapt_gauge(scrambled);
    CHECK(adapted.u[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(adapted.u[1]) <= 1e-12);
    CHECK(std::fabs(adapted.u[2]) <= 1e-12);
    CHECK(rot.orthogonality_residual() <= 1e-12);
    CHECK(rot.det() == doctest::Approx(1.0).epsilon(1e-12));

    // the family point at t = pi/8 adapts to u = (cos(pi/4), 0, 0)
    auto [ob, r2] = adapt_gauge(build_point(model, oblique_normal(model, kPi / 8.0)));
    (void)r2;
    CHECK(ob.u[0] == doctest::Approx(std::cos(kPi / 4.0)).epsilon(1e-12));
    CHECK(ob.u[0] == doctest::Approx(0.70711).epsilon(1e-5));
}

TEST_CASE("subspace analysis dimensions at the named points") {
    const AmbientModel model = build_ambient_model(3);

    const HypersurfacePoint at_e1 = build_point(model, quaternion_unit(model, 0, 0));
    const SubspaceReport sin = subspace_analysis(at_e1);
    CHECK(sin.position == ReebPosition::D_PERP);
    CHECK(sin.hperp_basis.size() == 3);
    CHECK(sin.h_dim == 8);
    CHECK(sin.ha_eigenbases[0][0].size() == 4); // 2m-2
    CHECK(sin.ha_eigenbases[0][1].size() == 4);

    const HypersurfacePoint at_d = build_point(model, oblique_normal(model, kPi / 4.0));
    const SubspaceReport sd = subspace_analysis(at_d);
    CHECK(sd.position == ReebPosition::D);
    CHECK(sd.hperp_basis.size() == 7);
    std::vector<Vec> seven = {at_d.xi};
    for (int a = 0; a < 3; ++a) seven.push_back(at_d.xi_a[static_cast<size_t>(a)]);
    for (int a = 0; a < 3; ++a) seven.push_back(at_d.phi_xi(a));
    for (size_t i = 0; i < seven.size(); ++i)
        for (size_t j = 0; j < seven.size(); ++j)
            CHECK(std::fabs(dot(seven[i], seven[j]) - (i == j ? 1.0 : 0.0)) <= 1e-10);

    auto [ob, rot] = adapt_gauge(build_point(model, oblique_normal(model, kPi / 8.0)));
    (void)rot;
    const SubspaceReport so = subspace_analysis(ob);
    CHECK(so.position == ReebPosition::OBLIQUE);
    CHECK(so.near_threshold == false);
    CHECK(so.hperp_basis.size() == 7);
    CHECK(so.h_dim == 4);

    CHECK_THROWS_AS(subspace_analysis(ob, -1.0), param_error);
}

TEST_CASE("near-threshold points classify OBLIQUE with a warning") {
    const AmbientModel model = build_ambient_model(3);
    // |u| = cos 2t = 5e-6: above the default 1e-6 cutoff but within a decade
    const double t = 0.5 * std::acos(5e-6);
    const HypersurfacePoint p = build_point(model, oblique_normal(model, t));
    CHECK(p.u_norm() == doctest::Approx(5e-6).epsilon(1e-6));
    const SubspaceReport sub = subspace_analysis(p);
    CHECK(sub.position == ReebPosition::OBLIQUE);
    CHECK(sub.near_threshold == true);
    // below the cutoff the same family point classifies as D
    const HypersurfacePoint pd =
        build_point(model, oblique_normal(model, 0.5 * std::acos(5e-7)));
    CHECK(subspace_analysis(pd).position == ReebPosition::D);
}

TEST_CASE("oblique theta_1 eigenvectors carry the derived signs") {
    const AmbientModel model = build_ambient_model(3);
    auto [p, rot] = adapt_gauge(build_point(model, oblique_normal(model, kPi / 8.0)));
    (void)rot;
    const Mat& th1 = p.theta_a[0];
    const double u1 = p.u[0];

    struct Case { Vec v; double eps; };
    const std::vector<Case> cases = {
        {p.phi_xi(0), u1},
        {p.xi + p.xi_a[0], -1.0},
        {p.xi - p.xi_a[0], 1.0},
        {p.xi_a[1] + p.phi_xi(2), 1.0},
        {p.xi_a[1] - p.phi_xi(2), -1.0},
        {p.xi_a[2] + p.phi_xi(1), -1.0},
        {p.xi_a[2] - p.phi_xi(1), 1.0},
    };
    for (size_t i = 0; i < cases.size(); ++i) {
        INFO("eigenvector ", i);
        CHECK(norm(matvec(th1, cases[i].v) - cases[i].eps * cases[i].v) / norm(cases[i].v) <= 1e-9);
    }
    // pairwise orthogonal
    for (size_t i = 0; i < cases.size(); ++i)
        for (size_t j = i + 1; j < cases.size(); ++j)
            CHECK(std::fabs(dot(cases[i].v, cases[j].v)) <= 1e-10);
}

TEST_CASE("eigenspace dimensions match across positions and m") {
    for (int m : {3, 4}) {
        const AmbientModel model = build_ambient_model(m);
        for (int t = 0; t < 10; ++t) {
            SplitRng rng(808, static_cast<uint64_t>(10 * m + t));
            const SubspaceReport sub =
                subspace_analysis(build_point(model, rng.unit_vec(model.dim)));
            for (int a = 0; a < 3; ++a) {
                const auto& plus = sub.ha_eigenbases[static_cast<size_t>(a)][0];
                const auto& minus = sub.ha_eigenbases[static_cast<size_t>(a)][1];
                CHECK(plus.size() == minus.size());
                CHECK(plus.size() % 2 == 0);
                CHECK(static_cast<int>(plus.size() + minus.size()) == sub.h_dim);
            }
        }
    }
}
