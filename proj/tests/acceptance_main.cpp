// Acceptance suite: one line per criterion, exit 0 only if every criterion
// holds at its stated tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "g2sp/ambient.hpp"
#include "g2sp/curvature.hpp"
#include "g2sp/hyperpoint.hpp"
#include "g2sp/models.hpp"
#include "g2sp/rng.hpp"
#include "g2sp/verify.hpp"

using namespace g2sp;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);
int g_failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec tangent_gaussian(const HypersurfacePoint& p, SplitRng& rng) {
    Vec g = rng.gaussian_vec(p.model.dim);
    axpy(-dot(g, p.N), p.N, g);
    return g;
}

// 1. structure invariants for m in {3,4,5} at 1e-12, under 5 seconds
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int m : {3, 4, 5}) {
        const AmbientModel model = build_ambient_model(m);
        for (const auto& [name, value] : ambient_invariant_residuals(model)) {
            (void)name;
            worst = std::max(worst, value);
        }
    }
    const double elapsed = seconds_since(t0);
    report(1, "ambient structure invariants, m in {3,4,5}", worst <= 1e-12 && elapsed < 5.0,
           "max residual " + format_double(worst) + ", " + format_double(elapsed) + " s");
}

// 2. the theta identities for 100 seeded normals at m = 3, residual <= 1e-9
void criterion_2() {
    const AmbientModel model = build_ambient_model(3);
    double worst = 0.0;
    std::string worst_name;
    for (int t = 0; t < 100; ++t) {
        SplitRng rng(0, static_cast<uint64_t>(t));
        const HypersurfacePoint p = build_point(model, rng.unit_vec(model.dim));
        for (const auto& [name, value] : point_identity_residuals(p)) {
            if (value > worst) {
                worst = value;
                worst_name = name;
            }
        }
    }
    report(2, "pointwise structure identities, 100 seeded normals", worst <= 1e-9,
           "max residual " + format_double(worst) + " at " + worst_name);
}

// 3. subspace dimensions and the explicit theta_1 eigenvector list
void criterion_3() {
    const AmbientModel model = build_ambient_model(3);
    bool dims_ok = true;
    double eig_res = 0.0;

    for (int t = 0; t < 50; ++t) {
        SplitRng rng(1, static_cast<uint64_t>(t));
        const SubspaceReport sub = subspace_analysis(build_point(model, rng.unit_vec(model.dim)));
        for (int a = 0; a < 3; ++a) {
            const auto& plus = sub.ha_eigenbases[static_cast<size_t>(a)][0];
            const auto& minus = sub.ha_eigenbases[static_cast<size_t>(a)][1];
            dims_ok = dims_ok && plus.size() == minus.size() && plus.size() % 2 == 0;
        }
    }

    const SubspaceReport at_dperp =
        subspace_analysis(build_point(model, oblique_normal(model, 0.0)));
    dims_ok = dims_ok && at_dperp.hperp_basis.size() == 3;
    const SubspaceReport at_d =
        subspace_analysis(build_point(model, oblique_normal(model, kPi / 4.0)));
    dims_ok = dims_ok && at_d.hperp_basis.size() == 7;
    for (double t : {kPi / 16.0, kPi / 8.0, 3.0 * kPi / 16.0}) {
        auto [ob, rot] = adapt_gauge(build_point(model, oblique_normal(model, t)));
        (void)rot;
        dims_ok = dims_ok && subspace_analysis(ob).hperp_basis.size() == 7;
        const auto step = proof_step(ob, zero_shape(ob), ProofStepId::OBLIQUE_THETA1);
        eig_res = std::max(eig_res, step.at("max_eigen_residual"));
    }
    report(3, "subspace dimensions and theta_1 eigenvector list", dims_ok && eig_res <= 1e-9,
           "dims " + std::string(dims_ok ? "ok" : "wrong") + ", eigen residual " +
               format_double(eig_res));
}

// 4. transcription oracle and the combination identities
void criterion_4() {
    const AmbientModel model = build_ambient_model(3);
    const std::vector<ResidualId> ids = {ResidualId::E130, ResidualId::E120, ResidualId::E140,
                                         ResidualId::E160, ResidualId::E180, ResidualId::E200,
                                         ResidualId::E700, ResidualId::ECURV};
    double worst_oracle = 0.0, worst_comb = 0.0;
    for (int t = 0; t < 50; ++t) {
        SplitRng rng(2, static_cast<uint64_t>(t));
        const HypersurfacePoint p = build_point(model, rng.unit_vec(model.dim));
        const ShapeOperator A = random_shape(p, rng, 0.7);
        ResidualArgs args;
        args.Y = tangent_gaussian(p, rng);
        args.Z = tangent_gaussian(p, rng);
        args.b = 1 + (t % 3);
        for (ResidualId id : ids) {
            ResidualArgs a2 = args;
            if (id == ResidualId::ECURV) {
                const SpectrumReport spec = principal_spectrum(p, A);
                const int n = p.tangent_dim();
                Vec yj(static_cast<size_t>(model.dim), 0.0), yk(static_cast<size_t>(model.dim), 0.0);
                for (int q = 0; q < n; ++q) {
                    axpy(spec.eigen.vectors(q, 0), p.tangent_basis[static_cast<size_t>(q)], yj);
                    axpy(spec.eigen.vectors(q, n - 1), p.tangent_basis[static_cast<size_t>(q)], yk);
                }
                a2.Y = yj;
                a2.Z = yk;
                a2.lambda_j = spec.eigen.values.front();
                a2.lambda_k = spec.eigen.values.back();
            }
            const ResidualPair pr = residual_pair(p, A, id, a2);
            worst_oracle = std::max(worst_oracle, std::fabs(pr.expanded - pr.direct) /
                                                      (1.0 + std::fabs(pr.direct)));
        }
        ResidualArgs swapped = args;
        std::swap(swapped.Y, swapped.Z);
        const double e130yz = residual_pair(p, A, ResidualId::E130, args).expanded;
        const double e130zy = residual_pair(p, A, ResidualId::E130, swapped).expanded;
        const double e120 = residual_pair(p, A, ResidualId::E120, args).expanded;
        const double e140 = residual_pair(p, A, ResidualId::E140, args).expanded;
        const double e160 = residual_pair(p, A, ResidualId::E160, args).expanded;
        const double e180 = residual_pair(p, A, ResidualId::E180, args).expanded;
        const double e200 = residual_pair(p, A, ResidualId::E200, args).expanded;
        const double scale = 1.0 + std::fabs(e140) + std::fabs(e160);
        worst_comb = std::max(worst_comb, std::fabs(e140 - (e130yz - e130zy)) / scale);
        worst_comb = std::max(worst_comb, std::fabs(e200 - (e140 - 2.0 * e160)) / scale);
        worst_comb = std::max(worst_comb, std::fabs(e180 - (e140 + e120 - e160)) / scale);
    }
    report(4, "residual transcription oracle, 8 ids x 50 seeds", worst_oracle <= 1e-9 &&
           worst_comb <= 1e-9,
           "oracle " + format_double(worst_oracle) + ", combinations " + format_double(worst_comb));
}

// 5. model spectra against the curvature tables
void criterion_5() {
    double worst = 0.0;
    bool mult_ok = true;

    {
        const AmbientModel model = build_ambient_model(3);
        const ModelSurface s = build_type_a(model, {3, kPi / (8.0 * kSqrt2)});
        const SpectrumReport rep = principal_spectrum(s.point, s.A);
        const std::vector<std::pair<double, int>> want = {
            {-(2.0 - kSqrt2), 4}, {0.0, 4}, {2.0 * kSqrt2, 1}, {kSqrt2 + 2.0, 2}};
        mult_ok = mult_ok && rep.clusters.size() == want.size();
        if (mult_ok)
            for (size_t i = 0; i < want.size(); ++i) {
                worst = std::max(worst, std::fabs(rep.clusters[i].value - want[i].first));
                mult_ok = mult_ok && rep.clusters[i].multiplicity == want[i].second;
            }
    }
    {
        const AmbientModel model = build_ambient_model(4);
        const ModelSurface s = build_type_b(model, {4, kPi / 8.0});
        const SpectrumReport rep = principal_spectrum(s.point, s.A);
        const std::vector<std::pair<double, int>> want = {
            {-2.0, 1}, {1.0 - kSqrt2, 4}, {0.0, 3}, {2.0, 3}, {1.0 + kSqrt2, 4}};
        mult_ok = mult_ok && rep.clusters.size() == want.size();
        if (mult_ok)
            for (size_t i = 0; i < want.size(); ++i) {
                worst = std::max(worst, std::fabs(rep.clusters[i].value - want[i].first));
                mult_ok = mult_ok && rep.clusters[i].multiplicity == want[i].second;
            }
    }
    report(5, "type A and type B spectra match the curvature tables",
           mult_ok && worst <= 1e-10,
           "multiplicities " + std::string(mult_ok ? "ok" : "wrong") + ", max eigenvalue deviation " +
               format_double(worst));
}

// 6. proof-step quantities across the r grids
void criterion_6() {
    double braces_dev = 0.0, entry_dev = 0.0, d_dev = 0.0, min_abs_alpha = 1e300;
    {
        const AmbientModel model = build_ambient_model(3);
        for (int i = 0; i < 50; ++i) {
            const double r = 0.1 + (1.0 - 0.1) * i / 49.0;
            TypeASpec spec{3, r};
            const ModelSurface s = build_type_a(model, spec);
            const auto step = proof_step(s.point, s.A, ProofStepId::TYPE_A_FINAL);
            braces_dev = std::max(braces_dev, std::fabs(step.at("braces") - 2.0));
            entry_dev =
                std::max(entry_dev, std::fabs(step.at("defect_entry") + 2.0 * spec.beta()));
        }
    }
    {
        const AmbientModel model = build_ambient_model(4);
        for (int i = 0; i < 50; ++i) {
            const double r = 0.1 + (0.68 - 0.1) * i / 49.0;
            TypeBSpec spec{4, r};
            const ModelSurface s = build_type_b(model, spec);
            const auto step = proof_step(s.point, s.A, ProofStepId::TYPE_B_AXI);
            d_dev = std::max(d_dev, std::fabs(step.at("d") - 4.0 * spec.alpha()));
            min_abs_alpha = std::min(min_abs_alpha, std::fabs(spec.alpha()));
        }
    }
    report(6, "proof-step reproduction over the r grids",
           braces_dev <= 1e-9 && entry_dev <= 1e-8 && d_dev <= 1e-8 && min_abs_alpha > 0.0,
           "braces dev " + format_double(braces_dev) + ", entry dev " + format_double(entry_dev) +
               ", axis dev " + format_double(d_dev));
}

// 7. the desk-scale main-theorem check: positive defect over both families
void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    double min_a = 1e300, min_b = 1e300;
    {
        const AmbientModel model = build_ambient_model(3);
        for (int i = 0; i < 50; ++i) {
            const double r = 0.1 + (1.0 - 0.1) * i / 49.0;
            const ModelSurface s = build_type_a(model, {3, r});
            min_a = std::min(min_a, semiparallel_defect(s.point, s.A).frobenius);
        }
    }
    {
        const AmbientModel model = build_ambient_model(4);
        for (int i = 0; i < 50; ++i) {
            const double r = 0.1 + (0.68 - 0.1) * i / 49.0;
            const ModelSurface s = build_type_b(model, {4, r});
            min_b = std::min(min_b, semiparallel_defect(s.point, s.A).frobenius);
        }
    }
    const double elapsed = seconds_since(t0);
    report(7, "defect positivity scans (type A >= 0.44, type B >= 1.5)",
           min_a >= 0.44 && min_b >= 1.5 && elapsed < 60.0,
           "min_A " + format_double(min_a) + ", min_B " + format_double(min_b) + ", " +
               format_double(elapsed) + " s");
}

// 8. minimizer: gradient check and pointwise feasibility
void criterion_8() {
    const AmbientModel model = build_ambient_model(3);
    SplitRng rng(3, 42);
    const HypersurfacePoint p = build_point(model, rng.unit_vec(model.dim));
    const ShapeOperator A = random_shape(p, rng, 0.5);
    const Mat grad = defect_gradient(p, A);
    double worst_fd = 0.0;
    const double h = 1e-6;
    for (int k = 0; k < 10; ++k) {
        SplitRng drng(3, 800 + static_cast<uint64_t>(k));
        Mat draw(model.dim, model.dim);
        for (double& v : draw.a) v = drng.next_gaussian();
        Mat D = p.P * symmetrize(draw) * p.P;
        D = (1.0 / frobenius(D)) * D;
        const double fd = (defect_objective(p, ShapeOperator{A.A + h * D}) -
                           defect_objective(p, ShapeOperator{A.A - h * D})) /
                          (2.0 * h);
        double g = 0.0;
        for (size_t i = 0; i < grad.a.size(); ++i) g += grad.a[i] * D.a[i];
        worst_fd = std::max(worst_fd, std::fabs(g - fd) / std::max(std::fabs(fd), 1e-8));
    }

    MinimizeOptions opts;
    opts.seed = 3;
    opts.restarts = 2;
    const MinimizeResult res = minimize_defect(p, random_shape(p, rng, 0.1), opts);
    report(8, "gradient check and pointwise minimization",
           worst_fd <= 1e-4 && res.value <= 1e-8,
           "fd rel err " + format_double(worst_fd) + ", objective " + format_double(res.value) +
               "; pointwise solutions (A = 0, A = c P) are expected and say nothing about "
               "hypersurface-level existence");
}

// 9. byte-identical reports for a repeated seed, for every suite
void criterion_9() {
    SuiteParams params;
    params.m = 3;
    params.seed = 99;
    params.trials = 20;
    params.steps = 10;
    bool ok = true;
    std::string first_bad;
    for (SuiteId id : {SuiteId::AMBIENT, SuiteId::POINT_IDENTITIES, SuiteId::SUBSPACES,
                       SuiteId::RESIDUAL_ORACLE, SuiteId::MODEL_A_SCAN, SuiteId::MODEL_B_SCAN,
                       SuiteId::PROOF_STEPS, SuiteId::MINIMIZER}) {
        const std::string a = report_to_json(run_suite(id, params));
        const std::string b = report_to_json(run_suite(id, params));
        if (a != b && first_bad.empty()) first_bad = to_string(id);
        ok = ok && a == b;
    }
    report(9, "determinism: repeated suites are byte-identical", ok,
           ok ? "all 8 suites compared" : "mismatch in " + first_bad);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures == 0) {
        std::printf("acceptance: all 9 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
