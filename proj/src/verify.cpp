#include "g2sp/verify.hpp"

#include <algorithm>
#include <cmath>

#include "g2sp/ambient.hpp"
#include "g2sp/curvature.hpp"
#include "g2sp/errors.hpp"
#include "g2sp/hyperpoint.hpp"
#include "g2sp/models.hpp"
#include "g2sp/rng.hpp"

namespace g2sp {

const char* to_string(SuiteId id) {
    switch (id) {
        case SuiteId::AMBIENT: return "AMBIENT";
        case SuiteId::POINT_IDENTITIES: return "POINT_IDENTITIES";
        case SuiteId::SUBSPACES: return "SUBSPACES";
        case SuiteId::RESIDUAL_ORACLE: return "RESIDUAL_ORACLE";
        case SuiteId::MODEL_A_SCAN: return "MODEL_A_SCAN";
        case SuiteId::MODEL_B_SCAN: return "MODEL_B_SCAN";
        case SuiteId::PROOF_STEPS: return "PROOF_STEPS";
        case SuiteId::MINIMIZER: return "MINIMIZER";
    }
    return "?";
}

SuiteId parse_suite(const std::string& s) {
    if (s == "AMBIENT") return SuiteId::AMBIENT;
    if (s == "POINT_IDENTITIES") return SuiteId::POINT_IDENTITIES;
    if (s == "SUBSPACES") return SuiteId::SUBSPACES;
    if (s == "RESIDUAL_ORACLE") return SuiteId::RESIDUAL_ORACLE;
    if (s == "MODEL_A_SCAN") return SuiteId::MODEL_A_SCAN;
    if (s == "MODEL_B_SCAN") return SuiteId::MODEL_B_SCAN;
    if (s == "PROOF_STEPS") return SuiteId::PROOF_STEPS;
    if (s == "MINIMIZER") return SuiteId::MINIMIZER;
    throw param_error("unknown suite: " + s);
}

namespace {

using Params = std::map<std::string, std::string>;

void add_check(Report& rep, const std::string& name, Params params, double residual, double tol,
               const std::string& note = "") {
    CheckResult c;
    c.name = name;
    c.params = std::move(params);
    c.max_residual = residual;
    c.tolerance = tol;
    c.pass = residual <= tol;
    c.note = note;
    rep.checks.push_back(std::move(c));
}

Params base_params(const SuiteParams& p) {
    Params out;
    out["m"] = std::to_string(p.m);
    return out;
}

Vec tangent_gaussian(const HypersurfacePoint& point, SplitRng& rng) {
    Vec g = rng.gaussian_vec(point.model.dim);
    axpy(-dot(g, point.N), point.N, g);
    return g;
}

// ---------------------------------------------------------------- AMBIENT

Report run_ambient(const SuiteParams& p) {
    Report rep;
    rep.suite = "AMBIENT";
    rep.seed = p.seed;
    rep.params = base_params(p);
    const int gauge_trials = p.trials > 0 ? p.trials : 100;
    rep.params["trials"] = std::to_string(gauge_trials);

    const AmbientModel model = build_ambient_model(p.m);
    for (const auto& [name, value] : ambient_invariant_residuals(model))
        add_check(rep, "build_" + name, base_params(p), value, 1e-12);

    // gauge rotations: identity, a signed permutation, and seeded SO(3)
    {
        const AmbientModel same = rotate_gauge(model, GaugeRotation::identity());
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
            r = std::max(r, max_abs(same.Ja[static_cast<size_t>(a)] - model.Ja[static_cast<size_t>(a)]));
        add_check(rep, "gauge_identity_fixes_model", base_params(p), r, 1e-15);

        const AmbientModel flip = rotate_gauge(model, GaugeRotation::diag(-1.0, -1.0, 1.0));
        double rf = std::max(max_abs(flip.Ja[0] + model.Ja[0]), max_abs(flip.Ja[1] + model.Ja[1]));
        rf = std::max(rf, max_abs(flip.Ja[2] - model.Ja[2]));
        double inv = 0.0;
        for (const auto& [name, value] : ambient_invariant_residuals(flip)) {
            (void)name;
            inv = std::max(inv, value);
        }
        add_check(rep, "gauge_signed_flip_action", base_params(p), rf, 1e-12);
        add_check(rep, "gauge_signed_flip_invariants", base_params(p), inv, 1e-12);

        double worst = 0.0;
        for (int t = 0; t < gauge_trials; ++t) {
            SplitRng rng(p.seed, 1000 + static_cast<uint64_t>(t));
            const AmbientModel rotated = rotate_gauge(model, GaugeRotation::random(rng));
            for (const auto& [name, value] : ambient_invariant_residuals(rotated)) {
                (void)name;
                worst = std::max(worst, value);
            }
        }
        add_check(rep, "gauge_random_invariants", base_params(p), worst, 1e-10);
    }

    // curvature tensor symmetries on seeded samples
    {
        const int samples = std::max(200, gauge_trials);
        double anti = 0.0, skew = 0.0, bianchi = 0.0, gauge_inv = 0.0;
        for (int t = 0; t < samples; ++t) {
            SplitRng rng(p.seed, 2000 + static_cast<uint64_t>(t));
            Vec x = rng.unit_vec(model.dim);
            Vec y = rng.gaussian_vec(model.dim);
            axpy(-dot(x, y), x, y);
            y = normalized(y);
            const Vec z = rng.gaussian_vec(model.dim);
            const Vec w = rng.gaussian_vec(model.dim);

            const Vec rxy_z = ambient_curvature(model, x, y, z);
            const Vec ryx_z = ambient_curvature(model, y, x, z);
            anti = std::max(anti, max_abs(rxy_z + ryx_z));
            const Vec rxy_w = ambient_curvature(model, x, y, w);
            skew = std::max(skew, std::fabs(dot(rxy_z, w) + dot(rxy_w, z)));
            const Vec cyc =
                rxy_z + ambient_curvature(model, y, z, x) + ambient_curvature(model, z, x, y);
            bianchi = std::max(bianchi, max_abs(cyc));

            const AmbientModel rotated = rotate_gauge(model, GaugeRotation::random(rng));
            gauge_inv = std::max(gauge_inv, max_abs(ambient_curvature(rotated, x, y, z) - rxy_z));
        }
        add_check(rep, "curvature_antisymmetry_xy", base_params(p), anti, 1e-10);
        add_check(rep, "curvature_skew_zw", base_params(p), skew, 1e-10);
        add_check(rep, "curvature_first_bianchi", base_params(p), bianchi, 1e-10);
        add_check(rep, "curvature_gauge_invariance", base_params(p), gauge_inv, 1e-10);
    }

    // spot values
    {
        SplitRng rng(p.seed, 3000);
        const Vec x = rng.unit_vec(model.dim);
        const Vec z = rng.gaussian_vec(model.dim);
        add_check(rep, "curvature_equal_arguments_vanish", base_params(p),
                  max_abs(ambient_curvature(model, x, x, z)), 1e-12);

        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        Vec xr = inv_sqrt2 * (quaternion_unit(model, 0, 0) + quaternion_unit(model, 0, 2));
        Vec yr = inv_sqrt2 * (quaternion_unit(model, 1, 0) + quaternion_unit(model, 1, 3));
        const double sec = dot(ambient_curvature(model, xr, yr, yr), xr);
        add_check(rep, "curvature_totally_real_pair_value_1", base_params(p), std::fabs(sec - 1.0),
                  1e-12);

        const Vec xq = quaternion_unit(model, 0, 2); // JX = J1X on this vector
        const Vec jxq = matvec(model.J, xq);
        add_check(rep, "curvature_holomorphic_j1_value_8", base_params(p),
                  std::fabs(dot(ambient_curvature(model, xq, jxq, jxq), xq) - 8.0), 1e-12);
        add_check(rep, "model_jx_equals_j1x_witness", base_params(p),
                  max_abs(jxq - matvec(model.Ja[0], xq)), 1e-12);
    }
    return rep;
}

// ------------------------------------------------------- POINT_IDENTITIES

Report run_point_identities(const SuiteParams& p) {
    Report rep;
    rep.suite = "POINT_IDENTITIES";
    rep.seed = p.seed;
    const int trials = p.trials > 0 ? p.trials : 100;
    rep.params = base_params(p);
    rep.params["trials"] = std::to_string(trials);

    const AmbientModel model = build_ambient_model(p.m);
    std::map<std::string, double> worst;
    double cov_u = 0.0, cov_theta = 0.0, adapt_res = 0.0;

    for (int t = 0; t < trials; ++t) {
        SplitRng rng(p.seed, static_cast<uint64_t>(t));
        const Vec N = rng.unit_vec(model.dim);
        const HypersurfacePoint point = build_point(model, N);
        for (const auto& [name, value] : point_identity_residuals(point)) {
            auto it = worst.find(name);
            if (it == worst.end() || value > it->second) worst[name] = value;
        }

        // gauge covariance: u' = R u and theta'_a = sum_b R_ab theta_b
        const GaugeRotation rot = GaugeRotation::random(rng);
        const HypersurfacePoint rotated = build_point(rotate_gauge(model, rot), N);
        for (int a = 0; a < 3; ++a) {
            double expect_u = 0.0;
            Mat expect_theta(model.dim, model.dim);
            for (int b = 0; b < 3; ++b) {
                expect_u += rot.R(a, b) * point.u[static_cast<size_t>(b)];
                expect_theta = expect_theta + rot.R(a, b) * point.theta_a[static_cast<size_t>(b)];
            }
            cov_u = std::max(cov_u, std::fabs(rotated.u[static_cast<size_t>(a)] - expect_u));
            cov_theta = std::max(cov_theta,
                                 max_abs(rotated.theta_a[static_cast<size_t>(a)] - expect_theta));
        }

        auto [adapted, arot] = adapt_gauge(point);
        (void)arot;
        const double un = point.u_norm();
        adapt_res = std::max(adapt_res, std::fabs(adapted.u[0] - un));
        adapt_res = std::max(adapt_res, std::fabs(adapted.u[1]));
        adapt_res = std::max(adapt_res, std::fabs(adapted.u[2]));
    }

    for (const auto& [name, value] : worst) add_check(rep, name, rep.params, value, 1e-9);
    add_check(rep, "gauge_covariance_u", rep.params, cov_u, 1e-10);
    add_check(rep, "gauge_covariance_theta", rep.params, cov_theta, 1e-10);
    add_check(rep, "adapt_gauge_normal_form", rep.params, adapt_res, 1e-10);

    // closed-form u on the named normals
    {
        const HypersurfacePoint at_e1 = build_point(model, quaternion_unit(model, 0, 0));
        add_check(rep, "normal_e1_reeb_in_dperp", rep.params, std::fabs(at_e1.u_norm() - 1.0), 1e-12);
        const HypersurfacePoint at_d =
            build_point(model, oblique_normal(model, 3.14159265358979323846 / 4.0));
        add_check(rep, "normal_family_quarter_pi_reeb_in_d", rep.params, at_d.u_norm(), 1e-12);
        const double t8 = 3.14159265358979323846 / 8.0;
        const HypersurfacePoint oblique = build_point(model, oblique_normal(model, t8));
        const double expect = std::cos(2.0 * t8);
        add_check(rep, "normal_family_u_norm_cos2t", rep.params,
                  std::fabs(oblique.u_norm() - expect), 1e-12);
        add_check(rep, "normal_family_u2_u3_vanish", rep.params,
                  std::max(std::fabs(oblique.u[1]), std::fabs(oblique.u[2])), 1e-12);
    }
    return rep;
}

// --------------------------------------------------------------- SUBSPACES

Report run_subspaces(const SuiteParams& p) {
    Report rep;
    rep.suite = "SUBSPACES";
    rep.seed = p.seed;
    const int trials = p.trials > 0 ? p.trials : 20;
    rep.params = base_params(p);
    rep.params["trials"] = std::to_string(trials);

    const AmbientModel model = build_ambient_model(p.m);
    const double pi = 3.14159265358979323846;

    double dim_mismatch = 0.0;   // counts, reported as residual
    double basis_ortho = 0.0;    // orthonormality residual of all reported bases
    double mapping = 0.0;        // phi/theta_b/phi_b eigenspace mapping residuals

    auto examine = [&](const HypersurfacePoint& point) {
        const SubspaceReport sub = subspace_analysis(point);
        const int expected_hperp = point.u_norm() >= 1.0 - 1e-6 ? 3 : 7;
        if (static_cast<int>(sub.hperp_basis.size()) != expected_hperp) dim_mismatch += 1.0;
        if (sub.h_dim + static_cast<int>(sub.hperp_basis.size()) != point.tangent_dim())
            dim_mismatch += 1.0;

        auto ortho_residual = [&](const std::vector<Vec>& basis) {
            double r = 0.0;
            for (size_t i = 0; i < basis.size(); ++i)
                for (size_t j = 0; j < basis.size(); ++j)
                    r = std::max(r, std::fabs(dot(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)));
            return r;
        };
        basis_ortho = std::max(basis_ortho, ortho_residual(sub.hperp_basis));
        basis_ortho = std::max(basis_ortho, ortho_residual(sub.h_basis));

        for (int a = 0; a < 3; ++a) {
            const auto& plus = sub.ha_eigenbases[static_cast<size_t>(a)][0];
            const auto& minus = sub.ha_eigenbases[static_cast<size_t>(a)][1];
            if (plus.size() != minus.size() || plus.size() % 2 != 0) dim_mismatch += 1.0;
            basis_ortho = std::max(basis_ortho, ortho_residual(plus));
            basis_ortho = std::max(basis_ortho, ortho_residual(minus));

            // phi preserves H_a(eps); theta_b and phi_b (b != a) swap the sign
            auto proj_norm = [&](const Vec& v, const std::vector<Vec>& basis) {
                double s = 0.0;
                for (const Vec& b : basis) {
                    const double c = dot(b, v);
                    s += c * c;
                }
                return std::sqrt(s);
            };
            for (const Vec& v : plus) {
                mapping = std::max(mapping, proj_norm(matvec(point.phi, v), minus));
                for (int b = 0; b < 3; ++b) {
                    if (b == a) continue;
                    mapping = std::max(mapping,
                                       proj_norm(matvec(point.theta_a[static_cast<size_t>(b)], v), plus));
                    mapping = std::max(mapping,
                                       proj_norm(matvec(point.phi_a[static_cast<size_t>(b)], v), plus));
                }
            }
        }
        return sub;
    };

    for (int t = 0; t < trials; ++t) {
        SplitRng rng(p.seed, 100 + static_cast<uint64_t>(t));
        examine(build_point(model, rng.unit_vec(model.dim)));
    }

    // the one-parameter family sweeps through all three positions
    double family_dim = 0.0, family_theta_list = 0.0, seven_frame = 0.0;
    {
        const SubspaceReport at0 = examine(build_point(model, oblique_normal(model, 0.0)));
        if (at0.position != ReebPosition::D_PERP || at0.hperp_basis.size() != 3) family_dim += 1.0;
        const int h_expected = 4 * p.m - 4;
        if (at0.h_dim != h_expected) family_dim += 1.0;
        for (int a = 0; a < 3; ++a)
            if (static_cast<int>(at0.ha_eigenbases[static_cast<size_t>(a)][0].size()) != 2 * p.m - 2)
                family_dim += 1.0;

        const HypersurfacePoint atq = build_point(model, oblique_normal(model, pi / 4.0));
        const SubspaceReport subq = examine(atq);
        if (subq.position != ReebPosition::D || subq.hperp_basis.size() != 7) family_dim += 1.0;
        std::vector<Vec> seven = {atq.xi};
        for (int a = 0; a < 3; ++a) seven.push_back(atq.xi_a[static_cast<size_t>(a)]);
        for (int a = 0; a < 3; ++a) seven.push_back(atq.phi_xi(a));
        for (size_t i = 0; i < seven.size(); ++i)
            for (size_t j = 0; j < seven.size(); ++j)
                seven_frame = std::max(seven_frame,
                                       std::fabs(dot(seven[i], seven[j]) - (i == j ? 1.0 : 0.0)));

        for (double t : {pi / 16.0, pi / 8.0, 3.0 * pi / 16.0}) {
            auto [ob, rot] = adapt_gauge(build_point(model, oblique_normal(model, t)));
            (void)rot;
            const SubspaceReport sub = examine(ob);
            if (sub.position != ReebPosition::OBLIQUE || sub.hperp_basis.size() != 7)
                family_dim += 1.0;
            const auto step = proof_step(ob, zero_shape(ob), ProofStepId::OBLIQUE_THETA1);
            family_theta_list = std::max(family_theta_list, step.at("max_eigen_residual"));
        }
    }

    add_check(rep, "dimension_counts", rep.params, dim_mismatch, 0.0);
    add_check(rep, "basis_orthonormality", rep.params, basis_ortho, 1e-10);
    add_check(rep, "eigenspace_mapping_rules", rep.params, mapping, 1e-9);
    add_check(rep, "family_positions_and_dims", rep.params, family_dim, 0.0);
    add_check(rep, "d_position_seven_frame_orthonormal", rep.params, seven_frame, 1e-10);
    add_check(rep, "oblique_theta1_eigenvector_list", rep.params, family_theta_list, 1e-9);
    return rep;
}

// --------------------------------------------------------- RESIDUAL_ORACLE

Report run_residual_oracle(const SuiteParams& p) {
    Report rep;
    rep.suite = "RESIDUAL_ORACLE";
    rep.seed = p.seed;
    const int trials = p.trials > 0 ? p.trials : 50;
    rep.params = base_params(p);
    rep.params["trials"] = std::to_string(trials);

    const AmbientModel model = build_ambient_model(p.m);
    const std::vector<ResidualId> ids = {ResidualId::E130, ResidualId::E120, ResidualId::E140,
                                         ResidualId::E160, ResidualId::E180, ResidualId::E200,
                                         ResidualId::E700, ResidualId::ECURV};

    std::map<std::string, double> worst;
    double comb140 = 0.0, comb200 = 0.0, comb180 = 0.0, doubling = 0.0, zero_shape_res = 0.0;

    for (int t = 0; t < trials; ++t) {
        SplitRng rng(p.seed, 500 + static_cast<uint64_t>(t));
        const HypersurfacePoint point = build_point(model, rng.unit_vec(model.dim));
        const ShapeOperator A = random_shape(point, rng, 0.7);

        ResidualArgs args;
        args.Y = tangent_gaussian(point, rng);
        args.Z = tangent_gaussian(point, rng);
        args.b = 1 + (t % 3);

        for (ResidualId id : ids) {
            ResidualArgs a2 = args;
            if (id == ResidualId::ECURV) {
                const SpectrumReport spec = principal_spectrum(point, A);
                const int n = point.tangent_dim();
                Vec yj(static_cast<size_t>(point.model.dim), 0.0);
                Vec yk(static_cast<size_t>(point.model.dim), 0.0);
                for (int q = 0; q < n; ++q) {
                    axpy(spec.eigen.vectors(q, 0), point.tangent_basis[static_cast<size_t>(q)], yj);
                    axpy(spec.eigen.vectors(q, n - 1), point.tangent_basis[static_cast<size_t>(q)], yk);
                }
                a2.Y = yj;
                a2.Z = yk;
                a2.lambda_j = spec.eigen.values.front();
                a2.lambda_k = spec.eigen.values.back();
            }
            const ResidualPair pr = residual_pair(point, A, id, a2);
            const double rel = std::fabs(pr.expanded - pr.direct) / (1.0 + std::fabs(pr.direct));
            const std::string name = std::string("oracle_") + to_string(id);
            auto it = worst.find(name);
            if (it == worst.end() || rel > it->second) worst[name] = rel;
        }

        // combination identities among the displayed formulas
        const double e130yz = residual_pair(point, A, ResidualId::E130, args).expanded;
        ResidualArgs swapped = args;
        std::swap(swapped.Y, swapped.Z);
        const double e130zy = residual_pair(point, A, ResidualId::E130, swapped).expanded;
        const ResidualPair e140 = residual_pair(point, A, ResidualId::E140, args);
        const ResidualPair e120 = residual_pair(point, A, ResidualId::E120, args);
        const ResidualPair e160 = residual_pair(point, A, ResidualId::E160, args);
        const ResidualPair e200 = residual_pair(point, A, ResidualId::E200, args);
        const ResidualPair e180 = residual_pair(point, A, ResidualId::E180, args);
        const double scale = 1.0 + std::fabs(e140.expanded) + std::fabs(e160.expanded);
        comb140 = std::max(comb140, std::fabs(e140.expanded - (e130yz - e130zy)) / scale);
        comb200 = std::max(comb200,
                           std::fabs(e200.expanded - (e140.expanded - 2.0 * e160.expanded)) / scale);
        comb180 = std::max(comb180, std::fabs(e180.expanded - (e140.expanded + e120.expanded -
                                                               e160.expanded)) / scale);

        // the diagonal commutator contraction doubles the displayed quantity
        const CurvatureOperator R(point, A);
        const double commutator = R.defect_entry(args.Z, args.Y, point.xi, point.xi);
        doubling = std::max(doubling, std::fabs(commutator - 2.0 * e160.direct) /
                                          (1.0 + std::fabs(commutator)));

        if (t == 0) {
            const ShapeOperator zero = zero_shape(point);
            for (ResidualId id : {ResidualId::E130, ResidualId::E120, ResidualId::E160,
                                  ResidualId::E700}) {
                const ResidualPair pr = residual_pair(point, zero, id, args);
                zero_shape_res = std::max(zero_shape_res,
                                          std::max(std::fabs(pr.expanded), std::fabs(pr.direct)));
            }
        }
    }

    for (const auto& [name, value] : worst) add_check(rep, name, rep.params, value, 1e-9);
    add_check(rep, "combination_E140_antisymmetrizes_E130", rep.params, comb140, 1e-9);
    add_check(rep, "combination_E200_is_E140_minus_2_E160", rep.params, comb200, 1e-9);
    add_check(rep, "combination_E180_is_E140_plus_E120_minus_E160", rep.params, comb180, 1e-9);
    add_check(rep, "diagonal_commutator_doubles_E160", rep.params, doubling, 1e-9,
              "<(R(Z,Y)A)xi,xi> = 2 <R(Z,Y)A xi, xi> for symmetric A");
    add_check(rep, "zero_shape_all_residuals_vanish", rep.params, zero_shape_res, 1e-12);
    return rep;
}

// ------------------------------------------------------------- MODEL SCANS

struct ScanRow {
    std::vector<double> values;
    double spectrum_residual = 0.0;
    double bound_violation = 0.0;
    double frobenius = 0.0;
};

// expected clusters from a curvature table, merged within tol
std::vector<SpectrumCluster> expected_clusters(std::vector<std::pair<double, int>> table,
                                               double tol) {
    std::sort(table.begin(), table.end());
    std::vector<SpectrumCluster> out;
    for (const auto& [v, mult] : table) {
        if (!out.empty() && std::fabs(v - out.back().value) <= tol) {
            SpectrumCluster& c = out.back();
            c.value = (c.value * c.multiplicity + v * mult) / (c.multiplicity + mult);
            c.multiplicity += mult;
        } else {
            out.push_back({v, mult});
        }
    }
    return out;
}

double spectrum_match_residual(const SpectrumReport& got,
                               const std::vector<SpectrumCluster>& want) {
    if (got.clusters.size() != want.size()) return 1.0;
    double r = 0.0;
    for (size_t i = 0; i < want.size(); ++i) {
        if (got.clusters[i].multiplicity != want[i].multiplicity) return 1.0;
        r = std::max(r, std::fabs(got.clusters[i].value - want[i].value));
    }
    return r;
}

Report run_model_scan(const SuiteParams& p, bool type_a) {
    Report rep;
    rep.suite = type_a ? "MODEL_A_SCAN" : "MODEL_B_SCAN";
    rep.seed = p.seed;
    const int m = type_a ? p.m : (p.m % 2 == 0 && p.m >= 4 ? p.m : 4);
    const double r_lo = p.r_min > 0.0 ? p.r_min : 0.1;
    const double r_hi = p.r_max > 0.0 ? p.r_max : (type_a ? 1.0 : 0.68);
    const int steps = p.steps > 1 ? p.steps : 50;

    rep.params = base_params(p);
    rep.params["m"] = std::to_string(m);
    rep.params["r_min"] = format_double(r_lo);
    rep.params["r_max"] = format_double(r_hi);
    rep.params["steps"] = std::to_string(steps);

    rep.row_columns = type_a
        ? std::vector<std::string>{"r", "alpha", "beta", "lambda", "mu",
                                   "defect_frobenius", "defect_max_abs"}
        : std::vector<std::string>{"r", "alpha", "beta", "gamma", "lambda", "mu",
                                   "defect_frobenius", "defect_max_abs"};

    const AmbientModel model = build_ambient_model(m);
    std::vector<ScanRow> out(static_cast<size_t>(steps));

    parallel_for_index(steps, p.threads, [&](int i) {
        const double r = steps == 1 ? r_lo : r_lo + (r_hi - r_lo) * i / (steps - 1);
        ScanRow row;
        if (type_a) {
            TypeASpec spec{m, r};
            const ModelSurface s = build_type_a(model, spec);
            const DefectReport defect = semiparallel_defect(s.point, s.A, s.adapted_basis());
            const SpectrumReport spectrum = principal_spectrum(s.point, s.A);
            row.spectrum_residual = spectrum_match_residual(
                spectrum, expected_clusters({{spec.alpha(), 1},
                                             {spec.beta(), 2},
                                             {spec.lambda(), 2 * m - 2},
                                             {spec.mu(), 2 * m - 2}},
                                            spectrum.cluster_tol));
            const double bound = 2.0 * spec.beta();
            row.bound_violation = std::max(0.0, bound - defect.frobenius);
            row.frobenius = defect.frobenius;
            row.values = {r, spec.alpha(), spec.beta(), spec.lambda(), spec.mu(),
                          defect.frobenius, defect.max_abs};
        } else {
            TypeBSpec spec{m, r};
            const ModelSurface s = build_type_b(model, spec, p.seed);
            const DefectReport defect = semiparallel_defect(s.point, s.A, s.adapted_basis());
            const SpectrumReport spectrum = principal_spectrum(s.point, s.A);
            row.spectrum_residual = spectrum_match_residual(
                spectrum, expected_clusters({{spec.alpha(), 1},
                                             {spec.beta(), 3},
                                             {spec.gamma(), 3},
                                             {spec.lambda(), 2 * m - 4},
                                             {spec.mu(), 2 * m - 4}},
                                            spectrum.cluster_tol));
            const double bound = std::fabs(4.0 * spec.alpha());
            row.bound_violation = std::max(0.0, bound - defect.frobenius);
            row.frobenius = defect.frobenius;
            row.values = {r, spec.alpha(), spec.beta(), spec.gamma(), spec.lambda(), spec.mu(),
                          defect.frobenius, defect.max_abs};
        }
        out[static_cast<size_t>(i)] = std::move(row);
    });

    double spec_res = 0.0, bound_res = 0.0, min_frob = -1.0;
    for (const ScanRow& row : out) {
        rep.rows.push_back(row.values);
        spec_res = std::max(spec_res, row.spectrum_residual);
        bound_res = std::max(bound_res, row.bound_violation);
        if (min_frob < 0.0 || row.frobenius < min_frob) min_frob = row.frobenius;
    }

    add_check(rep, "spectrum_matches_curvature_table", rep.params, spec_res, 1e-10);
    add_check(rep, "defect_exceeds_single_entry_bound", rep.params, bound_res, 0.0,
              type_a ? "frobenius >= 2 beta(r) pointwise" : "frobenius >= |4 alpha(r)| pointwise");
    const double range_bound = type_a ? 2.0 * TypeASpec{m, r_hi}.beta()
                                      : std::fabs(4.0 * TypeBSpec{m, r_lo}.alpha());
    add_check(rep, "min_defect_frobenius_above_family_bound", rep.params,
              std::max(0.0, range_bound - min_frob), 0.0,
              "min_frobenius=" + format_double(min_frob) +
                  " family_bound=" + format_double(range_bound));
    return rep;
}

// ------------------------------------------------------------- PROOF_STEPS

Report run_proof_steps(const SuiteParams& p) {
    Report rep;
    rep.suite = "PROOF_STEPS";
    rep.seed = p.seed;
    const int steps = p.steps > 1 ? p.steps : 25;
    rep.params = base_params(p);
    rep.params["steps"] = std::to_string(steps);

    const double pi = 3.14159265358979323846;

    // type A final contradiction over an r-grid
    {
        const AmbientModel model = build_ambient_model(p.m);
        double braces_dev = 0.0, spread = 0.0, entry_dev = 0.0;
        for (int i = 0; i < steps; ++i) {
            const double r = 0.1 + (1.0 - 0.1) * i / (steps - 1);
            TypeASpec spec{p.m, r};
            const ModelSurface s = build_type_a(model, spec);
            const auto step = proof_step(s.point, s.A, ProofStepId::TYPE_A_FINAL);
            braces_dev = std::max(braces_dev, std::fabs(step.at("braces") - 2.0));
            spread = std::max(spread, step.at("braces_spread"));
            entry_dev = std::max(entry_dev,
                                 std::fabs(step.at("defect_entry") - (-2.0 * spec.beta())));
        }
        add_check(rep, "type_a_final_braces_equal_2", rep.params, braces_dev, 1e-9,
                  "the pointwise contradiction: a vanishing defect would force 0 = 2");
        add_check(rep, "type_a_final_braces_uniform_over_T_mu", rep.params, spread, 1e-9);
        add_check(rep, "type_a_final_defect_entry_minus_2beta", rep.params, entry_dev, 1e-8);
    }

    // type B Reeb-axis contraction over an r-grid
    {
        const int mb = p.m % 2 == 0 && p.m >= 4 ? p.m : 4;
        const AmbientModel model = build_ambient_model(mb);
        double d_dev = 0.0, alpha_floor = 1e300;
        for (int i = 0; i < steps; ++i) {
            const double r = 0.1 + (0.68 - 0.1) * i / (steps - 1);
            TypeBSpec spec{mb, r};
            const ModelSurface s = build_type_b(model, spec, p.seed);
            const auto step = proof_step(s.point, s.A, ProofStepId::TYPE_B_AXI);
            d_dev = std::max(d_dev, std::fabs(step.at("d") - step.at("four_alpha")));
            alpha_floor = std::min(alpha_floor, std::fabs(step.at("four_alpha")));
        }
        Params params = rep.params;
        params["m"] = std::to_string(mb);
        add_check(rep, "type_b_axis_d_equals_4alpha", params, d_dev, 1e-8);
        add_check(rep, "type_b_axis_alpha_nonzero", params,
                  alpha_floor > 0.0 ? 0.0 : 1.0, 0.0,
                  "min |4 alpha| = " + format_double(alpha_floor));
    }

    // oblique theta_1 eigenvector list
    {
        const AmbientModel model = build_ambient_model(p.m);
        double worst = 0.0;
        for (double t : {pi / 16.0, pi / 8.0, 3.0 * pi / 16.0}) {
            auto [ob, rot] = adapt_gauge(build_point(model, oblique_normal(model, t)));
            (void)rot;
            const auto step = proof_step(ob, zero_shape(ob), ProofStepId::OBLIQUE_THETA1);
            worst = std::max(worst, step.at("max_eigen_residual"));
        }
        add_check(rep, "oblique_theta1_eigenvector_list", rep.params, worst, 1e-9);
    }
    return rep;
}

// --------------------------------------------------------------- MINIMIZER

Report run_minimizer(const SuiteParams& p) {
    Report rep;
    rep.suite = "MINIMIZER";
    rep.seed = p.seed;
    rep.params = base_params(p);

    const AmbientModel model = build_ambient_model(p.m);
    SplitRng rng(p.seed, 42);
    const HypersurfacePoint point = build_point(model, rng.unit_vec(model.dim));

    // gradient vs central finite differences
    {
        const ShapeOperator A = random_shape(point, rng, 0.5);
        const Mat grad = defect_gradient(point, A);
        const double h = 1e-6;
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            SplitRng drng(p.seed, 900 + static_cast<uint64_t>(k));
            Mat draw(model.dim, model.dim);
            for (double& v : draw.a) v = drng.next_gaussian();
            Mat D = point.P * symmetrize(draw) * point.P;
            D = (1.0 / frobenius(D)) * D;

            const double fp = defect_objective(point, ShapeOperator{A.A + h * D});
            const double fm = defect_objective(point, ShapeOperator{A.A - h * D});
            const double fd = (fp - fm) / (2.0 * h);
            double g = 0.0;
            for (size_t i = 0; i < grad.a.size(); ++i) g += grad.a[i] * D.a[i];
            worst = std::max(worst, std::fabs(g - fd) / std::max(std::fabs(fd), 1e-8));
        }
        add_check(rep, "gradient_matches_central_differences", rep.params, worst, 1e-4);
    }

    // stationary rays
    {
        const double g0 = max_abs(defect_gradient(point, zero_shape(point)));
        add_check(rep, "gradient_zero_at_A_zero", rep.params, g0, 1e-12);
        const double gp = max_abs(defect_gradient(point, projector_shape(point, 0.7)));
        add_check(rep, "gradient_zero_on_projector_ray", rep.params, gp, 1e-9);
        const double fp = semiparallel_defect(point, projector_shape(point, 1.3)).frobenius;
        add_check(rep, "defect_zero_on_projector_ray", rep.params, fp, 1e-9);
    }

    // unconstrained descent reaches a pointwise solution
    {
        const ShapeOperator A0 = random_shape(point, rng, 0.1);
        MinimizeOptions opts;
        opts.seed = p.seed;
        opts.restarts = 2;
        const MinimizeResult res = minimize_defect(point, A0, opts);
        add_check(rep, "unconstrained_minimum_reaches_zero", rep.params, res.value, 1e-8,
                  "pointwise solutions of R.A = 0 exist (A = 0 and A = c P); a vanishing "
                  "pointwise defect says nothing about hypersurfaces, where the operator "
                  "must also satisfy the invariance classification");
    }
    return rep;
}

} // namespace

Report run_suite(SuiteId id, const SuiteParams& params) {
    if (params.m < 3) throw param_error("run_suite: m must be >= 3");
    switch (id) {
        case SuiteId::AMBIENT: return run_ambient(params);
        case SuiteId::POINT_IDENTITIES: return run_point_identities(params);
        case SuiteId::SUBSPACES: return run_subspaces(params);
        case SuiteId::RESIDUAL_ORACLE: return run_residual_oracle(params);
        case SuiteId::MODEL_A_SCAN: return run_model_scan(params, true);
        case SuiteId::MODEL_B_SCAN: return run_model_scan(params, false);
        case SuiteId::PROOF_STEPS: return run_proof_steps(params);
        case SuiteId::MINIMIZER: return run_minimizer(params);
    }
    throw param_error("run_suite: unknown suite");
}

} // namespace g2sp
