#pragma once

// Structures induced on a real hypersurface at a single point: the unit
// normal N determines the almost contact structure (phi, xi, eta), the
// triple (phi_a, xi_a, eta_a), the symmetric operators theta_a and the
// scalars u_a = <xi, xi_a>, together with the subspaces H, H^perp and the
// +-1 eigenspaces of theta_a on H.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "g2sp/ambient.hpp"
#include "g2sp/linalg.hpp"

namespace g2sp {

enum class ReebPosition { D_PERP, D, OBLIQUE };

const char* to_string(ReebPosition p);

struct HypersurfacePoint {
    AmbientModel model;
    Vec N;                      // unit normal
    Mat P;                      // tangent projector Id - N N^T
    Mat phi;                    // tangent part of J
    std::array<Mat, 3> phi_a;   // tangent parts of J_a
    std::array<Mat, 3> theta_a; // tangent parts of J_a J (symmetric)
    Vec xi;                     // -J N
    std::array<Vec, 3> xi_a;    // -J_a N
    std::array<double, 3> u;    // u_a = <xi, xi_a>
    std::vector<Vec> tangent_basis; // canonical orthonormal basis of N^perp

    int tangent_dim() const { return model.dim - 1; }
    double u_norm() const;
    Vec phi_xi(int a) const; // phi applied to xi_a
};

struct SubspaceReport {
    std::vector<Vec> hperp_basis; // orthonormal basis of span{xi, xi_a, phi xi_a}
    std::vector<Vec> h_basis;     // orthonormal basis of H
    int h_dim = 0;
    // ha_eigenbases[a][0] spans H_a(+1), ha_eigenbases[a][1] spans H_a(-1)
    std::array<std::array<std::vector<Vec>, 2>, 3> ha_eigenbases;
    ReebPosition position = ReebPosition::OBLIQUE;
    bool near_threshold = false; // |u| within a decade of the cutoff
};

HypersurfacePoint build_point(const AmbientModel& model, const Vec& N);

// Rotate the gauge so that u becomes (|u|, 0, 0); identity when u = 0.
std::pair<HypersurfacePoint, GaugeRotation> adapt_gauge(const HypersurfacePoint& point);

SubspaceReport subspace_analysis(const HypersurfacePoint& point, double tol = 1e-6);

// One-parameter normal family through all three Reeb positions:
// N(t) = cos(t) q0 + sin(t) q1*j with q0, q1 the first two quaternionic
// coordinate lines.  Gives u = (-cos 2t, 0, 0).
Vec oblique_normal(const AmbientModel& model, double t);

// Named residuals of every pointwise identity the structures satisfy
// (symmetry and trace of theta_a, the involution property, the action on
// xi, xi_a, phi xi_a, and the phi/phi_a compatibility relations).
std::map<std::string, double> point_identity_residuals(const HypersurfacePoint& point);

} // namespace g2sp
