#pragma once

// Shape operators of the two model hypersurface families (tubes around a
// totally geodesic complex sub-Grassmannian, and around a quaternionic
// projective space), built pointwise from their published principal
// curvature tables, plus spectrum and proof-step evaluators.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "g2sp/curvature.hpp"
#include "g2sp/hyperpoint.hpp"

namespace g2sp {

struct TypeASpec {
    int m = 3;      // >= 3
    double r = 0.3; // in (0, pi/sqrt(8))

    static double r_sup() { return 3.14159265358979323846 / std::sqrt(8.0); }
    double alpha() const { return std::sqrt(8.0) / std::tan(std::sqrt(8.0) * r); }
    double beta() const { return std::sqrt(2.0) / std::tan(std::sqrt(2.0) * r); }
    double lambda() const { return -std::sqrt(2.0) * std::tan(std::sqrt(2.0) * r); }
    double mu() const { return 0.0; }
};

struct TypeBSpec {
    int m = 4;      // even, >= 4
    double r = 0.3; // in (0, pi/4)

    static double r_sup() { return 3.14159265358979323846 / 4.0; }
    double alpha() const { return -2.0 * std::tan(2.0 * r); }
    double beta() const { return 2.0 / std::tan(2.0 * r); }
    double gamma() const { return 0.0; }
    double lambda() const { return 1.0 / std::tan(r); }
    double mu() const { return -std::tan(r); }
};

struct ModelSurface {
    HypersurfacePoint point;
    ShapeOperator A;
    // orthonormal eigenbases, in the order the curvature tables list them
    std::vector<Vec> T_alpha;
    std::vector<Vec> T_beta;
    std::vector<Vec> T_gamma; // type B only
    std::vector<Vec> T_lambda;
    std::vector<Vec> T_mu;

    // adapted basis [T_alpha, T_beta, (T_gamma,) T_lambda, T_mu]
    std::vector<Vec> adapted_basis() const;
};

ModelSurface build_type_a(const AmbientModel& model, const TypeASpec& spec);
// seed drives the randomized T_lambda/T_mu line construction
ModelSurface build_type_b(const AmbientModel& model, const TypeBSpec& spec, uint64_t seed = 0);

struct SpectrumCluster {
    double value = 0.0; // mean of the clustered eigenvalues
    int multiplicity = 0;
};

struct SpectrumReport {
    std::vector<SpectrumCluster> clusters; // ascending
    double cluster_tol = 0.0;
    double eigensolver_off = 0.0; // off-diagonal norm the Jacobi sweep reached
    EigenSym eigen;               // tangent-basis eigendecomposition
};

// Eigenvalues of A restricted to the tangent space (the trivial kernel
// direction along N never enters), clustered with `cluster_tol`.
SpectrumReport principal_spectrum(const HypersurfacePoint& point, const ShapeOperator& A,
                                  double cluster_tol = 1e-7);

enum class ProofStepId { TYPE_A_FINAL, TYPE_B_AXI, OBLIQUE_THETA1 };

const char* to_string(ProofStepId id);
ProofStepId parse_proof_step(const std::string& s);

// Named scalars of the pointwise proof steps:
//   TYPE_A_FINAL   braces = 1 + sum_a <theta_a Yj, Yj><theta_a xi2, xi2> for
//                  a T_mu vector Yj (value 2 is the contradiction), plus the
//                  defect entry <(R(xi2,Yj)A)Yj, xi2> and its -2*beta reference.
//   TYPE_B_AXI     d = <(R(phi xi1, xi)A)xi, phi xi1> and the 4*alpha reference.
//   OBLIQUE_THETA1 max eigen-equation residual of the explicit theta_1
//                  eigenvector list at an oblique point.
std::map<std::string, double> proof_step(const HypersurfacePoint& point, const ShapeOperator& A,
                                         ProofStepId id);

} // namespace g2sp
