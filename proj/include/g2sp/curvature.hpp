#pragma once

// Gauss-equation curvature of a hypersurface point for a candidate shape
// operator, the semi-parallel defect R.A, the residual functionals used in
// the nonexistence argument, and a projected-gradient defect minimizer.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "g2sp/hyperpoint.hpp"
#include "g2sp/linalg.hpp"
#include "g2sp/rng.hpp"

namespace g2sp {

struct ShapeOperator {
    Mat A; // ambient dim x dim, symmetric, annihilates N
};

// Symmetrize an arbitrary ambient matrix and restrict it to the tangent
// space of `point` (P sym(M) P).
ShapeOperator make_shape_operator(const HypersurfacePoint& point, const Mat& raw);
ShapeOperator zero_shape(const HypersurfacePoint& point);
ShapeOperator random_shape(const HypersurfacePoint& point, SplitRng& rng, double scale = 1.0);
// c * P, the tangent projector ray (a pointwise solution of R.A = 0)
ShapeOperator projector_shape(const HypersurfacePoint& point, double c);

// max(|A - A^T|, |A N|) -- symmetry and tangency residual
double shape_operator_residual(const HypersurfacePoint& point, const ShapeOperator& A);

// Curvature as a short list of rank-structured generators; one application
// costs a handful of mat-vecs.
class CurvatureOperator {
public:
    CurvatureOperator(const HypersurfacePoint& point, const ShapeOperator& A);

    Vec apply(const Vec& X, const Vec& Y, const Vec& Z) const;
    // <(R(X,Y)A)Z, W> = <R(X,Y)AZ, W> - <R(X,Y)Z, AW>
    double defect_entry(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) const;

    const HypersurfacePoint& point() const { return *point_; }
    const Mat& shape() const { return A_; }

private:
    struct Generator {
        const Mat* B;
        double pair_coeff; // <BY,Z>BX - <BX,Z>BY
        double mid_coeff;  // <BX,Y>BZ
    };
    const HypersurfacePoint* point_;
    Mat A_;
    std::vector<Generator> generators_;
};

CurvatureOperator gauss_curvature(const HypersurfacePoint& point, const ShapeOperator& A);

struct DefectReport {
    double frobenius = 0.0;
    double max_abs = 0.0;
    std::array<int, 4> argmax = {0, 0, 0, 0};
};

// Full O(n^4) aggregation of <(R(b_i,b_j)A)b_k, b_l> over an orthonormal
// tangent basis (the point's canonical one unless another is supplied;
// the Frobenius norm itself is basis-independent).
DefectReport semiparallel_defect(const HypersurfacePoint& point, const ShapeOperator& A);
DefectReport semiparallel_defect(const HypersurfacePoint& point, const ShapeOperator& A,
                                 const std::vector<Vec>& basis);

// Squared Frobenius norm of the defect; the minimizer's objective.
double defect_objective(const HypersurfacePoint& point, const ShapeOperator& A);

struct ScalarSummary {
    double alpha = 0.0;                       // <A xi, xi>
    std::array<double, 3> alpha_a = {0, 0, 0}; // <A xi_a, xi_a>
    std::array<double, 3> u = {0, 0, 0};
};

ScalarSummary scalar_summary(const HypersurfacePoint& point, const ShapeOperator& A);

enum class ResidualId { E130, E120, E140, E160, E180, E200, E700, ECURV };

const char* to_string(ResidualId id);
ResidualId parse_residual_id(const std::string& s);

struct ResidualArgs {
    Vec Y;
    Vec Z;              // for ECURV, Y is Y_j and Z is Y_k
    int b = 1;          // E700 only, 1-based
    double lambda_j = 0.0;
    double lambda_k = 0.0;
};

struct ResidualPair {
    double expanded; // the displayed right-hand formula, evaluated verbatim
    double direct;   // the curvature contraction the display transcribes
};

// For E160/E700 the displayed equations expand the single curvature
// application <R(Z,Y)Av, v>; the commutator contraction <(R(Z,Y)A)v, v>
// equals exactly twice that because R(Z,Y) is skew-adjoint and A is
// symmetric.  `direct` uses the single-application form so the pair is
// comparable entry for entry; the doubling itself is covered by tests.
ResidualPair residual_pair(const HypersurfacePoint& point, const ShapeOperator& A,
                           ResidualId id, const ResidualArgs& args);

// Euclidean gradient of defect_objective with respect to symmetric tangent
// perturbations of A; symmetric and annihilates N.
Mat defect_gradient(const HypersurfacePoint& point, const ShapeOperator& A);

struct MinimizeOptions {
    int max_iters = 4000;
    double initial_step = 1.0;
    int restarts = 0;
    uint64_t seed = 0;
    double stop_objective = 1e-14;
    double restart_scale = 0.1;
};

struct MinimizeIterate {
    int iter;
    double objective;
    double step;
    double grad_norm;
};

struct MinimizeResult {
    ShapeOperator minimizer;
    double value = 0.0; // objective = squared Frobenius defect
    std::vector<MinimizeIterate> trace;
    int restarts_used = 0;
};

MinimizeResult minimize_defect(const HypersurfacePoint& point, const ShapeOperator& A0,
                               const MinimizeOptions& opts = {});

} // namespace g2sp
