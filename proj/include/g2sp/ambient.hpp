#pragma once

// Point model of the tangent space of the complex two-plane Grassmannian:
// R^{4m} carries the Kaehler structure J and a canonical quaternionic
// triple (J1, J2, J3), realized through quaternionic coordinates.  Real
// slots 4c..4c+3 of coordinate c hold the (1, i, j, k) components; J is
// left multiplication by i and J_a is right multiplication by -i, -j, -k.
// Left and right multiplications commute, which gives J J_a = J_a J, and
// the conjugate units fix the sign so that J1 J2 = +J3.

#include <array>
#include <map>
#include <string>

#include "g2sp/linalg.hpp"
#include "g2sp/rng.hpp"

namespace g2sp {

struct AmbientModel {
    int m = 0;   // quaternionic dimension parameter, >= 3
    int dim = 0; // 4m
    Mat J;
    std::array<Mat, 3> Ja;
};

struct GaugeRotation {
    Mat R; // 3x3, R R^T = Id, det R = 1

    static GaugeRotation identity();
    static GaugeRotation diag(double r1, double r2, double r3);
    // Haar-ish sample: Gram-Schmidt of a Gaussian 3x3, det sign fixed.
    static GaugeRotation random(SplitRng& rng);

    double orthogonality_residual() const; // max|R R^T - Id|
    double det() const;
};

AmbientModel build_ambient_model(int m);

// Replace (J1,J2,J3) by (sum_b R_{1b} J_b, ...).  J is untouched.
AmbientModel rotate_gauge(const AmbientModel& model, const GaugeRotation& rot);

// The curvature tensor of the model space applied to (X, Y, Z).
Vec ambient_curvature(const AmbientModel& model, const Vec& X, const Vec& Y, const Vec& Z);

// Named residuals of every structural invariant (J^2 = -Id, the quaternion
// relations, commutation with J, skewness, orthogonality, trace(J J_a)).
std::map<std::string, double> ambient_invariant_residuals(const AmbientModel& model);

// Unit vector along real slot `slot` (0..3 -> 1,i,j,k) of quaternionic
// coordinate `coord`.
Vec quaternion_unit(const AmbientModel& model, int coord, int slot);

} // namespace g2sp
