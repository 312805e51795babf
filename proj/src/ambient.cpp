#include "g2sp/ambient.hpp"

#include <cmath>

#include "g2sp/errors.hpp"

namespace g2sp {

namespace {

// Per-coordinate action of the structure maps on (1, i, j, k) components.
//   J  : (a,b,c,d) -> (-b,  a, -d,  c)      left multiplication by i
//   J1 : (a,b,c,d) -> ( b, -a, -d,  c)      right multiplication by -i
//   J2 : (a,b,c,d) -> ( c,  d, -a, -b)      right multiplication by -j
//   J3 : (a,b,c,d) -> ( d, -c,  b, -a)      right multiplication by -k
void set_block(Mat& m, int c, const std::array<std::array<double, 4>, 4>& block) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(4 * c + i, 4 * c + j) = block[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

double det3(const Mat& r) {
    return r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
           r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
           r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
}

} // namespace

GaugeRotation GaugeRotation::identity() { return GaugeRotation{Mat::identity(3)}; }

GaugeRotation GaugeRotation::diag(double r1, double r2, double r3) {
    Mat m(3, 3);
    m(0, 0) = r1;
    m(1, 1) = r2;
    m(2, 2) = r3;
    return GaugeRotation{m};
}

GaugeRotation GaugeRotation::random(SplitRng& rng) {
    std::vector<Vec> rows;
    for (int i = 0; i < 3; ++i) rows.push_back(rng.gaussian_vec(3));
    std::vector<Vec> on = mgs_orthonormalize(rows, 1e-6);
    while (on.size() < 3) {
        rows.push_back(rng.gaussian_vec(3));
        on = mgs_orthonormalize(rows, 1e-6);
    }
    Mat m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = on[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (det3(m) < 0.0)
        for (int j = 0; j < 3; ++j) m(2, j) = -m(2, j);
    return GaugeRotation{m};
}

double GaugeRotation::orthogonality_residual() const {
    return max_abs(R * transpose(R) - Mat::identity(3));
}

double GaugeRotation::det() const { return det3(R); }

AmbientModel build_ambient_model(int m) {
    if (m < 3) throw param_error("build_ambient_model: m must be >= 3");
    AmbientModel model;
    model.m = m;
    model.dim = 4 * m;
    model.J = Mat(model.dim, model.dim);
    for (auto& j : model.Ja) j = Mat(model.dim, model.dim);

    const std::array<std::array<double, 4>, 4> bJ = {{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}};
    const std::array<std::array<double, 4>, 4> b1 = {{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}};
    const std::array<std::array<double, 4>, 4> b2 = {{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}};
    const std::array<std::array<double, 4>, 4> b3 = {{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}}};

    for (int c = 0; c < m; ++c) {
        set_block(model.J, c, bJ);
        set_block(model.Ja[0], c, b1);
        set_block(model.Ja[1], c, b2);
        set_block(model.Ja[2], c, b3);
    }

    auto residuals = ambient_invariant_residuals(model);
    for (const auto& [name, value] : residuals)
        if (value > 1e-12)
            throw numeric_error("build_ambient_model: invariant violated: " + name);
    return model;
}

AmbientModel rotate_gauge(const AmbientModel& model, const GaugeRotation& rot) {
    if (rot.R.rows != 3 || rot.R.cols != 3)
        throw param_error("rotate_gauge: rotation must be 3x3");
    if (rot.orthogonality_residual() > 1e-10)
        throw param_error("rotate_gauge: rotation is not orthogonal");
    if (std::fabs(rot.det() - 1.0) > 1e-10)
        throw param_error("rotate_gauge: rotation must have det 1");

    AmbientModel out = model;
    for (int a = 0; a < 3; ++a) {
        Mat j(model.dim, model.dim);
        for (int b = 0; b < 3; ++b)
            if (rot.R(a, b) != 0.0) j = j + rot.R(a, b) * model.Ja[static_cast<size_t>(b)];
        out.Ja[static_cast<size_t>(a)] = j;
    }
    return out;
}

Vec ambient_curvature(const AmbientModel& model, const Vec& X, const Vec& Y, const Vec& Z) {
    const size_t d = static_cast<size_t>(model.dim);
    if (X.size() != d || Y.size() != d || Z.size() != d)
        throw param_error("ambient_curvature: vector dimension mismatch");

    const Vec JX = matvec(model.J, X);
    const Vec JY = matvec(model.J, Y);
    const Vec JZ = matvec(model.J, Z);

    Vec out(d, 0.0);
    axpy(dot(Y, Z), X, out);
    axpy(-dot(X, Z), Y, out);
    axpy(dot(JY, Z), JX, out);
    axpy(-dot(JX, Z), JY, out);
    axpy(-2.0 * dot(JX, Y), JZ, out);

    for (int a = 0; a < 3; ++a) {
        const Mat& Jaa = model.Ja[static_cast<size_t>(a)];
        const Vec JaX = matvec(Jaa, X);
        const Vec JaY = matvec(Jaa, Y);
        const Vec JaZ = matvec(Jaa, Z);
        axpy(dot(JaY, Z), JaX, out);
        axpy(-dot(JaX, Z), JaY, out);
        axpy(-2.0 * dot(JaX, Y), JaZ, out);
        const Vec JJaX = matvec(model.J, JaX);
        const Vec JJaY = matvec(model.J, JaY);
        axpy(dot(JJaY, Z), JJaX, out);
        axpy(-dot(JJaX, Z), JJaY, out);
    }
    return out;
}

std::map<std::string, double> ambient_invariant_residuals(const AmbientModel& model) {
    std::map<std::string, double> r;
    const Mat id = Mat::identity(model.dim);

    r["J_squared_plus_id"] = max_abs(model.J * model.J + id);
    r["J_skew"] = max_abs(model.J + transpose(model.J));
    r["J_orthogonal"] = max_abs(transpose(model.J) * model.J - id);

    for (int a = 0; a < 3; ++a) {
        const Mat& Jaa = model.Ja[static_cast<size_t>(a)];
        const Mat& Jb = model.Ja[static_cast<size_t>((a + 1) % 3)];
        const Mat& Jc = model.Ja[static_cast<size_t>((a + 2) % 3)];
        const std::string sa = std::to_string(a + 1);
        r["Ja_squared_plus_id_" + sa] = max_abs(Jaa * Jaa + id);
        r["Ja_skew_" + sa] = max_abs(Jaa + transpose(Jaa));
        r["Ja_orthogonal_" + sa] = max_abs(transpose(Jaa) * Jaa - id);
        r["quaternion_relation_" + sa] = max_abs(Jaa * Jb - Jc);
        r["quaternion_anticommute_" + sa] = max_abs(Jaa * Jb + Jb * Jaa);
        r["J_Ja_commute_" + sa] = max_abs(model.J * Jaa - Jaa * model.J);
        r["trace_J_Ja_" + sa] = std::fabs(trace(model.J * Jaa));
    }
    return r;
}

Vec quaternion_unit(const AmbientModel& model, int coord, int slot) {
    if (coord < 0 || coord >= model.m || slot < 0 || slot > 3)
        throw param_error("quaternion_unit: coordinate or slot out of range");
    Vec v(static_cast<size_t>(model.dim), 0.0);
    v[static_cast<size_t>(4 * coord + slot)] = 1.0;
    return v;
}

} // namespace g2sp
