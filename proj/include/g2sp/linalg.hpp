#pragma once

// Minimal dense real linear algebra used throughout the toolkit.
// Matrices are row-major square-or-rectangular doubles; nothing here is
// tuned beyond what 24x24 endomorphisms need.

#include <cstddef>
#include <vector>

namespace g2sp {

using Vec = std::vector<double>;

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a; // row-major, size rows*cols

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
    static Mat zero(int r, int c) { return Mat(r, c); }
};

Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Mat& x, const Mat& y);
Mat operator*(double s, const Mat& x);

Vec matvec(const Mat& m, const Vec& v);
Mat transpose(const Mat& m);
Mat outer(const Vec& x, const Vec& y); // x y^T
double trace(const Mat& m);
double max_abs(const Mat& m);
double frobenius(const Mat& m);
Mat symmetrize(const Mat& m); // (m + m^T)/2

double dot(const Vec& x, const Vec& y);
double norm(const Vec& x);
Vec operator+(const Vec& x, const Vec& y);
Vec operator-(const Vec& x, const Vec& y);
Vec operator*(double s, const Vec& x);
void axpy(double s, const Vec& x, Vec& y); // y += s*x
Vec normalized(const Vec& x);
double max_abs(const Vec& x);

// Sum with pairwise (tree) reduction; bit-stable for a fixed ordering of
// `terms` and far less drift than naive accumulation on ~1e5 terms.
double pairwise_sum(const std::vector<double>& terms);

// Modified Gram-Schmidt with a rank cutoff: vectors whose residual after
// projection falls below `tol` are dropped.  Returns an orthonormal set.
std::vector<Vec> mgs_orthonormalize(const std::vector<Vec>& vecs, double tol);

// Orthonormal basis of the orthogonal complement of span{vs} inside R^dim.
// `vs` need not be orthonormal.
std::vector<Vec> orthogonal_complement(const std::vector<Vec>& vs, int dim, double tol);

struct EigenSym {
    Vec values;          // ascending
    Mat vectors;         // column k is the eigenvector of values[k]
    double off_achieved; // Frobenius norm of the off-diagonal part at exit
    int sweeps = 0;
};

// Cyclic Jacobi for symmetric matrices.  Iterates full sweeps until the
// off-diagonal Frobenius norm drops below `off_tol` (absolute, the caller
// scales) or `max_sweeps` is hit.
EigenSym jacobi_eigensym(Mat m, double off_tol = 1e-13, int max_sweeps = 64);

} // namespace g2sp
