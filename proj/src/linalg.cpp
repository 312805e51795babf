#include "g2sp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "g2sp/errors.hpp"

namespace g2sp {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat r(x.rows, x.cols);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    Mat r(x.rows, x.cols);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw param_error("Mat product: inner dimensions differ");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            const double* yrow = &y.a[static_cast<size_t>(k) * y.cols];
            double* rrow = &r.a[static_cast<size_t>(i) * r.cols];
            for (int j = 0; j < y.cols; ++j) rrow[j] += xik * yrow[j];
        }
    }
    return r;
}

Mat operator*(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

Vec matvec(const Mat& m, const Vec& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw param_error("matvec: dimension mismatch");
    Vec r(static_cast<size_t>(m.rows), 0.0);
    for (int i = 0; i < m.rows; ++i) {
        const double* row = &m.a[static_cast<size_t>(i) * m.cols];
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += row[j] * v[j];
        r[i] = s;
    }
    return r;
}

Mat transpose(const Mat& m) {
    Mat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
    return r;
}

Mat outer(const Vec& x, const Vec& y) {
    Mat r(static_cast<int>(x.size()), static_cast<int>(y.size()));
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = x[i] * y[j];
    return r;
}

double trace(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < std::min(m.rows, m.cols); ++i) s += m(i, i);
    return s;
}

double max_abs(const Mat& m) {
    double s = 0.0;
    for (double v : m.a) s = std::max(s, std::fabs(v));
    return s;
}

double frobenius(const Mat& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

Mat symmetrize(const Mat& m) {
    Mat r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(i, j) = 0.5 * (m(i, j) + m(j, i));
    return r;
}

double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

Vec operator+(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

Vec operator-(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

Vec operator*(double s, const Vec& x) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
    return r;
}

void axpy(double s, const Vec& x, Vec& y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vec normalized(const Vec& x) {
    const double n = norm(x);
    if (n == 0.0) throw param_error("normalized: zero vector");
    return (1.0 / n) * x;
}

double max_abs(const Vec& x) {
    double s = 0.0;
    for (double v : x) s = std::max(s, std::fabs(v));
    return s;
}

double pairwise_sum(const std::vector<double>& terms) {
    // recursion unrolled into a scratch buffer; order is fixed by the input
    if (terms.empty()) return 0.0;
    std::vector<double> buf = terms;
    size_t n = buf.size();
    while (n > 1) {
        size_t half = n / 2;
        for (size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2 == 1) {
            buf[half] = buf[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return buf[0];
}

std::vector<Vec> mgs_orthonormalize(const std::vector<Vec>& vecs, double tol) {
    std::vector<Vec> basis;
    for (const Vec& v0 : vecs) {
        Vec v = v0;
        // two projection passes keep orthogonality near machine precision
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) axpy(-dot(b, v), b, v);
        const double n = norm(v);
        if (n > tol) basis.push_back((1.0 / n) * v);
    }
    return basis;
}

std::vector<Vec> orthogonal_complement(const std::vector<Vec>& vs, int dim, double tol) {
    std::vector<Vec> span = mgs_orthonormalize(vs, tol);
    std::vector<Vec> result;
    for (int j = 0; j < dim; ++j) {
        Vec v(static_cast<size_t>(dim), 0.0);
        v[static_cast<size_t>(j)] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& b : span) axpy(-dot(b, v), b, v);
            for (const Vec& b : result) axpy(-dot(b, v), b, v);
        }
        const double n = norm(v);
        if (n > tol) result.push_back((1.0 / n) * v);
    }
    return result;
}

namespace {

double off_diagonal_frob(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

} // namespace

EigenSym jacobi_eigensym(Mat m, double off_tol, int max_sweeps) {
    if (m.rows != m.cols) throw param_error("jacobi_eigensym: matrix not square");
    const int n = m.rows;
    Mat v = Mat::identity(n);

    EigenSym out;
    out.sweeps = 0;
    double off = off_diagonal_frob(m);
    while (off > off_tol && out.sweeps < max_sweeps) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (std::fabs(apq) == 0.0) continue;
                const double app = m(p, p);
                const double aqq = m(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                double t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        ++out.sweeps;
        off = off_diagonal_frob(m);
    }
    out.off_achieved = off;

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return m(i, i) < m(j, j); });

    out.values.resize(static_cast<size_t>(n));
    out.vectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<size_t>(k)] = m(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[static_cast<size_t>(k)]);
    }
    return out;
}

} // namespace g2sp
