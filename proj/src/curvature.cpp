#include "g2sp/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "g2sp/errors.hpp"

namespace g2sp {

ShapeOperator make_shape_operator(const HypersurfacePoint& point, const Mat& raw) {
    if (raw.rows != point.model.dim || raw.cols != point.model.dim)
        throw param_error("make_shape_operator: dimension mismatch");
    return ShapeOperator{point.P * symmetrize(raw) * point.P};
}

ShapeOperator zero_shape(const HypersurfacePoint& point) {
    return ShapeOperator{Mat::zero(point.model.dim, point.model.dim)};
}

ShapeOperator random_shape(const HypersurfacePoint& point, SplitRng& rng, double scale) {
    const int d = point.model.dim;
    Mat g(d, d);
    for (double& v : g.a) v = scale * rng.next_gaussian();
    return make_shape_operator(point, g);
}

ShapeOperator projector_shape(const HypersurfacePoint& point, double c) {
    return ShapeOperator{c * point.P};
}

double shape_operator_residual(const HypersurfacePoint& point, const ShapeOperator& A) {
    return std::max(max_abs(A.A - transpose(A.A)), max_abs(matvec(A.A, point.N)));
}

CurvatureOperator::CurvatureOperator(const HypersurfacePoint& point, const ShapeOperator& A)
    : point_(&point), A_(A.A) {
    if (A.A.rows != point.model.dim)
        throw param_error("CurvatureOperator: shape operator dimension mismatch");
    generators_.push_back({&point.P, 1.0, 0.0}); // identity on the tangent space
    generators_.push_back({&point.phi, 1.0, -2.0});
    for (int a = 0; a < 3; ++a) generators_.push_back({&point.phi_a[static_cast<size_t>(a)], 1.0, -2.0});
    for (int a = 0; a < 3; ++a) generators_.push_back({&point.theta_a[static_cast<size_t>(a)], 1.0, 0.0});
    generators_.push_back({&A_, 1.0, 0.0});
}

Vec CurvatureOperator::apply(const Vec& X, const Vec& Y, const Vec& Z) const {
    const size_t d = static_cast<size_t>(point_->model.dim);
    if (X.size() != d || Y.size() != d || Z.size() != d)
        throw param_error("CurvatureOperator::apply: dimension mismatch");
    Vec out(d, 0.0);
    for (const Generator& g : generators_) {
        const Vec BX = matvec(*g.B, X);
        const Vec BY = matvec(*g.B, Y);
        axpy(g.pair_coeff * dot(BY, Z), BX, out);
        axpy(-g.pair_coeff * dot(BX, Z), BY, out);
        if (g.mid_coeff != 0.0) {
            const Vec BZ = matvec(*g.B, Z);
            axpy(g.mid_coeff * dot(BX, Y), BZ, out);
        }
    }
    return out;
}

double CurvatureOperator::defect_entry(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) const {
    const Vec AZ = matvec(A_, Z);
    const Vec AW = matvec(A_, W);
    const Vec RZ = apply(X, Y, Z);
    const Vec RAZ = apply(X, Y, AZ);
    return dot(RAZ, W) - dot(RZ, AW);
}

CurvatureOperator gauss_curvature(const HypersurfacePoint& point, const ShapeOperator& A) {
    return CurvatureOperator(point, A);
}

namespace {

// Operator matrices in an orthonormal tangent basis: hat(M)(q, p) = <b_q, M b_p>.
Mat hat_matrix(const Mat& M, const std::vector<Vec>& basis) {
    const int n = static_cast<int>(basis.size());
    Mat h(n, n);
    for (int p = 0; p < n; ++p) {
        const Vec img = matvec(M, basis[static_cast<size_t>(p)]);
        for (int q = 0; q < n; ++q) h(q, p) = dot(basis[static_cast<size_t>(q)], img);
    }
    return h;
}

struct TangentFrame {
    int n = 0;
    Mat phi;
    std::array<Mat, 3> phi_a;
    std::array<Mat, 3> theta_a;
    Mat A;
};

TangentFrame make_frame(const HypersurfacePoint& point, const ShapeOperator& A,
                        const std::vector<Vec>& basis) {
    TangentFrame f;
    f.n = static_cast<int>(basis.size());
    f.phi = hat_matrix(point.phi, basis);
    for (int a = 0; a < 3; ++a) {
        f.phi_a[static_cast<size_t>(a)] = hat_matrix(point.phi_a[static_cast<size_t>(a)], basis);
        f.theta_a[static_cast<size_t>(a)] = hat_matrix(point.theta_a[static_cast<size_t>(a)], basis);
    }
    f.A = hat_matrix(A.A, basis);
    return f;
}

// R(b_i, b_j) as an n x n operator matrix, assembled from generator columns.
Mat curvature_pair_matrix(const TangentFrame& f, int i, int j) {
    const int n = f.n;
    Mat r(n, n);
    r(i, j) += 1.0; // identity generator: e_i e_j^T - e_j e_i^T acting on coords
    r(j, i) -= 1.0;

    auto add_pair = [&](const Mat& h, bool with_mid) {
        // columns of h are the basis images
        for (int q = 0; q < n; ++q) {
            const double hq_i = h(q, i);
            const double hq_j = h(q, j);
            if (hq_i == 0.0 && hq_j == 0.0) continue;
            for (int p = 0; p < n; ++p) r(q, p) += hq_i * h(p, j) - hq_j * h(p, i);
        }
        if (with_mid) {
            const double hij = h(j, i); // <b_j, B b_i> = <B b_i, b_j>
            if (hij != 0.0)
                for (int q = 0; q < n; ++q)
                    for (int p = 0; p < n; ++p) r(q, p) -= 2.0 * hij * h(q, p);
        }
    };

    add_pair(f.phi, true);
    for (int a = 0; a < 3; ++a) add_pair(f.phi_a[static_cast<size_t>(a)], true);
    for (int a = 0; a < 3; ++a) add_pair(f.theta_a[static_cast<size_t>(a)], false);
    add_pair(f.A, false);
    return r;
}

} // namespace

DefectReport semiparallel_defect(const HypersurfacePoint& point, const ShapeOperator& A) {
    return semiparallel_defect(point, A, point.tangent_basis);
}

DefectReport semiparallel_defect(const HypersurfacePoint& point, const ShapeOperator& A,
                                 const std::vector<Vec>& basis) {
    if (static_cast<int>(basis.size()) != point.tangent_dim())
        throw param_error("semiparallel_defect: basis does not span the tangent space");
    const TangentFrame f = make_frame(point, A, basis);
    const int n = f.n;

    DefectReport rep;
    std::vector<double> block_sums;
    block_sums.reserve(static_cast<size_t>(n) * n);
    std::vector<double> sq(static_cast<size_t>(n) * n);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                block_sums.push_back(0.0);
                continue;
            }
            const Mat r = curvature_pair_matrix(f, i, j);
            const Mat d = f.A * r - r * f.A;
            // entry (k, l) of the defect tensor is d(l, k)
            size_t t = 0;
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    const double v = d(l, k);
                    sq[t++] = v * v;
                    const double av = std::fabs(v);
                    if (av > rep.max_abs) {
                        rep.max_abs = av;
                        rep.argmax = {i, j, k, l};
                    }
                }
            }
            block_sums.push_back(pairwise_sum(sq));
        }
    }
    rep.frobenius = std::sqrt(pairwise_sum(block_sums));
    return rep;
}

double defect_objective(const HypersurfacePoint& point, const ShapeOperator& A) {
    const double fr = semiparallel_defect(point, A).frobenius;
    return fr * fr;
}

ScalarSummary scalar_summary(const HypersurfacePoint& point, const ShapeOperator& A) {
    ScalarSummary s;
    const Vec Axi = matvec(A.A, point.xi);
    s.alpha = dot(Axi, point.xi);
    for (int a = 0; a < 3; ++a) {
        const Vec& xa = point.xi_a[static_cast<size_t>(a)];
        s.alpha_a[static_cast<size_t>(a)] = dot(matvec(A.A, xa), xa);
        s.u[static_cast<size_t>(a)] = point.u[static_cast<size_t>(a)];
    }
    return s;
}

const char* to_string(ResidualId id) {
    switch (id) {
        case ResidualId::E130: return "E130";
        case ResidualId::E120: return "E120";
        case ResidualId::E140: return "E140";
        case ResidualId::E160: return "E160";
        case ResidualId::E180: return "E180";
        case ResidualId::E200: return "E200";
        case ResidualId::E700: return "E700";
        case ResidualId::ECURV: return "ECURV";
    }
    return "?";
}

ResidualId parse_residual_id(const std::string& s) {
    if (s == "E130") return ResidualId::E130;
    if (s == "E120") return ResidualId::E120;
    if (s == "E140") return ResidualId::E140;
    if (s == "E160") return ResidualId::E160;
    if (s == "E180") return ResidualId::E180;
    if (s == "E200") return ResidualId::E200;
    if (s == "E700") return ResidualId::E700;
    if (s == "ECURV") return ResidualId::ECURV;
    throw param_error("unknown residual id: " + s);
}

namespace {

struct ResidualContext {
    const HypersurfacePoint* p;
    const Mat* A;
    CurvatureOperator R;
    Vec Axi;
    Vec A2xi;
    double alpha;
    double Axi_norm2;
    std::array<Vec, 3> phixi;  // phi xi_a
    std::array<Vec, 3> Aphixi; // A phi xi_a
    std::array<Vec, 3> Axia;   // A xi_a

    ResidualContext(const HypersurfacePoint& point, const ShapeOperator& shape)
        : p(&point), A(&shape.A), R(point, shape) {
        Axi = matvec(*A, point.xi);
        A2xi = matvec(*A, Axi);
        alpha = dot(Axi, point.xi);
        Axi_norm2 = dot(Axi, Axi);
        for (int a = 0; a < 3; ++a) {
            phixi[static_cast<size_t>(a)] = point.phi_xi(a);
            Aphixi[static_cast<size_t>(a)] = matvec(*A, phixi[static_cast<size_t>(a)]);
            Axia[static_cast<size_t>(a)] = matvec(*A, point.xi_a[static_cast<size_t>(a)]);
        }
    }

    double contraction(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) const {
        // <(R(X,Y)A)Z, W>
        const Vec AZ = matvec(*A, Z);
        const Vec AW = matvec(*A, W);
        return dot(R.apply(X, Y, AZ), W) - dot(R.apply(X, Y, Z), AW);
    }
};

double expanded_130(const ResidualContext& c, const Vec& Y, const Vec& Z) {
    const HypersurfacePoint& p = *c.p;
    const Vec AY = matvec(*c.A, Y);
    const Vec AZ = matvec(*c.A, Z);
    double v = c.alpha * dot(AY, AZ) + (1.0 - c.Axi_norm2) * dot(Y, AZ) - c.alpha * dot(Y, Z)
             - dot(c.A2xi, Z) * dot(c.Axi, Y) + dot(c.A2xi, Y) * dot(c.Axi, Z)
             - dot(c.Axi, Z) * dot(p.xi, Y) + dot(c.Axi, Y) * dot(p.xi, Z);
    for (int a = 0; a < 3; ++a) {
        const Vec& w = c.phixi[static_cast<size_t>(a)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        const Mat& pa = p.phi_a[static_cast<size_t>(a)];
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const Vec paAxi = matvec(pa, c.Axi);
        const Vec thAxi = matvec(th, c.Axi);
        const Vec thY = matvec(th, Y);
        v += 3.0 * dot(c.Aphixi[static_cast<size_t>(a)], Z) * dot(w, Y)
           - dot(matvec(pa, Y), Z) * dot(c.Axi, w)
           - dot(paAxi, Y) * dot(w, Z)
           - 2.0 * dot(paAxi, Z) * dot(w, Y)
           - p.u[static_cast<size_t>(a)] * dot(matvec(*c.A, thY), Z)
           - dot(c.Axia[static_cast<size_t>(a)], Z) * dot(xa, Y)
           + dot(thY, Z) * dot(c.Axia[static_cast<size_t>(a)], p.xi)
           - dot(thAxi, Y) * dot(xa, Z);
    }
    return v;
}

double expanded_140(const ResidualContext& c, const Vec& Y, const Vec& Z) {
    const HypersurfacePoint& p = *c.p;
    double v = -2.0 * dot(c.A2xi, Z) * dot(c.Axi, Y) + 2.0 * dot(c.A2xi, Y) * dot(c.Axi, Z)
             - 2.0 * dot(c.Axi, Z) * dot(p.xi, Y) + 2.0 * dot(c.Axi, Y) * dot(p.xi, Z);
    for (int a = 0; a < 3; ++a) {
        const Vec& w = c.phixi[static_cast<size_t>(a)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        const Mat& pa = p.phi_a[static_cast<size_t>(a)];
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const Vec paAxi = matvec(pa, c.Axi);
        const Vec thAxi = matvec(th, c.Axi);
        const Vec AthY = matvec(*c.A, matvec(th, Y));
        const Vec thAY = matvec(th, matvec(*c.A, Y));
        v += 3.0 * dot(c.Aphixi[static_cast<size_t>(a)], Z) * dot(w, Y)
           - 3.0 * dot(c.Aphixi[static_cast<size_t>(a)], Y) * dot(w, Z)
           - 2.0 * dot(matvec(pa, Y), Z) * dot(c.Axi, w)
           - dot(paAxi, Z) * dot(w, Y) + dot(paAxi, Y) * dot(w, Z)
           - dot(c.Axia[static_cast<size_t>(a)], Z) * dot(xa, Y)
           + dot(c.Axia[static_cast<size_t>(a)], Y) * dot(xa, Z)
           + dot(thAxi, Z) * dot(xa, Y) - dot(thAxi, Y) * dot(xa, Z)
           - p.u[static_cast<size_t>(a)] * (dot(AthY, Z) - dot(thAY, Z));
    }
    return v;
}

double expanded_120(const ResidualContext& c, const Vec& Y, const Vec& Z) {
    const HypersurfacePoint& p = *c.p;
    double v = -3.0 * dot(c.Axi, Z) * dot(p.xi, Y) + 3.0 * dot(c.Axi, Y) * dot(p.xi, Z);
    for (int a = 0; a < 3; ++a) {
        const Vec& w = c.phixi[static_cast<size_t>(a)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const Vec AthY = matvec(*c.A, matvec(th, Y));
        const Vec thAY = matvec(th, matvec(*c.A, Y));
        v += -3.0 * dot(c.Axia[static_cast<size_t>(a)], Z) * dot(xa, Y)
           + 3.0 * dot(c.Axia[static_cast<size_t>(a)], Y) * dot(xa, Z)
           + dot(c.Aphixi[static_cast<size_t>(a)], Z) * dot(w, Y)
           - dot(c.Aphixi[static_cast<size_t>(a)], Y) * dot(w, Z)
           + p.u[static_cast<size_t>(a)] * (dot(AthY, Z) - dot(thAY, Z));
    }
    return v;
}

double expanded_160(const ResidualContext& c, const Vec& Y, const Vec& Z) {
    const HypersurfacePoint& p = *c.p;
    double v = -dot(c.A2xi, Z) * dot(c.Axi, Y) + dot(c.A2xi, Y) * dot(c.Axi, Z)
             - dot(c.Axi, Z) * dot(p.xi, Y) + dot(c.Axi, Y) * dot(p.xi, Z);
    for (int a = 0; a < 3; ++a) {
        const Vec& w = c.phixi[static_cast<size_t>(a)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        const Mat& pa = p.phi_a[static_cast<size_t>(a)];
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const Vec paAxi = matvec(pa, c.Axi);
        const Vec thAxi = matvec(th, c.Axi);
        v += -dot(paAxi, Z) * dot(w, Y) + dot(paAxi, Y) * dot(w, Z)
           - 2.0 * dot(matvec(pa, Y), Z) * dot(c.Axi, w)
           + dot(thAxi, Z) * dot(xa, Y) - dot(thAxi, Y) * dot(xa, Z);
    }
    return v;
}

double expanded_200(const ResidualContext& c, const Vec& Y, const Vec& Z) {
    const HypersurfacePoint& p = *c.p;
    double v = 0.0;
    for (int a = 0; a < 3; ++a) {
        const Vec& w = c.phixi[static_cast<size_t>(a)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        const Mat& pa = p.phi_a[static_cast<size_t>(a)];
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const Vec paAxi = matvec(pa, c.Axi);
        const Vec thAxi = matvec(th, c.Axi);
        const Vec AthY = matvec(*c.A, matvec(th, Y));
        const Vec thAY = matvec(th, matvec(*c.A, Y));
        v += 3.0 * dot(c.Aphixi[static_cast<size_t>(a)], Z) * dot(w, Y)
           - 3.0 * dot(c.Aphixi[static_cast<size_t>(a)], Y) * dot(w, Z)
           + 2.0 * dot(matvec(pa, Y), Z) * dot(c.Axi, w)
           + dot(paAxi, Z) * dot(w, Y) - dot(paAxi, Y) * dot(w, Z)
           - dot(c.Axia[static_cast<size_t>(a)], Z) * dot(xa, Y)
           + dot(c.Axia[static_cast<size_t>(a)], Y) * dot(xa, Z)
           - dot(thAxi, Z) * dot(xa, Y) + dot(thAxi, Y) * dot(xa, Z)
           - p.u[static_cast<size_t>(a)] * (dot(AthY, Z) - dot(thAY, Z));
    }
    return v;
}

double expanded_180(const ResidualContext& c, const Vec& Y, const Vec& Z) {
    const HypersurfacePoint& p = *c.p;
    double v = -dot(c.A2xi, Z) * dot(c.Axi, Y) + dot(c.A2xi, Y) * dot(c.Axi, Z)
             - 4.0 * dot(c.Axi, Z) * dot(p.xi, Y) + 4.0 * dot(c.Axi, Y) * dot(p.xi, Z);
    for (int a = 0; a < 3; ++a) {
        const Vec& w = c.phixi[static_cast<size_t>(a)];
        const Vec& xa = p.xi_a[static_cast<size_t>(a)];
        v += 4.0 * dot(c.Aphixi[static_cast<size_t>(a)], Z) * dot(w, Y)
           - 4.0 * dot(c.Aphixi[static_cast<size_t>(a)], Y) * dot(w, Z)
           - 4.0 * dot(c.Axia[static_cast<size_t>(a)], Z) * dot(xa, Y)
           + 4.0 * dot(c.Axia[static_cast<size_t>(a)], Y) * dot(xa, Z);
    }
    return v;
}

double expanded_700(const ResidualContext& c, int b0, const Vec& Y, const Vec& Z) {
    const HypersurfacePoint& p = *c.p;
    const Vec& xb = p.xi_a[static_cast<size_t>(b0)];
    const Vec Axb = c.Axia[static_cast<size_t>(b0)];
    const Vec A2xb = matvec(*c.A, Axb);
    const Vec phixb = matvec(p.phi, xb);
    const Vec phiAxb = matvec(p.phi, Axb);
    double v = -dot(A2xb, Z) * dot(Axb, Y) + dot(A2xb, Y) * dot(Axb, Z)
             - dot(Axb, Z) * dot(xb, Y) + dot(Axb, Y) * dot(xb, Z)
             + dot(phiAxb, Y) * dot(phixb, Z) - dot(phiAxb, Z) * dot(phixb, Y)
             + 2.0 * dot(matvec(p.phi, Z), Y) * dot(Axb, phixb);
    for (int a = 0; a < 3; ++a) {
        const Mat& pa = p.phi_a[static_cast<size_t>(a)];
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const Vec paxb = matvec(pa, xb);
        const Vec paAxb = matvec(pa, Axb);
        const Vec thxb = matvec(th, xb);
        const Vec thAxb = matvec(th, Axb);
        v += dot(paAxb, Y) * dot(paxb, Z) - dot(paAxb, Z) * dot(paxb, Y)
           + 2.0 * dot(matvec(pa, Z), Y) * dot(Axb, paxb)
           + dot(thAxb, Y) * dot(thxb, Z) - dot(thAxb, Z) * dot(thxb, Y);
    }
    return v;
}

double expanded_curv(const ResidualContext& c, const Vec& Yj, const Vec& Yk,
                     double lj, double lk) {
    const HypersurfacePoint& p = *c.p;
    const double phi_jk = dot(Yk, matvec(p.phi, Yj));
    double braces = lj * lk + 1.0 + 3.0 * phi_jk * phi_jk;
    for (int a = 0; a < 3; ++a) {
        const Mat& pa = p.phi_a[static_cast<size_t>(a)];
        const Mat& th = p.theta_a[static_cast<size_t>(a)];
        const double pa_jk = dot(Yk, matvec(pa, Yj));
        const double th_jj = dot(matvec(th, Yj), Yj);
        const double th_kk = dot(matvec(th, Yk), Yk);
        const double th_kj = dot(matvec(th, Yk), Yj);
        braces += 3.0 * pa_jk * pa_jk + th_jj * th_kk - th_kj * th_kj;
    }
    return (lj - lk) * braces;
}

} // namespace

ResidualPair residual_pair(const HypersurfacePoint& point, const ShapeOperator& A,
                           ResidualId id, const ResidualArgs& args) {
    const size_t d = static_cast<size_t>(point.model.dim);
    if (args.Y.size() != d || args.Z.size() != d)
        throw param_error("residual_pair: argument vectors have wrong dimension");

    const ResidualContext c(point, A);
    const Vec& Y = args.Y;
    const Vec& Z = args.Z;

    auto direct_130 = [&](const Vec& y, const Vec& z) { return c.contraction(point.xi, y, z, point.xi); };
    auto direct_120 = [&](const Vec& y, const Vec& z) {
        double s = 0.0;
        for (const Vec& e : point.tangent_basis)
            s += c.contraction(e, y, z, e) - c.contraction(e, z, y, e);
        return s;
    };
    auto direct_160 = [&](const Vec& y, const Vec& z) {
        return dot(c.R.apply(z, y, c.Axi), point.xi);
    };

    ResidualPair out{};
    switch (id) {
        case ResidualId::E130:
            out.expanded = expanded_130(c, Y, Z);
            out.direct = direct_130(Y, Z);
            break;
        case ResidualId::E140:
            out.expanded = expanded_140(c, Y, Z);
            out.direct = direct_130(Y, Z) - direct_130(Z, Y);
            break;
        case ResidualId::E120:
            out.expanded = expanded_120(c, Y, Z);
            out.direct = direct_120(Y, Z);
            break;
        case ResidualId::E160:
            out.expanded = expanded_160(c, Y, Z);
            out.direct = direct_160(Y, Z);
            break;
        case ResidualId::E200:
            out.expanded = expanded_200(c, Y, Z);
            out.direct = (direct_130(Y, Z) - direct_130(Z, Y)) - 2.0 * direct_160(Y, Z);
            break;
        case ResidualId::E180:
            out.expanded = expanded_180(c, Y, Z);
            out.direct = (direct_130(Y, Z) - direct_130(Z, Y)) + direct_120(Y, Z) - direct_160(Y, Z);
            break;
        case ResidualId::E700: {
            if (args.b < 1 || args.b > 3) throw param_error("residual_pair: E700 index b must be 1..3");
            const int b0 = args.b - 1;
            out.expanded = expanded_700(c, b0, Y, Z);
            out.direct = dot(c.R.apply(Z, Y, c.Axia[static_cast<size_t>(b0)]),
                             point.xi_a[static_cast<size_t>(b0)]);
            break;
        }
        case ResidualId::ECURV: {
            if (std::fabs(dot(Y, Y) - 1.0) > 1e-8 || std::fabs(dot(Z, Z) - 1.0) > 1e-8 ||
                std::fabs(dot(Y, Z)) > 1e-8)
                throw param_error("residual_pair: ECURV arguments must be orthonormal");
            const Vec AYj = matvec(A.A, Y);
            const Vec AYk = matvec(A.A, Z);
            if (max_abs(AYj - args.lambda_j * Y) > 1e-8 || max_abs(AYk - args.lambda_k * Z) > 1e-8)
                throw param_error("residual_pair: ECURV arguments are not principal vectors");
            out.expanded = expanded_curv(c, Y, Z, args.lambda_j, args.lambda_k);
            out.direct = c.contraction(Z, Y, Y, Z);
            break;
        }
    }
    return out;
}

Mat defect_gradient(const HypersurfacePoint& point, const ShapeOperator& A) {
    const std::vector<Vec>& basis = point.tangent_basis;
    const TangentFrame f = make_frame(point, A, basis);
    const int n = f.n;

    Mat grad(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Mat r = curvature_pair_matrix(f, i, j);
            const Mat dmat = f.A * r - r * f.A;
            // d/dA of ||[A, R_ij(A)]||^2: commutator part plus the A-quadratic
            // terms inside R itself
            grad = grad + 2.0 * (r * dmat - dmat * r);
            const Mat k = f.A * dmat - dmat * f.A;
            // columns a_p of f.A are the images A b_p
            Vec kai(static_cast<size_t>(n), 0.0), kaj(static_cast<size_t>(n), 0.0);
            for (int q = 0; q < n; ++q) {
                double si = 0.0, sj = 0.0;
                for (int p = 0; p < n; ++p) {
                    si += k(q, p) * f.A(p, i);
                    sj += k(q, p) * f.A(p, j);
                }
                kai[static_cast<size_t>(q)] = si;
                kaj[static_cast<size_t>(q)] = sj;
            }
            for (int q = 0; q < n; ++q) {
                grad(i, q) += 4.0 * kaj[static_cast<size_t>(q)];
                grad(j, q) -= 4.0 * kai[static_cast<size_t>(q)];
            }
        }
    }
    grad = symmetrize(grad);

    // back to ambient coordinates
    Mat out(point.model.dim, point.model.dim);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            const double g = grad(p, q);
            if (g == 0.0) continue;
            const Vec& bp = basis[static_cast<size_t>(p)];
            const Vec& bq = basis[static_cast<size_t>(q)];
            for (int r2 = 0; r2 < point.model.dim; ++r2)
                for (int c2 = 0; c2 < point.model.dim; ++c2)
                    out(r2, c2) += g * bp[static_cast<size_t>(r2)] * bq[static_cast<size_t>(c2)];
        }
    }
    return out;
}

MinimizeResult minimize_defect(const HypersurfacePoint& point, const ShapeOperator& A0,
                               const MinimizeOptions& opts) {
    auto run_descent = [&](ShapeOperator A, std::vector<MinimizeIterate>& trace) {
        double f = defect_objective(point, A);
        double step = opts.initial_step;
        trace.push_back({0, f, 0.0, 0.0});
        if (!std::isfinite(f)) {
            std::ostringstream os;
            os << "0 f=" << f << "\n";
            throw numeric_error("minimize_defect: objective is not finite at the start", os.str());
        }
        for (int it = 1; it <= opts.max_iters && f > opts.stop_objective; ++it) {
            const Mat g = defect_gradient(point, A);
            const double gnorm2 = frobenius(g) * frobenius(g);
            if (gnorm2 == 0.0) break;
            bool accepted = false;
            double s = step;
            while (s > 1e-18) {
                ShapeOperator trial{point.P * symmetrize(A.A - s * g) * point.P};
                const double ft = defect_objective(point, trial);
                if (std::isnan(ft)) {
                    std::ostringstream os;
                    for (const auto& e : trace)
                        os << e.iter << " f=" << e.objective << " step=" << e.step << "\n";
                    throw numeric_error("minimize_defect: objective became NaN", os.str());
                }
                if (ft <= f - 1e-4 * s * gnorm2) { // Armijo
                    A = trial;
                    f = ft;
                    trace.push_back({it, f, s, std::sqrt(gnorm2)});
                    step = 2.0 * s;
                    accepted = true;
                    break;
                }
                s *= 0.5;
            }
            if (!accepted) break; // line search exhausted
        }
        return std::make_pair(A, f);
    };

    MinimizeResult best;
    best.value = -1.0;
    for (int r = 0; r <= opts.restarts; ++r) {
        ShapeOperator start = A0;
        if (r > 0) {
            SplitRng rng(opts.seed, static_cast<uint64_t>(r));
            start = random_shape(point, rng, opts.restart_scale);
        }
        std::vector<MinimizeIterate> trace;
        auto [A, f] = run_descent(start, trace);
        if (best.value < 0.0 || f < best.value) {
            best.minimizer = A;
            best.value = f;
            best.trace = std::move(trace);
            best.restarts_used = r;
        }
        if (best.value <= opts.stop_objective) break;
    }
    return best;
}

} // namespace g2sp
