#pragma once

// H-polytopes {x : A x <= b} with unit-norm face rows, plus the small set of
// geometric predicates the synthesis and simulation layers need: membership,
// Chebyshev center, intersection, bounding boxes and 2-D vertex enumeration.

#include <tracksyn/conic.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tracksyn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class Polytope {
public:
    Polytope(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b)) {
        if (A_.rows() != b_.size() || A_.rows() == 0)
            throw std::invalid_argument("Polytope: face count mismatch");
        if (!A_.allFinite() || !b_.allFinite())
            throw std::invalid_argument("Polytope: non-finite entry");
        for (int i = 0; i < A_.rows(); ++i) {
            const double n = A_.row(i).norm();
            if (n < 1e-12) throw std::invalid_argument("Polytope: zero face normal");
            A_.row(i) /= n;
            b_[i] /= n;
        }
    }

    const Matrix& A() const { return A_; }
    const Vector& b() const { return b_; }
    int faces() const { return static_cast<int>(A_.rows()); }
    int dimension() const { return static_cast<int>(A_.cols()); }

private:
    Matrix A_;
    Vector b_;
};

inline bool contains(const Polytope& poly, const Vector& x, double tol = 1e-9) {
    if (x.size() != poly.dimension())
        throw std::invalid_argument("contains: dimension mismatch");
    return ((poly.A() * x - poly.b()).array() <= tol).all();
}

// Smallest slack over all faces; positive means strictly inside.
inline double interior_margin(const Polytope& poly, const Vector& x) {
    if (x.size() != poly.dimension())
        throw std::invalid_argument("interior_margin: dimension mismatch");
    return (poly.b() - poly.A() * x).minCoeff();
}

struct ChebyshevBall {
    Vector center;
    double radius = -std::numeric_limits<double>::infinity();
};

// max r  s.t.  A c + r 1 <= b (rows are unit norm, so r is a Euclidean
// radius). r <= 0 signals an empty interior. The radius is capped so the
// LP stays bounded on unbounded polytopes.
inline ChebyshevBall chebyshev_center(const Polytope& poly) {
    const int d = poly.dimension();
    const int s = poly.faces();
    Vector c = Vector::Zero(d + 1);
    c[d] = -1.0;
    Matrix G(s + 1, d + 1);
    Vector h(s + 1);
    G.block(0, 0, s, d) = poly.A();
    G.block(0, d, s, 1).setOnes();
    h.head(s) = poly.b();
    G.row(s).setZero();
    G(s, d) = 1.0;
    h[s] = 1e9;
    auto sol = conic::solve_lp(c, Matrix::Zero(0, d + 1), Vector::Zero(0), G, h);
    if (!sol.ok()) throw std::runtime_error("chebyshev_center: LP solve failed");
    ChebyshevBall ball;
    ball.center = sol.x.head(d);
    ball.radius = sol.x[d];
    return ball;
}

// Intersection by stacking the face rows. Rows are sorted canonically so the
// result is identical regardless of argument order.
inline Polytope intersect(const Polytope& p1, const Polytope& p2) {
    if (p1.dimension() != p2.dimension())
        throw std::invalid_argument("intersect: dimension mismatch");
    const int d = p1.dimension();
    const int s = p1.faces() + p2.faces();
    Matrix A(s, d);
    Vector b(s);
    A.topRows(p1.faces()) = p1.A();
    A.bottomRows(p2.faces()) = p2.A();
    b.head(p1.faces()) = p1.b();
    b.tail(p2.faces()) = p2.b();
    std::vector<int> order(s);
    for (int i = 0; i < s; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        for (int k = 0; k < d; ++k)
            if (A(i, k) != A(j, k)) return A(i, k) < A(j, k);
        return b[i] < b[j];
    });
    Matrix As(s, d);
    Vector bs(s);
    for (int i = 0; i < s; ++i) {
        As.row(i) = A.row(order[i]);
        bs[i] = b[order[i]];
    }
    return Polytope(std::move(As), std::move(bs));
}

// Per-axis extent via 2d LPs. Throws if the polytope is unbounded.
inline std::pair<Vector, Vector> bounding_box(const Polytope& poly) {
    const int d = poly.dimension();
    Vector lo(d), hi(d);
    for (int k = 0; k < d; ++k) {
        for (int sgn : {1, -1}) {
            Vector c = Vector::Zero(d);
            c[k] = sgn;
            auto sol = conic::solve_lp(c, Matrix::Zero(0, d), Vector::Zero(0),
                                       poly.A(), poly.b());
            if (!sol.ok()) throw std::runtime_error("bounding_box: unbounded or empty polytope");
            if (sgn > 0) lo[k] = sol.x[k];
            else hi[k] = sol.x[k];
        }
    }
    return {lo, hi};
}

// Vertices of a bounded 2-D polytope, counterclockwise. Intersects face
// pairs and keeps the feasible points.
inline std::vector<Vector> polygon_vertices(const Polytope& poly, double tol = 1e-7) {
    if (poly.dimension() != 2)
        throw std::invalid_argument("polygon_vertices: 2-D only");
    std::vector<Vector> verts;
    const int s = poly.faces();
    for (int i = 0; i < s; ++i) {
        for (int j = i + 1; j < s; ++j) {
            const double det = poly.A()(i, 0) * poly.A()(j, 1) -
                               poly.A()(i, 1) * poly.A()(j, 0);
            if (std::abs(det) < 1e-10) continue;
            Vector v(2);
            v[0] = (poly.b()[i] * poly.A()(j, 1) - poly.b()[j] * poly.A()(i, 1)) / det;
            v[1] = (poly.A()(i, 0) * poly.b()[j] - poly.A()(j, 0) * poly.b()[i]) / det;
            if (!contains(poly, v, tol)) continue;
            bool dup = false;
            for (const auto& w : verts)
                if ((w - v).norm() < tol) {
                    dup = true;
                    break;
                }
            if (!dup) verts.push_back(v);
        }
    }
    if (verts.size() > 2) {
        Vector centroid = Vector::Zero(2);
        for (const auto& v : verts) centroid += v;
        centroid /= static_cast<double>(verts.size());
        std::sort(verts.begin(), verts.end(), [&](const Vector& a, const Vector& b2) {
            return std::atan2(a[1] - centroid[1], a[0] - centroid[0]) <
                   std::atan2(b2[1] - centroid[1], b2[0] - centroid[0]);
        });
    }
    return verts;
}

// Halton low-discrepancy sequence point, for deterministic volume sampling.
inline Vector halton_point(int index, int dim) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (dim > 10) throw std::invalid_argument("halton_point: dimension too large");
    Vector p(dim);
    for (int k = 0; k < dim; ++k) {
        const int base = primes[k];
        double f = 1.0, r = 0.0;
        int i = index + 1;
        while (i > 0) {
            f /= base;
            r += f * (i % base);
            i /= base;
        }
        p[k] = r;
    }
    return p;
}

}  // namespace tracksyn
