#pragma once

// Bernstein-basis polynomial machinery: basis evaluation, the exact
// basis-change matrix between Bernstein and monomial coefficients,
// derivative matrices, convex-hull bounds on a curve and its derivatives,
// and closest-point projection onto a segment.
//
// Curves are d x (n+1) control-point matrices over the normalized
// parameter t in [0,1].

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tracksyn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Vector of the n+1 Bernstein polynomials of degree n at t.
inline Vector bernstein_basis(int n, double t) {
    if (n < 0) throw std::invalid_argument("bernstein_basis: negative degree");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("bernstein_basis: t outside [0,1]");
    Vector b(n + 1);
    for (int i = 0; i <= n; ++i)
        b[i] = static_cast<double>(binomial(n, i)) * std::pow(t, i) *
               std::pow(1.0 - t, n - i);
    return b;
}

// D with stack({b_{i,n}(t)}) = D stack({t^i}); entries are exact integers,
// so coefficient identities (e.g. the cubic a_3 = P_3 - 3P_2 + 3P_1 - P_0)
// hold exactly in floating point.
inline Matrix bernstein_to_monomial(int n) {
    if (n < 0) throw std::invalid_argument("bernstein_to_monomial: negative degree");
    Matrix D = Matrix::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int m = i; m <= n; ++m) {
            const long long v = binomial(n, i) * binomial(n - i, m - i);
            D(i, m) = ((m - i) % 2 == 0) ? static_cast<double>(v)
                                         : -static_cast<double>(v);
        }
    return D;
}

// Exact inverse of bernstein_to_monomial: t^k = sum_j C(j,k)/C(n,k) b_{j,n}(t).
inline Matrix monomial_to_bernstein(int n) {
    if (n < 0) throw std::invalid_argument("monomial_to_bernstein: negative degree");
    Matrix Di = Matrix::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k)
        for (int j = k; j <= n; ++j)
            Di(k, j) = static_cast<double>(binomial(j, k)) /
                       static_cast<double>(binomial(n, k));
    return Di;
}

// H_{n,q} with b_n^{(q)}(t) = H_{n,q} b_{n-q}(t); H_{n,0} is the identity.
// The product runs H_n H_{n-1} ... H_{n-q+1}, the only order for which the
// shapes conform.
inline Matrix derivative_matrix(int n, int q) {
    if (n < 0 || q < 0 || q > n)
        throw std::invalid_argument("derivative_matrix: need 0 <= q <= n");
    Matrix H = Matrix::Identity(n + 1, n + 1);
    for (int m = n; m > n - q; --m) {
        Matrix Hm = Matrix::Zero(m + 1, m);
        for (int j = 0; j < m; ++j) {
            Hm(j, j) = -static_cast<double>(m);
            Hm(j + 1, j) = static_cast<double>(m);
        }
        H = (H * Hm).eval();
    }
    return H;
}

class ControlPoints {
public:
    explicit ControlPoints(Matrix points) : points_(std::move(points)) {
        if (points_.size() == 0 || points_.cols() < 1)
            throw std::invalid_argument("ControlPoints: empty matrix");
        if (!points_.allFinite())
            throw std::invalid_argument("ControlPoints: non-finite entry");
    }

    int degree() const { return static_cast<int>(points_.cols()) - 1; }
    int dimension() const { return static_cast<int>(points_.rows()); }
    // degree-0 segments are accepted only as constant references
    bool constant() const { return degree() == 0; }

    const Matrix& points() const { return points_; }
    Vector point(int i) const { return points_.col(i); }

private:
    Matrix points_;
};

// Monomial coefficient matrix: column i holds the coefficient of t^i.
inline Matrix coeffs_from_control_points(const ControlPoints& cp) {
    return cp.points() * bernstein_to_monomial(cp.degree());
}

inline ControlPoints control_points_from_coeffs(const Matrix& coeffs) {
    const int n = static_cast<int>(coeffs.cols()) - 1;
    return ControlPoints(coeffs * monomial_to_bernstein(n));
}

// q-th derivative of the curve at t.
inline Vector eval(const ControlPoints& cp, double t, int q = 0) {
    const int n = cp.degree();
    if (q < 0 || q > n) throw std::invalid_argument("eval: derivative order out of range");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("eval: t outside [0,1]");
    if (q == 0) return cp.points() * bernstein_basis(n, t);
    return cp.points() * derivative_matrix(n, q) * bernstein_basis(n - q, t);
}

// Vertex sets V_q = P H_{n,q}; the curve's q-th derivative stays inside
// the convex hull of the columns of V_q for every t in [0,1].
struct HullBounds {
    std::vector<Matrix> vertex_sets;   // index q = 0..degree

    const Matrix& vertices(int q) const { return vertex_sets.at(q); }
    int degree() const { return static_cast<int>(vertex_sets.size()) - 1; }
};

inline HullBounds hull_bounds(const ControlPoints& cp) {
    HullBounds hb;
    const int n = cp.degree();
    hb.vertex_sets.reserve(n + 1);
    for (int q = 0; q <= n; ++q)
        hb.vertex_sets.push_back(cp.points() * derivative_matrix(n, q));
    return hb;
}

// Parameter of the closest curve point to `point`: dense grid scan
// followed by clamped Newton refinement on the squared distance.
inline double closest_parameter(const ControlPoints& cp, const Vector& point,
                                double grid_res = 1e-3) {
    if (point.size() != cp.dimension())
        throw std::invalid_argument("closest_parameter: dimension mismatch");
    if (!(grid_res > 0.0 && grid_res < 1.0))
        throw std::invalid_argument("closest_parameter: bad grid resolution");
    if (cp.constant()) return 0.0;

    const int steps = static_cast<int>(std::ceil(1.0 / grid_res));
    double best_t = 0.0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        const double t = std::min(1.0, i * grid_res);
        const double d = (eval(cp, t) - point).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best_t = t;
        }
    }

    double t = best_t;
    for (int it = 0; it < 12; ++it) {
        const Vector r = eval(cp, t) - point;
        const Vector dp = eval(cp, t, 1);
        const Vector ddp = (cp.degree() >= 2) ? eval(cp, t, 2)
                                              : Vector(Vector::Zero(cp.dimension()));
        const double g = 2.0 * r.dot(dp);
        const double hess = 2.0 * (dp.squaredNorm() + r.dot(ddp));
        if (hess <= 1e-14) break;
        double tn = t - g / hess;
        tn = std::min(1.0, std::max(0.0, tn));
        if ((eval(cp, tn) - point).squaredNorm() > best_d + 1e-15) break;
        if (std::abs(tn - t) < 1e-14) {
            t = tn;
            break;
        }
        t = tn;
    }
    return ((eval(cp, t) - point).squaredNorm() <= best_d) ? t : best_t;
}

}  // namespace tracksyn
