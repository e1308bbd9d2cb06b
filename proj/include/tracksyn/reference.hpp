#pragma once

// Autonomous linear reference system whose output traces a prescribed
// polynomial. Per output axis the state chain is (p, p', ..., p^(n)),
// advanced by a nilpotent shift block; the initial condition a_i * i!
// fixes the polynomial.

#include <tracksyn/bernstein.hpp>

#include <Eigen/Dense>

#include <stdexcept>

namespace tracksyn {

struct ReferenceSystem {
    Matrix A_p;    // (n+1)*dy square, block-diagonal nilpotent shifts
    Matrix C_p;    // dy x (n+1)*dy, each block selects the chain head
    Vector x0;     // initial state reproducing the polynomial
    int degree = 0;
    int dims = 0;  // number of output axes

    int state_dim() const { return (degree + 1) * dims; }
};

// coeffs: d x (n+1) monomial coefficients, column i multiplying t^i.
inline ReferenceSystem build_reference(const Matrix& coeffs) {
    const int dy = static_cast<int>(coeffs.rows());
    const int np = static_cast<int>(coeffs.cols()) - 1;
    if (dy < 1 || np < 0) throw std::invalid_argument("build_reference: bad coeffs shape");
    const int blk = np + 1;

    ReferenceSystem ref;
    ref.degree = np;
    ref.dims = dy;
    ref.A_p = Matrix::Zero(blk * dy, blk * dy);
    ref.C_p = Matrix::Zero(dy, blk * dy);
    ref.x0 = Vector::Zero(blk * dy);
    for (int k = 0; k < dy; ++k) {
        const int off = k * blk;
        for (int i = 0; i + 1 < blk; ++i) ref.A_p(off + i, off + i + 1) = 1.0;
        ref.C_p(k, off) = 1.0;
        double fact = 1.0;
        for (int i = 0; i < blk; ++i) {
            if (i > 0) fact *= i;
            ref.x0[off + i] = coeffs(k, i) * fact;
        }
    }
    return ref;
}

inline ReferenceSystem build_reference(const ControlPoints& cp) {
    return build_reference(coeffs_from_control_points(cp));
}

// Reference state at parameter t: per axis the entries are p^(i)(t).
inline Vector reference_state_at(const ReferenceSystem& ref, const ControlPoints& cp,
                                 double t) {
    if (cp.degree() != ref.degree || cp.dimension() != ref.dims)
        throw std::invalid_argument("reference_state_at: segment does not match system");
    const int blk = ref.degree + 1;
    Vector x = Vector::Zero(ref.state_dim());
    for (int q = 0; q < blk; ++q) {
        const Vector dq = eval(cp, t, q);
        for (int k = 0; k < ref.dims; ++k) x[k * blk + q] = dq[k];
    }
    return x;
}

}  // namespace tracksyn
