#pragma once

// Dense conic interior-point solver for problems of the form
//
//   minimize    c'x
//   subject to  A x = b
//               G x + s = h,   s in K
//
// with K a product of a nonnegative orthant and symmetric PSD blocks.
// Homogeneous self-dual embedding with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector step. Intended for small dense problems
// (tens to a few hundred variables); every factorization is dense.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracksyn::conic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ConeDims {
    int nonneg = 0;            // length of the nonnegative orthant
    std::vector<int> psd;      // side lengths of PSD blocks

    int svec_len() const {
        int m = nonneg;
        for (int n : psd) m += n * (n + 1) / 2;
        return m;
    }
    // total barrier degree of K (used for the centering parameter)
    int barrier_degree() const {
        int d = nonneg;
        for (int n : psd) d += n;
        return d;
    }
};

struct Problem {
    Vector c;
    Matrix A;   // p x n (p may be 0)
    Vector b;
    Matrix G;   // m x n, m = dims.svec_len()
    Vector h;
    ConeDims dims;
};

enum class SolveStatus {
    Optimal,
    PrimalInfeasible,
    DualInfeasible,
    MaxIterations,
    NumericalFailure,
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::PrimalInfeasible: return "primal_infeasible";
        case SolveStatus::DualInfeasible: return "dual_infeasible";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

struct Solution {
    SolveStatus status = SolveStatus::NumericalFailure;
    Vector x, y, z, s;          // z, s in svec layout
    double primal_obj = std::numeric_limits<double>::quiet_NaN();
    double dual_obj = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::infinity();
    double primal_res = std::numeric_limits<double>::infinity();
    double dual_res = std::numeric_limits<double>::infinity();
    int iterations = 0;

    bool ok() const { return status == SolveStatus::Optimal; }
};

struct SolverOptions {
    double feas_tol = 1e-8;
    double gap_tol = 1e-8;
    int max_iter = 100;
    double step_back = 0.99;
    bool verbose = false;
};

// --- svec <-> symmetric matrix -------------------------------------------
//
// svec(X) stacks the lower triangle column-major with off-diagonal entries
// scaled by sqrt(2), so that <X,Y> = svec(X)'svec(Y).

inline void svec_into(const Matrix& X, double* out) {
    const int n = static_cast<int>(X.rows());
    const double r2 = std::sqrt(2.0);
    int k = 0;
    for (int c = 0; c < n; ++c) {
        out[k++] = X(c, c);
        for (int r = c + 1; r < n; ++r) out[k++] = r2 * X(r, c);
    }
}

inline Vector svec(const Matrix& X) {
    const int n = static_cast<int>(X.rows());
    Vector v(n * (n + 1) / 2);
    svec_into(X, v.data());
    return v;
}

inline Matrix smat(const double* v, int n) {
    Matrix X(n, n);
    const double ir2 = 1.0 / std::sqrt(2.0);
    int k = 0;
    for (int c = 0; c < n; ++c) {
        X(c, c) = v[k++];
        for (int r = c + 1; r < n; ++r) {
            const double e = ir2 * v[k++];
            X(r, c) = e;
            X(c, r) = e;
        }
    }
    return X;
}

namespace detail {

// Per-iteration Nesterov-Todd scaling. For the orthant w_i = sqrt(s_i/z_i)
// and lambda_i = sqrt(s_i z_i). For a PSD block, with S = Ls Ls', Z = Lz Lz'
// and SVD Lz'Ls = U Sig V', the scaling factor is R = Ls V Sig^{-1/2}; then
// R^{-1} S R^{-T} = R' Z R = Sig =: diag(lambda).
struct Scaling {
    Vector w;                      // orthant
    Vector lam_orthant;
    std::vector<Matrix> R, Rti;    // per PSD block; Rti = R^{-T}
    std::vector<Vector> lam_psd;
};

class ConeOps {
public:
    explicit ConeOps(const ConeDims& dims) : dims_(dims) {
        offsets_.reserve(dims.psd.size());
        int off = dims.nonneg;
        for (int n : dims.psd) {
            offsets_.push_back(off);
            off += n * (n + 1) / 2;
        }
        m_ = off;
    }

    int len() const { return m_; }

    Vector identity() const {
        Vector e = Vector::Zero(m_);
        e.head(dims_.nonneg).setOnes();
        for (size_t b = 0; b < dims_.psd.size(); ++b) {
            const int n = dims_.psd[b];
            int k = offsets_[b];
            for (int c = 0; c < n; ++c) {
                e[k] = 1.0;            // diagonal entry
                k += n - c;
            }
        }
        return e;
    }

    Matrix block(const Vector& v, size_t b) const {
        return smat(v.data() + offsets_[b], dims_.psd[b]);
    }

    void set_block(Vector& v, size_t b, const Matrix& X) const {
        svec_into(X, v.data() + offsets_[b]);
    }

    // Largest step t such that the point sv + t*dv stays in the cone,
    // evaluated through the scaling (sv is expected to be the scaled
    // point lambda in both coordinates).
    double max_step(const Scaling& W, const Vector& scaled_dir) const {
        double t = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dims_.nonneg; ++i) {
            const double lam = (i < W.lam_orthant.size()) ? W.lam_orthant[i] : 1.0;
            const double d = scaled_dir[i];
            if (d < 0.0) t = std::min(t, -lam / d);
        }
        for (size_t b = 0; b < dims_.psd.size(); ++b) {
            const Vector& lam = W.lam_psd[b];
            Matrix D = block(scaled_dir, b);
            const int n = dims_.psd[b];
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    D(r, c) /= std::sqrt(lam[r] * lam[c]);
            Eigen::SelfAdjointEigenSolver<Matrix> es(D, Eigen::EigenvaluesOnly);
            const double lmin = es.eigenvalues().minCoeff();
            if (lmin < 0.0) t = std::min(t, -1.0 / lmin);
        }
        return t;
    }

    const ConeDims& dims() const { return dims_; }
    int block_offset(size_t b) const { return offsets_[b]; }

private:
    ConeDims dims_;
    std::vector<int> offsets_;
    int m_ = 0;
};

inline bool compute_scaling(const ConeOps& ops, const Vector& s, const Vector& z, Scaling& W) {
    const ConeDims& dims = ops.dims();
    W.w.resize(dims.nonneg);
    W.lam_orthant.resize(dims.nonneg);
    for (int i = 0; i < dims.nonneg; ++i) {
        if (s[i] <= 0.0 || z[i] <= 0.0) return false;
        W.w[i] = std::sqrt(s[i] / z[i]);
        W.lam_orthant[i] = std::sqrt(s[i] * z[i]);
    }
    const size_t nb = dims.psd.size();
    W.R.resize(nb);
    W.Rti.resize(nb);
    W.lam_psd.resize(nb);
    for (size_t b = 0; b < nb; ++b) {
        const Matrix S = ops.block(s, b);
        const Matrix Z = ops.block(z, b);
        Eigen::LLT<Matrix> lltS(S), lltZ(Z);
        if (lltS.info() != Eigen::Success || lltZ.info() != Eigen::Success) return false;
        const Matrix Ls = lltS.matrixL();
        const Matrix Lz = lltZ.matrixL();
        Eigen::JacobiSVD<Matrix> svd(Lz.transpose() * Ls,
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
        Vector sig = svd.singularValues();
        if (sig.minCoeff() <= 0.0) return false;
        const Vector isqrt = sig.array().sqrt().inverse().matrix();
        W.R[b] = Ls * svd.matrixV() * isqrt.asDiagonal();
        W.Rti[b] = Lz * svd.matrixU() * isqrt.asDiagonal();
        W.lam_psd[b] = sig;
    }
    return true;
}

// v -> W^{-T} v  (maps an s-like vector to scaled space: R^{-1} X R^{-T})
inline Vector scale_s(const ConeOps& ops, const Scaling& W, const Vector& v) {
    Vector out = v;
    for (int i = 0; i < ops.dims().nonneg; ++i) out[i] = v[i] / W.w[i];
    for (size_t b = 0; b < ops.dims().psd.size(); ++b) {
        const Matrix Rin = W.Rti[b].transpose();  // R^{-1}
        ops.set_block(out, b, Rin * ops.block(v, b) * Rin.transpose());
    }
    return out;
}

// v -> W v  (maps a z-like vector to scaled space: R^T X R)
inline Vector scale_z(const ConeOps& ops, const Scaling& W, const Vector& v) {
    Vector out = v;
    for (int i = 0; i < ops.dims().nonneg; ++i) out[i] = v[i] * W.w[i];
    for (size_t b = 0; b < ops.dims().psd.size(); ++b) {
        const Matrix& R = W.R[b];
        ops.set_block(out, b, R.transpose() * ops.block(v, b) * R);
    }
    return out;
}

// v -> W^T v  (scaled space back to s coordinates: R X R^T)
inline Vector unscale_s(const ConeOps& ops, const Scaling& W, const Vector& v) {
    Vector out = v;
    for (int i = 0; i < ops.dims().nonneg; ++i) out[i] = v[i] * W.w[i];
    for (size_t b = 0; b < ops.dims().psd.size(); ++b) {
        const Matrix& R = W.R[b];
        ops.set_block(out, b, R * ops.block(v, b) * R.transpose());
    }
    return out;
}

// v -> W^{-1} v  (scaled space back to z coordinates: R^{-T} X R^{-1})
inline Vector unscale_z(const ConeOps& ops, const Scaling& W, const Vector& v) {
    Vector out = v;
    for (int i = 0; i < ops.dims().nonneg; ++i) out[i] = v[i] / W.w[i];
    for (size_t b = 0; b < ops.dims().psd.size(); ++b) {
        const Matrix& Rti = W.Rti[b];
        ops.set_block(out, b, Rti * ops.block(v, b) * Rti.transpose());
    }
    return out;
}

// Jordan product x o y in scaled coordinates (orthant: elementwise,
// PSD: (XY + YX)/2).
inline Vector jordan(const ConeOps& ops, const Vector& a, const Vector& bvec) {
    Vector out = a;
    for (int i = 0; i < ops.dims().nonneg; ++i) out[i] = a[i] * bvec[i];
    for (size_t b = 0; b < ops.dims().psd.size(); ++b) {
        const Matrix X = ops.block(a, b);
        const Matrix Y = ops.block(bvec, b);
        ops.set_block(out, b, 0.5 * (X * Y + Y * X));
    }
    return out;
}

// Solves lambda o u = d for u, with lambda the diagonal scaled point.
inline Vector jordan_solve(const ConeOps& ops, const Scaling& W, const Vector& d) {
    Vector out = d;
    for (int i = 0; i < ops.dims().nonneg; ++i) out[i] = d[i] / W.lam_orthant[i];
    for (size_t b = 0; b < ops.dims().psd.size(); ++b) {
        Matrix D = ops.block(d, b);
        const Vector& lam = W.lam_psd[b];
        const int n = ops.dims().psd[b];
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                D(r, c) = 2.0 * D(r, c) / (lam[r] + lam[c]);
        ops.set_block(out, b, D);
    }
    return out;
}

inline Vector lambda_vec(const ConeOps& ops, const Scaling& W) {
    Vector lam = Vector::Zero(ops.len());
    lam.head(ops.dims().nonneg) = W.lam_orthant;
    for (size_t b = 0; b < ops.dims().psd.size(); ++b)
        ops.set_block(lam, b, Matrix(W.lam_psd[b].asDiagonal()));
    return lam;
}

}  // namespace detail

class Solver {
public:
    explicit Solver(Problem prob, SolverOptions opts = {})
        : prob_(std::move(prob)), opts_(opts), ops_(prob_.dims) {
        n_ = static_cast<int>(prob_.c.size());
        p_ = static_cast<int>(prob_.b.size());
        m_ = ops_.len();
        if (prob_.G.rows() != m_ || prob_.G.cols() != n_)
            throw std::invalid_argument("conic: G shape does not match dims/c");
        if (prob_.A.size() == 0 && p_ == 0) prob_.A = Matrix::Zero(0, n_);
        if (prob_.A.rows() != p_ || prob_.A.cols() != n_)
            throw std::invalid_argument("conic: A shape does not match b/c");
        if (prob_.h.size() != m_) throw std::invalid_argument("conic: h length mismatch");
    }

    Solution solve() {
        Solution sol;
        const Matrix& A = prob_.A;
        const Matrix& G = prob_.G;
        const Vector& b = prob_.b;
        const Vector& c = prob_.c;
        const Vector& h = prob_.h;

        Vector x = Vector::Zero(n_), y = Vector::Zero(p_);
        Vector s = ops_.identity(), z = ops_.identity();
        double tau = 1.0, kappa = 1.0;
        const double nu = ops_.dims().barrier_degree() + 1;

        const double bnorm = 1.0 + b.norm();
        const double hnorm = 1.0 + h.norm();
        const double cnorm = 1.0 + c.norm();

        detail::Scaling W;
        for (int iter = 0; iter < opts_.max_iter; ++iter) {
            sol.iterations = iter;
            // residuals of the homogeneous system
            Vector rd = A.transpose() * y + G.transpose() * z + c * tau;
            Vector rp = A * x - b * tau;
            Vector rg = G * x + s - h * tau;
            double rk = kappa + c.dot(x) + b.dot(y) + h.dot(z);
            double mu = (s.dot(z) + tau * kappa) / nu;

            if (opts_.verbose)
                std::fprintf(stderr,
                             "it %3d mu=%9.2e tau=%9.2e kap=%9.2e |rd|=%9.2e |rp|=%9.2e "
                             "|rg|=%9.2e rk=%9.2e\n",
                             iter, mu, tau, kappa, rd.norm(), rp.norm(), rg.norm(), rk);

            if (check_converged(sol, x, y, z, s, tau, kappa, bnorm, hnorm, cnorm))
                return sol;

            if (!detail::compute_scaling(ops_, s, z, W)) {
                if (take_best(sol)) return sol;
                sol.status = SolveStatus::NumericalFailure;
                finalize(sol, x, y, z, s, tau);
                return sol;
            }
            const Vector lam = detail::lambda_vec(ops_, W);

            // KKT matrix [H A'; A 0] with H = (W^{-T}G)'(W^{-T}G)
            Matrix Gbar(m_, n_);
            for (int j = 0; j < n_; ++j)
                Gbar.col(j) = detail::scale_s(ops_, W, G.col(j));
            Matrix KKT = Matrix::Zero(n_ + p_, n_ + p_);
            KKT.topLeftCorner(n_, n_) = Gbar.transpose() * Gbar;
            KKT.topLeftCorner(n_, n_).diagonal().array() += 1e-13;
            if (p_ > 0) {
                KKT.topRightCorner(n_, p_) = A.transpose();
                KKT.bottomLeftCorner(p_, n_) = A;
            }
            Eigen::FullPivLU<Matrix> lu(KKT);
            if (!lu.isInvertible()) {
                // keep going; FullPivLU::solve still produces a least-squares-ish
                // answer, and the step safeguards below reject bad directions
            }

            auto kkt_solve = [&](const Vector& bx, const Vector& by, const Vector& bz,
                                 Vector& ux, Vector& uy, Vector& uz) {
                // eliminate uz = (W'W)^{-1} (G ux - bz)
                Vector bzb = detail::scale_s(ops_, W, bz);
                Vector rhs(n_ + p_);
                rhs.head(n_) = bx + Gbar.transpose() * bzb;
                if (p_ > 0) rhs.tail(p_) = by;
                Vector u = lu.solve(rhs);
                ux = u.head(n_);
                if (p_ > 0) uy = u.tail(p_); else uy.resize(0);
                uz = detail::unscale_z(ops_, W, detail::scale_s(ops_, W, G * ux - bz));
            };

            // constant part: v1 = KKT(-c, b, h)
            Vector v1x, v1y, v1z;
            kkt_solve(-c, b, h, v1x, v1y, v1z);

            auto direction = [&](double gamma, const Vector& corr_sz, double corr_tk,
                                 Vector& dx, Vector& dy, Vector& dz, Vector& ds,
                                 double& dtau, double& dkappa) -> bool {
                Vector dc = -detail::jordan(ops_, lam, lam);
                if (gamma > 0.0) dc += gamma * mu * ops_.identity();
                dc -= corr_sz;
                const double dtk = gamma * mu - tau * kappa - corr_tk;
                Vector dtil = detail::jordan_solve(ops_, W, dc);
                const double oneg = 1.0 - gamma;
                Vector v0x, v0y, v0z;
                kkt_solve(-oneg * rd, -oneg * rp,
                          -oneg * rg - detail::unscale_s(ops_, W, dtil),
                          v0x, v0y, v0z);
                const double den =
                    c.dot(v1x) + (p_ ? b.dot(v1y) : 0.0) + h.dot(v1z) - kappa / tau;
                if (!std::isfinite(den) || std::abs(den) < 1e-300) return false;
                const double num = -oneg * rk - dtk / tau -
                    (c.dot(v0x) + (p_ ? b.dot(v0y) : 0.0) + h.dot(v0z));
                dtau = num / den;
                dx = v0x + dtau * v1x;
                dy = p_ ? Vector(v0y + dtau * v1y) : Vector();
                dz = v0z + dtau * v1z;
                ds = detail::unscale_s(ops_, W, dtil) -
                     detail::unscale_s(ops_, W, detail::scale_z(ops_, W, dz));
                dkappa = (dtk - kappa * dtau) / tau;
                return std::isfinite(dtau) && dx.allFinite() && dz.allFinite() && ds.allFinite();
            };

            auto step_length = [&](const Vector& ds, const Vector& dz, double dtau,
                                   double dkappa) {
                const Vector ds_sc = detail::scale_s(ops_, W, ds);
                const Vector dz_sc = detail::scale_z(ops_, W, dz);
                double t = std::min(ops_.max_step(W, ds_sc), ops_.max_step(W, dz_sc));
                if (dtau < 0.0) t = std::min(t, -tau / dtau);
                if (dkappa < 0.0) t = std::min(t, -kappa / dkappa);
                return t;
            };

            // predictor
            Vector dx, dy, dz, ds;
            double dtau, dkappa;
            if (!direction(0.0, Vector::Zero(m_), 0.0, dx, dy, dz, ds, dtau, dkappa)) {
                if (take_best(sol)) return sol;
                sol.status = SolveStatus::NumericalFailure;
                finalize(sol, x, y, z, s, tau);
                return sol;
            }
            double alpha_aff = std::min(1.0, step_length(ds, dz, dtau, dkappa));
            const double mu_aff =
                ((s + alpha_aff * ds).dot(z + alpha_aff * dz) +
                 (tau + alpha_aff * dtau) * (kappa + alpha_aff * dkappa)) / nu;
            double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
            sigma = std::min(1.0, sigma);

            // corrector uses the scaled affine direction products
            const Vector corr = detail::jordan(ops_, detail::scale_s(ops_, W, ds),
                                               detail::scale_z(ops_, W, dz));
            const double corr_tk = dtau * dkappa;
            if (!direction(sigma, corr, corr_tk, dx, dy, dz, ds, dtau, dkappa)) {
                if (take_best(sol)) return sol;
                sol.status = SolveStatus::NumericalFailure;
                finalize(sol, x, y, z, s, tau);
                return sol;
            }

            double alpha = opts_.step_back * step_length(ds, dz, dtau, dkappa);
            alpha = std::min(alpha, 1.0);
            if (!(alpha > 0.0)) {
                if (take_best(sol)) return sol;
                sol.status = SolveStatus::NumericalFailure;
                finalize(sol, x, y, z, s, tau);
                return sol;
            }

            x += alpha * dx;
            if (p_ > 0) y += alpha * dy;
            z += alpha * dz;
            s += alpha * ds;
            tau += alpha * dtau;
            kappa += alpha * dkappa;
        }

        if (best_valid_ && take_best(sol)) return sol;
        sol.status = SolveStatus::MaxIterations;
        finalize(sol, x, y, z, s, tau);
        return sol;
    }

private:
    bool check_converged(Solution& sol, const Vector& x, const Vector& y, const Vector& z,
                         const Vector& s, double tau, double kappa,
                         double bnorm, double hnorm, double cnorm) {
        const Matrix& A = prob_.A;
        const Matrix& G = prob_.G;
        const Vector& b = prob_.b;
        const Vector& c = prob_.c;
        const Vector& h = prob_.h;
        const double ftol = opts_.feas_tol;
        const double gtol = opts_.gap_tol;

        if (tau > 1e-12) {
            const Vector xs = x / tau, ys = p_ ? Vector(y / tau) : Vector(),
                         zs = z / tau, ss = s / tau;
            const double pres = std::max(
                p_ ? (A * xs - b).norm() / bnorm : 0.0,
                (G * xs + ss - h).norm() / hnorm);
            const double dres =
                ((p_ ? Vector(A.transpose() * ys) : Vector(Vector::Zero(n_))) +
                 G.transpose() * zs + c).norm() / cnorm;
            const double pobj = c.dot(xs);
            const double dobj = -(p_ ? b.dot(ys) : 0.0) - h.dot(zs);
            const double gap = ss.dot(zs);
            const double relgap = gap / std::max({1.0, std::abs(pobj), std::abs(dobj)});
            const double score = std::max({pres, dres, relgap});
            if (!best_valid_ || score < best_.gap_score) {
                best_valid_ = true;
                best_.x = xs; best_.y = ys; best_.z = zs; best_.s = ss;
                best_.primal_obj = pobj; best_.dual_obj = dobj;
                best_.gap = gap; best_.primal_res = pres; best_.dual_res = dres;
                best_.gap_score = score;
            }
            if (pres <= ftol && dres <= ftol && relgap <= gtol) {
                sol.status = SolveStatus::Optimal;
                sol.x = xs; sol.y = ys; sol.z = zs; sol.s = ss;
                sol.primal_obj = pobj; sol.dual_obj = dobj;
                sol.gap = gap; sol.primal_res = pres; sol.dual_res = dres;
                return true;
            }
        }

        // certificates of infeasibility
        const double byhz = (p_ ? b.dot(y) : 0.0) + h.dot(z);
        if (byhz < -1e-14) {
            const Vector yn = p_ ? Vector(y / (-byhz)) : Vector();
            const Vector zn = z / (-byhz);
            const double res =
                ((p_ ? Vector(A.transpose() * yn) : Vector(Vector::Zero(n_))) +
                 G.transpose() * zn).norm();
            if (res <= std::max(1e-10, opts_.feas_tol * 10.0) * cnorm) {
                sol.status = SolveStatus::PrimalInfeasible;
                sol.y = yn; sol.z = zn;
                sol.x = Vector::Zero(n_); sol.s = Vector::Zero(m_);
                return true;
            }
        }
        const double cx = prob_.c.dot(x);
        if (cx < -1e-14) {
            const Vector xn = x / (-cx);
            const Vector sn = s / (-cx);
            const double res = std::max(p_ ? (A * xn).norm() : 0.0, (G * xn + sn).norm());
            if (res <= std::max(1e-10, opts_.feas_tol * 10.0) *
                           std::max(bnorm, hnorm)) {
                sol.status = SolveStatus::DualInfeasible;
                sol.x = xn; sol.s = sn;
                sol.y = Vector::Zero(p_); sol.z = Vector::Zero(m_);
                return true;
            }
        }
        return false;
    }

    void finalize(Solution& sol, const Vector& x, const Vector& y, const Vector& z,
                  const Vector& s, double tau) {
        if (best_valid_) {
            sol.x = best_.x; sol.y = best_.y; sol.z = best_.z; sol.s = best_.s;
            sol.primal_obj = best_.primal_obj; sol.dual_obj = best_.dual_obj;
            sol.gap = best_.gap; sol.primal_res = best_.primal_res;
            sol.dual_res = best_.dual_res;
            return;
        }
        const double t = (tau > 1e-12) ? tau : 1.0;
        sol.x = x / t; sol.y = y / t; sol.z = z / t; sol.s = s / t;
        if (sol.x.size()) sol.primal_obj = prob_.c.dot(sol.x);
    }

    // returns the best iterate as Optimal when it meets a modestly relaxed
    // tolerance; late iterations can stall below the double-precision floor
    // while an earlier iterate already satisfied the request
    bool take_best(Solution& sol) {
        if (!best_valid_) return false;
        if (best_.primal_res <= opts_.feas_tol * 10.0 &&
            best_.dual_res <= opts_.feas_tol * 10.0 &&
            best_.gap / std::max({1.0, std::abs(best_.primal_obj),
                                  std::abs(best_.dual_obj)}) <= opts_.gap_tol * 10.0) {
            sol.status = SolveStatus::Optimal;
            sol.x = best_.x; sol.y = best_.y; sol.z = best_.z; sol.s = best_.s;
            sol.primal_obj = best_.primal_obj; sol.dual_obj = best_.dual_obj;
            sol.gap = best_.gap; sol.primal_res = best_.primal_res;
            sol.dual_res = best_.dual_res;
            return true;
        }
        return false;
    }

    struct Best {
        Vector x, y, z, s;
        double primal_obj = 0, dual_obj = 0, gap = 0;
        double primal_res = 0, dual_res = 0;
        double gap_score = std::numeric_limits<double>::infinity();
    };

    Problem prob_;
    SolverOptions opts_;
    detail::ConeOps ops_;
    Best best_;
    bool best_valid_ = false;
    int n_ = 0, p_ = 0, m_ = 0;
};

inline Solution solve(Problem prob, SolverOptions opts = {}) {
    return Solver(std::move(prob), opts).solve();
}

// Convenience wrapper for pure LPs:
//   minimize c'x  s.t.  A x = b,  G x <= h
inline Solution solve_lp(const Vector& c, const Matrix& A, const Vector& b,
                         const Matrix& G, const Vector& h, SolverOptions opts = {}) {
    Problem p;
    p.c = c;
    p.A = A;
    p.b = b;
    p.G = G;
    p.h = h;
    p.dims.nonneg = static_cast<int>(G.rows());
    return solve(std::move(p), opts);
}

}  // namespace tracksyn::conic
