#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "npconfig/errors.hpp"

namespace npc {

using cplx = std::complex<double>;

/// Dense complex square matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    CMatrix adjoint() const {
        CMatrix m(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    CMatrix operator*(const CMatrix& rhs) const {
        CMatrix m(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                const cplx aik = (*this)(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < n_; ++j) m(i, j) += aik * rhs(k, j);
            }
        return m;
    }

    CMatrix operator+(const CMatrix& rhs) const {
        CMatrix m(n_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + rhs.a_[i];
        return m;
    }

    CMatrix operator-(const CMatrix& rhs) const {
        CMatrix m(n_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - rhs.a_[i];
        return m;
    }

    CMatrix operator*(cplx s) const {
        CMatrix m(n_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
        return m;
    }

    std::vector<cplx> apply(const std::vector<cplx>& v) const {
        std::vector<cplx> out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const cplx& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool finite() const {
        for (const cplx& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

/// Eigendecomposition of a Hermitian matrix: values sorted descending,
/// columns of `vectors` are the matching orthonormal eigenvectors.
struct HermEigen {
    std::vector<double> values;
    std::vector<std::vector<cplx>> vectors; // vectors[k] is the k-th eigenvector
};

namespace detail {

inline double offdiag_frobenius(const CMatrix& a) {
    const std::size_t n = a.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

/// Cyclic complex Jacobi diagonalization. Deterministic row-major sweep
/// order over the upper triangle; converges when the off-diagonal
/// Frobenius mass drops below tol * ||A||_F.
inline HermEigen herm_eig(const CMatrix& a0, double tol = 1e-12) {
    const std::size_t n = a0.size();
    if (n == 0) return {};
    if (!a0.finite()) throw NonFinite("herm_eig: non-finite entries");

    // Symmetry check relative to the largest entry.
    const double amax = a0.max_abs();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(a0(i, j) - std::conj(a0(j, i))) > std::max(tol, 1e-12) * std::max(amax, 1.0))
                throw NotHermitian("herm_eig: matrix is not Hermitian within tolerance");

    CMatrix a = a0;
    // Symmetrize exactly so rounding in the input cannot accumulate.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }

    CMatrix v = CMatrix::identity(n);
    const double fro = std::max(a.frobenius(), 1e-300);
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::offdiag_frobenius(a) <= tol * fro) break;
        if (sweep == max_sweeps - 1)
            throw NoConvergence("herm_eig: sweep limit exceeded");

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq <= 1e-300) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Phase that makes the pivot real, then a real Jacobi rotation.
                const cplx phase = apq / abs_apq;
                const double tau = (aqq - app) / (2.0 * abs_apq);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;

                // A <- J^* A J with J = [[c, sp], [-conj(sp), c]] on (p, q).
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - std::conj(sp) * akq;
                    a(k, q) = sp * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = std::conj(sp) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(sp) * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    HermEigen out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<cplx>(n));
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v(i, order[k]);
    }
    return out;
}

/// Spectral norm sigma_max(A) = sqrt(lambda_max(A^* A)).
inline double op_norm(const CMatrix& a, double tol = 1e-12) {
    if (a.size() == 0) return 0.0;
    if (!a.finite()) throw NonFinite("op_norm: non-finite entries");
    const HermEigen e = herm_eig(a.adjoint() * a, tol);
    return std::sqrt(std::max(e.values.front(), 0.0));
}

/// Horner evaluation of p(A), coefficients in ascending degree order.
inline CMatrix poly_apply(const std::vector<cplx>& p, const CMatrix& a) {
    const std::size_t n = a.size();
    if (p.empty()) return CMatrix(n);
    CMatrix acc = CMatrix::identity(n) * p.back();
    for (std::size_t k = p.size(); k-- > 1;) {
        acc = acc * a;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += p[k - 1];
    }
    if (!acc.finite()) throw NonFinite("poly_apply: overflow to non-finite values");
    return acc;
}

/// Horner evaluation of the scalar polynomial p(z).
inline cplx poly_eval(const std::vector<cplx>& p, cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
    return acc;
}

} // namespace npc
