// Dense symmetric eigendecomposition: Householder tridiagonalization followed
// by implicit-shift QL with accumulated transformations, the classic
// tred2/tql2 pair written against Eigen dense types and templated on scalar.
// Results are sorted ascending with orthonormal eigenvector columns.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fiedlerlab {

template <typename Scalar>
struct SymmetricEigenResult {
    Eigen::Vector<Scalar, Eigen::Dynamic> values;   // ascending
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns aligned to values
};

// Reduces symmetric `a` to tridiagonal form. On return `a` holds the
// accumulated orthogonal transform Q (a_in = Q T Q^T), `diag` the diagonal of
// T and `sub` the subdiagonal (sub[0] = 0).
template <typename Scalar>
void householder_tridiagonalize(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                                Eigen::Vector<Scalar, Eigen::Dynamic>& diag,
                                Eigen::Vector<Scalar, Eigen::Dynamic>& sub) {
    using std::abs;
    using std::sqrt;
    const Eigen::Index n = a.rows();
    diag.resize(n);
    sub.resize(n);

    for (Eigen::Index i = n - 1; i >= 1; --i) {
        const Eigen::Index l = i - 1;
        Scalar h = 0;
        if (l > 0) {
            Scalar scale = 0;
            for (Eigen::Index k = 0; k <= l; ++k) scale += abs(a(i, k));
            if (scale == Scalar(0)) {
                sub(i) = a(i, l);
            } else {
                for (Eigen::Index k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                Scalar f = a(i, l);
                Scalar g = f >= Scalar(0) ? -sqrt(h) : sqrt(h);
                sub(i) = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0;
                for (Eigen::Index j = 0; j <= l; ++j) {
                    a(j, i) = a(i, j) / h;
                    g = 0;
                    for (Eigen::Index k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (Eigen::Index k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    sub(j) = g / h;
                    f += sub(j) * a(i, j);
                }
                const Scalar hh = f / (h + h);
                for (Eigen::Index j = 0; j <= l; ++j) {
                    f = a(i, j);
                    g = sub(j) - hh * f;
                    sub(j) = g;
                    for (Eigen::Index k = 0; k <= j; ++k)
                        a(j, k) -= f * sub(k) + g * a(i, k);
                }
            }
        } else {
            sub(i) = a(i, l);
        }
        diag(i) = h;
    }
    diag(0) = 0;
    sub(0) = 0;

    // accumulate the product of Householder reflectors into a
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index l = i - 1;
        if (diag(i) != Scalar(0)) {
            for (Eigen::Index j = 0; j <= l; ++j) {
                Scalar g = 0;
                for (Eigen::Index k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
                for (Eigen::Index k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
            }
        }
        diag(i) = a(i, i);
        a(i, i) = 1;
        for (Eigen::Index j = 0; j <= l; ++j) a(j, i) = a(i, j) = 0;
    }
}

// Implicit-shift QL sweeps on a symmetric tridiagonal (diag, sub) with the
// orthogonal accumulator z updated in place. sub[0] must be 0 on entry.
// Throws on failure to converge (does not happen for finite input in
// practice; the classic 30-sweep bound is doubled for margin).
template <typename Scalar>
void tridiagonal_ql_implicit(Eigen::Vector<Scalar, Eigen::Dynamic>& diag,
                             Eigen::Vector<Scalar, Eigen::Dynamic>& sub,
                             Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& z) {
    using std::abs;
    using std::copysign;
    using std::hypot;
    const Eigen::Index n = diag.size();
    if (n == 0) return;
    constexpr int kMaxSweeps = 60;
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();

    for (Eigen::Index i = 1; i < n; ++i) sub(i - 1) = sub(i);
    sub(n - 1) = 0;

    for (Eigen::Index l = 0; l < n; ++l) {
        int sweeps = 0;
        Eigen::Index m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const Scalar dd = abs(diag(m)) + abs(diag(m + 1));
                if (abs(sub(m)) <= eps * dd) break;
            }
            if (m != l) {
                if (sweeps++ == kMaxSweeps)
                    throw std::runtime_error("tridiagonal QL failed to converge");
                Scalar g = (diag(l + 1) - diag(l)) / (2 * sub(l));
                Scalar r = hypot(g, Scalar(1));
                g = diag(m) - diag(l) + sub(l) / (g + copysign(r, g));
                Scalar s = 1, c = 1, p = 0;
                Eigen::Index i = m - 1;
                for (; i >= l; --i) {
                    Scalar f = s * sub(i);
                    const Scalar b = c * sub(i);
                    r = hypot(f, g);
                    sub(i + 1) = r;
                    if (r == Scalar(0)) {  // recover from underflow, restart
                        diag(i + 1) -= p;
                        sub(m) = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag(i + 1) - p;
                    r = (diag(i) - g) * s + 2 * c * b;
                    p = s * r;
                    diag(i + 1) = g + p;
                    g = c * r - b;
                    for (Eigen::Index k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (r == Scalar(0) && i >= l) continue;
                diag(l) -= p;
                sub(l) = g;
                sub(m) = 0;
            }
        } while (m != l);
    }
}

// Full decomposition of a symmetric matrix, eigenvalues ascending.
template <typename Scalar>
SymmetricEigenResult<Scalar> symmetric_eigendecomposition(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("matrix must be square");
    SymmetricEigenResult<Scalar> result;
    if (n == 0) return result;

    Eigen::Vector<Scalar, Eigen::Dynamic> diag, sub;
    householder_tridiagonalize(a, diag, sub);
    tridiagonal_ql_implicit(diag, sub, a);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index p, Eigen::Index q) { return diag(p) < diag(q); });

    result.values.resize(n);
    result.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        result.values(j) = diag(order[static_cast<std::size_t>(j)]);
        result.vectors.col(j) = a.col(order[static_cast<std::size_t>(j)]);
    }
    return result;
}

}  // namespace fiedlerlab
