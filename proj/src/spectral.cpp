#include "fiedlerlab/spectral.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fiedlerlab/random.hpp"
#include "fiedlerlab/symmetric_eigen.hpp"

namespace fiedlerlab {

Eigen::VectorXd LaplacianView::apply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    const int n = g_->vertex_count();
    if (x.size() != n) throw std::invalid_argument("vector length does not match graph");
    Eigen::VectorXd y(n);
    for (int v = 0; v < n; ++v) {
        double acc = static_cast<double>(g_->degree(v)) * x(v);
        for (int w : g_->neighbors(v)) acc -= x(w);
        y(v) = acc;
    }
    return y;
}

double LaplacianView::quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != g_->vertex_count()) throw std::invalid_argument("vector length does not match graph");
    double acc = 0.0;
    for (auto [u, v] : g_->edges()) {
        const double d = x(u) - x(v);
        acc += d * d;
    }
    return acc;
}

Eigen::MatrixXd LaplacianView::dense() const {
    const int n = g_->vertex_count();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v) {
        m(v, v) = static_cast<double>(g_->degree(v));
        for (int w : g_->neighbors(v)) m(v, w) = -1.0;
    }
    return m;
}

Eigen::SparseMatrix<double> LaplacianView::sparse() const {
    const int n = g_->vertex_count();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) + 2u * static_cast<std::size_t>(g_->edge_count()));
    for (int v = 0; v < n; ++v) {
        triplets.emplace_back(v, v, static_cast<double>(g_->degree(v)));
        for (int w : g_->neighbors(v)) triplets.emplace_back(v, w, -1.0);
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

Spectrum full_spectrum(const Graph& g, double tol) {
    const int n = g.vertex_count();
    if (n > kDenseSpectrumCap)
        throw std::invalid_argument("graph too large for a dense spectrum (n > " +
                                    std::to_string(kDenseSpectrumCap) + "); use fiedler()");
    const LaplacianView view(g);
    auto eig = symmetric_eigendecomposition<double>(view.dense());

    Spectrum spectrum{std::move(eig.values), std::move(eig.vectors)};

    // self-check against the advertised contract
    const double scale = std::max(1.0, spectrum.eigenvalues(n - 1));
    for (int i = 0; i < n; ++i) {
        const double residual =
            (view.apply(spectrum.eigenvectors.col(i)) - spectrum.eigenvalues(i) * spectrum.eigenvectors.col(i))
                .norm();
        if (residual > tol * scale)
            throw std::runtime_error("spectrum residual " + std::to_string(residual) +
                                     " exceeds tolerance at eigenpair " + std::to_string(i));
    }
    Eigen::MatrixXd gram = spectrum.eigenvectors.transpose() * spectrum.eigenvectors;
    gram.diagonal().array() -= 1.0;
    if (gram.cwiseAbs().maxCoeff() > tol)
        throw std::runtime_error("spectrum eigenvectors lost orthonormality");
    if (spectrum.eigenvalues(0) < -tol)
        throw std::runtime_error("spectrum has a negative eigenvalue beyond tolerance");
    return spectrum;
}

void apply_sign_anchor(Eigen::VectorXd& v, std::optional<int> anchor_vertex) {
    if (anchor_vertex) {
        if (*anchor_vertex < 0 || *anchor_vertex >= v.size())
            throw std::invalid_argument("anchor vertex out of range");
        if (v(*anchor_vertex) < 0.0) v = -v;
        return;
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0.0) v = -v;
            return;
        }
    }
}

namespace {

// Deterministic, platform-independent start vectors in [-0.5, 0.5).
double seeded_unit_double(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(splitmix64_at(seed, index) >> 11) * 0x1.0p-53 - 0.5;
}

void project_out_ones(Eigen::VectorXd& x) {
    x.array() -= x.mean();
}

// Eigenpairs of [[a, b], [b, c]] as a rotation; returns (theta1 <= theta2,
// cos, sin) with [v1 v2] = [x1 x2] * [[cos, -sin], [sin, cos]].
struct TwoByTwoEigen {
    double theta1, theta2, c, s;
};

TwoByTwoEigen symmetric_2x2(double a, double b, double c) {
    TwoByTwoEigen out{};
    if (b == 0.0) {
        if (a <= c) {
            out = {a, c, 1.0, 0.0};
        } else {
            out = {c, a, 0.0, 1.0};
        }
        return out;
    }
    const double half_diff = 0.5 * (a - c);
    const double radius = std::hypot(half_diff, b);
    const double mid = 0.5 * (a + c);
    out.theta1 = mid - radius;
    out.theta2 = mid + radius;
    // eigenvector for theta1: (b, theta1 - a) normalized
    const double vx = b;
    const double vy = out.theta1 - a;
    const double norm = std::hypot(vx, vy);
    out.c = vx / norm;
    out.s = vy / norm;
    return out;
}

}  // namespace

FiedlerResult fiedler(const Graph& g, const FiedlerOptions& options) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("fiedler needs at least two vertices");
    if (!is_connected(g))
        throw std::invalid_argument("fiedler undefined for disconnected graphs (lambda2 = 0)");

    const LaplacianView view(g);
    FiedlerResult result;

    if (n == 2) {
        Eigen::VectorXd v(2);
        v << 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
        result.lambda2 = view.quadratic_form(v);
        result.residual = (view.apply(v) - result.lambda2 * v).norm();
        apply_sign_anchor(v, options.anchor_vertex);
        result.vector = std::move(v);
        return result;
    }

    // One factorization of L + shift*I; the shift regularizes the ones-vector
    // kernel, which the deflation projector removes again after every solve.
    Eigen::SparseMatrix<double> m = view.sparse();
    constexpr double kShift = 1e-12;
    for (int v = 0; v < n; ++v) m.coeffRef(v, v) += kShift;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("factorization of the shifted Laplacian failed");

    Eigen::MatrixXd x(n, 2);
    for (int v = 0; v < n; ++v) {
        x(v, 0) = seeded_unit_double(0x0F1ED1E5ULL, static_cast<std::uint64_t>(v));
        x(v, 1) = seeded_unit_double(0x0F1ED1E5ULL, static_cast<std::uint64_t>(n + v));
    }

    auto orthonormalize = [&](Eigen::MatrixXd& cols) {
        Eigen::VectorXd c0 = cols.col(0);
        project_out_ones(c0);
        c0.normalize();
        Eigen::VectorXd c1 = cols.col(1);
        project_out_ones(c1);
        c1 -= c0.dot(c1) * c0;
        const double norm = c1.norm();
        if (norm < 1e-300) {
            // re-seed a collapsed second direction
            for (int v = 0; v < n; ++v)
                c1(v) = seeded_unit_double(0xB10C0DEULL, static_cast<std::uint64_t>(v));
            project_out_ones(c1);
            c1 -= c0.dot(c1) * c0;
            c1.normalize();
        } else {
            c1 /= norm;
        }
        cols.col(0) = c0;
        cols.col(1) = c1;
    };

    orthonormalize(x);

    double theta1 = 0.0, theta2 = 0.0;
    double res1 = std::numeric_limits<double>::infinity();
    double res2 = std::numeric_limits<double>::infinity();
    double best = res1;
    int iterations = 0;

    while (iterations < options.max_iter) {
        ++iterations;
        Eigen::MatrixXd y = solver.solve(x);
        x = std::move(y);
        orthonormalize(x);

        Eigen::MatrixXd lx(n, 2);
        lx.col(0) = view.apply(x.col(0));
        lx.col(1) = view.apply(x.col(1));
        const double b00 = x.col(0).dot(lx.col(0));
        const double b11 = x.col(1).dot(lx.col(1));
        const double b01 = 0.5 * (x.col(0).dot(lx.col(1)) + x.col(1).dot(lx.col(0)));

        const TwoByTwoEigen rr = symmetric_2x2(b00, b01, b11);
        const Eigen::VectorXd v1 = rr.c * x.col(0) + rr.s * x.col(1);
        const Eigen::VectorXd v2 = -rr.s * x.col(0) + rr.c * x.col(1);
        const Eigen::VectorXd lv1 = rr.c * lx.col(0) + rr.s * lx.col(1);
        const Eigen::VectorXd lv2 = -rr.s * lx.col(0) + rr.c * lx.col(1);
        x.col(0) = v1;
        x.col(1) = v2;
        theta1 = rr.theta1;
        theta2 = rr.theta2;
        res1 = (lv1 - theta1 * v1).norm();
        res2 = (lv2 - theta2 * v2).norm();
        best = std::min(best, std::max(res1, res2));
        if (res1 <= options.tol && res2 <= options.tol) break;
    }
    if (res1 > options.tol || res2 > options.tol)
        throw FiedlerConvergenceError(
            "fiedler did not reach residual " + std::to_string(options.tol) + " in " +
                std::to_string(options.max_iter) + " iterations (best " + std::to_string(best) + ")",
            best);

    Eigen::VectorXd v = x.col(0);
    project_out_ones(v);
    v.normalize();
    apply_sign_anchor(v, options.anchor_vertex);

    result.lambda2 = theta1;
    result.vector = std::move(v);
    result.gap = theta2 - theta1;
    result.degenerate = *result.gap <= 1e-8 * std::max(1.0, theta1);
    result.iterations = iterations;
    result.residual = res1;
    return result;
}

double algebraic_connectivity(const Graph& g) {
    if (g.vertex_count() < 2) return 0.0;
    if (!is_connected(g)) return 0.0;
    if (g.vertex_count() <= kDenseSpectrumCap) return full_spectrum(g).eigenvalues(1);
    return fiedler(g).lambda2;
}

std::vector<Sign> sign_partition(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& vector,
                                 double zero_tol) {
    const int n = g.vertex_count();
    if (vector.size() != n) throw std::invalid_argument("vector length does not match graph");
    const double threshold = zero_tol * vector.cwiseAbs().maxCoeff();
    std::vector<Sign> labels(static_cast<std::size_t>(n), Sign::Zero);
    for (int v = 0; v < n; ++v) {
        if (vector(v) > threshold)
            labels[static_cast<std::size_t>(v)] = Sign::Positive;
        else if (vector(v) < -threshold)
            labels[static_cast<std::size_t>(v)] = Sign::Negative;
    }
    return labels;
}

std::vector<int> extreme_max_set(const Eigen::Ref<const Eigen::VectorXd>& x, double tie_tol) {
    const double hi = x.maxCoeff();
    const double lo = x.minCoeff();
    const double cut = hi - tie_tol * (hi - lo);
    std::vector<int> out;
    for (Eigen::Index v = 0; v < x.size(); ++v) {
        if (x(v) >= cut) out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<int> extreme_min_set(const Eigen::Ref<const Eigen::VectorXd>& x, double tie_tol) {
    const double hi = x.maxCoeff();
    const double lo = x.minCoeff();
    const double cut = lo + tie_tol * (hi - lo);
    std::vector<int> out;
    for (Eigen::Index v = 0; v < x.size(); ++v) {
        if (x(v) <= cut) out.push_back(static_cast<int>(v));
    }
    return out;
}

}  // namespace fiedlerlab
