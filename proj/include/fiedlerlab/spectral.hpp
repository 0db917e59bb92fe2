// Laplacian assembly and the eigensolver stack. The Laplacian convention is
// L = D - A (positive semidefinite), so the spectrum is 0 = lambda1 <=
// lambda2 <= ... and lambda2 is the algebraic connectivity.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fiedlerlab/graph.hpp"

namespace fiedlerlab {

// Dense decompositions are refused above this size; use fiedler() instead.
inline constexpr int kDenseSpectrumCap = 2000;

// Read-only operator view of L = D - A over a Graph: row v has deg(v) on the
// diagonal and -1 at each neighbor. Never densifies unless asked to.
// Holds a pointer to the graph; keep the graph alive while the view is used.
class LaplacianView {
public:
    explicit LaplacianView(const Graph& g) : g_(&g) {}

    Eigen::Index dimension() const { return g_->vertex_count(); }
    double diagonal(int v) const { return static_cast<double>(g_->degree(v)); }
    const Graph& graph() const { return *g_; }

    // y = L x
    Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    // x^T L x = sum over edges (x_u - x_v)^2
    double quadratic_form(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    Eigen::MatrixXd dense() const;
    Eigen::SparseMatrix<double> sparse() const;

private:
    const Graph* g_;
};

inline LaplacianView laplacian(const Graph& g) { return LaplacianView(g); }

struct Spectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns aligned to eigenvalues
};

// Complete eigendecomposition through the in-house Householder + implicit-QL
// path, self-checked against `tol`: residuals ||L e_i - lambda_i e_i|| <=
// tol * max(1, lambda_n), orthonormality to tol, lambda_1 >= -tol.
Spectrum full_spectrum(const Graph& g, double tol = 1e-10);

struct FiedlerResult {
    double lambda2 = 0.0;
    Eigen::VectorXd vector;       // unit norm, orthogonal to the ones vector
    std::optional<double> gap;    // lambda3 - lambda2; absent when n < 3
    bool degenerate = false;      // gap <= 1e-8 * max(1, lambda2)
    int iterations = 0;
    double residual = 0.0;        // ||L v - lambda2 v||
};

struct FiedlerOptions {
    double tol = 1e-10;   // residual target
    int max_iter = 10000;
    // Sign rule: with no anchor the lowest-index entry above 1e-12 in
    // magnitude is made positive; with an anchor that entry is made
    // nonnegative (rose reproduction uses the hub here).
    std::optional<int> anchor_vertex;
};

// Thrown when the iteration exhausts max_iter; carries the best residual.
class FiedlerConvergenceError : public std::runtime_error {
public:
    FiedlerConvergenceError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

// lambda2 and its eigenvector by block inverse iteration on the subspace
// orthogonal to the ones vector: one LDLT factorization of L + 1e-12 I, then
// solve / project / orthonormalize / 2x2 Rayleigh-Ritz per sweep. The second
// Ritz pair supplies lambda3 for the gap and degeneracy flag (n >= 3).
// Requires a connected graph with n >= 2.
FiedlerResult fiedler(const Graph& g, const FiedlerOptions& options = {});

// lambda2 for connected graphs, 0 for disconnected ones (and for n = 1).
double algebraic_connectivity(const Graph& g);

enum class Sign { Positive, Negative, Zero };

// Per-vertex sign labels. zero_tol is relative: entries within
// zero_tol * max|entry| of zero are labeled Zero, which makes labels
// invariant under positive rescaling of the vector.
std::vector<Sign> sign_partition(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& vector,
                                 double zero_tol = 1e-9);

// Vertices attaining max / min of x within tie_tol * (max - min). A constant
// vector puts every vertex in both sets.
std::vector<int> extreme_max_set(const Eigen::Ref<const Eigen::VectorXd>& x, double tie_tol);
std::vector<int> extreme_min_set(const Eigen::Ref<const Eigen::VectorXd>& x, double tie_tol);

// Applies the sign rule described on FiedlerOptions to `v` in place.
void apply_sign_anchor(Eigen::VectorXd& v, std::optional<int> anchor_vertex);

}  // namespace fiedlerlab
