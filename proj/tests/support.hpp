// Shared oracles for the test suites. Everything here is deliberately
// independent of the library's own algorithms: distances via Floyd-Warshall,
// spectra via Eigen's solver.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <limits>
#include <vector>

#include "fiedlerlab/conjecture.hpp"
#include "fiedlerlab/graph.hpp"
#include "fiedlerlab/spectral.hpp"

namespace testsupport {

inline fiedlerlab::Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return fiedlerlab::Graph(n, edges);
}

// All-pairs distances without BFS; -1 marks unreachable pairs.
inline std::vector<std::vector<int>> floyd_warshall(const fiedlerlab::Graph& g) {
    const int n = g.vertex_count();
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d[i][j] >= inf) d[i][j] = -1;
    return d;
}

// Reference spectrum through Eigen's dense solver (test-only oracle; the
// library itself never calls it).
inline fiedlerlab::Spectrum eigen_oracle_spectrum(const fiedlerlab::Graph& g) {
    const Eigen::MatrixXd l = fiedlerlab::laplacian(g).dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    return fiedlerlab::Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

inline double oracle_lambda2(const fiedlerlab::Graph& g) {
    return eigen_oracle_spectrum(g).eigenvalues(1);
}

// Asserts the report's own invariants: the verdict must be recomputable from
// the distances and diameter alone. Returns false with no throw so callers
// can CHECK it per graph.
inline bool conjecture_report_consistent(const fiedlerlab::ConjectureReport& report) {
    using fiedlerlab::Verdict;
    if (report.verdict == Verdict::Degenerate) {
        return report.extremal_max_set.empty() && report.extremal_min_set.empty() &&
               report.extremal_pair_distances.empty() && !report.witness;
    }
    if (report.extremal_pair_distances.empty()) return false;
    bool any_short = false;
    for (int d : report.extremal_pair_distances) {
        if (d > report.diameter) return false;
        if (d < report.diameter) any_short = true;
    }
    if (report.verdict == Verdict::Violated) return any_short && report.witness.has_value();
    return !any_short && !report.witness;
}

}  // namespace testsupport
