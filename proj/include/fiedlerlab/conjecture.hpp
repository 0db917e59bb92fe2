// Executable form of the conjecture that Fiedler extremes sit at diameter
// pairs, plus the rose-family scan and a randomized search over trees.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fiedlerlab/graph.hpp"
#include "fiedlerlab/spectral.hpp"

namespace fiedlerlab {

enum class Verdict { Holds, Violated, Degenerate };

std::string to_string(Verdict verdict);

struct VertexPair {
    int v = 0;
    int w = 0;
    bool operator==(const VertexPair&) const = default;
};

struct ConjectureReport {
    Verdict verdict = Verdict::Holds;
    // Vertices attaining max / min of e2 within tie_tol; empty when the
    // verdict is DEGENERATE (no canonical Fiedler direction to read off).
    std::vector<int> extremal_max_set;
    std::vector<int> extremal_min_set;
    // Sorted distinct d(v, w) over extremal_max_set x extremal_min_set.
    std::vector<int> extremal_pair_distances;
    int diameter = 0;
    std::optional<VertexPair> witness;  // one non-diameter extremal pair when VIOLATED
    double lambda2 = 0.0;
    std::optional<double> gap;
    bool is_tree = true;  // the conjecture is stated for trees; callers warn otherwise
};

// Verdict rule, with tie_tol relative to max(e2) - min(e2): HOLDS iff every
// pair in max-set x min-set attains the diameter, VIOLATED if any pair falls
// short, DEGENERATE when the solver flags lambda2 as degenerate. Requires a
// connected graph on at least 2 vertices.
ConjectureReport check_conjecture(const Graph& g, double tie_tol = 1e-9);

// Same rule against an already computed Fiedler pair (any sign orientation;
// the verdict is orientation-invariant).
ConjectureReport check_conjecture(const Graph& g, const FiedlerResult& result,
                                  double tie_tol = 1e-9);

struct IntRange {
    int lo = 1;
    int hi = 1;  // inclusive
};

struct ScanCell {
    int p = 0;
    int s = 0;
    double leaf_tip_value = 0.0;  // e2 at vertex 0, hub-positive orientation
    double lambda2 = 0.0;
    double gap = 0.0;
    Verdict verdict = Verdict::Holds;
    int min_extremal_distance = -1;  // -1 when not applicable (degenerate or error)
    int diameter = 0;
    std::string error;  // nonempty when the solver failed for this cell
};

// One cell per (p, s) in row-major order (s outer, p inner). Solver errors
// land in the cell's error field instead of aborting the scan.
std::vector<ScanCell> scan_rose_family(IntRange petals, IntRange stems, int threads = 1,
                                       double tie_tol = 1e-9);

struct Violation {
    std::uint64_t instance = 0;  // index into the search stream
    std::uint64_t seed = 0;      // sub-seed that regenerates the tree
    int n = 0;
    ConjectureReport report;
};

struct SearchReport {
    std::uint64_t instances_checked = 0;
    std::vector<Violation> violations;  // ordered by instance index
    std::uint64_t degenerate_skipped = 0;
};

// Checks `instances` uniform random trees on n vertices. Instance i uses the
// sub-seed derive_stream_seed(seed, i), so the report is a pure function of
// (n, instances, seed) no matter how many threads run the loop.
SearchReport search_random_trees(int n, std::uint64_t instances, std::uint64_t seed,
                                 int threads = 1, double tie_tol = 1e-9);

// Smallest p in 1..p_max whose rose(p, s) is VIOLATED, scanning upward.
std::optional<int> minimal_violating_p(int s, int p_max, double tie_tol = 1e-9);

}  // namespace fiedlerlab
