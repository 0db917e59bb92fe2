// Immutable simple undirected graphs with 0-based vertex ids, deterministic
// generators (rose family, paths, stars, uniform random trees) and BFS-based
// distance/diameter machinery. Graphs are safe for unlimited concurrent
// readers once constructed.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace fiedlerlab {

class Graph {
public:
    // dist entries for vertices a BFS never reaches
    static constexpr int kUnreachable = -1;

    // Validates: ids in [0, n), no self-loops, no duplicate edges.
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;

    // All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Graph& other) const = default;

private:
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<int>> adj_;
};

// The rose tree: a 4-vertex leaf path (0..3), an s-vertex stem continuing the
// same path (4..3+s), a hub joined to the junction vertex 3, and p petal
// leaves hanging off the hub. N = 5 + p + s vertices.
struct RoseParams {
    int petals = 1;
    int stem = 1;

    int total_vertices() const { return 5 + petals + stem; }
    int hub() const { return 4 + stem; }
    int stem_tip() const { return 3 + stem; }
    int first_petal() const { return hub() + 1; }
    static constexpr int kLeafTip = 0;
    static constexpr int kJunction = 3;
};

Graph build_rose(const RoseParams& params);
Graph build_path(int n);
Graph build_star(int leaves);

// Uniform random labeled tree: Prufer sequence drawn from mt19937_64(seed)
// via rejection sampling, decoded with a min-heap of leaves. Same (n, seed)
// gives the same tree on every platform.
Graph random_tree(int n, std::uint64_t seed);

struct DistanceReport {
    int source = 0;
    std::vector<int> dist;  // hop counts; Graph::kUnreachable if unreachable
};

struct DiameterResult {
    int diameter = 0;
    std::vector<std::pair<int, int>> pairs;  // all (u, v), u < v, at max distance
};

DistanceReport bfs_distances(const Graph& g, int source);

// Exact diameter with every attaining pair (all-pairs BFS).
// Throws std::invalid_argument for disconnected graphs.
DiameterResult diameter(const Graph& g);

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);

}  // namespace fiedlerlab
