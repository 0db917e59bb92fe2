#include "fiedlerlab/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "fiedlerlab/random.hpp"

namespace fiedlerlab {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    adj_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                        ") out of range for " + std::to_string(n) + " vertices");
        if (u == v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) + ", " +
                                        std::to_string(key.second) + ")");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    edge_count_ = static_cast<int>(seen.size());
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph build_rose(const RoseParams& params) {
    if (params.petals < 1 || params.stem < 1)
        throw std::invalid_argument("rose needs petals >= 1 and stem >= 1");
    std::vector<std::pair<int, int>> edges;
    const int hub = params.hub();
    for (int i = 0; i < 3 + params.stem; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(RoseParams::kJunction, hub);
    for (int j = 0; j < params.petals; ++j) edges.emplace_back(hub, hub + 1 + j);
    return Graph(params.total_vertices(), edges);
}

Graph build_path(int n) {
    if (n < 1) throw std::invalid_argument("path needs at least one vertex");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges);
}

Graph build_star(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph(leaves + 1, edges);
}

Graph random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("tree needs at least one vertex");
    if (n == 1) return Graph(1, {});
    if (n == 2) return Graph(2, {{0, 1}});

    std::mt19937_64 rng(seed);
    std::vector<int> prufer(n - 2);
    for (auto& a : prufer) a = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));

    std::vector<int> degree(n, 1);
    for (int a : prufer) ++degree[a];

    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.push(v);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    for (int a : prufer) {
        int leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, a);
        if (--degree[a] == 1) leaves.push(a);
    }
    int u = leaves.top();
    leaves.pop();
    int v = leaves.top();
    edges.emplace_back(u, v);
    return Graph(n, edges);
}

DistanceReport bfs_distances(const Graph& g, int source) {
    const int n = g.vertex_count();
    if (source < 0 || source >= n) throw std::invalid_argument("bfs source out of range");
    DistanceReport report;
    report.source = source;
    report.dist.assign(n, Graph::kUnreachable);
    report.dist[source] = 0;
    std::queue<int> q;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.neighbors(u)) {
            if (report.dist[w] == Graph::kUnreachable) {
                report.dist[w] = report.dist[u] + 1;
                q.push(w);
            }
        }
    }
    return report;
}

DiameterResult diameter(const Graph& g) {
    if (!is_connected(g))
        throw std::invalid_argument("diameter undefined for disconnected graph");
    const int n = g.vertex_count();
    DiameterResult result;
    std::vector<std::vector<int>> dists(n);
    for (int u = 0; u < n; ++u) {
        dists[u] = bfs_distances(g, u).dist;
        for (int v = u + 1; v < n; ++v) result.diameter = std::max(result.diameter, dists[u][v]);
    }
    if (n >= 2) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (dists[u][v] == result.diameter) result.pairs.emplace_back(u, v);
    }
    return result;
}

bool is_connected(const Graph& g) {
    const auto& dist = bfs_distances(g, 0).dist;
    return std::none_of(dist.begin(), dist.end(),
                        [](int d) { return d == Graph::kUnreachable; });
}

bool is_tree(const Graph& g) {
    return is_connected(g) && g.edge_count() == g.vertex_count() - 1;
}

}  // namespace fiedlerlab
