#include "fiedlerlab/conjecture.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "fiedlerlab/parallel.hpp"
#include "fiedlerlab/random.hpp"

namespace fiedlerlab {

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Holds: return "HOLDS";
        case Verdict::Violated: return "VIOLATED";
        case Verdict::Degenerate: return "DEGENERATE";
    }
    throw std::logic_error("unreachable verdict");
}

ConjectureReport check_conjecture(const Graph& g, const FiedlerResult& result, double tie_tol) {
    if (!is_connected(g)) {
        throw std::invalid_argument("conjecture check requires a connected graph");
    }

    ConjectureReport report;
    report.lambda2 = result.lambda2;
    report.gap = result.gap;
    report.is_tree = is_tree(g);
    report.diameter = diameter(g).diameter;

    if (result.degenerate) {
        report.verdict = Verdict::Degenerate;
        return report;
    }

    report.extremal_max_set = extreme_max_set(result.vector, tie_tol);
    report.extremal_min_set = extreme_min_set(result.vector, tie_tol);

    std::set<int> distances;
    report.verdict = Verdict::Holds;
    for (int v : report.extremal_max_set) {
        const DistanceReport from_v = bfs_distances(g, v);
        for (int w : report.extremal_min_set) {
            const int d = from_v.dist[static_cast<std::size_t>(w)];
            distances.insert(d);
            if (d < report.diameter && report.verdict == Verdict::Holds) {
                report.verdict = Verdict::Violated;
                report.witness = VertexPair{v, w};
            }
        }
    }
    report.extremal_pair_distances.assign(distances.begin(), distances.end());
    return report;
}

ConjectureReport check_conjecture(const Graph& g, double tie_tol) {
    if (g.vertex_count() < 2) {
        throw std::invalid_argument("conjecture check needs at least 2 vertices");
    }
    if (!is_connected(g)) {
        throw std::invalid_argument("conjecture check requires a connected graph");
    }
    return check_conjecture(g, fiedler(g), tie_tol);
}

namespace {

ScanCell scan_one_rose(int p, int s, double tie_tol) {
    ScanCell cell;
    cell.p = p;
    cell.s = s;
    try {
        const RoseParams params{p, s};
        const Graph g = build_rose(params);
        FiedlerOptions options;
        options.anchor_vertex = params.hub();
        const FiedlerResult result = fiedler(g, options);
        const ConjectureReport report = check_conjecture(g, result, tie_tol);
        cell.leaf_tip_value = result.vector(RoseParams::kLeafTip);
        cell.lambda2 = result.lambda2;
        cell.gap = result.gap.value_or(0.0);
        cell.verdict = report.verdict;
        cell.diameter = report.diameter;
        if (!report.extremal_pair_distances.empty()) {
            cell.min_extremal_distance = report.extremal_pair_distances.front();
        }
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

std::vector<ScanCell> scan_rose_family(IntRange petals, IntRange stems, int threads,
                                       double tie_tol) {
    if (petals.lo < 1 || stems.lo < 1) {
        throw std::invalid_argument("scan ranges require p, s >= 1");
    }
    if (petals.hi < petals.lo || stems.hi < stems.lo) {
        throw std::invalid_argument("scan range is empty (hi < lo)");
    }
    const std::int64_t p_count = petals.hi - petals.lo + 1;
    const std::int64_t s_count = stems.hi - stems.lo + 1;
    std::vector<ScanCell> cells(static_cast<std::size_t>(p_count * s_count));
    parallel_for(p_count * s_count, threads, [&](std::int64_t i) {
        const int s = stems.lo + static_cast<int>(i / p_count);
        const int p = petals.lo + static_cast<int>(i % p_count);
        cells[static_cast<std::size_t>(i)] = scan_one_rose(p, s, tie_tol);
    });
    return cells;
}

SearchReport search_random_trees(int n, std::uint64_t instances, std::uint64_t seed, int threads,
                                 double tie_tol) {
    if (n < 3) {
        throw std::invalid_argument("random-tree search requires n >= 3");
    }

    struct Slot {
        Verdict verdict = Verdict::Holds;
        std::uint64_t sub_seed = 0;
        std::optional<ConjectureReport> report;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(instances));

    parallel_for(static_cast<std::int64_t>(instances), threads, [&](std::int64_t i) {
        Slot& slot = slots[static_cast<std::size_t>(i)];
        slot.sub_seed = derive_stream_seed(seed, static_cast<std::uint64_t>(i));
        const Graph g = random_tree(n, slot.sub_seed);
        ConjectureReport report = check_conjecture(g, tie_tol);
        slot.verdict = report.verdict;
        if (report.verdict == Verdict::Violated) {
            slot.report = std::move(report);
        }
    });

    SearchReport out;
    out.instances_checked = instances;
    for (std::uint64_t i = 0; i < instances; ++i) {
        Slot& slot = slots[static_cast<std::size_t>(i)];
        if (slot.verdict == Verdict::Degenerate) {
            ++out.degenerate_skipped;
        } else if (slot.verdict == Verdict::Violated) {
            out.violations.push_back(Violation{i, slot.sub_seed, n, std::move(*slot.report)});
        }
    }
    return out;
}

std::optional<int> minimal_violating_p(int s, int p_max, double tie_tol) {
    if (s < 1) throw std::invalid_argument("stem length must be >= 1");
    for (int p = 1; p <= p_max; ++p) {
        const Graph g = build_rose(RoseParams{p, s});
        if (check_conjecture(g, tie_tol).verdict == Verdict::Violated) return p;
    }
    return std::nullopt;
}

}  // namespace fiedlerlab
