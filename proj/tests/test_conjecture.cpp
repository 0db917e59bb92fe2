#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fiedlerlab/conjecture.hpp"
#include "fiedlerlab/graph.hpp"
#include "support.hpp"

using namespace fiedlerlab;
using testsupport::conjecture_report_consistent;

TEST_CASE("the wide rose violates, the trimmed rose holds") {
    const ConjectureReport wide = check_conjecture(build_rose(RoseParams{11, 5}));
    CHECK(wide.verdict == Verdict::Violated);
    CHECK(wide.diameter == 8);
    CHECK(wide.extremal_pair_distances == std::vector<int>{7});
    REQUIRE(wide.witness.has_value());
    CHECK(wide.is_tree);
    CHECK(conjecture_report_consistent(wide));

    // One extreme is the stem tip, the other the petal set; orientation
    // decides which side is max.
    const RoseParams params{11, 5};
    std::vector<int> petals;
    for (int j = 0; j < params.petals; ++j) petals.push_back(params.first_petal() + j);
    const bool tip_is_max = wide.extremal_max_set == std::vector<int>{params.stem_tip()};
    if (tip_is_max) {
        CHECK(wide.extremal_min_set == petals);
    } else {
        CHECK(wide.extremal_max_set == petals);
        CHECK(wide.extremal_min_set == std::vector<int>{params.stem_tip()});
    }

    const ConjectureReport narrow = check_conjecture(build_rose(RoseParams{3, 5}));
    CHECK(narrow.verdict == Verdict::Holds);
    CHECK(narrow.diameter == 8);
    CHECK(narrow.extremal_pair_distances == std::vector<int>{8});
    CHECK_FALSE(narrow.witness.has_value());
    CHECK(conjecture_report_consistent(narrow));
    const std::vector<int> leaf{0};
    const std::vector<int> tip{8};
    CHECK((narrow.extremal_max_set == leaf || narrow.extremal_max_set == tip));
}

TEST_CASE("paths hold with extremes at the endpoints") {
    for (int n = 2; n <= 15; ++n) {
        const ConjectureReport report = check_conjecture(build_path(n));
        CAPTURE(n);
        CHECK(report.verdict == Verdict::Holds);
        CHECK(report.diameter == n - 1);
        std::vector<int> ends{report.extremal_max_set.front(), report.extremal_min_set.front()};
        std::sort(ends.begin(), ends.end());
        CHECK(ends == std::vector<int>{0, n - 1});
        CHECK(conjecture_report_consistent(report));
    }
}

TEST_CASE("degenerate lambda2 suppresses the check") {
    const ConjectureReport report = check_conjecture(build_star(5));
    CHECK(report.verdict == Verdict::Degenerate);
    CHECK(report.extremal_max_set.empty());
    CHECK(report.extremal_min_set.empty());
    CHECK(report.extremal_pair_distances.empty());
    CHECK_FALSE(report.witness.has_value());
    CHECK(report.diameter == 2);
    CHECK(conjecture_report_consistent(report));
}

TEST_CASE("non-trees are checked anyway and labeled") {
    // Triangle with a two-edge tail: connected, unicyclic, simple lambda2.
    const Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
    const ConjectureReport report = check_conjecture(g);
    CHECK_FALSE(report.is_tree);
    CHECK(report.verdict != Verdict::Degenerate);
    CHECK(conjecture_report_consistent(report));
}

TEST_CASE("bad inputs raise") {
    CHECK_THROWS_WITH_AS(check_conjecture(Graph(4, {{0, 1}, {2, 3}})),
                         doctest::Contains("connected"), std::invalid_argument);
    CHECK_THROWS_AS(check_conjecture(Graph(1, {})), std::invalid_argument);
}

TEST_CASE("verdicts are orientation independent") {
    for (auto [p, s] : {std::pair{11, 5}, {3, 5}, {5, 2}}) {
        const RoseParams params{p, s};
        const Graph g = build_rose(params);

        FiedlerOptions hub_anchor;
        hub_anchor.anchor_vertex = params.hub();
        const ConjectureReport a = check_conjecture(g, fiedler(g, hub_anchor));
        const ConjectureReport b = check_conjecture(g, fiedler(g));

        CHECK(a.verdict == b.verdict);
        CHECK(a.extremal_pair_distances == b.extremal_pair_distances);
        const bool same = a.extremal_max_set == b.extremal_max_set &&
                          a.extremal_min_set == b.extremal_min_set;
        const bool swapped = a.extremal_max_set == b.extremal_min_set &&
                             a.extremal_min_set == b.extremal_max_set;
        CHECK((same || swapped));
    }
}

TEST_CASE("enlarging tie_tol never turns VIOLATED into HOLDS") {
    auto rank = [](Verdict v) { return v == Verdict::Violated ? 1 : 0; };
    for (int p = 1; p <= 6; ++p) {
        for (int s = 1; s <= 6; ++s) {
            const Graph g = build_rose(RoseParams{p, s});
            const ConjectureReport fine = check_conjecture(g, 1e-9);
            const ConjectureReport coarse = check_conjecture(g, 1e-2);
            if (fine.verdict == Verdict::Degenerate) continue;
            CAPTURE(p);
            CAPTURE(s);
            CHECK(rank(coarse.verdict) >= rank(fine.verdict));
            // Coarse sets contain the fine sets.
            for (int v : fine.extremal_max_set) {
                CHECK(std::find(coarse.extremal_max_set.begin(), coarse.extremal_max_set.end(),
                                v) != coarse.extremal_max_set.end());
            }
        }
    }
}

TEST_CASE("scan reproduces the stem-5 sweep") {
    const auto cells = scan_rose_family(IntRange{1, 12}, IntRange{5, 5});
    REQUIRE(cells.size() == 12);
    for (const auto& cell : cells) {
        CAPTURE(cell.p);
        REQUIRE(cell.error.empty());
        CHECK(cell.s == 5);
        CHECK(cell.diameter == 8);
        if (cell.p <= 3) {
            CHECK(cell.verdict == Verdict::Holds);
            CHECK(cell.min_extremal_distance == 8);
        } else {
            CHECK(cell.verdict == Verdict::Violated);
            CHECK(cell.min_extremal_distance == 7);
        }
    }
    CHECK(std::abs(cells[10].leaf_tip_value - -0.0093) <= 1e-3);
    CHECK(std::abs(cells[9].leaf_tip_value - 0.0074) <= 1e-3);
    CHECK(std::abs(cells[2].leaf_tip_value - 0.2514) <= 1e-3);
    CHECK(std::abs(cells[10].lambda2 - 0.0800) <= 1e-3);
}

TEST_CASE("scan is row-major over (s, p) and thread-count independent") {
    const auto sequential = scan_rose_family(IntRange{1, 5}, IntRange{1, 4}, 1);
    const auto parallel = scan_rose_family(IntRange{1, 5}, IntRange{1, 4}, 8);
    REQUIRE(sequential.size() == 20);
    REQUIRE(parallel.size() == 20);
    for (std::size_t i = 0; i < sequential.size(); ++i) {
        CHECK(sequential[i].p == 1 + static_cast<int>(i % 5));
        CHECK(sequential[i].s == 1 + static_cast<int>(i / 5));
        CHECK(sequential[i].p == parallel[i].p);
        CHECK(sequential[i].s == parallel[i].s);
        CHECK(sequential[i].leaf_tip_value == parallel[i].leaf_tip_value);
        CHECK(sequential[i].lambda2 == parallel[i].lambda2);
        CHECK(sequential[i].verdict == parallel[i].verdict);
    }
}

TEST_CASE("scan range validation") {
    CHECK_THROWS_WITH_AS(scan_rose_family(IntRange{0, 3}, IntRange{1, 2}),
                         doctest::Contains(">= 1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(scan_rose_family(IntRange{2, 1}, IntRange{1, 2}),
                         doctest::Contains("empty"), std::invalid_argument);
}

TEST_CASE("search: n = 3 never violates and instances = 0 is empty") {
    const SearchReport none = search_random_trees(3, 0, 9);
    CHECK(none.instances_checked == 0);
    CHECK(none.violations.empty());
    CHECK(none.degenerate_skipped == 0);

    const SearchReport tiny = search_random_trees(3, 100, 9);
    CHECK(tiny.instances_checked == 100);
    CHECK(tiny.violations.empty());

    CHECK_THROWS_AS(search_random_trees(2, 10, 0), std::invalid_argument);
}

TEST_CASE("search is deterministic and thread-count independent") {
    const SearchReport a = search_random_trees(9, 300, 123, 1);
    const SearchReport b = search_random_trees(9, 300, 123, 8);
    CHECK(a.instances_checked == b.instances_checked);
    CHECK(a.degenerate_skipped == b.degenerate_skipped);
    REQUIRE(a.violations.size() == b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) {
        CHECK(a.violations[i].instance == b.violations[i].instance);
        CHECK(a.violations[i].seed == b.violations[i].seed);
        CHECK(a.violations[i].report.verdict == b.violations[i].report.verdict);
    }

    // The recorded sub-seed regenerates the violating tree exactly.
    for (const auto& violation : a.violations) {
        const Graph g = random_tree(violation.n, violation.seed);
        const ConjectureReport replay = check_conjecture(g);
        CHECK(replay.verdict == Verdict::Violated);
        CHECK(replay.diameter == violation.report.diameter);
        CHECK(conjecture_report_consistent(replay));
    }
}

TEST_CASE("search counts degenerate instances separately") {
    // n = 4: stars are 4 of the 16 labeled trees and their lambda2 is double.
    const SearchReport report = search_random_trees(4, 200, 11);
    CHECK(report.instances_checked == 200);
    CHECK(report.degenerate_skipped > 0);
    CHECK(report.degenerate_skipped < 200);
    CHECK(report.violations.empty());  // paths and stars only at n = 4
}

TEST_CASE("every report from a random-tree sweep is internally consistent") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Graph g = random_tree(12, seed);
        const ConjectureReport report = check_conjecture(g);
        CAPTURE(seed);
        CHECK(conjecture_report_consistent(report));
    }
}

TEST_CASE("minimal violating petal count at stem 5") {
    // Golden fixture: first computed with the dense oracle, pinned since.
    const auto p = minimal_violating_p(5, 11);
    REQUIRE(p.has_value());
    CHECK(*p == 4);
    CHECK(*p > 3);

    CHECK_FALSE(minimal_violating_p(5, 3).has_value());
    CHECK_THROWS_AS(minimal_violating_p(0, 5), std::invalid_argument);
}
