#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/errors.hpp"
#include "brwlab/stats.hpp"
#include "brwlab/trace_analysis.hpp"

using namespace brwlab;

namespace {

// Manual tree builder: offspring counts per vertex in BFS order, level by level.
RootedTree tree_from_offspring(const std::vector<std::vector<int>>& counts_by_level) {
    RootedTree t;
    t.parent.push_back(0);
    t.level.push_back(0);
    t.child_offset.push_back(1);
    std::size_t frontier_begin = 0;
    for (std::size_t lvl = 0; lvl < counts_by_level.size(); ++lvl) {
        const std::size_t frontier_end = t.size();
        REQUIRE(counts_by_level[lvl].size() == frontier_end - frontier_begin);
        for (std::size_t i = 0; i < counts_by_level[lvl].size(); ++i) {
            const auto v = frontier_begin + i;
            for (int c = 0; c < counts_by_level[lvl][i]; ++c) {
                t.parent.push_back(static_cast<std::uint32_t>(v));
                t.level.push_back(static_cast<std::uint32_t>(lvl + 1));
            }
            t.child_offset.push_back(static_cast<std::uint32_t>(t.size()));
        }
        frontier_begin = frontier_end;
    }
    while (t.child_offset.size() <= t.size())
        t.child_offset.push_back(static_cast<std::uint32_t>(t.size()));
    t.depth = static_cast<int>(t.level.back());
    return t;
}

// Canonical view of a trace for isomorphism-invariance checks.
std::vector<std::tuple<std::string, std::string, std::uint64_t>> canonical_edges(
    const TraceNetwork& net) {
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> out;
    for (std::size_t e = 0; e < net.graph.edge_count(); ++e) {
        std::string a = element_to_string(net.spec, net.element[net.graph.edges[e].first]);
        std::string b = element_to_string(net.spec, net.element[net.graph.edges[e].second]);
        if (b < a) std::swap(a, b);
        out.emplace_back(std::move(a), std::move(b), net.traversals[e]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("run_brw basics") {
    const GroupSpec spec = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.5,2:0.5");
    RandomStream rng(17);

    SUBCASE("depth 0 gives a single root at the identity") {
        const auto [labelled, positions] = run_brw(spec, dist, TreeKind::gw, 0, rng);
        CHECK(labelled.tree.size() == 1);
        CHECK(positions.position[0].is_identity());
    }
    SUBCASE("level-1 positions are Cayley neighbors of the identity") {
        for (int i = 0; i < 20; ++i) {
            const auto [labelled, positions] = run_brw(spec, dist, TreeKind::gw, 1, rng);
            const auto nb = neighbors(spec, identity());
            for (std::size_t v = 1; v < labelled.tree.size(); ++v) {
                CHECK(positions.position[v].word_length() == 1);
                CHECK(std::count(nb.begin(), nb.end(), positions.position[v]) == 1);
            }
        }
    }
    SUBCASE("position invariants hold on a deep run") {
        const auto [labelled, positions] = run_brw(spec, dist, TreeKind::gw, 20, rng);
        const RootedTree& t = labelled.tree;
        for (std::size_t v = 1; v < t.size(); ++v) {
            GroupElement expect = positions.position[t.parent[v]];
            apply_generator(spec, expect, labelled.label[v]);
            CHECK(positions.position[v] == expect);
            // |S_v| <= |v|
            CHECK(positions.position[v].word_length() <= t.level[v]);
        }
    }
}

TEST_CASE("position recomputation from labels is exact for 100 random vertices") {
    const GroupSpec spec = parse_group_spec("zprod:2,3,4");
    const OffspringDist dist = parse_offspring("1:0.6,2:0.4");
    RandomStream rng(92);
    const auto [labelled, positions] = run_brw(spec, dist, TreeKind::gw, 16, rng);
    const std::size_t n = labelled.tree.size();
    for (int i = 0; i < 100; ++i) {
        const auto v = static_cast<std::uint32_t>(rng.next_below(static_cast<std::uint32_t>(n)));
        // Rebuild S_v as the label product along the root geodesic.
        std::vector<std::uint8_t> gens;
        for (std::uint32_t u = v; u != 0; u = labelled.tree.parent[u])
            gens.push_back(labelled.label[u]);
        GroupElement s;
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) apply_generator(spec, s, *it);
        CHECK(s == positions.position[v]);
    }
}

TEST_CASE("SRW distance law along the leftmost ray matches the exact convolution") {
    // Distance chain on T4: from 0 go to 1; from d >= 1 up w.p. 3/4, down 1/4.
    const int n = 10;
    std::vector<double> law(static_cast<std::size_t>(n) + 2, 0.0);
    law[0] = 1.0;
    for (int s = 0; s < n; ++s) {
        std::vector<double> next(law.size(), 0.0);
        next[1] += law[0];
        for (std::size_t d = 1; d < law.size() - 1; ++d) {
            next[d + 1] += law[d] * 0.75;
            next[d - 1] += law[d] * 0.25;
        }
        law = std::move(next);
    }

    const GroupSpec spec = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.5,2:0.5");
    RandomStream rng(31337);
    const int replicas = 4000;
    std::vector<std::uint64_t> observed(law.size(), 0);
    for (int r = 0; r < replicas; ++r) {
        const auto [labelled, positions] = run_brw(spec, dist, TreeKind::gw, n, rng);
        std::uint32_t v = 0;
        for (int l = 0; l < n; ++l) v = labelled.tree.child_begin(v); // leftmost ray
        ++observed[positions.position[v].word_length()];
    }
    // Merge bins until every expected count is at least 5.
    std::vector<std::uint64_t> obs_bins;
    std::vector<double> prob_bins;
    std::uint64_t o_acc = 0;
    double p_acc = 0.0;
    for (std::size_t d = 0; d < law.size(); ++d) {
        o_acc += observed[d];
        p_acc += law[d];
        if (p_acc * replicas >= 5.0) {
            obs_bins.push_back(o_acc);
            prob_bins.push_back(p_acc);
            o_acc = 0;
            p_acc = 0.0;
        }
    }
    if (p_acc > 0.0 && !prob_bins.empty()) {
        obs_bins.back() += o_acc;
        prob_bins.back() += p_acc;
    }
    CHECK(chi_square(obs_bins, prob_bins).p_value > 0.01);
}

TEST_CASE("build_trace counting") {
    const GroupSpec spec = parse_group_spec("free:2");

    SUBCASE("two children with the same label share one edge with N = 2") {
        LabelledTree labelled;
        labelled.tree = tree_from_offspring({{2}});
        labelled.label = {0, 0, 0}; // both children step along generator 'a'
        const PositionMap positions = positions_from_labels(spec, labelled);
        const TraceNetwork net = build_trace(spec, labelled, positions);
        CHECK(net.graph.n == 2);
        REQUIRE(net.graph.edge_count() == 1);
        CHECK(net.traversals[0] == 2);
    }
    SUBCASE("traversal counts sum to tree size - 1; edges are Cayley edges") {
        const OffspringDist dist = parse_offspring("1:0.5,2:0.5");
        RandomStream rng(6);
        for (int i = 0; i < 10; ++i) {
            const auto [labelled, positions] = run_brw(spec, dist, TreeKind::gw, 14, rng);
            const TraceNetwork net = build_trace(spec, labelled, positions);
            CHECK(net.total_traversals() == labelled.tree.size() - 1);
            CHECK(net.element[net.root].is_identity());
            for (const auto& [a, b] : net.graph.edges) {
                const GroupElement diff =
                    multiply(spec, inverse(spec, net.element[a]), net.element[b]);
                CHECK(diff.word_length() == 1);
            }
        }
    }
}

TEST_CASE("trace is invariant under tree relabeling") {
    const GroupSpec spec = parse_group_spec("free:2");
    // Root with two subtrees; swapping them (with their labels) renumbers
    // the vertices but keeps the labelled shape.
    LabelledTree first;
    first.tree = tree_from_offspring({{2}, {2, 1}});
    // vertices: 0; 1 2; 3 4 (children of 1), 5 (child of 2)
    first.label = {0, 0, 1, 2, 3, 2};
    LabelledTree swapped;
    swapped.tree = tree_from_offspring({{2}, {1, 2}});
    // vertices: 0; 1 2; 3 (child of 1), 4 5 (children of 2)
    swapped.label = {0, 1, 0, 2, 2, 3};
    const TraceNetwork net_a = build_trace(spec, first, positions_from_labels(spec, first));
    const TraceNetwork net_b =
        build_trace(spec, swapped, positions_from_labels(spec, swapped));
    CHECK(canonical_edges(net_a) == canonical_edges(net_b));
}

TEST_CASE("recurrent regime fills the local ball on Z^2") {
    const GroupSpec spec = parse_group_spec("abelian:2");
    const OffspringDist dist = parse_offspring("2:1.0"); // m = 2
    RandomStream rng(404);
    const int runs = 300;
    int filled = 0;
    for (int i = 0; i < runs; ++i) {
        const auto [labelled, positions] = run_brw(spec, dist, TreeKind::gw, 14, rng);
        const TraceNetwork net = build_trace(spec, labelled, positions);
        const auto growth = volume_growth(net, 3);
        if (growth[3] == 25) ++filled; // |B^3| in Z^2 = 2*3^2 + 2*3 + 1
    }
    CHECK(static_cast<double>(filled) / runs >= 0.99);
}

TEST_CASE("classify_recurrence crosses the free:2 threshold (small-scale)") {
    const GroupSpec spec = parse_group_spec("free:2");
    const int horizon = 30, replicas = 100;

    const RecurrenceReport super = classify_recurrence(
        spec, parse_offspring("1:0.65,2:0.35"), TreeKind::gw, horizon, replicas, 7, 2);
    CHECK(super.threshold == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-3));
    CHECK(super.growing_fraction >= 0.6); // grows toward 1 with the horizon
    CHECK(super.verdict == "recurrent-consistent");

    const RecurrenceReport sub = classify_recurrence(
        spec, parse_offspring("1:0.95,2:0.05"), TreeKind::gw, horizon, replicas, 7, 2);
    CHECK(sub.growing_fraction <= 0.2);
    CHECK(sub.verdict == "transient-consistent");
}

TEST_CASE("revisit probability is monotone in the offspring mean") {
    const GroupSpec spec = parse_group_spec("free:2");
    const int horizon = 24, replicas = 400;
    double prev = -1.0;
    for (const char* law : {"1:0.95,2:0.05", "1:0.8,2:0.2", "1:0.65,2:0.35"}) {
        const RecurrenceReport rep = classify_recurrence(
            spec, parse_offspring(law), TreeKind::gw, horizon, replicas, 11, 2);
        int revisited = 0;
        for (std::uint64_t f : rep.revisits_full)
            if (f > 0) ++revisited;
        const double frac = static_cast<double>(revisited) / replicas;
        CHECK(frac >= prev);
        prev = frac;
    }
}

TEST_CASE("classify_recurrence respects the streaming budget") {
    const GroupSpec spec = parse_group_spec("free:2");
    CHECK_THROWS_AS(classify_recurrence(spec, parse_offspring("2:1.0"), TreeKind::gw, 40, 2,
                                        1, 1, /*vertex_budget=*/100),
                    resource_error);
}

TEST_CASE("replica results are independent of the thread count") {
    const GroupSpec spec = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.8,2:0.2");
    const RecurrenceReport a = classify_recurrence(spec, dist, TreeKind::gw, 24, 50, 123, 1);
    const RecurrenceReport b = classify_recurrence(spec, dist, TreeKind::gw, 24, 50, 123, 2);
    CHECK(a.revisits_full == b.revisits_full);
    CHECK(a.revisits_half == b.revisits_half);
}

TEST_CASE("brw_on_graph_revisits explodes on a dense finite graph") {
    // BRW with m = 1.5 on a 4-cycle through the root: revisits must grow.
    const GroupSpec spec = parse_group_spec("abelian:2");
    const std::vector<std::pair<GroupElement, GroupElement>> cycle = {
        {identity(), element_from_string(spec, "a")},
        {element_from_string(spec, "a"), element_from_string(spec, "a.b")},
        {element_from_string(spec, "a.b"), element_from_string(spec, "b")},
        {element_from_string(spec, "b"), identity()},
    };
    const TraceNetwork net = make_network(spec, cycle);
    const GraphRevisitStats stats = brw_on_graph_revisits(
        net.graph, net.root, parse_offspring("1:0.5,2:0.5"), TreeKind::gw, 20, 50, 5, 0, 2);
    CHECK(stats.growing_fraction >= 0.95);
}
