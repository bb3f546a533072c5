#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/errors.hpp"
#include "brwlab/percolation.hpp"

using namespace brwlab;

namespace {

// Exact finite-depth survival of Bernoulli(p) percolation on the complete
// binary tree: q_{n+1} = (1 - p + p q_n)^2, q_0 = 0; survival to depth n is
// 1 - q_n. Generating-function oracle.
double binary_tree_crossing_probability(double p, int depth) {
    double q = 0.0;
    for (int i = 0; i < depth; ++i) {
        const double t = 1.0 - p + p * q;
        q = t * t;
    }
    return 1.0 - q;
}

} // namespace

TEST_CASE("percolate extremes") {
    const TraceNetwork ball = cayley_ball_network(parse_group_spec("abelian:2"), 5);
    RandomStream rng(5);
    SUBCASE("p = 1 keeps everything; root cluster is the whole net") {
        const PercolationSample s = percolate(ball, 1.0, 5, rng);
        CHECK(s.root_cluster_size == ball.graph.n);
        CHECK(s.crossing);
        for (std::uint8_t kept : s.edge_kept) CHECK(kept == 1);
    }
    SUBCASE("p = 0 keeps nothing; all singletons; crossing false") {
        const PercolationSample s = percolate(ball, 0.0, 5, rng);
        CHECK(s.root_cluster_size == 1);
        CHECK_FALSE(s.crossing);
        for (std::uint8_t kept : s.edge_kept) CHECK(kept == 0);
    }
    SUBCASE("kept fraction within 3 sigma of p") {
        const double p = 0.37;
        const TraceNetwork big = cayley_ball_network(parse_group_spec("abelian:2"), 50);
        REQUIRE(big.graph.edge_count() >= 10000);
        const PercolationSample s = percolate(big, p, 5, rng);
        std::uint64_t kept = 0;
        for (std::uint8_t k : s.edge_kept) kept += k;
        const double n = static_cast<double>(big.graph.edge_count());
        const double sigma = std::sqrt(p * (1 - p) / n);
        CHECK(std::fabs(static_cast<double>(kept) / n - p) <= 3 * sigma);
    }
    SUBCASE("p out of range rejected") {
        CHECK_THROWS_AS(percolate(ball, 1.5, 3, rng), validation_error);
    }
}

TEST_CASE("cluster partition refines as p decreases under shared variates") {
    const TraceNetwork ball = cayley_ball_network(parse_group_spec("abelian:2"), 6);
    const IndexedGraph& g = ball.graph;
    // Shared uniforms; keep iff u < p. Clusters at the smaller p must be
    // subsets of clusters at the larger p.
    RandomStream rng(17);
    std::vector<double> uniforms(g.edge_count());
    for (double& u : uniforms) u = rng.next_double();
    auto clusters_at = [&](double p) {
        UnionFind uf(g.n);
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            if (uniforms[e] < p) uf.unite(g.edges[e].first, g.edges[e].second);
        std::vector<std::uint32_t> label(g.n);
        for (std::uint32_t v = 0; v < g.n; ++v) label[v] = uf.find(v);
        return label;
    };
    const auto coarse = clusters_at(0.7);
    const auto fine = clusters_at(0.3);
    for (std::uint32_t v = 0; v < g.n; ++v)
        for (std::uint32_t w = v + 1; w < g.n; ++w)
            if (fine[v] == fine[w]) CHECK(coarse[v] == coarse[w]);
}

TEST_CASE("crossing fraction is monotone in p under the coupled sweep") {
    const TraceNetwork ball = cayley_ball_network(parse_group_spec("abelian:2"), 8);
    RandomStream rng(23);
    const std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    const auto sweep =
        crossing_sweep(ball.graph, ball.cayley_dist, ball.root, grid, 8, 200, rng);
    for (std::size_t i = 1; i < sweep.size(); ++i)
        CHECK(sweep[i].fraction >= sweep[i - 1].fraction);
    CHECK(sweep.back().fraction == doctest::Approx(1.0)); // p = 1 always crosses
}

TEST_CASE("binary tree crossing matches the generating-function oracle") {
    std::vector<std::uint32_t> levels;
    const IndexedGraph tree = complete_tree_graph(2, 20, &levels);
    RandomStream rng(29);
    const int replicas = 400;

    SUBCASE("supercritical p = 0.6: crossing fraction >= 0.3 and near the oracle") {
        const CrossingEstimate c =
            crossing_probability(tree, levels, 0, 0.6, 20, replicas, rng);
        CHECK(c.fraction >= 0.3);
        const double oracle = binary_tree_crossing_probability(0.6, 20);
        CHECK(c.ci.low <= oracle);
        CHECK(oracle <= c.ci.high);
    }
    SUBCASE("subcritical p = 0.4: crossing fraction <= 0.05") {
        const CrossingEstimate c =
            crossing_probability(tree, levels, 0, 0.4, 20, replicas, rng);
        CHECK(c.fraction <= 0.05);
        const double oracle = binary_tree_crossing_probability(0.4, 20);
        CHECK(oracle <= 0.02);
        CHECK(c.fraction <= oracle + 3 * std::sqrt(oracle * (1 - oracle) / replicas) + 0.01);
    }
}

TEST_CASE("estimate_pc brackets 1/m on the binary tree") {
    std::vector<std::uint32_t> levels;
    const IndexedGraph tree = complete_tree_graph(2, 20, &levels);
    RandomStream rng(31);
    const auto grid = default_probability_grid();
    const PcEstimate est = estimate_pc(tree, levels, 0, 20, 200, grid, rng);
    REQUIRE(est.conclusive);
    // Exact p_c = 1/2: brackets must be consistent with it within 0.05.
    CHECK(est.lower_bracket <= 0.55);
    CHECK(est.upper_bracket >= 0.45);
    CHECK(est.lower_bracket < est.upper_bracket);
    CHECK(est.upper_bracket <= 0.75); // sanity: not wildly above criticality
}

TEST_CASE("certify_pc_lt_1 on a trace-like input") {
    // The full T4 ball percolates strictly below 1 (p_c = 1/3 on T4).
    const TraceNetwork ball = cayley_ball_network(parse_group_spec("zprod:2,2,2,2"), 9);
    RandomStream rng(41);
    const auto grid = default_probability_grid();
    const PcVerdict verdict = certify_pc_lt_1(ball, 5, 8, 150, grid, rng);
    CHECK(verdict.certified_lt_1);
    CHECK(verdict.first.upper_bracket <= 0.6);
    CHECK(verdict.second.upper_bracket <= 0.7);
}

TEST_CASE("union-find behaves") {
    UnionFind uf(6);
    CHECK_FALSE(uf.same(0, 1));
    uf.unite(0, 1);
    uf.unite(2, 3);
    CHECK(uf.same(0, 1));
    CHECK_FALSE(uf.same(1, 2));
    uf.unite(1, 3);
    CHECK(uf.same(0, 2));
    CHECK(uf.component_size(3) == 4);
    CHECK(uf.component_size(4) == 1);
}
