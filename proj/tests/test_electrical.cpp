#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/electrical.hpp"
#include "brwlab/errors.hpp"
#include "brwlab/trace_analysis.hpp"

using namespace brwlab;

namespace {

LabelledTree labelled_from(const GroupSpec& spec, const OffspringDist& dist, TreeKind kind,
                           int depth, std::uint64_t seed) {
    RandomStream rng = RandomStream::derive(seed, {stream_tag::tree});
    LabelledTree labelled;
    labelled.tree = sample_tree(dist, kind, depth, rng);
    labelled.label.assign(labelled.tree.size(), 0);
    const auto deg = static_cast<std::uint32_t>(spec.gens.size());
    for (std::size_t v = 1; v < labelled.tree.size(); ++v)
        labelled.label[v] = static_cast<std::uint8_t>(rng.next_below(deg));
    return labelled;
}

} // namespace

TEST_CASE("build_t_n retention") {
    const GroupSpec spec = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.5,2:0.5");

    SUBCASE("N at least the max preimage count retains the whole tree") {
        const LabelledTree labelled = labelled_from(spec, dist, TreeKind::gw, 10, 5);
        const PositionMap positions = positions_from_labels(spec, labelled);
        const SubtreeTN sub = build_t_n(labelled, positions, 1 << 20);
        CHECK(sub.retained_edge_count == labelled.tree.size() - 1);
        CHECK(sub.root_component_size == labelled.tree.size());
    }
    SUBCASE("N = 1 keeps exactly the once-traversed image edges") {
        LabelledTree labelled;
        labelled.tree.parent = {0, 0, 0};
        labelled.tree.level = {0, 1, 1};
        labelled.tree.child_offset = {1, 3, 3, 3};
        labelled.tree.depth = 1;
        labelled.label = {0, 0, 0}; // both edges map onto the same Cayley edge
        const PositionMap positions = positions_from_labels(spec, labelled);
        const SubtreeTN sub = build_t_n(labelled, positions, 1);
        CHECK(sub.retained_edge_count == 0);
        const SubtreeTN sub2 = build_t_n(labelled, positions, 2);
        CHECK(sub2.retained_edge_count == 2);
        CHECK_THROWS_AS(build_t_n(labelled, positions, 0), validation_error);
    }
    SUBCASE("retention is monotone in N") {
        const LabelledTree labelled = labelled_from(spec, dist, TreeKind::gw, 14, 6);
        const PositionMap positions = positions_from_labels(spec, labelled);
        std::size_t prev = 0;
        for (int n : {1, 2, 5, 10, 20}) {
            const SubtreeTN sub = build_t_n(labelled, positions, n);
            CHECK(sub.retained_edge_count >= prev);
            prev = sub.retained_edge_count;
        }
    }
    SUBCASE("transient runs rarely re-traverse: retained fraction at N=5 is high") {
        const OffspringDist thin = parse_offspring("1:0.95,2:0.05");
        double total_fraction = 0.0;
        const int runs = 100;
        for (int i = 0; i < runs; ++i) {
            const LabelledTree labelled =
                labelled_from(spec, thin, TreeKind::gw, 40, 100 + static_cast<std::uint64_t>(i));
            const PositionMap positions = positions_from_labels(spec, labelled);
            const SubtreeTN sub = build_t_n(labelled, positions, 5);
            total_fraction += static_cast<double>(sub.retained_edge_count) /
                              static_cast<double>(labelled.tree.size() - 1);
        }
        CHECK(total_fraction / runs >= 0.9);
    }
}

TEST_CASE("unit flow on regular trees: geometric-series energies") {
    RandomStream rng(3);
    SUBCASE("binary tree depth d: energy = 1 - 2^-d") {
        for (int d : {3, 6, 10}) {
            const RootedTree t = sample_tree(parse_offspring("2:1.0"), TreeKind::gw, d, rng);
            const FlowAssignment flow = unit_flow_on_tree(t, d);
            const EnergyReport energy = flow_energy(flow);
            CHECK(energy.energy ==
                  doctest::Approx(1.0 - std::pow(2.0, -d)).epsilon(1e-9));
        }
    }
    SUBCASE("3-ary tree depth d: energy = (1 - 3^-d)/2") {
        for (int d : {3, 6}) {
            const RootedTree t = sample_tree(parse_offspring("3:1.0"), TreeKind::gw, d, rng);
            const FlowAssignment flow = unit_flow_on_tree(t, d);
            const EnergyReport energy = flow_energy(flow);
            CHECK(energy.energy ==
                  doctest::Approx((1.0 - std::pow(3.0, -d)) / 2.0).epsilon(1e-9));
        }
    }
    SUBCASE("path: energy equals the depth (series resistors)") {
        RootedTree t;
        const int d = 12;
        for (int v = 0; v <= d; ++v) {
            t.parent.push_back(v == 0 ? 0 : static_cast<std::uint32_t>(v - 1));
            t.level.push_back(static_cast<std::uint32_t>(v));
            t.child_offset.push_back(static_cast<std::uint32_t>(v + 1));
        }
        t.child_offset.push_back(static_cast<std::uint32_t>(d + 1));
        t.depth = d;
        const EnergyReport energy = flow_energy(unit_flow_on_tree(t, d));
        CHECK(energy.energy == doctest::Approx(static_cast<double>(d)).epsilon(1e-12));
    }
    SUBCASE("divergence: 1 at the root, 0 at interior vertices") {
        const RootedTree t =
            sample_tree(parse_offspring("1:0.4,2:0.6"), TreeKind::gw, 8, rng);
        const FlowAssignment flow = unit_flow_on_tree(t, 8);
        const auto div = flow_divergence(flow);
        for (const auto& [v, d] : div) {
            if (v == 0) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
            else if (t.level[v] < 8) CHECK(d == doctest::Approx(0.0).epsilon(1e-12));
            else CHECK(d <= 0.0); // sinks absorb
        }
    }
    SUBCASE("no surviving ray raises") {
        RootedTree t;
        t.parent = {0};
        t.level = {0};
        t.child_offset = {1, 1};
        t.depth = 0;
        CHECK_THROWS_AS(unit_flow_on_tree(t, 1), validation_error);
    }
}

TEST_CASE("flow assignment antisymmetry surface") {
    FlowAssignment flow;
    flow.add(2, 5, 0.5);
    CHECK(flow.between(2, 5) == doctest::Approx(0.5));
    CHECK(flow.between(5, 2) == doctest::Approx(-0.5));
    flow.add(5, 2, 0.2); // accumulates as -0.2 on (2,5)
    CHECK(flow.between(2, 5) == doctest::Approx(0.3));
    CHECK_THROWS_AS(flow.add(3, 3, 1.0), validation_error);
    // Energy counts each undirected edge once: single unit edge -> 1.
    FlowAssignment unit;
    unit.add(0, 1, 1.0);
    CHECK(flow_energy(unit).energy == doctest::Approx(1.0));
    // Two edges carrying 1/2 each -> energy 1/2.
    FlowAssignment split;
    split.add(0, 1, 0.5);
    split.add(0, 2, 0.5);
    CHECK(flow_energy(split).energy == doctest::Approx(0.5));
}

TEST_CASE("induce_flow") {
    const GroupSpec spec = parse_group_spec("free:2");

    SUBCASE("injective positions preserve the energy exactly") {
        // Path tree with distinct generators: images are distinct edges.
        LabelledTree labelled;
        labelled.tree.parent = {0, 0, 1};
        labelled.tree.level = {0, 1, 2};
        labelled.tree.child_offset = {1, 2, 3, 3};
        labelled.tree.depth = 2;
        labelled.label = {0, 0, 2}; // a then b
        const PositionMap positions = positions_from_labels(spec, labelled);
        const TraceNetwork net = build_trace(spec, labelled, positions);
        const SubtreeTN sub = build_t_n(labelled, positions, 10);
        const FlowAssignment tree_flow = unit_flow_on_tree(labelled.tree, 2, &sub);
        const FlowAssignment graph_flow =
            induce_flow(tree_flow, labelled.tree, sub, positions, net);
        CHECK(flow_energy(graph_flow).energy ==
              doctest::Approx(flow_energy(tree_flow).energy).epsilon(1e-12));
    }
    SUBCASE("two tree edges with equal flow onto one graph edge double up") {
        LabelledTree labelled;
        labelled.tree.parent = {0, 0, 0};
        labelled.tree.level = {0, 1, 1};
        labelled.tree.child_offset = {1, 3, 3, 3};
        labelled.tree.depth = 1;
        labelled.label = {0, 0, 0};
        const PositionMap positions = positions_from_labels(spec, labelled);
        const TraceNetwork net = build_trace(spec, labelled, positions);
        const SubtreeTN sub = build_t_n(labelled, positions, 2);
        const FlowAssignment tree_flow = unit_flow_on_tree(labelled.tree, 1, &sub);
        const FlowAssignment graph_flow =
            induce_flow(tree_flow, labelled.tree, sub, positions, net);
        // Graph edge flow 2 * (1/2) = 1, local energy 1 <= N * (2 * (1/2)^2).
        CHECK(flow_energy(graph_flow).energy == doctest::Approx(1.0));
        CHECK(flow_energy(graph_flow).energy <=
              2.0 * flow_energy(tree_flow).energy + 1e-12);
    }
    SUBCASE("Cauchy-Schwarz bound and unit divergence on sampled runs") {
        const OffspringDist dist = parse_offspring("1:0.9,2:0.1");
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const LabelledTree labelled = labelled_from(spec, dist, TreeKind::gw, 24, seed);
            const PositionMap positions = positions_from_labels(spec, labelled);
            const TraceNetwork net = build_trace(spec, labelled, positions);
            for (int n : {2, 5}) {
                const SubtreeTN sub = build_t_n(labelled, positions, n);
                if (!sub.in_root_component[0]) continue;
                FlowAssignment tree_flow;
                try {
                    tree_flow = unit_flow_on_tree(labelled.tree, 24, &sub);
                } catch (const validation_error&) {
                    continue; // no surviving ray in T_N
                }
                const FlowAssignment graph_flow =
                    induce_flow(tree_flow, labelled.tree, sub, positions, net);
                CHECK(flow_energy(graph_flow).energy <=
                      n * flow_energy(tree_flow).energy + 1e-9);
                const auto div = flow_divergence(graph_flow);
                // Interior divergence vanishes; the source emits 1 unless it
                // is also a sink image.
                std::vector<std::uint8_t> is_sink(net.graph.n, 0);
                for (std::uint32_t v = 0; v < labelled.tree.size(); ++v)
                    if (sub.in_root_component[v] && labelled.tree.level[v] == 24) {
                        // Find the trace id of this sink image.
                        for (std::uint32_t i = 0; i < net.graph.n; ++i)
                            if (net.element[i] == positions.position[v]) is_sink[i] = 1;
                    }
                bool root_is_sink = is_sink[net.root];
                for (const auto& [v, d] : div) {
                    if (v == net.root && !root_is_sink)
                        CHECK(d == doctest::Approx(1.0).epsilon(1e-9));
                    else if (!is_sink[v] && v != net.root)
                        CHECK(d == doctest::Approx(0.0).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("effective resistance") {
    SUBCASE("path of k unit resistors") {
        for (int k : {1, 5, 30}) {
            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
            for (int i = 0; i < k; ++i)
                edges.emplace_back(static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(i + 1));
            const IndexedGraph g = build_graph(static_cast<std::uint32_t>(k + 1), edges);
            const std::vector<std::uint32_t> sinks = {static_cast<std::uint32_t>(k)};
            CHECK(effective_resistance(g, 0, sinks) ==
                  doctest::Approx(static_cast<double>(k)).epsilon(1e-7));
        }
    }
    SUBCASE("binary tree root to leaves: 1 - 2^-d, and Thomson equality") {
        RandomStream rng(1);
        const int d = 8;
        const RootedTree t = sample_tree(parse_offspring("2:1.0"), TreeKind::gw, d, rng);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        std::vector<std::uint32_t> sinks;
        for (std::uint32_t v = 1; v < t.size(); ++v) edges.emplace_back(t.parent[v], v);
        for (std::uint32_t v = 0; v < t.size(); ++v)
            if (t.level[v] == static_cast<std::uint32_t>(d)) sinks.push_back(v);
        const IndexedGraph g = build_graph(static_cast<std::uint32_t>(t.size()), edges);
        const double reff = effective_resistance(g, 0, sinks);
        CHECK(reff == doctest::Approx(1.0 - std::pow(2.0, -d)).epsilon(1e-7));
        // Thomson: R_eff <= energy of the constructed unit flow (equal here).
        const double energy = flow_energy(unit_flow_on_tree(t, d)).energy;
        CHECK(reff <= energy + 1e-7);
        CHECK(reff == doctest::Approx(energy).epsilon(1e-7));
    }
    SUBCASE("disconnected raises; sink source coincide gives zero") {
        const IndexedGraph g = build_graph(4, {{0, 1}, {2, 3}});
        const std::vector<std::uint32_t> sinks = {2};
        CHECK_THROWS_AS(effective_resistance(g, 0, sinks), validation_error);
        const std::vector<std::uint32_t> self = {0};
        CHECK(effective_resistance(g, 0, self) == doctest::Approx(0.0));
    }
    SUBCASE("Z^2 ball: R_eff grows like log n (solver as its own oracle at two scales)") {
        const TraceNetwork ball = cayley_ball_network(parse_group_spec("abelian:2"), 32);
        auto reff_to_shell = [&](int radius) {
            std::vector<std::uint32_t> sinks;
            for (std::uint32_t v = 0; v < ball.graph.n; ++v)
                if (ball.cayley_dist[v] >= static_cast<std::uint32_t>(radius))
                    sinks.push_back(v);
            return effective_resistance(ball.graph, ball.root, sinks);
        };
        const double r8 = reff_to_shell(8);
        const double r16 = reff_to_shell(16);
        const double r32 = reff_to_shell(32);
        CHECK(r16 > r8);
        CHECK(r32 > r16);
        // Additive log growth: equal increments per doubling, within 30%.
        const double d1 = r16 - r8;
        const double d2 = r32 - r16;
        CHECK(std::fabs(d2 - d1) <= 0.3 * d1);
        // Against the asymptotic slope ln(2)/(2 pi) ~ 0.110.
        CHECK(d1 == doctest::Approx(0.110).epsilon(0.35));
    }
    SUBCASE("monotone as the sink shell recedes") {
        const TraceNetwork ball = cayley_ball_network(parse_group_spec("zprod:2,2,2,2"), 8);
        double prev = 0.0;
        for (int radius : {2, 4, 6, 8}) {
            std::vector<std::uint32_t> sinks;
            for (std::uint32_t v = 0; v < ball.graph.n; ++v)
                if (ball.cayley_dist[v] >= static_cast<std::uint32_t>(radius))
                    sinks.push_back(v);
            const double r = effective_resistance(ball.graph, ball.root, sinks);
            CHECK(r >= prev - 1e-10);
            prev = r;
        }
    }
}

TEST_CASE("cutset_infimum") {
    RandomStream rng(2);
    SUBCASE("complete binary tree, lambda = 2: value 1 at every depth") {
        for (int d : {4, 8, 12}) {
            const RootedTree t = sample_tree(parse_offspring("2:1.0"), TreeKind::gw, d, rng);
            CHECK(cutset_infimum(t, 2.0, d) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("complete binary tree, lambda = 3: value (2/3)^depth") {
        for (int d : {4, 8}) {
            const RootedTree t = sample_tree(parse_offspring("2:1.0"), TreeKind::gw, d, rng);
            CHECK(cutset_infimum(t, 3.0, d) ==
                  doctest::Approx(std::pow(2.0 / 3.0, d)).epsilon(1e-12));
        }
    }
    SUBCASE("single ray, lambda = 1.1: value 1.1^-depth") {
        RootedTree t;
        const int d = 20;
        for (int v = 0; v <= d; ++v) {
            t.parent.push_back(v == 0 ? 0 : static_cast<std::uint32_t>(v - 1));
            t.level.push_back(static_cast<std::uint32_t>(v));
            t.child_offset.push_back(static_cast<std::uint32_t>(v + 1));
        }
        t.child_offset.push_back(static_cast<std::uint32_t>(d + 1));
        t.depth = d;
        CHECK(cutset_infimum(t, 1.1, d) == doctest::Approx(std::pow(1.1, -d)).epsilon(1e-12));
    }
    SUBCASE("non-increasing in lambda and in depth") {
        const RootedTree t =
            sample_tree(parse_offspring("1:0.4,2:0.6"), TreeKind::gw, 16, rng);
        double prev = 1e300;
        for (double lambda : {1.2, 1.5, 2.0, 3.0}) {
            const double v = cutset_infimum(t, lambda, 16);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        prev = 1e300;
        for (int depth : {4, 8, 12, 16}) {
            const double v = cutset_infimum(t, 1.5, depth);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("cutset_infimum respects a T_N restriction") {
    const GroupSpec spec = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.5,2:0.5");
    const LabelledTree labelled = labelled_from(spec, dist, TreeKind::gw, 12, 21);
    const PositionMap positions = positions_from_labels(spec, labelled);
    const double unrestricted = cutset_infimum(labelled.tree, 1.3, 12);
    // Pruning branches can only remove cutset mass.
    for (int n : {1, 2, 5}) {
        const SubtreeTN sub = build_t_n(labelled, positions, n);
        const double restricted = cutset_infimum(labelled.tree, 1.3, 12, &sub);
        CHECK(restricted <= unrestricted + 1e-12);
    }
}
