#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/graph.hpp"
#include "brwlab/gw.hpp"

namespace brwlab {

// Subtree T_N of the family tree: the edge above v is retained iff its
// image edge in the base graph has at most N tree preimages (counting both
// traversal directions, matching the undirected trace counts). Retention
// is monotone in N.
struct SubtreeTN {
    int threshold = 0;
    std::vector<std::uint8_t> edge_retained;     // per vertex, edge (v-, v); [0] unused
    std::vector<std::uint8_t> in_root_component; // per vertex
    std::size_t retained_edge_count = 0;
    std::size_t root_component_size = 0;
};

SubtreeTN build_t_n(const LabelledTree& labelled, const PositionMap& positions, int N);

// Antisymmetric edge flow. Values are stored once per undirected edge,
// keyed by the ordered pair (min, max) with the sign convention
// theta(min -> max); theta(max -> min) is its negation. Unit resistances.
struct FlowAssignment {
    std::uint32_t source = 0;
    std::unordered_map<std::uint64_t, double> theta;

    static std::uint64_t key(std::uint32_t a, std::uint32_t b);
    void add(std::uint32_t from, std::uint32_t to, double value);
    double between(std::uint32_t from, std::uint32_t to) const;
};

// Net divergence sum_{e- = x} theta(e) for every vertex with incident flow.
std::unordered_map<std::uint32_t, double> flow_divergence(const FlowAssignment& flow);

struct EnergyReport {
    double energy = 0.0; // sum over undirected edges of r(e) theta(e)^2
    std::size_t edge_count = 0;
    double max_edge_flow = 0.0;
};

EnergyReport flow_energy(const FlowAssignment& flow);

// Unit flow from the root to the truncation level: at each vertex the
// incoming flow splits equally among children whose subtree reaches the
// truncation depth (within the T_N root component when one is given).
// Throws validation_error("no surviving ray") when no path reaches depth.
FlowAssignment unit_flow_on_tree(const RootedTree& tree, int depth,
                                 const SubtreeTN* restriction = nullptr);

// Pushes a tree flow through v -> S_v: theta_G(<x,y>) sums theta(<v-,v>)
// over retained tree edges mapping onto <x,y>. Result lives on trace
// vertex ids.
FlowAssignment induce_flow(const FlowAssignment& tree_flow, const RootedTree& tree,
                           const SubtreeTN& subtree, const PositionMap& positions,
                           const TraceNetwork& net);

// Effective resistance between a source and a grounded sink set with unit
// conductances, from the discrete Dirichlet problem solved by Jacobi-
// preconditioned conjugate gradients (residual <= tol, default 1e-9).
double effective_resistance(const IndexedGraph& g, std::uint32_t source,
                            std::span<const std::uint32_t> sinks, double tol = 1e-9,
                            int max_iterations = 100000);

// Shell helper: all vertices at Cayley distance >= radius in a network.
std::vector<std::uint32_t> shell_vertices(const TraceNetwork& net, int radius);

// Exact infimum over cutsets within the truncation of sum lambda^{-|v|},
// by the recursion value(v) = min(lambda^{-|v|}, sum over children);
// returns the value at the root's children. Positive values stable in
// depth witness branching number > lambda.
double cutset_infimum(const RootedTree& tree, double lambda, int depth,
                      const SubtreeTN* restriction = nullptr);

} // namespace brwlab
