#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "brwlab/graph.hpp"
#include "brwlab/group.hpp"
#include "brwlab/gw.hpp"
#include "brwlab/rng.hpp"

namespace brwlab {

// Family tree whose non-root vertices carry i.i.d. generator labels.
struct LabelledTree {
    RootedTree tree;
    std::vector<std::uint8_t> label; // label[0] unused
};

// Position S_v per tree vertex: S_root = o, S_v = S_{v-} * X_v.
struct PositionMap {
    std::vector<GroupElement> position;
};

std::pair<LabelledTree, PositionMap> run_brw(const GroupSpec& spec, const OffspringDist& dist,
                                             TreeKind kind, int depth, RandomStream& rng,
                                             std::size_t vertex_budget = default_vertex_budget);

// Recomputes S_v = S_{v-} * X_v from the labels alone.
PositionMap positions_from_labels(const GroupSpec& spec, const LabelledTree& labelled);

// Visited vertices and traversed edges of one BRW run. Edge traversal
// counts are undirected: crossings in either direction accumulate into
// one counter, so sum(traversals) == tree size - 1.
struct TraceNetwork {
    GroupSpec spec;
    IndexedGraph graph;
    std::vector<GroupElement> element;      // per vertex; element[root] == identity
    std::vector<std::uint64_t> traversals;  // per edge
    std::vector<std::uint32_t> cayley_dist; // word length per vertex
    std::uint32_t root = 0;
    std::uint32_t extent = 0;               // max cayley_dist

    std::uint64_t total_traversals() const;
};

TraceNetwork build_trace(const GroupSpec& spec, const LabelledTree& labelled,
                         const PositionMap& positions);

// Builds a TraceNetwork-shaped object directly from element pairs
// (used for controls like full balls; does not assert the trace-sum
// invariant that only holds for genuine BRW traces).
TraceNetwork make_network(const GroupSpec& spec,
                          const std::vector<std::pair<GroupElement, GroupElement>>& edges,
                          const std::vector<std::uint64_t>& counts = {});

// Full ball of the Cayley graph up to the given radius, as a network.
TraceNetwork cayley_ball_network(const GroupSpec& spec, int radius,
                                 std::size_t vertex_budget = default_vertex_budget);

struct RecurrenceReport {
    int horizon = 0;
    int replicas = 0;
    std::vector<std::uint64_t> revisits_half; // revisits among levels <= horizon/2
    std::vector<std::uint64_t> revisits_full; // revisits among levels <= horizon
    double growing_fraction = 0.0;            // fraction with full > half
    double rho_estimate = 0.0;                // spectral radius of the base graph
    double threshold = 0.0;                   // 1 / rho_estimate
    double mean = 0.0;                        // offspring mean
    std::string verdict;                      // empirical classification
};

inline constexpr std::uint64_t default_stream_budget = 4'000'000'000ULL;

// Streams BRW replicas without materializing trees (subtrees that cannot
// reach the root within the horizon are skipped; they contribute no
// revisits). Replica r uses the derived stream (seed, recurrence, r), so
// results do not depend on the thread count.
RecurrenceReport classify_recurrence(const GroupSpec& spec, const OffspringDist& dist,
                                     TreeKind kind, int horizon, int replicas,
                                     std::uint64_t master_seed, int threads = 1,
                                     std::uint64_t vertex_budget = default_stream_budget);

// Same revisit statistics for a BRW whose base graph is an arbitrary
// finite graph (SRW moves on adjacency lists). Used to run a second BRW
// on a sampled trace.
struct GraphRevisitStats {
    std::vector<std::uint64_t> revisits_half;
    std::vector<std::uint64_t> revisits_full;
    double growing_fraction = 0.0;
};

GraphRevisitStats brw_on_graph_revisits(const IndexedGraph& g, std::uint32_t root,
                                        const OffspringDist& dist, TreeKind kind, int horizon,
                                        int replicas, std::uint64_t master_seed,
                                        std::uint64_t stream_salt = 0, int threads = 1,
                                        std::uint64_t vertex_budget = default_stream_budget);

} // namespace brwlab
