#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace brwlab {

// Undirected simple graph in CSR form. Edge ids index the `edges` list;
// adjacency stores (neighbor, edge id) pairs for both endpoints.
struct IndexedGraph {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::uint32_t> adj_offset;            // size n+1
    std::vector<std::uint32_t> adj_vertex;            // size 2|E|
    std::vector<std::uint32_t> adj_edge;              // size 2|E|

    std::uint32_t degree(std::uint32_t v) const { return adj_offset[v + 1] - adj_offset[v]; }
    std::size_t edge_count() const { return edges.size(); }
};

IndexedGraph build_graph(std::uint32_t n,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

// BFS distances from a start vertex; unreachable vertices get 0xFFFFFFFF.
std::vector<std::uint32_t> bfs_distances(const IndexedGraph& g, std::uint32_t start);

// Articulation points (cut vertices) by iterative lowpoint DFS.
std::vector<std::uint32_t> articulation_points(const IndexedGraph& g);

// Connected component label per vertex, labels are 0-based and assigned
// in order of the smallest vertex in each component.
std::vector<std::uint32_t> connected_components(const IndexedGraph& g);

// Complete b-ary tree of the given depth as a graph; vertex 0 is the root
// and `levels` receives each vertex's depth.
IndexedGraph complete_tree_graph(int arity, int depth, std::vector<std::uint32_t>* levels);

} // namespace brwlab
