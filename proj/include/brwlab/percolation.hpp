#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/graph.hpp"
#include "brwlab/rng.hpp"
#include "brwlab/stats.hpp"

namespace brwlab {

// Weighted quick-union with path compression.
class UnionFind {
public:
    explicit UnionFind(std::uint32_t n);
    std::uint32_t find(std::uint32_t v);
    void unite(std::uint32_t a, std::uint32_t b);
    bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
    std::uint32_t component_size(std::uint32_t v) { return size_[find(v)]; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

struct PercolationSample {
    double p = 0.0;
    std::vector<std::uint8_t> edge_kept;   // per edge
    std::vector<std::uint32_t> cluster;    // cluster label per vertex
    std::uint64_t root_cluster_size = 0;
    bool crossing = false; // root cluster touches distance >= window
};

// Bernoulli(p) bond percolation on a graph with vertex distances `dist`
// deciding the crossing shell. Clusters via union-find. The TraceNetwork
// overloads use intrinsic graph distance from the root: percolation
// clusters live on the trace itself, so its own metric (not the ambient
// Cayley metric) measures escape. The two coincide on ball controls.
PercolationSample percolate(const IndexedGraph& g, std::span<const std::uint32_t> dist,
                            std::uint32_t root, double p, int window, RandomStream& rng);

PercolationSample percolate(const TraceNetwork& net, double p, int window, RandomStream& rng);

struct CrossingEstimate {
    double p = 0.0;
    int window = 0;
    int replicas = 0;
    double fraction = 0.0;
    Interval ci; // Wilson score, 95%
};

CrossingEstimate crossing_probability(const IndexedGraph& g, std::span<const std::uint32_t> dist,
                                      std::uint32_t root, double p, int window, int replicas,
                                      RandomStream& rng);

CrossingEstimate crossing_probability(const TraceNetwork& net, double p, int window,
                                      int replicas, RandomStream& rng);

// Crossing sweep over a sorted probability grid with one uniform per edge
// shared across the grid (monotone coupling), so the crossing fraction is
// exactly non-decreasing in p on a fixed seed set.
std::vector<CrossingEstimate> crossing_sweep(const IndexedGraph& g,
                                             std::span<const std::uint32_t> dist,
                                             std::uint32_t root, std::span<const double> grid,
                                             int window, int replicas, RandomStream& rng);

// Bracket of the critical probability: largest grid p with crossing
// fraction < low_threshold and smallest with fraction > high_threshold.
struct PcEstimate {
    int window = 0;
    double lower_bracket = -1.0; // -1 when no grid point qualified
    double upper_bracket = -1.0;
    bool conclusive = false;
    std::vector<CrossingEstimate> sweep;
};

PcEstimate estimate_pc(const IndexedGraph& g, std::span<const std::uint32_t> dist,
                       std::uint32_t root, int window, int replicas,
                       std::span<const double> grid, RandomStream& rng,
                       double low_threshold = 0.05, double high_threshold = 0.5);

PcEstimate estimate_pc(const TraceNetwork& net, int window, int replicas,
                       std::span<const double> grid, RandomStream& rng,
                       double low_threshold = 0.05, double high_threshold = 0.5);

// The p_c(Tr) < 1 verdict needs an upper bracket < 1 at two window sizes.
struct PcVerdict {
    PcEstimate first;
    PcEstimate second;
    bool certified_lt_1 = false;
};

PcVerdict certify_pc_lt_1(const TraceNetwork& net, int window1, int window2, int replicas,
                          std::span<const double> grid, RandomStream& rng);

std::vector<double> default_probability_grid(); // 0.05, 0.10, ..., 1.00

} // namespace brwlab
