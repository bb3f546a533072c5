#include "brwlab/percolation.hpp"

#include <algorithm>

#include "brwlab/errors.hpp"

namespace brwlab {

UnionFind::UnionFind(std::uint32_t n) : parent_(n), size_(n, 1) {
    for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
}

std::uint32_t UnionFind::find(std::uint32_t v) {
    std::uint32_t root = v;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[v] != root) {
        const std::uint32_t next = parent_[v];
        parent_[v] = root;
        v = next;
    }
    return root;
}

void UnionFind::unite(std::uint32_t a, std::uint32_t b) {
    std::uint32_t ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
}

PercolationSample percolate(const IndexedGraph& g, std::span<const std::uint32_t> dist,
                            std::uint32_t root, double p, int window, RandomStream& rng) {
    if (p < 0.0 || p > 1.0) throw validation_error("retention probability must be in [0,1]");
    PercolationSample sample;
    sample.p = p;
    sample.edge_kept.assign(g.edge_count(), 0);
    UnionFind uf(g.n);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (rng.next_double() < p) {
            sample.edge_kept[e] = 1;
            uf.unite(g.edges[e].first, g.edges[e].second);
        }
    }
    sample.cluster.resize(g.n);
    for (std::uint32_t v = 0; v < g.n; ++v) sample.cluster[v] = uf.find(v);
    sample.root_cluster_size = uf.component_size(root);
    const std::uint32_t root_label = uf.find(root);
    for (std::uint32_t v = 0; v < g.n && !sample.crossing; ++v)
        if (sample.cluster[v] == root_label && dist[v] >= static_cast<std::uint32_t>(window))
            sample.crossing = true;
    return sample;
}

PercolationSample percolate(const TraceNetwork& net, double p, int window, RandomStream& rng) {
    return percolate(net.graph, bfs_distances(net.graph, net.root), net.root, p, window, rng);
}

namespace {

// Root-cluster crossing check by BFS over kept edges with early exit;
// `keep(e)` decides edge retention.
template <class Keep>
bool root_cluster_crosses(const IndexedGraph& g, std::span<const std::uint32_t> dist,
                          std::uint32_t root, int window, Keep&& keep,
                          std::vector<std::uint32_t>& stamp, std::uint32_t epoch,
                          std::vector<std::uint32_t>& queue) {
    if (dist[root] >= static_cast<std::uint32_t>(window)) return true;
    queue.clear();
    stamp[root] = epoch;
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
            const std::uint32_t w = g.adj_vertex[i];
            if (stamp[w] == epoch) continue;
            if (!keep(g.adj_edge[i])) continue;
            if (dist[w] >= static_cast<std::uint32_t>(window)) return true;
            stamp[w] = epoch;
            queue.push_back(w);
        }
    }
    return false;
}

} // namespace

CrossingEstimate crossing_probability(const IndexedGraph& g, std::span<const std::uint32_t> dist,
                                      std::uint32_t root, double p, int window, int replicas,
                                      RandomStream& rng) {
    const double grid[1] = {p};
    auto sweep = crossing_sweep(g, dist, root, grid, window, replicas, rng);
    return sweep.front();
}

CrossingEstimate crossing_probability(const TraceNetwork& net, double p, int window,
                                      int replicas, RandomStream& rng) {
    return crossing_probability(net.graph, bfs_distances(net.graph, net.root), net.root, p,
                                window, replicas, rng);
}

std::vector<CrossingEstimate> crossing_sweep(const IndexedGraph& g,
                                             std::span<const std::uint32_t> dist,
                                             std::uint32_t root, std::span<const double> grid,
                                             int window, int replicas, RandomStream& rng) {
    if (replicas < 1) throw validation_error("replicas must be >= 1");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw validation_error("probability grid must be strictly increasing");
    if (!grid.empty() && (grid.front() < 0.0 || grid.back() > 1.0))
        throw validation_error("probability grid must lie in [0,1]");

    std::vector<std::uint64_t> crossings(grid.size(), 0);
    std::vector<double> uniforms(g.edge_count());
    std::vector<std::uint32_t> stamp(g.n, 0);
    std::vector<std::uint32_t> queue;
    std::uint32_t epoch = 0;
    for (int r = 0; r < replicas; ++r) {
        for (double& u : uniforms) u = rng.next_double();
        // One uniform per edge shared across the grid: keep iff u < p.
        // Crossing is monotone in p replica by replica.
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            const double p = grid[gi];
            ++epoch;
            if (root_cluster_crosses(
                    g, dist, root, window,
                    [&](std::uint32_t e) { return uniforms[e] < p; }, stamp, epoch, queue))
                ++crossings[gi];
        }
    }
    std::vector<CrossingEstimate> out(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        out[gi].p = grid[gi];
        out[gi].window = window;
        out[gi].replicas = replicas;
        out[gi].fraction = static_cast<double>(crossings[gi]) / replicas;
        out[gi].ci = wilson_interval(crossings[gi], static_cast<std::uint64_t>(replicas));
    }
    return out;
}

PcEstimate estimate_pc(const IndexedGraph& g, std::span<const std::uint32_t> dist,
                       std::uint32_t root, int window, int replicas,
                       std::span<const double> grid, RandomStream& rng,
                       double low_threshold, double high_threshold) {
    PcEstimate est;
    est.window = window;
    est.sweep = crossing_sweep(g, dist, root, grid, window, replicas, rng);
    for (const CrossingEstimate& c : est.sweep) {
        if (c.fraction < low_threshold) est.lower_bracket = c.p;
        if (c.fraction > high_threshold && est.upper_bracket < 0.0) est.upper_bracket = c.p;
    }
    est.conclusive = est.lower_bracket >= 0.0 && est.upper_bracket >= 0.0 &&
                     est.lower_bracket < est.upper_bracket;
    return est;
}

PcEstimate estimate_pc(const TraceNetwork& net, int window, int replicas,
                       std::span<const double> grid, RandomStream& rng,
                       double low_threshold, double high_threshold) {
    return estimate_pc(net.graph, bfs_distances(net.graph, net.root), net.root, window,
                       replicas, grid, rng, low_threshold, high_threshold);
}

PcVerdict certify_pc_lt_1(const TraceNetwork& net, int window1, int window2, int replicas,
                          std::span<const double> grid, RandomStream& rng) {
    PcVerdict verdict;
    verdict.first = estimate_pc(net, window1, replicas, grid, rng);
    verdict.second = estimate_pc(net, window2, replicas, grid, rng);
    verdict.certified_lt_1 = verdict.first.upper_bracket > 0.0 &&
                             verdict.first.upper_bracket < 1.0 &&
                             verdict.second.upper_bracket > 0.0 &&
                             verdict.second.upper_bracket < 1.0;
    return verdict;
}

std::vector<double> default_probability_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(0.05 * i);
    return grid;
}

} // namespace brwlab
