#include "brwlab/graph.hpp"

#include <algorithm>

#include "brwlab/errors.hpp"

namespace brwlab {

IndexedGraph build_graph(std::uint32_t n,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    IndexedGraph g;
    g.n = n;
    g.edges = std::move(edges);
    g.adj_offset.assign(n + 1, 0);
    for (auto [a, b] : g.edges) {
        if (a >= n || b >= n) throw validation_error("edge endpoint out of range");
        if (a == b) throw validation_error("self-loops are not supported");
        ++g.adj_offset[a + 1];
        ++g.adj_offset[b + 1];
    }
    for (std::uint32_t v = 0; v < n; ++v) g.adj_offset[v + 1] += g.adj_offset[v];
    g.adj_vertex.resize(2 * g.edges.size());
    g.adj_edge.resize(2 * g.edges.size());
    std::vector<std::uint32_t> cursor(g.adj_offset.begin(), g.adj_offset.end() - 1);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        g.adj_vertex[cursor[a]] = b;
        g.adj_edge[cursor[a]++] = e;
        g.adj_vertex[cursor[b]] = a;
        g.adj_edge[cursor[b]++] = e;
    }
    return g;
}

std::vector<std::uint32_t> bfs_distances(const IndexedGraph& g, std::uint32_t start) {
    std::vector<std::uint32_t> dist(g.n, 0xFFFFFFFFu);
    std::vector<std::uint32_t> queue;
    queue.reserve(g.n);
    dist[start] = 0;
    queue.push_back(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
            const std::uint32_t w = g.adj_vertex[i];
            if (dist[w] == 0xFFFFFFFFu) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<std::uint32_t> articulation_points(const IndexedGraph& g) {
    std::vector<std::uint32_t> disc(g.n, 0), low(g.n, 0), parent(g.n, 0xFFFFFFFFu);
    std::vector<std::uint32_t> child_count(g.n, 0);
    std::vector<std::uint8_t> is_cut(g.n, 0);
    std::uint32_t timer = 1;

    struct Frame {
        std::uint32_t v;
        std::uint32_t next; // adjacency cursor
    };
    std::vector<Frame> stack;

    for (std::uint32_t root = 0; root < g.n; ++root) {
        if (disc[root]) continue;
        disc[root] = low[root] = timer++;
        stack.push_back({root, g.adj_offset[root]});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < g.adj_offset[f.v + 1]) {
                const std::uint32_t w = g.adj_vertex[f.next++];
                if (!disc[w]) {
                    parent[w] = f.v;
                    ++child_count[f.v];
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, g.adj_offset[w]});
                } else if (w != parent[f.v]) {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                const std::uint32_t v = f.v;
                stack.pop_back();
                if (!stack.empty()) {
                    const std::uint32_t p = stack.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (parent[v] == p && low[v] >= disc[p] && parent[p] != 0xFFFFFFFFu)
                        is_cut[p] = 1;
                }
            }
        }
        if (child_count[root] >= 2) is_cut[root] = 1;
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < g.n; ++v)
        if (is_cut[v]) out.push_back(v);
    return out;
}

std::vector<std::uint32_t> connected_components(const IndexedGraph& g) {
    std::vector<std::uint32_t> comp(g.n, 0xFFFFFFFFu);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (comp[s] != 0xFFFFFFFFu) continue;
        comp[s] = next;
        queue.clear();
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t v = queue[head];
            for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
                const std::uint32_t w = g.adj_vertex[i];
                if (comp[w] == 0xFFFFFFFFu) {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

IndexedGraph complete_tree_graph(int arity, int depth, std::vector<std::uint32_t>* levels) {
    if (arity < 1 || depth < 0) throw validation_error("bad complete tree parameters");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::uint32_t> lvl = {0};
    std::uint32_t frontier_begin = 0, frontier_end = 1, next = 1;
    for (int d = 0; d < depth; ++d) {
        for (std::uint32_t v = frontier_begin; v < frontier_end; ++v) {
            for (int i = 0; i < arity; ++i) {
                edges.emplace_back(v, next);
                lvl.push_back(static_cast<std::uint32_t>(d + 1));
                ++next;
            }
        }
        frontier_begin = frontier_end;
        frontier_end = next;
    }
    if (levels) *levels = lvl;
    return build_graph(next, std::move(edges));
}

} // namespace brwlab
