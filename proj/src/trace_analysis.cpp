#include "brwlab/trace_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brwlab/errors.hpp"

namespace brwlab {

namespace {

WalkStats run_walks(const TraceNetwork& net, long steps, int replicas, RandomStream& rng,
                    bool biased) {
    if (replicas < 1 || steps < 1) throw validation_error("walk needs steps and replicas >= 1");
    const IndexedGraph& g = net.graph;
    if (g.n == 0 || g.degree(net.root) == 0)
        throw validation_error("walk needs a connected network with edges");

    // Prefix sums of traversal counts per vertex for the biased kernel.
    std::vector<std::vector<std::uint64_t>> prefix;
    if (biased) {
        prefix.resize(g.n);
        for (std::uint32_t v = 0; v < g.n; ++v) {
            std::uint64_t acc = 0;
            prefix[v].reserve(g.degree(v));
            for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
                acc += net.traversals[g.adj_edge[i]];
                prefix[v].push_back(acc);
            }
        }
    }

    WalkStats stats;
    stats.replicas = replicas;
    stats.steps = steps;
    stats.return_counts.assign(static_cast<std::size_t>(replicas), 0);
    int escapes = 0;
    double total = 0.0;
    for (int r = 0; r < replicas; ++r) {
        std::uint32_t pos = net.root;
        std::uint32_t returns = 0;
        for (long s = 0; s < steps; ++s) {
            const std::uint32_t deg = g.degree(pos);
            std::uint32_t idx;
            if (!biased) {
                idx = rng.next_below(deg);
            } else {
                const auto& pre = prefix[pos];
                const std::uint64_t w = pre.back();
                const std::uint64_t u = rng.next_u64() % w; // w is tiny vs 2^64
                idx = static_cast<std::uint32_t>(
                    std::upper_bound(pre.begin(), pre.end(), u) - pre.begin());
            }
            pos = g.adj_vertex[g.adj_offset[pos] + idx];
            if (pos == net.root) ++returns;
        }
        stats.return_counts[static_cast<std::size_t>(r)] = returns;
        if (returns == 0) ++escapes;
        total += returns;
    }
    stats.escape_fraction = static_cast<double>(escapes) / replicas;
    stats.mean_return_count = total / replicas;
    return stats;
}

} // namespace

WalkStats srw_on_trace(const TraceNetwork& net, long steps, int replicas, RandomStream& rng) {
    return run_walks(net, steps, replicas, rng, false);
}

WalkStats biased_walk_pn(const TraceNetwork& net, long steps, int replicas, RandomStream& rng) {
    for (std::uint64_t t : net.traversals)
        if (t < 1) throw validation_error("biased walk requires all N(x,y) >= 1");
    return run_walks(net, steps, replicas, rng, true);
}

std::vector<std::pair<std::uint32_t, double>> biased_step_law(const TraceNetwork& net,
                                                              std::uint32_t from) {
    const IndexedGraph& g = net.graph;
    std::uint64_t total = 0;
    for (std::uint32_t i = g.adj_offset[from]; i < g.adj_offset[from + 1]; ++i)
        total += net.traversals[g.adj_edge[i]];
    std::vector<std::pair<std::uint32_t, double>> law;
    for (std::uint32_t i = g.adj_offset[from]; i < g.adj_offset[from + 1]; ++i)
        law.emplace_back(g.adj_vertex[i],
                         static_cast<double>(net.traversals[g.adj_edge[i]]) /
                             static_cast<double>(total));
    return law;
}

SpectralEstimate estimate_spectral_radius(const KernelMatrix& kernel, double tol,
                                          int max_iterations) {
    if (kernel.n == 0) throw validation_error("spectral estimate needs a non-empty kernel");
    const std::uint32_t n = kernel.n;
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> mv(n, 0.0);
    double lambda = 0.0;
    double residual = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        std::fill(mv.begin(), mv.end(), 0.0);
        for (std::uint32_t row = 0; row < n; ++row) {
            double acc = 0.0;
            for (std::uint32_t j = kernel.row_offset[row]; j < kernel.row_offset[row + 1]; ++j)
                acc += kernel.value[j] * v[kernel.col[j]];
            mv[row] = acc;
        }
        lambda = std::inner_product(v.begin(), v.end(), mv.begin(), 0.0);
        double res2 = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            const double d = mv[i] - lambda * v[i];
            res2 += d * d;
        }
        residual = std::sqrt(res2);
        if (residual <= tol) {
            SpectralEstimate est;
            est.radius = kernel.radius;
            est.value = lambda;
            est.iterations = it;
            est.residual = residual;
            return est;
        }
        // Iterate on M + I: same Perron vector, but the spectrum is shifted
        // to [0, 1 + lambda_max], which kills the period-2 oscillation on
        // bipartite kernels (their spectra are symmetric around 0).
        double norm2 = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            mv[i] += v[i];
            norm2 += mv[i] * mv[i];
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::uint32_t i = 0; i < n; ++i) v[i] = mv[i] * inv;
    }
    throw convergence_error("power iteration did not converge", residual);
}

KernelMatrix cayley_ball_kernel(const GroupSpec& spec, int radius,
                                std::size_t vertex_budget) {
    if (radius < 1) throw validation_error("kernel ball radius must be >= 1");
    const TraceNetwork ball = cayley_ball_network(spec, radius, vertex_budget);
    const IndexedGraph& g = ball.graph;
    // Killed restriction of the Cayley SRW: rows keep the full Cayley
    // degree, transitions leaving the ball are dropped, so boundary rows
    // are substochastic.
    const double p = 1.0 / spec.degree();
    KernelMatrix kernel;
    kernel.n = g.n;
    kernel.radius = radius;
    kernel.row_offset.assign(g.adj_offset.begin(), g.adj_offset.end());
    kernel.col.assign(g.adj_vertex.begin(), g.adj_vertex.end());
    kernel.value.assign(g.adj_vertex.size(), p);
    return kernel;
}

KernelMatrix network_ball_kernel(const TraceNetwork& net, int radius) {
    const IndexedGraph& g = net.graph;
    std::vector<std::uint32_t> keep;
    std::vector<std::uint32_t> id(g.n, 0xFFFFFFFFu);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (radius < 0 || net.cayley_dist[v] <= static_cast<std::uint32_t>(radius)) {
            id[v] = static_cast<std::uint32_t>(keep.size());
            keep.push_back(v);
        }
    }
    if (keep.empty()) throw validation_error("kernel restriction is empty");
    KernelMatrix kernel;
    kernel.n = static_cast<std::uint32_t>(keep.size());
    kernel.radius = radius < 0 ? static_cast<int>(net.extent) : radius;
    kernel.row_offset.assign(kernel.n + 1, 0);
    for (std::uint32_t i = 0; i < kernel.n; ++i) {
        const std::uint32_t v = keep[i];
        std::uint32_t cnt = 0;
        for (std::uint32_t j = g.adj_offset[v]; j < g.adj_offset[v + 1]; ++j)
            if (id[g.adj_vertex[j]] != 0xFFFFFFFFu) ++cnt;
        kernel.row_offset[i + 1] = kernel.row_offset[i] + cnt;
    }
    kernel.col.resize(kernel.row_offset.back());
    kernel.value.resize(kernel.row_offset.back());
    std::uint32_t cursor = 0;
    for (std::uint32_t i = 0; i < kernel.n; ++i) {
        const std::uint32_t v = keep[i];
        for (std::uint32_t j = g.adj_offset[v]; j < g.adj_offset[v + 1]; ++j) {
            const std::uint32_t w = g.adj_vertex[j];
            if (id[w] == 0xFFFFFFFFu) continue;
            kernel.col[cursor] = id[w];
            // Symmetrized SRW entry sqrt(1/deg(v) * 1/deg(w)); degrees are
            // full network degrees, so boundary rows stay substochastic.
            kernel.value[cursor] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)) *
                                                   static_cast<double>(g.degree(w)));
            ++cursor;
        }
    }
    return kernel;
}

KernelMatrix regular_tree_radial_kernel(int degree, int radius) {
    if (degree < 2) throw validation_error("radial reduction needs tree degree >= 2");
    if (radius < 1) throw validation_error("kernel ball radius must be >= 1");
    const auto n = static_cast<std::uint32_t>(radius + 1);
    const double d = degree;
    KernelMatrix kernel;
    kernel.n = n;
    kernel.radius = radius;
    kernel.row_offset.assign(n + 1, 0);
    // Radial chain: p(0 -> 1) = 1, p(k -> k+1) = (d-1)/d, p(k -> k-1) = 1/d.
    // Symmetrized off-diagonals: sqrt(1 * 1/d) at the root link,
    // sqrt((d-1)/d * 1/d) in the interior.
    std::vector<std::pair<std::uint32_t, double>> entries;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double up = i == 1 ? std::sqrt(1.0 / d) : std::sqrt((d - 1.0)) / d;
            entries.emplace_back(i - 1, up);
            kernel.row_offset[i + 1]++;
        }
        if (i + 1 < n) {
            const double down = i == 0 ? std::sqrt(1.0 / d) : std::sqrt((d - 1.0)) / d;
            entries.emplace_back(i + 1, down);
            kernel.row_offset[i + 1]++;
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) kernel.row_offset[i + 1] += kernel.row_offset[i];
    kernel.col.resize(entries.size());
    kernel.value.resize(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        kernel.col[i] = entries[i].first;
        kernel.value[i] = entries[i].second;
    }
    return kernel;
}

KernelMatrix path_segment_kernel(int k) {
    if (k < 1) throw validation_error("segment length must be >= 1");
    const auto n = static_cast<std::uint32_t>(k);
    KernelMatrix kernel;
    kernel.n = n;
    kernel.radius = k;
    kernel.row_offset.assign(n + 1, 0);
    std::vector<std::pair<std::uint32_t, double>> entries;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (i > 0) {
            entries.emplace_back(i - 1, 0.5);
            kernel.row_offset[i + 1]++;
        }
        if (i + 1 < n) {
            entries.emplace_back(i + 1, 0.5);
            kernel.row_offset[i + 1]++;
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) kernel.row_offset[i + 1] += kernel.row_offset[i];
    kernel.col.resize(entries.size());
    kernel.value.resize(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        kernel.col[i] = entries[i].first;
        kernel.value[i] = entries[i].second;
    }
    return kernel;
}

SpectralEstimate base_group_spectral_radius(const GroupSpec& spec, int radius) {
    const bool all_two = spec.family == GroupFamily::free_product &&
                         std::all_of(spec.orders.begin(), spec.orders.end(),
                                     [](int n) { return n == 2; });
    if (spec.family == GroupFamily::free_group || all_two) {
        const int degree = spec.degree();
        const int r = radius > 0 ? radius : 150;
        return estimate_spectral_radius(regular_tree_radial_kernel(degree, r));
    }
    if (spec.family == GroupFamily::free_abelian) {
        const int r = radius > 0 ? radius : (spec.rank == 1 ? 100 : spec.rank == 2 ? 40 : 12);
        return estimate_spectral_radius(cayley_ball_kernel(spec, r));
    }
    // Mixed free products: explicit ball, radius limited by growth.
    const int r = radius > 0 ? radius : 9;
    return estimate_spectral_radius(cayley_ball_kernel(spec, r, 4'000'000));
}

double segment_rho_lower_bound(int k) {
    if (k < 1) throw validation_error("segment length must be >= 1");
    return std::cos(3.14159265358979323846 / (k + 1));
}

int SegmentCensus::count_at_least(int k) const {
    int count = 0;
    for (int len : maximal_lengths)
        if (len >= k) ++count;
    return count;
}

SegmentCensus find_line_segments(const TraceNetwork& net) {
    const IndexedGraph& g = net.graph;
    SegmentCensus census;
    std::vector<std::uint8_t> edge_used(g.edge_count(), 0);

    auto walk_chain = [&](std::uint32_t start, std::uint32_t first_edge) {
        // Walk from an anchor through degree-2 vertices, marking edges.
        int length = 0;
        std::uint32_t prev = start;
        std::uint32_t edge = first_edge;
        while (true) {
            edge_used[edge] = 1;
            ++length;
            const auto [a, b] = g.edges[edge];
            const std::uint32_t next = a == prev ? b : a;
            if (g.degree(next) != 2) break;
            const std::uint32_t e0 = g.adj_edge[g.adj_offset[next]];
            const std::uint32_t e1 = g.adj_edge[g.adj_offset[next] + 1];
            const std::uint32_t cont = e0 == edge ? e1 : e0;
            if (edge_used[cont]) break; // closed a cycle of degree-2 vertices
            prev = next;
            edge = cont;
        }
        return length;
    };

    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (g.degree(v) == 2) continue; // interior vertex, handled from anchors
        for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
            const std::uint32_t e = g.adj_edge[i];
            if (!edge_used[e]) census.maximal_lengths.push_back(walk_chain(v, e));
        }
    }
    // Components that are pure cycles of degree-2 vertices: a cycle of c
    // edges contains an interior-degree-2 path of c-1 edges.
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (g.degree(v) != 2) continue;
        const std::uint32_t e = g.adj_edge[g.adj_offset[v]];
        if (!edge_used[e]) {
            const int cycle = walk_chain(v, e);
            census.maximal_lengths.push_back(std::max(1, cycle - 1));
        }
    }
    std::sort(census.maximal_lengths.rbegin(), census.maximal_lengths.rend());
    census.longest = census.maximal_lengths.empty() ? 0 : census.maximal_lengths.front();
    return census;
}

int find_line_segments(const TraceNetwork& net, int k) {
    if (k < 1) throw validation_error("segment length must be >= 1");
    return find_line_segments(net).count_at_least(k);
}

std::vector<std::uint64_t> volume_growth(const TraceNetwork& net, int max_radius) {
    if (max_radius < 0) throw validation_error("max radius must be >= 0");
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_radius) + 1, 0);
    for (std::uint32_t d : net.cayley_dist)
        if (d <= static_cast<std::uint32_t>(max_radius)) ++counts[d];
    for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
    return counts;
}

std::vector<std::uint32_t> find_cutpoints(const TraceNetwork& net, int window) {
    if (window < 1) throw validation_error("cutpoint window must be >= 1");
    if (static_cast<std::uint32_t>(window) > net.extent)
        throw validation_error("cutpoint window exceeds trace extent (" +
                               std::to_string(net.extent) + ")");
    const IndexedGraph& g = net.graph;
    std::vector<std::uint8_t> is_target(g.n, 0);
    bool any_target = false;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (net.cayley_dist[v] >= static_cast<std::uint32_t>(window)) {
            is_target[v] = 1;
            any_target = true;
        }
    }
    if (!any_target) return {};

    std::vector<std::uint32_t> candidates;
    const auto half = static_cast<std::uint32_t>((window + 1) / 2);
    for (std::uint32_t x : articulation_points(g))
        if (x != net.root && net.cayley_dist[x] <= half) candidates.push_back(x);

    std::vector<std::uint32_t> cutpoints;
    std::vector<std::uint32_t> queue;
    std::vector<std::uint8_t> seen(g.n, 0);
    for (std::uint32_t x : candidates) {
        std::fill(seen.begin(), seen.end(), 0);
        queue.clear();
        seen[x] = 1; // removed
        seen[net.root] = 1;
        queue.push_back(net.root);
        bool reached = is_target[net.root];
        for (std::size_t head = 0; head < queue.size() && !reached; ++head) {
            const std::uint32_t v = queue[head];
            for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
                const std::uint32_t w = g.adj_vertex[i];
                if (seen[w]) continue;
                seen[w] = 1;
                if (is_target[w]) {
                    reached = true;
                    break;
                }
                queue.push_back(w);
            }
        }
        if (!reached) cutpoints.push_back(x);
    }
    return cutpoints;
}

int estimate_ends(const TraceNetwork& net, int radius, int probe) {
    if (probe <= radius) throw validation_error("probe radius must exceed the ball radius");
    const IndexedGraph& g = net.graph;
    // Induced subgraph on vertices with Cayley distance >= radius.
    std::vector<std::uint8_t> outside(g.n, 0);
    for (std::uint32_t v = 0; v < g.n; ++v)
        outside[v] = net.cayley_dist[v] >= static_cast<std::uint32_t>(radius);
    std::vector<std::uint8_t> seen(g.n, 0);
    std::vector<std::uint32_t> queue;
    int count = 0;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (!outside[s] || seen[s]) continue;
        bool reaches_probe = false;
        seen[s] = 1;
        queue.clear();
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t v = queue[head];
            if (net.cayley_dist[v] >= static_cast<std::uint32_t>(probe)) reaches_probe = true;
            for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
                const std::uint32_t w = g.adj_vertex[i];
                if (!outside[w] || seen[w]) continue;
                seen[w] = 1;
                queue.push_back(w);
            }
        }
        if (reaches_probe) ++count;
    }
    return count;
}

} // namespace brwlab
