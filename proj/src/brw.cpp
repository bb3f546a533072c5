#include "brwlab/brw.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

#include "brwlab/errors.hpp"
#include "brwlab/trace_analysis.hpp"

namespace brwlab {

std::pair<LabelledTree, PositionMap> run_brw(const GroupSpec& spec, const OffspringDist& dist,
                                             TreeKind kind, int depth, RandomStream& rng,
                                             std::size_t vertex_budget) {
    LabelledTree labelled;
    labelled.tree = sample_tree(dist, kind, depth, rng, vertex_budget);
    const std::size_t n = labelled.tree.size();
    labelled.label.assign(n, 0);
    const auto deg = static_cast<std::uint32_t>(spec.gens.size());
    for (std::size_t v = 1; v < n; ++v)
        labelled.label[v] = static_cast<std::uint8_t>(rng.next_below(deg));
    return {labelled, positions_from_labels(spec, labelled)};
}

PositionMap positions_from_labels(const GroupSpec& spec, const LabelledTree& labelled) {
    const std::size_t n = labelled.tree.size();
    if (labelled.label.size() != n)
        throw validation_error("label vector does not match the tree");
    PositionMap positions;
    positions.position.assign(n, identity());
    for (std::size_t v = 1; v < n; ++v) {
        GroupElement pos = positions.position[labelled.tree.parent[v]];
        apply_generator(spec, pos, labelled.label[v]);
        positions.position[v] = std::move(pos);
    }
    return positions;
}

std::uint64_t TraceNetwork::total_traversals() const {
    std::uint64_t total = 0;
    for (std::uint64_t t : traversals) total += t;
    return total;
}

namespace {

TraceNetwork assemble_network(const GroupSpec& spec,
                              const std::vector<GroupElement>& endpoints_a,
                              const std::vector<GroupElement>& endpoints_b,
                              const std::vector<std::uint64_t>& counts) {
    TraceNetwork net;
    net.spec = spec;
    std::unordered_map<GroupElement, std::uint32_t, ElementHash> index;
    auto intern = [&](const GroupElement& e) {
        auto [it, inserted] = index.emplace(e, static_cast<std::uint32_t>(net.element.size()));
        if (inserted) {
            net.element.push_back(e);
            net.cayley_dist.push_back(static_cast<std::uint32_t>(e.word_length()));
        }
        return it->second;
    };
    net.root = intern(identity());
    std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::size_t i = 0; i < endpoints_a.size(); ++i) {
        const std::uint32_t x = intern(endpoints_a[i]);
        const std::uint32_t y = intern(endpoints_b[i]);
        if (x == y) throw validation_error("degenerate edge in network input");
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(x, y)) << 32) | std::max(x, y);
        auto [it, inserted] = edge_index.emplace(key, static_cast<std::uint32_t>(edges.size()));
        if (inserted) {
            edges.emplace_back(std::min(x, y), std::max(x, y));
            net.traversals.push_back(0);
        }
        net.traversals[it->second] += counts.empty() ? 1 : counts[i];
    }
    net.graph = build_graph(static_cast<std::uint32_t>(net.element.size()), std::move(edges));
    net.extent = 0;
    for (std::uint32_t d : net.cayley_dist) net.extent = std::max(net.extent, d);
    return net;
}

} // namespace

TraceNetwork build_trace(const GroupSpec& spec, const LabelledTree& labelled,
                         const PositionMap& positions) {
    const std::size_t n = labelled.tree.size();
    if (positions.position.size() != n)
        throw validation_error("labelled tree and position map sizes differ");
    std::vector<GroupElement> a, b;
    a.reserve(n > 0 ? n - 1 : 0);
    b.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t v = 1; v < n; ++v) {
        a.push_back(positions.position[labelled.tree.parent[v]]);
        b.push_back(positions.position[v]);
    }
    return assemble_network(spec, a, b, {});
}

TraceNetwork make_network(const GroupSpec& spec,
                          const std::vector<std::pair<GroupElement, GroupElement>>& edges,
                          const std::vector<std::uint64_t>& counts) {
    std::vector<GroupElement> a, b;
    a.reserve(edges.size());
    b.reserve(edges.size());
    for (const auto& [x, y] : edges) {
        a.push_back(x);
        b.push_back(y);
    }
    return assemble_network(spec, a, b, counts);
}

TraceNetwork cayley_ball_network(const GroupSpec& spec, int radius,
                                 std::size_t vertex_budget) {
    if (radius < 0) throw validation_error("ball radius must be >= 0");
    std::vector<GroupElement> ball = {identity()};
    std::unordered_map<GroupElement, std::uint32_t, ElementHash> seen;
    seen.emplace(identity(), 0);
    std::size_t frontier_begin = 0;
    for (int r = 0; r < radius; ++r) {
        const std::size_t frontier_end = ball.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            const GroupElement x = ball[i];
            for (const GroupElement& y : neighbors(spec, x)) {
                if (seen.emplace(y, 0).second) {
                    if (ball.size() >= vertex_budget)
                        throw resource_error("ball vertex budget exceeded (" +
                                             std::to_string(vertex_budget) + ")");
                    ball.push_back(y);
                }
            }
        }
        frontier_begin = frontier_end;
    }
    std::vector<GroupElement> ea, eb;
    for (const GroupElement& x : ball) {
        for (const GroupElement& y : neighbors(spec, x)) {
            // Emit each in-ball edge once; words are unique per element.
            if (seen.count(y) && x.w < y.w) {
                ea.push_back(x);
                eb.push_back(y);
            }
        }
    }
    return assemble_network(spec, ea, eb, {});
}

namespace {

struct StreamTotals {
    std::uint64_t half = 0;
    std::uint64_t full = 0;
    std::uint64_t traversed = 0;
};

// Depth-first streaming of one BRW replica on the Cayley graph. Subtrees
// whose position sits farther from the identity than the remaining level
// budget are skipped: no vertex in them can map to the root within the
// horizon, so revisit counts are unaffected.
void stream_cayley_replica(const GroupSpec& spec, const OffspringDist& dist, TreeKind kind,
                           int horizon, RandomStream& rng, std::uint64_t vertex_budget,
                           StreamTotals& totals) {
    const int half_level = horizon / 2;
    const auto deg = static_cast<std::uint32_t>(spec.gens.size());
    GroupElement pos = identity();

    struct Frame {
        int children_left;
        std::uint8_t entry_gen; // generator applied when entering this vertex
    };
    std::vector<Frame> stack;
    stack.reserve(static_cast<std::size_t>(horizon) + 1);
    stack.push_back({horizon > 0 ? sample_root_offspring(dist, kind, rng) : 0, 0});
    totals.traversed += 1;

    while (!stack.empty()) {
        Frame& frame = stack.back();
        const int level = static_cast<int>(stack.size()) - 1;
        if (frame.children_left == 0 || level == horizon) {
            if (level > 0) apply_generator(spec, pos, spec.inverse_gen[frame.entry_gen]);
            stack.pop_back();
            continue;
        }
        --frame.children_left;
        const auto gen = static_cast<std::uint8_t>(rng.next_below(deg));
        apply_generator(spec, pos, gen);
        const int child_level = level + 1;
        if (static_cast<int>(pos.word_length()) > horizon - child_level) {
            apply_generator(spec, pos, spec.inverse_gen[gen]); // prune
            continue;
        }
        if (++totals.traversed > vertex_budget)
            throw resource_error("streaming vertex budget exceeded (" +
                                 std::to_string(vertex_budget) + ")");
        if (pos.is_identity()) {
            ++totals.full;
            if (child_level <= half_level) ++totals.half;
        }
        const int k = child_level < horizon ? dist.sample(rng) : 0;
        stack.push_back({k, gen});
    }
}

void stream_graph_replica(const IndexedGraph& g, const std::vector<std::uint32_t>& root_dist,
                          std::uint32_t root, const OffspringDist& dist, TreeKind kind,
                          int horizon, RandomStream& rng, std::uint64_t vertex_budget,
                          StreamTotals& totals) {
    const int half_level = horizon / 2;
    struct Frame {
        int children_left;
        std::uint32_t vertex;
    };
    std::vector<Frame> stack;
    stack.reserve(static_cast<std::size_t>(horizon) + 1);
    stack.push_back({horizon > 0 ? sample_root_offspring(dist, kind, rng) : 0, root});
    totals.traversed += 1;

    while (!stack.empty()) {
        Frame& frame = stack.back();
        const int level = static_cast<int>(stack.size()) - 1;
        if (frame.children_left == 0 || level == horizon) {
            stack.pop_back();
            continue;
        }
        --frame.children_left;
        const std::uint32_t v = frame.vertex;
        const std::uint32_t pick = rng.next_below(g.degree(v));
        const std::uint32_t w = g.adj_vertex[g.adj_offset[v] + pick];
        const int child_level = level + 1;
        if (static_cast<int>(root_dist[w]) > horizon - child_level) continue; // prune
        if (++totals.traversed > vertex_budget)
            throw resource_error("streaming vertex budget exceeded (" +
                                 std::to_string(vertex_budget) + ")");
        if (w == root) {
            ++totals.full;
            if (child_level <= half_level) ++totals.half;
        }
        const int k = child_level < horizon ? dist.sample(rng) : 0;
        stack.push_back({k, w});
    }
}

template <class ReplicaFn>
void run_replicas(int replicas, int threads, ReplicaFn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1) {
        for (int r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int r = next.fetch_add(1); r < replicas; r = next.fetch_add(1)) fn(r);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

RecurrenceReport classify_recurrence(const GroupSpec& spec, const OffspringDist& dist,
                                     TreeKind kind, int horizon, int replicas,
                                     std::uint64_t master_seed, int threads,
                                     std::uint64_t vertex_budget) {
    if (replicas < 1) throw validation_error("replicas must be >= 1");
    if (horizon < 2) throw validation_error("horizon must be >= 2");
    RecurrenceReport report;
    report.horizon = horizon;
    report.replicas = replicas;
    report.mean = dist.mean;
    report.revisits_half.assign(static_cast<std::size_t>(replicas), 0);
    report.revisits_full.assign(static_cast<std::size_t>(replicas), 0);

    run_replicas(replicas, threads, [&](int r) {
        RandomStream rng = RandomStream::derive(
            master_seed, {stream_tag::recurrence, static_cast<std::uint64_t>(r)});
        StreamTotals totals;
        stream_cayley_replica(spec, dist, kind, horizon, rng, vertex_budget, totals);
        report.revisits_half[static_cast<std::size_t>(r)] = totals.half;
        report.revisits_full[static_cast<std::size_t>(r)] = totals.full;
    });

    int growing = 0;
    for (int r = 0; r < replicas; ++r)
        if (report.revisits_full[static_cast<std::size_t>(r)] >
            report.revisits_half[static_cast<std::size_t>(r)])
            ++growing;
    report.growing_fraction = static_cast<double>(growing) / replicas;
    report.rho_estimate = base_group_spectral_radius(spec).value;
    report.threshold = 1.0 / report.rho_estimate;
    report.verdict = report.growing_fraction >= 0.5 ? "recurrent-consistent"
                                                    : "transient-consistent";
    return report;
}

GraphRevisitStats brw_on_graph_revisits(const IndexedGraph& g, std::uint32_t root,
                                        const OffspringDist& dist, TreeKind kind, int horizon,
                                        int replicas, std::uint64_t master_seed,
                                        std::uint64_t stream_salt, int threads,
                                        std::uint64_t vertex_budget) {
    if (replicas < 1) throw validation_error("replicas must be >= 1");
    if (g.n == 0 || g.degree(root) == 0)
        throw validation_error("graph BRW needs a root with at least one neighbor");
    const std::vector<std::uint32_t> root_dist = bfs_distances(g, root);
    GraphRevisitStats stats;
    stats.revisits_half.assign(static_cast<std::size_t>(replicas), 0);
    stats.revisits_full.assign(static_cast<std::size_t>(replicas), 0);
    run_replicas(replicas, threads, [&](int r) {
        RandomStream rng = RandomStream::derive(
            master_seed, {stream_tag::recurrence, stream_salt, static_cast<std::uint64_t>(r)});
        StreamTotals totals;
        stream_graph_replica(g, root_dist, root, dist, kind, horizon, rng, vertex_budget, totals);
        stats.revisits_half[static_cast<std::size_t>(r)] = totals.half;
        stats.revisits_full[static_cast<std::size_t>(r)] = totals.full;
    });
    int growing = 0;
    for (int r = 0; r < replicas; ++r)
        if (stats.revisits_full[static_cast<std::size_t>(r)] >
            stats.revisits_half[static_cast<std::size_t>(r)])
            ++growing;
    stats.growing_fraction = static_cast<double>(growing) / replicas;
    return stats;
}

} // namespace brwlab
