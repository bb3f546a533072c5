#include "brwlab/electrical.hpp"

#include <algorithm>
#include <cmath>

#include "brwlab/errors.hpp"
#include "brwlab/group.hpp"

namespace brwlab {

SubtreeTN build_t_n(const LabelledTree& labelled, const PositionMap& positions, int N) {
    if (N < 1) throw validation_error("T_N threshold must be >= 1");
    const RootedTree& tree = labelled.tree;
    const std::size_t n = tree.size();
    if (positions.position.size() != n)
        throw validation_error("position map does not match the tree");

    // Undirected preimage count per image edge, via exact element interning.
    std::unordered_map<GroupElement, std::uint32_t, ElementHash> vertex_id;
    auto intern = [&](const GroupElement& e) {
        return vertex_id.emplace(e, static_cast<std::uint32_t>(vertex_id.size())).first->second;
    };
    std::unordered_map<std::uint64_t, std::uint32_t> preimages;
    std::vector<std::uint64_t> edge_key(n, 0);
    for (std::size_t v = 1; v < n; ++v) {
        const std::uint32_t a = intern(positions.position[tree.parent[v]]);
        const std::uint32_t b = intern(positions.position[v]);
        edge_key[v] = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
        ++preimages[edge_key[v]];
    }

    SubtreeTN sub;
    sub.threshold = N;
    sub.edge_retained.assign(n, 0);
    sub.in_root_component.assign(n, 0);
    sub.in_root_component[0] = 1;
    sub.root_component_size = 1;
    for (std::size_t v = 1; v < n; ++v) {
        if (preimages[edge_key[v]] <= static_cast<std::uint32_t>(N)) {
            sub.edge_retained[v] = 1;
            ++sub.retained_edge_count;
            // BFS order: the parent's component flag is already final.
            if (sub.in_root_component[tree.parent[v]]) {
                sub.in_root_component[v] = 1;
                ++sub.root_component_size;
            }
        }
    }
    return sub;
}

std::uint64_t FlowAssignment::key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
}

void FlowAssignment::add(std::uint32_t from, std::uint32_t to, double value) {
    if (from == to) throw validation_error("flow on a loop edge");
    theta[key(from, to)] += from < to ? value : -value;
}

double FlowAssignment::between(std::uint32_t from, std::uint32_t to) const {
    auto it = theta.find(key(from, to));
    if (it == theta.end()) return 0.0;
    return from < to ? it->second : -it->second;
}

std::unordered_map<std::uint32_t, double> flow_divergence(const FlowAssignment& flow) {
    std::unordered_map<std::uint32_t, double> div;
    for (const auto& [k, t] : flow.theta) {
        const auto a = static_cast<std::uint32_t>(k >> 32);
        const auto b = static_cast<std::uint32_t>(k & 0xFFFFFFFFu);
        div[a] += t;
        div[b] -= t;
    }
    return div;
}

EnergyReport flow_energy(const FlowAssignment& flow) {
    EnergyReport report;
    for (const auto& [k, t] : flow.theta) {
        (void)k;
        report.energy += t * t; // unit resistances
        report.max_edge_flow = std::max(report.max_edge_flow, std::fabs(t));
    }
    report.edge_count = flow.theta.size();
    return report;
}

FlowAssignment unit_flow_on_tree(const RootedTree& tree, int depth,
                                 const SubtreeTN* restriction) {
    if (depth < 1 || depth > tree.depth)
        throw validation_error("flow truncation depth must be in [1, tree depth]");
    const std::size_t n = tree.size();
    auto usable = [&](std::uint32_t v) {
        return restriction == nullptr || restriction->in_root_component[v];
    };
    // reaches[v]: some descendant path inside the restriction hits `depth`.
    std::vector<std::uint8_t> reaches(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        const auto v = static_cast<std::uint32_t>(i);
        if (!usable(v)) continue;
        if (tree.level[v] == static_cast<std::uint32_t>(depth)) {
            reaches[v] = 1;
            continue;
        }
        if (tree.level[v] > static_cast<std::uint32_t>(depth)) continue;
        for (std::uint32_t c = tree.child_begin(v); c < tree.child_end(v); ++c)
            if (usable(c) && reaches[c]) {
                reaches[v] = 1;
                break;
            }
    }
    if (!reaches[0]) throw validation_error("no surviving ray reaches the truncation depth");

    FlowAssignment flow;
    flow.source = 0;
    std::vector<double> inflow(n, 0.0);
    inflow[0] = 1.0;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (inflow[v] == 0.0 || tree.level[v] >= static_cast<std::uint32_t>(depth)) continue;
        int live = 0;
        for (std::uint32_t c = tree.child_begin(v); c < tree.child_end(v); ++c)
            if (usable(c) && reaches[c]) ++live;
        if (live == 0) continue;
        const double share = inflow[v] / live;
        for (std::uint32_t c = tree.child_begin(v); c < tree.child_end(v); ++c) {
            if (!(usable(c) && reaches[c])) continue;
            inflow[c] = share;
            flow.add(v, c, share);
        }
    }
    return flow;
}

FlowAssignment induce_flow(const FlowAssignment& tree_flow, const RootedTree& tree,
                           const SubtreeTN& subtree, const PositionMap& positions,
                           const TraceNetwork& net) {
    FlowAssignment out;
    out.source = net.root;
    std::unordered_map<GroupElement, std::uint32_t, ElementHash> index;
    index.reserve(net.element.size());
    for (std::uint32_t i = 0; i < net.element.size(); ++i) index.emplace(net.element[i], i);

    for (std::uint32_t v = 1; v < tree.size(); ++v) {
        if (!subtree.in_root_component[v]) continue;
        const double t = tree_flow.between(tree.parent[v], v);
        if (t == 0.0) continue;
        const auto itx = index.find(positions.position[tree.parent[v]]);
        const auto ity = index.find(positions.position[v]);
        if (itx == index.end() || ity == index.end())
            throw validation_error("position outside the trace network");
        out.add(itx->second, ity->second, t);
    }
    return out;
}

double effective_resistance(const IndexedGraph& g, std::uint32_t source,
                            std::span<const std::uint32_t> sinks, double tol,
                            int max_iterations) {
    if (source >= g.n) throw validation_error("source out of range");
    if (sinks.empty()) throw validation_error("sink set is empty");
    std::vector<std::uint8_t> is_sink(g.n, 0);
    for (std::uint32_t s : sinks) {
        if (s >= g.n) throw validation_error("sink out of range");
        is_sink[s] = 1;
    }
    if (is_sink[source]) return 0.0;

    // Restrict to the source's component and check it touches a sink.
    const std::vector<std::uint32_t> dist = bfs_distances(g, source);
    bool connected = false;
    for (std::uint32_t s : sinks)
        if (dist[s] != 0xFFFFFFFFu) connected = true;
    if (!connected) throw validation_error("source is disconnected from the sink set");

    // Unknowns: non-sink vertices of the source component.
    std::vector<std::uint32_t> unknown_id(g.n, 0xFFFFFFFFu);
    std::vector<std::uint32_t> vertices;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        if (dist[v] == 0xFFFFFFFFu || is_sink[v]) continue;
        unknown_id[v] = static_cast<std::uint32_t>(vertices.size());
        vertices.push_back(v);
    }
    const std::size_t m = vertices.size();
    std::vector<double> x(m, 0.0), r(m, 0.0), z(m, 0.0), p(m, 0.0), ap(m, 0.0);
    std::vector<double> inv_diag(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        inv_diag[i] = 1.0 / static_cast<double>(g.degree(vertices[i]));

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::uint32_t v = vertices[i];
            double acc = static_cast<double>(g.degree(v)) * in[i];
            for (std::uint32_t j = g.adj_offset[v]; j < g.adj_offset[v + 1]; ++j) {
                const std::uint32_t w = g.adj_vertex[j];
                if (unknown_id[w] != 0xFFFFFFFFu) acc -= in[unknown_id[w]];
            }
            out[i] = acc;
        }
    };

    r[unknown_id[source]] = 1.0; // unit current injected at the source
    double rz = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        z[i] = inv_diag[i] * r[i];
        rz += r[i] * z[i];
    }
    p = z;
    double res = 1.0;
    for (int it = 0; it < max_iterations; ++it) {
        res = 0.0;
        for (double ri : r) res += ri * ri;
        res = std::sqrt(res);
        if (res <= tol) return x[unknown_id[source]];
        apply(p, ap);
        double pap = 0.0;
        for (std::size_t i = 0; i < m; ++i) pap += p[i] * ap[i];
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rz_new = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            z[i] = inv_diag[i] * r[i];
            rz_new += r[i] * z[i];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < m; ++i) p[i] = z[i] + beta * p[i];
    }
    throw convergence_error("effective resistance solve did not converge", res);
}

std::vector<std::uint32_t> shell_vertices(const TraceNetwork& net, int radius) {
    std::vector<std::uint32_t> shell;
    for (std::uint32_t v = 0; v < net.graph.n; ++v)
        if (net.cayley_dist[v] >= static_cast<std::uint32_t>(radius)) shell.push_back(v);
    return shell;
}

double cutset_infimum(const RootedTree& tree, double lambda, int depth,
                      const SubtreeTN* restriction) {
    if (lambda <= 1.0) throw validation_error("cutset base lambda must exceed 1");
    if (depth < 1 || depth > tree.depth)
        throw validation_error("cutset depth must be in [1, tree depth]");
    auto usable = [&](std::uint32_t v) {
        return restriction == nullptr || restriction->in_root_component[v];
    };
    std::vector<double> lam_pow(static_cast<std::size_t>(depth) + 1, 1.0);
    for (int l = 1; l <= depth; ++l) lam_pow[static_cast<std::size_t>(l)] =
        lam_pow[static_cast<std::size_t>(l - 1)] / lambda;

    const std::size_t n = tree.size();
    std::vector<double> value(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        const auto v = static_cast<std::uint32_t>(i);
        if (!usable(v) || tree.level[v] > static_cast<std::uint32_t>(depth)) continue;
        if (tree.level[v] == static_cast<std::uint32_t>(depth)) {
            value[v] = lam_pow[static_cast<std::size_t>(depth)];
            continue;
        }
        double sum = 0.0;
        for (std::uint32_t c = tree.child_begin(v); c < tree.child_end(v); ++c)
            if (usable(c)) sum += value[c];
        value[v] = v == 0 ? sum : std::min(lam_pow[tree.level[v]], sum);
    }
    return value[0];
}

} // namespace brwlab
