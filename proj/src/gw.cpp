#include "brwlab/gw.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "brwlab/errors.hpp"

namespace brwlab {

namespace {

std::vector<std::uint64_t> cumulative_thresholds(const std::vector<double>& probs) {
    // Map the unit interval onto u64 so sampling is one draw and a scan.
    std::vector<std::uint64_t> cum(probs.size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        long double scaled = acc * 18446744073709551615.0L;
        cum[i] = scaled >= 18446744073709551615.0L
                     ? std::numeric_limits<std::uint64_t>::max()
                     : static_cast<std::uint64_t>(scaled);
    }
    cum.back() = std::numeric_limits<std::uint64_t>::max();
    return cum;
}

int pick(const std::vector<std::uint64_t>& cum, std::uint64_t u) {
    std::size_t i = 0;
    while (u > cum[i]) ++i;
    return static_cast<int>(i);
}

} // namespace

OffspringDist make_offspring(std::vector<std::pair<int, double>> entries) {
    std::sort(entries.begin(), entries.end());
    OffspringDist dist;
    double total = 0.0;
    double p1 = 0.0;
    for (auto [k, p] : entries) {
        if (k < 1)
            throw validation_error("offspring law requires p_0 = 0 (k must be >= 1)");
        if (p < 0.0) throw validation_error("offspring probability must be non-negative");
        if (p == 0.0) continue;
        if (!dist.probs.empty() && dist.probs.back().first == k)
            throw validation_error("duplicate offspring count in law");
        dist.probs.emplace_back(k, p);
        total += p;
        if (k == 1) p1 = p;
        dist.mean += k * p;
    }
    if (dist.probs.empty()) throw validation_error("offspring law is empty");
    if (std::fabs(total - 1.0) > 1e-12)
        throw validation_error("offspring probabilities must sum to 1 (got " +
                               std::to_string(total) + ")");
    if (p1 >= 1.0 - 1e-15)
        throw validation_error("offspring law requires p_1 < 1");
    std::vector<double> probs;
    probs.reserve(dist.probs.size());
    for (auto [k, p] : dist.probs) probs.push_back(p);
    dist.cum_ = cumulative_thresholds(probs);
    return dist;
}

OffspringDist parse_offspring(std::string_view text) {
    std::vector<std::pair<int, double>> entries;
    std::size_t pos = 0;
    while (pos < text.size()) {
        int k = 0;
        {
            auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), k);
            if (ec != std::errc())
                throw parse_error("expected offspring count", pos);
            pos = static_cast<std::size_t>(ptr - text.data());
        }
        if (pos >= text.size() || text[pos] != ':')
            throw parse_error("expected ':' after offspring count", pos);
        ++pos;
        double p = 0.0;
        {
            auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), p);
            if (ec != std::errc())
                throw parse_error("expected probability", pos);
            pos = static_cast<std::size_t>(ptr - text.data());
        }
        entries.emplace_back(k, p);
        if (pos == text.size()) break;
        if (text[pos] != ',') throw parse_error("expected ',' between entries", pos);
        ++pos;
    }
    if (entries.empty()) throw validation_error("empty offspring law");
    return make_offspring(std::move(entries));
}

double mean_offspring(const OffspringDist& dist) { return dist.mean; }

int OffspringDist::sample(RandomStream& rng) const {
    return probs[static_cast<std::size_t>(pick(cum_, rng.next_u64()))].first;
}

const char* tree_kind_name(TreeKind kind) {
    switch (kind) {
        case TreeKind::gw: return "gw";
        case TreeKind::agw: return "agw";
        case TreeKind::ugw: return "ugw";
    }
    return "?";
}

TreeKind tree_kind_from_string(std::string_view text) {
    if (text == "gw") return TreeKind::gw;
    if (text == "agw") return TreeKind::agw;
    if (text == "ugw") return TreeKind::ugw;
    throw validation_error("unknown tree kind '" + std::string(text) + "'");
}

std::vector<std::pair<int, double>> ugw_root_degree_law(const OffspringDist& dist) {
    double c = 0.0;
    for (auto [k, p] : dist.probs) c += p / (k + 1);
    std::vector<std::pair<int, double>> law;
    law.reserve(dist.probs.size());
    for (auto [k, p] : dist.probs)
        law.emplace_back(k + 1, p / ((k + 1) * c));
    return law;
}

int sample_root_offspring(const OffspringDist& dist, TreeKind kind, RandomStream& rng) {
    switch (kind) {
        case TreeKind::gw:
            return dist.sample(rng);
        case TreeKind::agw:
            return dist.sample(rng) + 1;
        case TreeKind::ugw: {
            const auto law = ugw_root_degree_law(dist);
            std::vector<double> probs;
            probs.reserve(law.size());
            for (auto [deg, p] : law) probs.push_back(p);
            const auto cum = cumulative_thresholds(probs);
            return law[static_cast<std::size_t>(pick(cum, rng.next_u64()))].first;
        }
    }
    throw validation_error("bad tree kind");
}

RootedTree sample_tree(const OffspringDist& dist, TreeKind kind, int depth, RandomStream& rng,
                       std::size_t vertex_budget) {
    if (depth < 0) throw validation_error("tree depth must be >= 0");
    RootedTree tree;
    tree.depth = depth;
    tree.kind = kind;
    tree.parent.push_back(0);
    tree.level.push_back(0);
    tree.child_offset.push_back(1); // first child of the root, if any
    std::size_t frontier_begin = 0;
    for (int lvl = 0; lvl < depth; ++lvl) {
        const std::size_t frontier_end = tree.size();
        for (std::size_t v = frontier_begin; v < frontier_end; ++v) {
            const int k = (v == 0) ? sample_root_offspring(dist, kind, rng)
                                   : dist.sample(rng);
            if (tree.size() + static_cast<std::size_t>(k) > vertex_budget)
                throw resource_error("tree vertex budget exceeded (" +
                                     std::to_string(vertex_budget) + " vertices)");
            for (int i = 0; i < k; ++i) {
                tree.parent.push_back(static_cast<std::uint32_t>(v));
                tree.level.push_back(static_cast<std::uint32_t>(lvl + 1));
            }
            tree.child_offset.push_back(static_cast<std::uint32_t>(tree.size()));
        }
        frontier_begin = frontier_end;
    }
    // Leaves at the truncation level have empty child ranges.
    while (tree.child_offset.size() <= tree.size())
        tree.child_offset.push_back(static_cast<std::uint32_t>(tree.size()));
    return tree;
}

namespace {

constexpr std::uint32_t unreachable = 0xFFFFFFFFu;

// minreach[v]: smallest path budget b such that v can serve as the next
// skeleton vertex after descending b more edges; 0 when v itself branches
// or sits within K of the truncation depth.
struct SkeletonSearch {
    const RootedTree& tree;
    int K;
    std::vector<std::uint32_t> minreach;
    std::vector<std::uint8_t> branch_ok;

    SkeletonSearch(const RootedTree& t, int k) : tree(t), K(k) {
        minreach.assign(tree.size(), unreachable);
        branch_ok.assign(tree.size(), 0);
        // Vertices are in BFS order, so a reverse sweep visits children first.
        for (std::size_t i = tree.size(); i-- > 0;) {
            const auto v = static_cast<std::uint32_t>(i);
            int good_children = 0;
            std::uint32_t best_child = unreachable;
            for (std::uint32_t c = tree.child_begin(v); c < tree.child_end(v); ++c) {
                if (minreach[c] == unreachable) continue;
                best_child = std::min(best_child, minreach[c]);
                if (minreach[c] <= static_cast<std::uint32_t>(K - 1)) ++good_children;
            }
            branch_ok[v] = good_children >= 2;
            const bool terminal =
                static_cast<int>(tree.level[v]) + K > tree.depth;
            if (branch_ok[v] || terminal)
                minreach[v] = 0;
            else if (best_child != unreachable)
                minreach[v] = best_child + 1;
        }
    }
};

} // namespace

std::optional<RootedTree> extract_stretched_binary(const RootedTree& tree, int K) {
    if (K < 1) throw validation_error("stretch length K must be >= 1");
    SkeletonSearch search(tree, K);

    // Greedy stem: first branch vertex within K of the root in BFS order
    // (BFS order ties broken toward the leftmost, shallowest vertex).
    std::uint32_t stem_end = unreachable;
    for (std::size_t v = 0; v < tree.size(); ++v) {
        if (static_cast<int>(tree.level[v]) > K) break;
        if (search.branch_ok[v]) {
            stem_end = static_cast<std::uint32_t>(v);
            break;
        }
    }
    if (stem_end == unreachable) return std::nullopt;

    // Collect retained vertices: the stem, then greedy descent.
    std::vector<std::uint8_t> retained(tree.size(), 0);
    for (std::uint32_t v = stem_end;; v = tree.parent[v]) {
        retained[v] = 1;
        if (v == 0) break;
    }
    std::vector<std::uint32_t> stack = {stem_end};
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        // v is a branch vertex: take the first two children that can reach
        // the next skeleton vertex within K-1 further edges.
        int taken = 0;
        for (std::uint32_t c = tree.child_begin(v); c < tree.child_end(v) && taken < 2; ++c) {
            if (search.minreach[c] == unreachable ||
                search.minreach[c] > static_cast<std::uint32_t>(K - 1))
                continue;
            ++taken;
            // Walk down the stretch greedily until a branch or terminal vertex.
            std::uint32_t u = c;
            int budget = K - 1;
            while (true) {
                retained[u] = 1;
                if (search.minreach[u] == 0) break;
                for (std::uint32_t w = tree.child_begin(u); w < tree.child_end(u); ++w) {
                    if (search.minreach[w] != unreachable &&
                        search.minreach[w] <= static_cast<std::uint32_t>(budget - 1)) {
                        u = w;
                        break;
                    }
                }
                --budget;
            }
            if (search.branch_ok[u]) stack.push_back(u);
        }
    }

    // Relabel the retained subtree in BFS order. Retained children of a
    // retained vertex keep consecutive new ids, so the CSR layout carries
    // over directly.
    RootedTree out;
    out.kind = tree.kind;
    std::vector<std::uint32_t> new_id(tree.size(), unreachable);
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < tree.size(); ++v)
        if (retained[v]) new_id[v] = next++;
    out.parent.assign(next, 0);
    out.level.assign(next, 0);
    std::vector<std::uint32_t> child_count(next, 0);
    for (std::size_t v = 0; v < tree.size(); ++v) {
        if (!retained[v]) continue;
        const std::uint32_t id = new_id[v];
        out.parent[id] = v == 0 ? 0 : new_id[tree.parent[v]];
        out.level[id] = tree.level[v];
        if (v != 0) ++child_count[new_id[tree.parent[v]]];
    }
    out.child_offset.assign(next + 1, 1);
    for (std::uint32_t v = 0; v < next; ++v)
        out.child_offset[v + 1] = out.child_offset[v] + child_count[v];
    out.depth = static_cast<int>(*std::max_element(out.level.begin(), out.level.end()));
    return out;
}

} // namespace brwlab
