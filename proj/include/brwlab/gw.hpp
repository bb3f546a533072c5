#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "brwlab/rng.hpp"

namespace brwlab {

// Finite-support offspring law with p_0 = 0 and p_1 < 1.
struct OffspringDist {
    std::vector<std::pair<int, double>> probs; // (k, p_k), sorted by k, all k >= 1
    double mean = 0.0;

    int sample(RandomStream& rng) const;
    int max_offspring() const { return probs.back().first; }

private:
    friend OffspringDist make_offspring(std::vector<std::pair<int, double>> entries);
    std::vector<std::uint64_t> cum_; // cumulative 64-bit thresholds for exact sampling
};

OffspringDist make_offspring(std::vector<std::pair<int, double>> entries);

// Config syntax "1:0.95,2:0.05".
OffspringDist parse_offspring(std::string_view text);

double mean_offspring(const OffspringDist& dist);

enum class TreeKind : std::uint8_t { gw, agw, ugw };

const char* tree_kind_name(TreeKind kind);
TreeKind tree_kind_from_string(std::string_view text);

// Family tree truncated at a fixed depth, vertices in breadth-first order
// (so parents precede children and levels are non-decreasing). Children of
// a vertex are the consecutive id range [child_begin(v), child_end(v));
// child_offset has size n+1.
struct RootedTree {
    std::vector<std::uint32_t> parent;       // parent[0] == 0
    std::vector<std::uint32_t> level;
    std::vector<std::uint32_t> child_offset;
    int depth = 0;
    TreeKind kind = TreeKind::gw;

    std::size_t size() const { return parent.size(); }
    std::uint32_t child_begin(std::uint32_t v) const { return child_offset[v]; }
    std::uint32_t child_end(std::uint32_t v) const { return child_offset[v + 1]; }
    std::uint32_t child_count(std::uint32_t v) const {
        return child_offset[v + 1] - child_offset[v];
    }
};

inline constexpr std::size_t default_vertex_budget = 10'000'000;

// Root offspring drawn per kind (GW: p_k; AGW: k+1 w.p. p_k;
// UGW: k+1 w.p. p_k / ((k+1) c) with c = sum_i p_i/(i+1));
// all other vertices draw i.i.d. from p. Throws resource_error when the
// vertex count would exceed the budget.
RootedTree sample_tree(const OffspringDist& dist, TreeKind kind, int depth, RandomStream& rng,
                       std::size_t vertex_budget = default_vertex_budget);

int sample_root_offspring(const OffspringDist& dist, TreeKind kind, RandomStream& rng);

// Exact UGW root-degree law P(deg = k+1) = p_k / ((k+1) c), as (degree, prob).
std::vector<std::pair<int, double>> ugw_root_degree_law(const OffspringDist& dist);

// Searches for a full binary tree embedded from the root whose edges are
// stretched into vertex-disjoint paths of length <= K. The root may sit on
// a stem of length <= K before the first branch vertex; branch vertices
// keep branching until within K of the truncation depth. Selection is
// greedy first-found depth-first, so the result is deterministic given the
// tree. Returns the skeleton as a standalone tree, or nullopt if the
// truncated tree contains no branch vertex reachable within K of the root.
std::optional<RootedTree> extract_stretched_binary(const RootedTree& tree, int K);

} // namespace brwlab
