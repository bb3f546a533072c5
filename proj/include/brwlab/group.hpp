#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brwlab/rng.hpp"

namespace brwlab {

enum class GroupFamily : std::uint8_t {
    free_group,   // F_d, Cayley graph is the 2d-regular tree
    free_abelian, // Z^d, Cayley graph is the grid
    free_product, // Z_{n_1} * ... * Z_{n_j}, tree of polygons (T_q when all n_i = 2)
};

// A generator is one letter of the symmetric generating set.
// sign is +1 for g and -1 for g^{-1}; involutions (order-2 factors)
// appear once, with sign +1.
struct Generator {
    std::uint8_t factor = 0;
    std::int8_t sign = 1;
};

// Finitely generated group with a fixed, ordered symmetric generating set.
// The generator order is fixed at parse time so runs are reproducible.
struct GroupSpec {
    GroupFamily family = GroupFamily::free_group;
    int rank = 0;                 // free_group / free_abelian
    std::vector<int> orders;      // free_product factor orders, each >= 2
    std::vector<Generator> gens;  // symmetric, ordered
    std::vector<std::uint8_t> inverse_gen; // index of s^{-1} for each generator s

    int degree() const { return static_cast<int>(gens.size()); }
    int factor_count() const {
        return family == GroupFamily::free_product ? static_cast<int>(orders.size()) : rank;
    }
    int factor_order(int factor) const {
        return family == GroupFamily::free_product ? orders[static_cast<std::size_t>(factor)] : 0;
    }
    std::string to_string() const;
};

// Group element in canonical normal form. The word is a sequence of
// generator indices that is itself a geodesic from the identity, so
// word_length(x) == w.size() is the Cayley distance to the identity.
//   free group:   freely reduced word
//   free abelian: letters grouped by factor in factor order (one sign each)
//   free product: alternating syllables, each written in its shorter power
struct GroupElement {
    std::vector<std::uint8_t> w;

    bool is_identity() const { return w.empty(); }
    std::size_t word_length() const { return w.size(); }
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct ElementHash {
    std::size_t operator()(const GroupElement& e) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint8_t c : e.w) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= e.w.size();
        h *= 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};

// Grammar: "free:<d>" | "abelian:<d>" | "zprod:<n1>,<n2>,...".
// Rejects d < 1, n_i < 2, fewer than 2 free-product factors and more
// than 26 factors (generator names are single letters).
GroupSpec parse_group_spec(std::string_view text);

GroupElement identity();

// Appends one generator to an element in place, keeping the normal form.
void apply_generator(const GroupSpec& spec, GroupElement& x, std::uint8_t gen);

GroupElement multiply(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupSpec& spec, const GroupElement& x);

// {x s : s generator}, deduplicated; size equals the vertex degree.
std::vector<GroupElement> neighbors(const GroupSpec& spec, const GroupElement& x);

// One SRW step: x*s with s uniform on the generator list.
GroupElement srw_step(const GroupSpec& spec, const GroupElement& x, RandomStream& rng);

// "a.B.a" encoding: letter = 'a' + factor, uppercase = inverse.
// The identity encodes as the empty string.
std::string element_to_string(const GroupSpec& spec, const GroupElement& x);
GroupElement element_from_string(const GroupSpec& spec, std::string_view text);

} // namespace brwlab
