#include "brwlab/group.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "brwlab/errors.hpp"

namespace brwlab {

namespace {

int parse_int(std::string_view text, std::size_t& pos) {
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first)
        throw parse_error("expected integer in group spec", pos);
    pos += static_cast<std::size_t>(ptr - first);
    return value;
}

void build_generators(GroupSpec& spec) {
    spec.gens.clear();
    if (spec.family == GroupFamily::free_product) {
        for (std::size_t f = 0; f < spec.orders.size(); ++f) {
            spec.gens.push_back({static_cast<std::uint8_t>(f), +1});
            if (spec.orders[f] > 2)
                spec.gens.push_back({static_cast<std::uint8_t>(f), -1});
        }
    } else {
        for (int f = 0; f < spec.rank; ++f) {
            spec.gens.push_back({static_cast<std::uint8_t>(f), +1});
            spec.gens.push_back({static_cast<std::uint8_t>(f), -1});
        }
    }
    spec.inverse_gen.assign(spec.gens.size(), 0);
    for (std::size_t i = 0; i < spec.gens.size(); ++i) {
        const Generator g = spec.gens[i];
        if (spec.family == GroupFamily::free_product && spec.orders[g.factor] == 2) {
            spec.inverse_gen[i] = static_cast<std::uint8_t>(i); // involution
            continue;
        }
        for (std::size_t j = 0; j < spec.gens.size(); ++j) {
            if (spec.gens[j].factor == g.factor && spec.gens[j].sign == -g.sign) {
                spec.inverse_gen[i] = static_cast<std::uint8_t>(j);
                break;
            }
        }
    }
}

// Locates the first letter of the trailing syllable (same factor as the back).
std::size_t syllable_start(const GroupSpec& spec, const GroupElement& x) {
    const std::uint8_t factor = spec.gens[x.w.back()].factor;
    std::size_t i = x.w.size();
    while (i > 0 && spec.gens[x.w[i - 1]].factor == factor) --i;
    return i;
}

// Rewrites the trailing syllable of a free-product word for exponent e
// (mod n already applied, 0 < e < n) in its canonical shorter power.
void emit_syllable(const GroupSpec& spec, GroupElement& x, std::uint8_t factor, int e) {
    const int n = spec.orders[factor];
    std::uint8_t pos_gen = 0, neg_gen = 0;
    for (std::size_t i = 0; i < spec.gens.size(); ++i) {
        if (spec.gens[i].factor != factor) continue;
        if (spec.gens[i].sign > 0) pos_gen = static_cast<std::uint8_t>(i);
        else neg_gen = static_cast<std::uint8_t>(i);
    }
    if (2 * e <= n) {
        for (int i = 0; i < e; ++i) x.w.push_back(pos_gen);
    } else {
        for (int i = 0; i < n - e; ++i) x.w.push_back(neg_gen);
    }
}

} // namespace

std::string GroupSpec::to_string() const {
    std::string out;
    switch (family) {
        case GroupFamily::free_group: out = "free:" + std::to_string(rank); break;
        case GroupFamily::free_abelian: out = "abelian:" + std::to_string(rank); break;
        case GroupFamily::free_product: {
            out = "zprod:";
            for (std::size_t i = 0; i < orders.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(orders[i]);
            }
            break;
        }
    }
    return out;
}

GroupSpec parse_group_spec(std::string_view text) {
    GroupSpec spec;
    std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw parse_error("expected ':' in group spec", text.size());
    std::string_view head = text.substr(0, colon);
    std::size_t pos = colon + 1;

    if (head == "free" || head == "abelian") {
        spec.family = head == "free" ? GroupFamily::free_group : GroupFamily::free_abelian;
        spec.rank = parse_int(text, pos);
        if (pos != text.size())
            throw parse_error("trailing characters in group spec", pos);
        if (spec.rank < 1)
            throw validation_error("group rank must be at least 1, got " +
                                   std::to_string(spec.rank));
        if (spec.rank > 26)
            throw validation_error("group rank above 26 is not supported (letter names)");
    } else if (head == "zprod") {
        spec.family = GroupFamily::free_product;
        while (true) {
            int n = parse_int(text, pos);
            if (n < 2)
                throw validation_error("free-product factor order must be at least 2, got " +
                                       std::to_string(n));
            spec.orders.push_back(n);
            if (pos == text.size()) break;
            if (text[pos] != ',')
                throw parse_error("expected ',' between free-product orders", pos);
            ++pos;
        }
        if (spec.orders.size() < 2)
            throw validation_error("free product needs at least 2 factors, got " +
                                   std::to_string(spec.orders.size()));
        if (spec.orders.size() > 26)
            throw validation_error("more than 26 free-product factors is not supported");
    } else {
        throw parse_error("unknown group family '" + std::string(head) + "'", 0);
    }
    build_generators(spec);
    return spec;
}

GroupElement identity() { return GroupElement{}; }

void apply_generator(const GroupSpec& spec, GroupElement& x, std::uint8_t gen) {
    switch (spec.family) {
        case GroupFamily::free_group: {
            if (!x.w.empty() && x.w.back() == spec.inverse_gen[gen]) x.w.pop_back();
            else x.w.push_back(gen);
            return;
        }
        case GroupFamily::free_abelian: {
            // Keep letters grouped by factor in factor order; a factor's
            // letters all share one sign, so cancel or extend that run.
            const Generator g = spec.gens[gen];
            std::size_t run_end = x.w.size();
            while (run_end > 0 && spec.gens[x.w[run_end - 1]].factor > g.factor) --run_end;
            std::size_t run_begin = run_end;
            while (run_begin > 0 && spec.gens[x.w[run_begin - 1]].factor == g.factor) --run_begin;
            if (run_begin < run_end && x.w[run_begin] == spec.inverse_gen[gen]) {
                x.w.erase(x.w.begin() + static_cast<std::ptrdiff_t>(run_end - 1));
            } else {
                x.w.insert(x.w.begin() + static_cast<std::ptrdiff_t>(run_end), gen);
            }
            return;
        }
        case GroupFamily::free_product: {
            const Generator g = spec.gens[gen];
            const int n = spec.orders[g.factor];
            if (x.w.empty() || spec.gens[x.w.back()].factor != g.factor) {
                x.w.push_back(gen);
                return;
            }
            const std::size_t start = syllable_start(spec, x);
            int e = 0;
            for (std::size_t i = start; i < x.w.size(); ++i)
                e += spec.gens[x.w[i]].sign;
            e = ((e + g.sign) % n + n) % n;
            x.w.resize(start);
            if (e != 0) emit_syllable(spec, x, g.factor, e);
            return;
        }
    }
}

GroupElement multiply(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    GroupElement out = a;
    out.w.reserve(a.w.size() + b.w.size());
    for (std::uint8_t gen : b.w) apply_generator(spec, out, gen);
    return out;
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& x) {
    GroupElement out;
    out.w.reserve(x.w.size());
    for (auto it = x.w.rbegin(); it != x.w.rend(); ++it)
        apply_generator(spec, out, spec.inverse_gen[*it]);
    return out;
}

std::vector<GroupElement> neighbors(const GroupSpec& spec, const GroupElement& x) {
    std::vector<GroupElement> out;
    out.reserve(spec.gens.size());
    for (std::size_t s = 0; s < spec.gens.size(); ++s) {
        GroupElement y = x;
        apply_generator(spec, y, static_cast<std::uint8_t>(s));
        out.push_back(std::move(y));
    }
    std::sort(out.begin(), out.end(), [](const GroupElement& p, const GroupElement& q) {
        return p.w < q.w;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GroupElement srw_step(const GroupSpec& spec, const GroupElement& x, RandomStream& rng) {
    GroupElement y = x;
    apply_generator(spec, y, static_cast<std::uint8_t>(rng.next_below(
                                 static_cast<std::uint32_t>(spec.gens.size()))));
    return y;
}

std::string element_to_string(const GroupSpec& spec, const GroupElement& x) {
    std::string out;
    for (std::size_t i = 0; i < x.w.size(); ++i) {
        const Generator g = spec.gens[x.w[i]];
        if (i) out += '.';
        const char base = g.sign > 0 ? 'a' : 'A';
        out += static_cast<char>(base + g.factor);
    }
    return out;
}

GroupElement element_from_string(const GroupSpec& spec, std::string_view text) {
    GroupElement out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        int factor;
        int sign;
        if (c >= 'a' && c <= 'z') {
            factor = c - 'a';
            sign = +1;
        } else if (c >= 'A' && c <= 'Z') {
            factor = c - 'A';
            sign = -1;
        } else {
            throw parse_error("unexpected character in element string", pos);
        }
        if (factor >= spec.factor_count())
            throw parse_error("generator letter out of range for this group", pos);
        bool found = false;
        for (std::size_t s = 0; s < spec.gens.size(); ++s) {
            Generator g = spec.gens[s];
            if (g.factor == factor && (g.sign == sign ||
                                       (spec.family == GroupFamily::free_product &&
                                        spec.orders[g.factor] == 2))) {
                apply_generator(spec, out, static_cast<std::uint8_t>(s));
                found = true;
                break;
            }
        }
        if (!found) throw parse_error("no such generator", pos);
        ++pos;
        if (pos < text.size()) {
            if (text[pos] != '.') throw parse_error("expected '.' between letters", pos);
            ++pos;
            if (pos == text.size()) throw parse_error("dangling '.' in element string", pos);
        }
    }
    return out;
}

} // namespace brwlab
