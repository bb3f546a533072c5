#include "brwlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "brwlab/errors.hpp"

namespace brwlab {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

std::uint64_t fnv1a_64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw validation_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

std::string trace_csv(const TraceNetwork& net) {
    std::string out = "x,y,n\n";
    for (std::size_t e = 0; e < net.graph.edge_count(); ++e) {
        const auto [a, b] = net.graph.edges[e];
        out += element_to_string(net.spec, net.element[a]);
        out += ',';
        out += element_to_string(net.spec, net.element[b]);
        out += ',';
        out += std::to_string(net.traversals[e]);
        out += '\n';
    }
    return out;
}

std::string tree_parent_csv(const RootedTree& tree) {
    std::string out = "vertex,parent,level\n";
    for (std::size_t v = 0; v < tree.size(); ++v) {
        out += std::to_string(v);
        out += ',';
        out += std::to_string(tree.parent[v]);
        out += ',';
        out += std::to_string(tree.level[v]);
        out += '\n';
    }
    return out;
}

std::string revisits_csv(const RecurrenceReport& report) {
    std::string out = "replica,revisits_half,revisits_full,growing\n";
    for (std::size_t r = 0; r < report.revisits_full.size(); ++r) {
        out += std::to_string(r);
        out += ',';
        out += std::to_string(report.revisits_half[r]);
        out += ',';
        out += std::to_string(report.revisits_full[r]);
        out += ',';
        out += report.revisits_full[r] > report.revisits_half[r] ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<CrossingEstimate>& sweep) {
    std::string out = "p,window,replicas,crossing_fraction,ci_low,ci_high\n";
    for (const CrossingEstimate& c : sweep) {
        out += format_double(c.p);
        out += ',';
        out += std::to_string(c.window);
        out += ',';
        out += std::to_string(c.replicas);
        out += ',';
        out += format_double(c.fraction);
        out += ',';
        out += format_double(c.ci.low);
        out += ',';
        out += format_double(c.ci.high);
        out += '\n';
    }
    return out;
}

std::string growth_csv(const std::vector<std::uint64_t>& counts) {
    std::string out = "n,count\n";
    for (std::size_t n = 0; n < counts.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += std::to_string(counts[n]);
        out += '\n';
    }
    return out;
}

std::string walk_stats_csv(const WalkStats& stats) {
    std::string out = "replica,return_count\n";
    for (std::size_t r = 0; r < stats.return_counts.size(); ++r) {
        out += std::to_string(r);
        out += ',';
        out += std::to_string(stats.return_counts[r]);
        out += '\n';
    }
    return out;
}

std::string flow_csv(const FlowAssignment& flow, const TraceNetwork& net) {
    // Deterministic order: sort by (a, b) vertex ids.
    std::vector<std::pair<std::uint64_t, double>> entries(flow.theta.begin(), flow.theta.end());
    std::sort(entries.begin(), entries.end());
    std::string out = "x,y,theta\n";
    for (const auto& [key, t] : entries) {
        const auto a = static_cast<std::uint32_t>(key >> 32);
        const auto b = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
        out += element_to_string(net.spec, net.element[a]);
        out += ',';
        out += element_to_string(net.spec, net.element[b]);
        out += ',';
        out += format_double(t);
        out += '\n';
    }
    return out;
}

} // namespace brwlab
