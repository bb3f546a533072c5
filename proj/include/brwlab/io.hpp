#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/electrical.hpp"
#include "brwlab/percolation.hpp"
#include "brwlab/trace_analysis.hpp"

namespace brwlab {

// Shortest round-trip decimal rendering, so equal doubles always print
// the same bytes (determinism of CSV/JSON artifacts).
std::string format_double(double value);

std::uint64_t fnv1a_64(std::string_view bytes);
std::string hex64(std::uint64_t value);

void write_file(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

// CSV emitters. All orderings are insertion orderings of the underlying
// structures, which are deterministic given the seed.
std::string trace_csv(const TraceNetwork& net);                       // x,y,n
std::string tree_parent_csv(const RootedTree& tree);                  // vertex,parent,level
std::string revisits_csv(const RecurrenceReport& report);             // replica,half,full,growing
std::string sweep_csv(const std::vector<CrossingEstimate>& sweep);    // p,window,...
std::string growth_csv(const std::vector<std::uint64_t>& counts);     // n,count
std::string walk_stats_csv(const WalkStats& stats);                   // replica,returns
std::string flow_csv(const FlowAssignment& flow, const TraceNetwork& net); // x,y,theta

} // namespace brwlab
