#pragma once

#include <cstdint>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/graph.hpp"
#include "brwlab/group.hpp"
#include "brwlab/rng.hpp"

namespace brwlab {

// --- random walks on networks -------------------------------------------

struct WalkStats {
    int replicas = 0;
    long steps = 0;
    std::vector<std::uint32_t> return_counts; // visits to the root after step 0
    double escape_fraction = 0.0;             // replicas that never returned
    double mean_return_count = 0.0;
};

WalkStats srw_on_trace(const TraceNetwork& net, long steps, int replicas, RandomStream& rng);

// Walk with kernel p_N(x,y) = N(x,y) / sum_z N(x,z); identical to the SRW
// when all traversal counts are equal.
WalkStats biased_walk_pn(const TraceNetwork& net, long steps, int replicas, RandomStream& rng);

// One-step law from a vertex under the biased kernel, as (neighbor, prob).
std::vector<std::pair<std::uint32_t, double>> biased_step_law(const TraceNetwork& net,
                                                              std::uint32_t from);

// --- spectral radius via finite approximation ----------------------------

// Substochastic kernel restricted to a finite set, stored in symmetrized
// form m(x,y) = sqrt(p(x,y) p(y,x)) (valid for reversible kernels, which
// covers SRW and count-biased walks). Power iteration on this matrix gives
// the largest eigenvalue of the killed restriction P_F.
struct KernelMatrix {
    std::uint32_t n = 0;
    int radius = 0; // ball radius the kernel was built from (bookkeeping)
    std::vector<std::uint32_t> row_offset;
    std::vector<std::uint32_t> col;
    std::vector<double> value;
};

struct SpectralEstimate {
    int radius = 0;
    double value = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

// Power iteration with L2 normalization and Rayleigh-quotient readout;
// throws convergence_error (carrying the last residual) at the iteration cap.
SpectralEstimate estimate_spectral_radius(const KernelMatrix& kernel, double tol = 1e-8,
                                          int max_iterations = 100000);

// Kernel of the SRW on the Cayley graph killed outside the radius-r ball.
KernelMatrix cayley_ball_kernel(const GroupSpec& spec, int radius,
                                std::size_t vertex_budget = default_vertex_budget);

// Radial reduction of the killed SRW on the d-regular tree restricted to a
// ball: the Perron eigenvector is a function of the distance to the root,
// so the ball kernel collapses to a (radius+1)-point tridiagonal matrix
// with the same top eigenvalue. Makes radius ~10^2 feasible where the ball
// itself has ~d^radius vertices.
KernelMatrix regular_tree_radial_kernel(int degree, int radius);

// Killed SRW on Z restricted to k consecutive vertices (the line segment
// L_k); top eigenvalue cos(pi/(k+1)).
KernelMatrix path_segment_kernel(int k);

// SRW kernel on a network restricted to the trace ball of the given radius
// (radius < 0 means the whole network). Degrees are network degrees.
KernelMatrix network_ball_kernel(const TraceNetwork& net, int radius = -1);

// Spectral radius of the base Cayley graph: exact radial reduction for the
// regular-tree families (free groups, products of Z_2), a finite ball for
// the rest. A lower bound that is non-decreasing in radius.
SpectralEstimate base_group_spectral_radius(const GroupSpec& spec, int radius = 0);

// Lower bound cos(pi/(k+1)) on the spectral radius certified by a
// contained line segment of length k.
double segment_rho_lower_bound(int k);

// --- trace geometry -------------------------------------------------------

// Maximal paths whose interior vertices have degree 2 in the network.
struct SegmentCensus {
    std::vector<int> maximal_lengths; // edge counts, descending
    int longest = 0;
    int count_at_least(int k) const;
};

SegmentCensus find_line_segments(const TraceNetwork& net);
int find_line_segments(const TraceNetwork& net, int k); // count of maximal segments >= k

// |Tr^(n)| for n = 0..max_radius (vertices within Cayley distance n).
std::vector<std::uint64_t> volume_growth(const TraceNetwork& net, int max_radius);

// Vertices x != o inside the ball of radius ceil(window/2) whose removal
// disconnects o from every vertex at Cayley distance >= window. Throws
// validation_error when the window exceeds the trace extent.
std::vector<std::uint32_t> find_cutpoints(const TraceNetwork& net, int window);

// Heuristic lower bound on the number of ends: connected components of the
// subgraph outside the open ball of the given radius that reach distance
// >= probe.
int estimate_ends(const TraceNetwork& net, int radius, int probe);

} // namespace brwlab
