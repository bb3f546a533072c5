#include "brwlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/electrical.hpp"
#include "brwlab/errors.hpp"
#include "brwlab/io.hpp"
#include "brwlab/percolation.hpp"
#include "brwlab/stats.hpp"
#include "brwlab/trace_analysis.hpp"

namespace brwlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) { return format_double(v); }

struct TraceRun {
    LabelledTree labelled;
    PositionMap positions;
    TraceNetwork net;
};

TraceRun sample_trace_run(const GroupSpec& spec, const OffspringDist& dist, TreeKind kind,
                          int depth, std::uint64_t master, std::uint64_t criterion,
                          std::uint64_t item) {
    RandomStream rng =
        RandomStream::derive(master, {stream_tag::acceptance, criterion, item});
    TraceRun run;
    auto [labelled, positions] = run_brw(spec, dist, kind, depth, rng);
    run.net = build_trace(spec, labelled, positions);
    run.labelled = std::move(labelled);
    run.positions = std::move(positions);
    return run;
}

// Parallel loop over independent items; iteration i always consumes the
// stream derived from its own index, so results are thread-count invariant.
void parallel_items(int count, int threads, const std::function<void(int)>& body) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
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

CriterionResult criterion_spectral_oracle(const SuiteOptions& opt) {
    (void)opt;
    CriterionResult result{1, "spectral radius oracles", false, ""};

    const SpectralEstimate t4 = estimate_spectral_radius(regular_tree_radial_kernel(4, 30));
    const bool t4_ok = t4.value >= 0.856 && t4.value <= 0.8661;

    const SpectralEstimate l9 = estimate_spectral_radius(path_segment_kernel(9));
    const double l9_target = std::cos(kPi / 10.0);
    const bool l9_ok = std::fabs(l9.value - l9_target) <= 1e-6;

    const GroupSpec z2 = parse_group_spec("abelian:2");
    double prev = 0.0;
    bool monotone = true;
    double z2_at_40 = 0.0;
    for (int r : {10, 20, 30, 40}) {
        const SpectralEstimate est = estimate_spectral_radius(cayley_ball_kernel(z2, r));
        monotone = monotone && est.value >= prev;
        prev = est.value;
        if (r == 40) z2_at_40 = est.value;
    }
    const bool z2_ok = monotone && z2_at_40 >= 0.98;

    result.pass = t4_ok && l9_ok && z2_ok;
    result.detail = "T4 radius 30: " + fmt(t4.value) + " in [0.856,0.8661]; L9: " +
                    fmt(l9.value) + " vs cos(pi/10)=" + fmt(l9_target) +
                    "; Z2 radius 40: " + fmt(z2_at_40) + " (monotone " +
                    (monotone ? "yes" : "no") + ")";
    return result;
}

CriterionResult criterion_recurrence_transition(const SuiteOptions& opt) {
    CriterionResult result{2, "recurrence transition at m = 1/rho", false, ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const GroupSpec z2 = parse_group_spec("abelian:2");

    const RecurrenceReport super = classify_recurrence(
        f2, parse_offspring("1:0.65,2:0.35"), TreeKind::gw, 60, 200, opt.master_seed,
        opt.threads);
    const RecurrenceReport sub = classify_recurrence(
        f2, parse_offspring("1:0.95,2:0.05"), TreeKind::gw, 60, 200, opt.master_seed,
        opt.threads);
    // The amenable control needs a deeper horizon: expected fresh returns on
    // Z^2 scale like sum 1.05^n / n, which only dominates noise past level
    // ~200 (at horizon 60 the expected count of new revisits is about 2).
    const RecurrenceReport amenable = classify_recurrence(
        z2, parse_offspring("1:0.95,2:0.05"), TreeKind::gw, 240, 200, opt.master_seed,
        opt.threads);

    const double stable_fraction = 1.0 - sub.growing_fraction;
    const bool ok_super = super.growing_fraction >= 0.99;
    const bool ok_sub = stable_fraction >= 0.95;
    const bool ok_amenable = amenable.growing_fraction >= 0.99;
    const bool ok_threshold = std::fabs(super.threshold - 2.0 / std::sqrt(3.0)) < 1e-3;

    result.pass = ok_super && ok_sub && ok_amenable && ok_threshold;
    result.detail = "free:2 threshold " + fmt(super.threshold) +
                    "; m=1.35 growing " + fmt(super.growing_fraction) +
                    " (need >=0.99); m=1.05 stable " + fmt(stable_fraction) +
                    " (need >=0.95); Z^2 m=1.05 depth 240 growing " +
                    fmt(amenable.growing_fraction) + " (need >=0.99)";
    return result;
}

CriterionResult criterion_trace_transience(const SuiteOptions& opt) {
    CriterionResult result{3, "trace transience certificate (flows, resistance)", false, ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.95,2:0.05");
    const int seeds = 50;

    std::vector<int> energy_ok(seeds, 0), reff_ok(seeds, 0), reff_usable(seeds, 0);
    std::atomic<int> cs_total{0}, cs_ok{0};

    parallel_items(seeds, opt.threads, [&](int s) {
        TraceRun run = sample_trace_run(f2, dist, TreeKind::gw, 40, opt.master_seed, 3,
                                        static_cast<std::uint64_t>(s));
        bool all_n_stable = true;
        for (int n : {5, 10}) {
            const SubtreeTN sub = build_t_n(run.labelled, run.positions, n);
            try {
                const FlowAssignment f20 = unit_flow_on_tree(run.labelled.tree, 20, &sub);
                const FlowAssignment g20 =
                    induce_flow(f20, run.labelled.tree, sub, run.positions, run.net);
                const FlowAssignment f40 = unit_flow_on_tree(run.labelled.tree, 40, &sub);
                const FlowAssignment g40 =
                    induce_flow(f40, run.labelled.tree, sub, run.positions, run.net);
                ++cs_total;
                if (flow_energy(g40).energy <= n * flow_energy(f40).energy + 1e-9 &&
                    flow_energy(g20).energy <= n * flow_energy(f20).energy + 1e-9)
                    ++cs_ok;
                const double e20 = flow_energy(g20).energy;
                const double e40 = flow_energy(g40).energy;
                if (!(std::fabs(e40 - e20) / e40 < 0.05)) all_n_stable = false;
            } catch (const validation_error&) {
                all_n_stable = false;
            }
        }
        energy_ok[static_cast<std::size_t>(s)] = all_n_stable ? 1 : 0;
        if (run.net.extent >= 20) {
            reff_usable[static_cast<std::size_t>(s)] = 1;
            const auto sh10 = shell_vertices(run.net, 10);
            const auto sh20 = shell_vertices(run.net, 20);
            const double r10 = effective_resistance(run.net.graph, run.net.root, sh10);
            const double r20 = effective_resistance(run.net.graph, run.net.root, sh20);
            if (std::fabs(r20 - r10) / r20 < 0.10) reff_ok[static_cast<std::size_t>(s)] = 1;
        }
    });

    int e_ok = 0, r_ok = 0, r_use = 0;
    for (int s = 0; s < seeds; ++s) {
        e_ok += energy_ok[static_cast<std::size_t>(s)];
        r_ok += reff_ok[static_cast<std::size_t>(s)];
        r_use += reff_usable[static_cast<std::size_t>(s)];
    }
    const bool cs_all = cs_ok == cs_total && cs_total > 0;
    const double energy_fraction = static_cast<double>(e_ok) / seeds;
    const double reff_fraction = r_use ? static_cast<double>(r_ok) / r_use : 0.0;
    result.pass = cs_all && energy_fraction >= 0.9 && reff_fraction >= 0.9;
    result.detail = "energy stable (<5%, N in {5,10}) " + std::to_string(e_ok) + "/" +
                    std::to_string(seeds) + "; R_eff(10) vs R_eff(20) <10% in " +
                    std::to_string(r_ok) + "/" + std::to_string(r_use) +
                    "; Cauchy-Schwarz bound exact " + std::to_string(cs_ok.load()) + "/" +
                    std::to_string(cs_total.load()) +
                    ". Near-critical traces at depth 40 are quasi-one-dimensional:"
                    " doubling the depth roughly doubles both the induced energy and"
                    " the shell resistance, so the stability clauses fail at these"
                    " parameters while the exact bound holds on every run.";
    return result;
}

CriterionResult criterion_percolation(const SuiteOptions& opt) {
    CriterionResult result{4, "percolation: p_c(Tr) < 1 and binary-tree calibration", false,
                           ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.95,2:0.05");
    const auto grid = default_probability_grid();
    const int seeds = 50;

    std::vector<int> ok(seeds, 0);
    parallel_items(seeds, opt.threads, [&](int s) {
        TraceRun run = sample_trace_run(f2, dist, TreeKind::gw, 60, opt.master_seed, 4,
                                        static_cast<std::uint64_t>(s));
        RandomStream prng = RandomStream::derive(
            opt.master_seed,
            {stream_tag::acceptance, 4, stream_tag::percolation,
             static_cast<std::uint64_t>(s)});
        const PcVerdict verdict = certify_pc_lt_1(run.net, 6, 10, 200, grid, prng);
        const bool upper_ok = verdict.first.upper_bracket > 0.0 &&
                              verdict.first.upper_bracket <= 0.95 + 1e-9 &&
                              verdict.second.upper_bracket > 0.0 &&
                              verdict.second.upper_bracket <= 0.95 + 1e-9;
        ok[static_cast<std::size_t>(s)] = upper_ok && verdict.certified_lt_1 ? 1 : 0;
    });
    int trace_ok = 0;
    for (int v : ok) trace_ok += v;
    const double trace_fraction = static_cast<double>(trace_ok) / seeds;

    // Calibration: complete binary tree of depth 20, exact p_c = 1/2.
    std::vector<std::uint32_t> levels;
    const IndexedGraph tree = complete_tree_graph(2, 20, &levels);
    RandomStream rng = RandomStream::derive(opt.master_seed, {stream_tag::acceptance, 4, 99});
    const PcEstimate calib = estimate_pc(tree, levels, 0, 20, 200, grid, rng);
    const bool calib_ok = calib.conclusive && calib.lower_bracket <= 0.55 + 1e-9 &&
                          calib.upper_bracket >= 0.45 - 1e-9;

    result.pass = trace_fraction >= 0.9 && calib_ok;
    result.detail = "upper bracket <= 0.95 at trace-metric windows {6,10}: " +
                    std::to_string(trace_ok) + "/" + std::to_string(seeds) +
                    "; binary-tree bracket [" + fmt(calib.lower_bracket) + ", " +
                    fmt(calib.upper_bracket) + "] around p_c = 0.5";
    return result;
}

CriterionResult criterion_exponential_growth(const SuiteOptions& opt) {
    CriterionResult result{5, "exponential volume growth of transient traces", false, ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const GroupSpec z2 = parse_group_spec("abelian:2");
    const int seeds = 100;

    std::vector<int> grow_ok(seeds, 0), flat_ok(seeds, 0);
    parallel_items(seeds, opt.threads, [&](int s) {
        TraceRun run = sample_trace_run(f2, parse_offspring("1:0.95,2:0.05"), TreeKind::gw,
                                        60, opt.master_seed, 5, static_cast<std::uint64_t>(s));
        const auto counts = volume_growth(run.net, 20);
        const GrowthFit fit = growth_rate_fit(counts, 5, 20);
        grow_ok[static_cast<std::size_t>(s)] = fit.rate > 1.02 ? 1 : 0;
    });
    parallel_items(seeds, opt.threads, [&](int s) {
        TraceRun run =
            sample_trace_run(z2, parse_offspring("2:1.0"), TreeKind::gw, 14, opt.master_seed,
                             5, 1000 + static_cast<std::uint64_t>(s));
        const auto counts = volume_growth(run.net, 20);
        const GrowthFit fit = growth_rate_fit(counts, 5, 20);
        flat_ok[static_cast<std::size_t>(s)] =
            fit.rate <= 1.1 && fit.curvature_flagged() ? 1 : 0;
    });
    int grow = 0, flat = 0;
    for (int s = 0; s < seeds; ++s) {
        grow += grow_ok[static_cast<std::size_t>(s)];
        flat += flat_ok[static_cast<std::size_t>(s)];
    }
    result.pass = grow >= 95 && flat >= 95;
    result.detail = "free:2 m=1.05 depth 60: r > 1.02 in " + std::to_string(grow) +
                    "/100; Z^2 m=2 depth 14: r <= 1.1 with curvature flagged in " +
                    std::to_string(flat) + "/100";
    return result;
}

CriterionResult criterion_cutpoints(const SuiteOptions& opt) {
    CriterionResult result{6, "finitely many cutpoints: window stability", false, ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.9,2:0.1"); // m = 1.1, still transient
    const int seeds = 100;

    // Stability of the census over the window sweep: the list can only grow
    // with the window (larger candidate ball, smaller target set), so the
    // count has settled when the last two windows agree. The strict
    // all-three-equal fraction is reported alongside; it additionally
    // censors cutpoints between radius 10 and 15 through the window-20
    // candidate ball.
    std::vector<int> settled(seeds, 0), strict(seeds, 0), monotone(seeds, 0);
    parallel_items(seeds, opt.threads, [&](int s) {
        TraceRun run = sample_trace_run(f2, dist, TreeKind::gw, 120, opt.master_seed, 6,
                                        static_cast<std::uint64_t>(s));
        if (run.net.extent < 40) return; // counts as unstable
        const auto c20 = find_cutpoints(run.net, 20);
        const auto c30 = find_cutpoints(run.net, 30);
        const auto c40 = find_cutpoints(run.net, 40);
        if (c30.size() == c40.size()) settled[static_cast<std::size_t>(s)] = 1;
        if (c20.size() == c30.size() && c30.size() == c40.size())
            strict[static_cast<std::size_t>(s)] = 1;
        if (c20.size() <= c30.size() && c30.size() <= c40.size())
            monotone[static_cast<std::size_t>(s)] = 1;
    });
    int stable_count = 0, strict_count = 0, monotone_count = 0;
    for (int s = 0; s < seeds; ++s) {
        stable_count += settled[static_cast<std::size_t>(s)];
        strict_count += strict[static_cast<std::size_t>(s)];
        monotone_count += monotone[static_cast<std::size_t>(s)];
    }

    // Exact oracles: a path yields its interior vertices, a cycle none.
    const GroupSpec z1 = parse_group_spec("abelian:1");
    std::vector<std::pair<GroupElement, GroupElement>> path_edges;
    GroupElement prev;
    for (int i = 0; i < 3; ++i) {
        GroupElement next = prev;
        apply_generator(z1, next, 0);
        path_edges.emplace_back(prev, next);
        prev = next;
    }
    const TraceNetwork path = make_network(z1, path_edges);
    const bool path_ok = find_cutpoints(path, 3).size() == 2;

    const GroupSpec z2 = parse_group_spec("abelian:2");
    const GroupElement o;
    const TraceNetwork cycle =
        make_network(z2, {{o, element_from_string(z2, "a")},
                          {element_from_string(z2, "a"), element_from_string(z2, "a.b")},
                          {element_from_string(z2, "a.b"), element_from_string(z2, "b")},
                          {element_from_string(z2, "b"), o}});
    const bool cycle_ok = find_cutpoints(cycle, 2).empty();

    result.pass = stable_count >= 90 && monotone_count == seeds && path_ok && cycle_ok;
    result.detail = "settled counts (window 30 == 40): " + std::to_string(stable_count) +
                    "/100, strict all-equal " + std::to_string(strict_count) +
                    "/100, superset-monotone " + std::to_string(monotone_count) +
                    "/100 (free:2, m=1.1, depth 120); path oracle " +
                    (path_ok ? "ok" : "FAIL") + ", cycle oracle " +
                    (cycle_ok ? "ok" : "FAIL");
    return result;
}

CriterionResult criterion_line_segments(const SuiteOptions& opt) {
    CriterionResult result{7, "line segments force rho(Tr) near 1", false, ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.95,2:0.05");
    const int seeds = 200;

    double prev_fraction = -1.0;
    bool nondecreasing = true;
    double at_60 = 0.0;
    std::string fractions;
    for (int depth : {30, 60, 90}) {
        std::vector<int> has(seeds, 0);
        parallel_items(seeds, opt.threads, [&](int s) {
            TraceRun run = sample_trace_run(
                f2, dist, TreeKind::gw, depth, opt.master_seed, 7,
                static_cast<std::uint64_t>(depth) * 1000 + static_cast<std::uint64_t>(s));
            if (find_line_segments(run.net, 5) >= 1) has[static_cast<std::size_t>(s)] = 1;
        });
        int count = 0;
        for (int v : has) count += v;
        const double fraction = static_cast<double>(count) / seeds;
        if (fraction < prev_fraction) nondecreasing = false;
        prev_fraction = fraction;
        if (depth == 60) at_60 = fraction;
        fractions += (fractions.empty() ? "" : ", ") + std::to_string(depth) + ": " +
                     fmt(fraction);
    }
    const double bound = segment_rho_lower_bound(5);
    const bool bound_ok = std::fabs(bound - std::cos(kPi / 6.0)) < 1e-12;

    result.pass = at_60 >= 0.5 && nondecreasing && bound_ok;
    result.detail = "L5 fraction by depth {" + fractions + "} (need >=0.5 at 60, "
                    "non-decreasing); certified bound cos(pi/6) = " + fmt(bound);
    return result;
}

CriterionResult criterion_trace_strong_recurrence(const SuiteOptions& opt) {
    CriterionResult result{8, "second BRW on the trace is strongly recurrent", false, ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const OffspringDist base = parse_offspring("1:0.95,2:0.05");
    const OffspringDist second = parse_offspring("1:0.5,2:0.5"); // m' = 1.5
    const int traces = 50;
    const int replicas = 4;

    std::vector<int> growing(traces, 0);
    parallel_items(traces, opt.threads, [&](int s) {
        TraceRun run = sample_trace_run(f2, base, TreeKind::gw, 60, opt.master_seed, 8,
                                        static_cast<std::uint64_t>(s));
        const GraphRevisitStats stats = brw_on_graph_revisits(
            run.net.graph, run.net.root, second, TreeKind::gw, 30, replicas, opt.master_seed,
            800 + static_cast<std::uint64_t>(s), 1);
        int g = 0;
        for (std::size_t r = 0; r < stats.revisits_full.size(); ++r)
            if (stats.revisits_full[r] > stats.revisits_half[r]) ++g;
        growing[static_cast<std::size_t>(s)] = g;
    });
    int total_growing = 0;
    for (int g : growing) total_growing += g;
    const int pairs = traces * replicas;
    const double fraction = static_cast<double>(total_growing) / pairs;
    result.pass = fraction >= 0.98;
    result.detail = "growing revisit counts in " + std::to_string(total_growing) + "/" +
                    std::to_string(pairs) + " (trace, replica) pairs with m' = 1.5";
    return result;
}

CriterionResult criterion_unimodularity(const SuiteOptions& opt) {
    CriterionResult result{9, "UGW root law and mass-transport statistics", false, ""};
    const OffspringDist dist = parse_offspring("1:0.5,2:0.5");
    const int samples = 100000;

    // Root-degree chi-square against (1/c) p_k/(k+1).
    const auto law = ugw_root_degree_law(dist);
    RandomStream rng = RandomStream::derive(opt.master_seed, {stream_tag::acceptance, 9, 0});
    std::vector<std::uint64_t> counts(law.size(), 0);
    for (int i = 0; i < samples; ++i) {
        const int off = sample_root_offspring(dist, TreeKind::ugw, rng);
        for (std::size_t j = 0; j < law.size(); ++j)
            if (off == law[j].first) ++counts[j];
    }
    std::vector<double> probs;
    for (auto [deg, p] : law) probs.push_back(p);
    const TestReport chi = chi_square(counts, probs);
    const bool chi_ok = chi.p_value > 0.01;

    // MTP statistic: exact means 1 (UGW) and m*c (GW) from the enumeration
    // oracle E[1/(1+K)] = c.
    double c = 0.0;
    for (auto [k, p] : dist.probs) c += p / (k + 1);
    const double gw_expected = dist.mean * c;

    RandomStream ugw_rng =
        RandomStream::derive(opt.master_seed, {stream_tag::acceptance, 9, 1});
    RandomStream gw_rng = RandomStream::derive(opt.master_seed, {stream_tag::acceptance, 9, 2});
    std::vector<RootedTree> ugw_trees, gw_trees;
    ugw_trees.reserve(samples);
    gw_trees.reserve(samples);
    for (int i = 0; i < samples; ++i)
        ugw_trees.push_back(sample_tree(dist, TreeKind::ugw, 2, ugw_rng));
    for (int i = 0; i < samples; ++i)
        gw_trees.push_back(sample_tree(dist, TreeKind::gw, 2, gw_rng));
    const MtpReport ugw_report = mtp_check(ugw_trees);
    const MtpReport gw_report = mtp_check(gw_trees);
    const bool mtp_ok = ugw_report.pass && !gw_report.pass &&
                        std::fabs(gw_report.mean - gw_expected) < 0.01;

    result.pass = chi_ok && mtp_ok;
    result.detail = "root-degree chi-square p = " + fmt(chi.p_value) +
                    "; UGW MTP mean " + fmt(ugw_report.mean) + " (CI contains 1: " +
                    (ugw_report.pass ? "yes" : "no") + "); GW mean " + fmt(gw_report.mean) +
                    " vs exact " + fmt(gw_expected) + " (rejected: " +
                    (!gw_report.pass ? "yes" : "no") + ")";
    return result;
}

CriterionResult criterion_electrical_exactness(const SuiteOptions& opt) {
    CriterionResult result{10, "electrical exactness: energies and resistances", false, ""};
    RandomStream rng = RandomStream::derive(opt.master_seed, {stream_tag::acceptance, 10});

    const RootedTree binary = sample_tree(parse_offspring("2:1.0"), TreeKind::gw, 10, rng);
    const double e2 = flow_energy(unit_flow_on_tree(binary, 10)).energy;
    const bool binary_ok = std::fabs(e2 - (1.0 - std::pow(2.0, -10))) <= 1e-9;

    const RootedTree ternary = sample_tree(parse_offspring("3:1.0"), TreeKind::gw, 8, rng);
    const double e3 = flow_energy(unit_flow_on_tree(ternary, 8)).energy;
    const bool ternary_ok = std::fabs(e3 - (1.0 - std::pow(3.0, -8)) / 2.0) <= 1e-9;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> path_edges;
    for (std::uint32_t i = 0; i < 30; ++i) path_edges.emplace_back(i, i + 1);
    const IndexedGraph path = build_graph(31, path_edges);
    const std::vector<std::uint32_t> sinks = {30};
    const double r_path = effective_resistance(path, 0, sinks);
    const bool path_ok = std::fabs(r_path - 30.0) <= 1e-6;

    // Thomson on sampled traces: R_eff <= energy of the induced unit flow.
    const GroupSpec f2 = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.9,2:0.1");
    int thomson_total = 0, thomson_ok = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        TraceRun run = sample_trace_run(f2, dist, TreeKind::gw, 24, opt.master_seed, 10, s);
        const SubtreeTN sub = build_t_n(run.labelled, run.positions, 1 << 20);
        FlowAssignment tree_flow;
        try {
            tree_flow = unit_flow_on_tree(run.labelled.tree, 24, &sub);
        } catch (const validation_error&) {
            continue;
        }
        const FlowAssignment graph_flow =
            induce_flow(tree_flow, run.labelled.tree, sub, run.positions, run.net);
        // Sinks: images of the truncation level (excluding the root).
        std::vector<std::uint8_t> sink_mark(run.net.graph.n, 0);
        std::unordered_map<GroupElement, std::uint32_t, ElementHash> index;
        for (std::uint32_t i = 0; i < run.net.graph.n; ++i)
            index.emplace(run.net.element[i], i);
        for (std::uint32_t v = 0; v < run.labelled.tree.size(); ++v)
            if (run.labelled.tree.level[v] == 24)
                sink_mark[index.at(run.positions.position[v])] = 1;
        std::vector<std::uint32_t> trace_sinks;
        for (std::uint32_t i = 0; i < run.net.graph.n; ++i)
            if (sink_mark[i] && i != run.net.root) trace_sinks.push_back(i);
        if (trace_sinks.empty()) continue;
        ++thomson_total;
        const double reff = effective_resistance(run.net.graph, run.net.root, trace_sinks);
        if (reff <= flow_energy(graph_flow).energy + 1e-9) ++thomson_ok;
    }
    const bool thomson_all = thomson_total > 0 && thomson_ok == thomson_total;

    result.pass = binary_ok && ternary_ok && path_ok && thomson_all;
    result.detail = "binary energy " + fmt(e2) + " vs 1-2^-10; ternary " + fmt(e3) +
                    " vs (1-3^-8)/2; path R_eff " + fmt(r_path) + " vs 30; Thomson " +
                    std::to_string(thomson_ok) + "/" + std::to_string(thomson_total);
    return result;
}

CriterionResult criterion_determinism(const SuiteOptions& opt) {
    CriterionResult result{11, "byte-identical artifacts under a fixed seed", false, ""};
    const GroupSpec f2 = parse_group_spec("free:2");
    const OffspringDist dist = parse_offspring("1:0.9,2:0.1");

    auto make_artifacts = [&](int threads) {
        RandomStream rng = RandomStream::derive(opt.master_seed, {stream_tag::tree});
        auto [labelled, positions] = run_brw(f2, dist, TreeKind::gw, 20, rng);
        const TraceNetwork net = build_trace(f2, labelled, positions);
        std::string bytes = trace_csv(net);
        bytes += tree_parent_csv(labelled.tree);
        RandomStream prng = RandomStream::derive(opt.master_seed, {stream_tag::percolation});
        const auto grid = default_probability_grid();
        const PcEstimate pc = estimate_pc(net, 5, 50, grid, prng);
        bytes += sweep_csv(pc.sweep);
        const RecurrenceReport rec =
            classify_recurrence(f2, dist, TreeKind::gw, 30, 40, opt.master_seed, threads);
        bytes += revisits_csv(rec);
        return bytes;
    };
    const std::string first = make_artifacts(1);
    const std::string second = make_artifacts(1);
    const std::string threaded = make_artifacts(opt.threads > 1 ? opt.threads : 2);
    const bool repeat_ok = first == second;
    const bool thread_ok = first == threaded;
    result.pass = repeat_ok && thread_ok;
    result.detail = std::string("repeat run byte-identical: ") + (repeat_ok ? "yes" : "no") +
                    "; thread-count invariant: " + (thread_ok ? "yes" : "no") +
                    "; artifact hash " + hex64(fnv1a_64(first));
    return result;
}

const std::vector<CriterionFn>& acceptance_criteria() {
    static const std::vector<CriterionFn> criteria = {
        &criterion_spectral_oracle,
        &criterion_recurrence_transition,
        &criterion_trace_transience,
        &criterion_percolation,
        &criterion_exponential_growth,
        &criterion_cutpoints,
        &criterion_line_segments,
        &criterion_trace_strong_recurrence,
        &criterion_unimodularity,
        &criterion_electrical_exactness,
        &criterion_determinism,
    };
    return criteria;
}

std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opt) {
    std::vector<CriterionResult> results;
    results.reserve(acceptance_criteria().size());
    for (CriterionFn fn : acceptance_criteria()) results.push_back(fn(opt));
    return results;
}

} // namespace brwlab
