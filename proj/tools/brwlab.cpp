// brwlab: experiment runner for branching random walks on Cayley graphs.
//
// Subcommands simulate | recurrence | trace-flow | spectral | percolate |
// growth | cutpoints | segments | mtp-test | all. Every run writes a
// manifest (resolved config, seed, artifact hashes) next to its outputs,
// and reruns with the same seed reproduce byte-identical artifacts.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "brwlab/brw.hpp"
#include "brwlab/electrical.hpp"
#include "brwlab/errors.hpp"
#include "brwlab/experiments.hpp"
#include "brwlab/io.hpp"
#include "brwlab/percolation.hpp"
#include "brwlab/stats.hpp"
#include "brwlab/trace_analysis.hpp"

using nlohmann::json;
using namespace brwlab;

namespace {

struct CommonOptions {
    std::string group = "free:2";
    std::string offspring = "1:0.95,2:0.05";
    std::string kind = "gw";
    std::uint64_t seed = 7;
    std::string out_dir;
    int threads = 0;

    std::string resolved_out() const {
        if (!out_dir.empty()) return out_dir;
        if (const char* env = std::getenv("BRWLAB_OUT")) return env;
        return "out";
    }
    int resolved_threads() const {
        if (threads > 0) return threads;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(hw) : 1;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_law = true) {
    cmd->set_config("--config", "", "config file with key=value lines; flags override");
    cmd->add_option("--group", opt.group, "group spec: free:<d> | abelian:<d> | zprod:<n1>,...")
        ->capture_default_str();
    if (with_law)
        cmd->add_option("--p", opt.offspring, "offspring law, e.g. 1:0.95,2:0.05")
            ->capture_default_str();
    cmd->add_option("--kind", opt.kind, "tree rooting: gw | agw | ugw")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "master seed")->capture_default_str();
    cmd->add_option("--out", opt.out_dir, "output directory (default $BRWLAB_OUT or ./out)");
    cmd->add_option("--threads", opt.threads, "worker threads (default: hardware)");
}

// Collects artifacts and maintains the run manifest. The manifest is
// written before computation starts (config only) and rewritten after each
// artifact lands, with its hash.
class RunContext {
public:
    RunContext(const std::string& command, const CommonOptions& opt, json config)
        : dir_(opt.resolved_out()), command_(command) {
        std::filesystem::create_directories(dir_);
        manifest_["command"] = command;
        manifest_["config"] = std::move(config);
        manifest_["seed"] = opt.seed;
        manifest_["artifacts"] = json::array();
        write_manifest();
    }

    void stream_path(const std::string& name, std::vector<std::uint64_t> path) {
        manifest_["streams"][name] = path;
        write_manifest();
    }

    void artifact(const std::string& name, std::string_view content) {
        const std::string path = dir_ + "/" + name;
        write_file(path, content);
        json entry;
        entry["file"] = name;
        entry["fnv64"] = hex64(fnv1a_64(content));
        manifest_["artifacts"].push_back(entry);
        write_manifest();
    }

    void artifact_json(const std::string& name, const json& value) {
        artifact(name, value.dump(2) + "\n");
    }

    const std::string& dir() const { return dir_; }

private:
    void write_manifest() {
        write_file(dir_ + "/" + command_ + "-manifest.json", manifest_.dump(2) + "\n");
    }

    std::string dir_;
    std::string command_;
    json manifest_;
};

struct SimulatedTrace {
    LabelledTree labelled;
    PositionMap positions;
    TraceNetwork net;
};

SimulatedTrace simulate_trace(const CommonOptions& opt, int depth, std::size_t budget) {
    const GroupSpec spec = parse_group_spec(opt.group);
    const OffspringDist dist = parse_offspring(opt.offspring);
    const TreeKind kind = tree_kind_from_string(opt.kind);
    RandomStream rng = RandomStream::derive(opt.seed, {stream_tag::tree});
    SimulatedTrace sim;
    auto [labelled, positions] = run_brw(spec, dist, kind, depth, rng, budget);
    sim.net = build_trace(spec, labelled, positions);
    sim.labelled = std::move(labelled);
    sim.positions = std::move(positions);
    return sim;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        grid.push_back(std::stod(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return grid;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

json pc_json(const PcEstimate& est) {
    json j;
    j["window"] = est.window;
    j["lower_bracket"] = est.lower_bracket;
    j["upper_bracket"] = est.upper_bracket;
    j["conclusive"] = est.conclusive;
    return j;
}

int run_simulate(const CommonOptions& opt, int depth, std::size_t budget, bool emit_tree) {
    RunContext ctx("simulate", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"depth", depth},
                    {"budget", budget}});
    ctx.stream_path("tree", {stream_tag::tree});
    const SimulatedTrace sim = simulate_trace(opt, depth, budget);
    ctx.artifact("trace.csv", trace_csv(sim.net));
    if (emit_tree) ctx.artifact("tree.csv", tree_parent_csv(sim.labelled.tree));
    json summary;
    summary["vertices"] = sim.net.graph.n;
    summary["edges"] = sim.net.graph.edge_count();
    summary["tree_size"] = sim.labelled.tree.size();
    summary["extent"] = sim.net.extent;
    summary["total_traversals"] = sim.net.total_traversals();
    ctx.artifact_json("simulate.json", summary);
    return 0;
}

int run_recurrence(const CommonOptions& opt, int horizon, int replicas, std::uint64_t budget) {
    RunContext ctx("recurrence", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"horizon", horizon},
                    {"replicas", replicas}});
    ctx.stream_path("replica_walks", {stream_tag::recurrence});
    const GroupSpec spec = parse_group_spec(opt.group);
    const OffspringDist dist = parse_offspring(opt.offspring);
    const RecurrenceReport report =
        classify_recurrence(spec, dist, tree_kind_from_string(opt.kind), horizon, replicas,
                            opt.seed, opt.resolved_threads(), budget);
    ctx.artifact("revisits.csv", revisits_csv(report));
    json verdict;
    verdict["seed"] = opt.seed;
    verdict["stream_path"] = {stream_tag::recurrence};
    verdict["verdict"] = report.verdict;
    verdict["growing_fraction"] = report.growing_fraction;
    verdict["rho_estimate"] = report.rho_estimate;
    verdict["threshold"] = report.threshold;
    verdict["mean_offspring"] = report.mean;
    verdict["horizon"] = horizon;
    ctx.artifact_json("verdict.json", verdict);
    return 0;
}

int run_spectral(const CommonOptions& opt, int radius) {
    RunContext ctx("spectral", opt, {{"group", opt.group}, {"radius", radius}});
    const GroupSpec spec = parse_group_spec(opt.group);
    const SpectralEstimate est = base_group_spectral_radius(spec, radius);
    json j;
    j["radius"] = est.radius;
    j["value"] = est.value;
    j["iterations"] = est.iterations;
    j["residual"] = est.residual;
    j["recurrence_threshold"] = 1.0 / est.value;
    ctx.artifact_json("spectral.json", j);
    return 0;
}

int run_trace_flow(const CommonOptions& opt, int depth, const std::string& n_set,
                   const std::string& radii, std::size_t budget) {
    RunContext ctx("trace-flow", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"depth", depth},
                    {"n_set", n_set},
                    {"radii", radii}});
    ctx.stream_path("tree", {stream_tag::tree});
    const SimulatedTrace sim = simulate_trace(opt, depth, budget);
    json report;
    report["depth"] = depth;
    report["trace_vertices"] = sim.net.graph.n;
    report["extent"] = sim.net.extent;
    json per_n = json::array();
    FlowAssignment last_flow;
    bool have_flow = false;
    for (int n : parse_int_list(n_set)) {
        json entry;
        entry["N"] = n;
        const SubtreeTN sub = build_t_n(sim.labelled, sim.positions, n);
        entry["retained_edges"] = sub.retained_edge_count;
        entry["root_component"] = sub.root_component_size;
        try {
            const FlowAssignment tree_flow = unit_flow_on_tree(sim.labelled.tree, depth, &sub);
            const FlowAssignment graph_flow =
                induce_flow(tree_flow, sim.labelled.tree, sub, sim.positions, sim.net);
            const double tree_energy = flow_energy(tree_flow).energy;
            const double graph_energy = flow_energy(graph_flow).energy;
            entry["tree_energy"] = tree_energy;
            entry["induced_energy"] = graph_energy;
            entry["cauchy_schwarz_ok"] = graph_energy <= n * tree_energy + 1e-9;
            // Depth-stability of the finite-energy certificate: compare
            // against the flow truncated at half depth.
            const FlowAssignment half_flow =
                unit_flow_on_tree(sim.labelled.tree, depth / 2, &sub);
            const FlowAssignment half_graph =
                induce_flow(half_flow, sim.labelled.tree, sub, sim.positions, sim.net);
            const double half_energy = flow_energy(half_graph).energy;
            entry["induced_energy_half_depth"] = half_energy;
            const double rel =
                graph_energy > 0 ? std::fabs(graph_energy - half_energy) / graph_energy : 0.0;
            entry["relative_change"] = rel;
            entry["stable"] = rel < 0.05;
            last_flow = graph_flow;
            have_flow = true;
        } catch (const validation_error& e) {
            entry["error"] = e.what();
        }
        per_n.push_back(entry);
    }
    report["flows"] = per_n;
    int smallest_stable = -1;
    for (const json& entry : per_n)
        if (entry.contains("stable") && entry["stable"].get<bool>()) {
            smallest_stable = entry["N"].get<int>();
            break;
        }
    if (smallest_stable > 0) report["smallest_stable_n"] = smallest_stable;
    else report["smallest_stable_n"] = nullptr;
    json reff = json::array();
    for (int radius : parse_int_list(radii)) {
        if (static_cast<std::uint32_t>(radius) > sim.net.extent) continue;
        const auto sinks = shell_vertices(sim.net, radius);
        json entry;
        entry["radius"] = radius;
        entry["r_eff"] = effective_resistance(sim.net.graph, sim.net.root, sinks);
        reff.push_back(entry);
    }
    report["effective_resistance"] = reff;
    ctx.artifact_json("trace-flow.json", report);
    if (have_flow) ctx.artifact("flow.csv", flow_csv(last_flow, sim.net));
    return 0;
}

int run_percolate(const CommonOptions& opt, int depth, const std::string& windows,
                  const std::string& grid_text, int replicas, std::size_t budget) {
    RunContext ctx("percolate", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"depth", depth},
                    {"windows", windows},
                    {"grid", grid_text},
                    {"replicas", replicas}});
    ctx.stream_path("percolation", {stream_tag::percolation});
    const SimulatedTrace sim = simulate_trace(opt, depth, budget);
    const std::vector<double> grid =
        grid_text == "default" ? default_probability_grid() : parse_grid(grid_text);
    const std::vector<int> window_list = parse_int_list(windows);
    RandomStream rng = RandomStream::derive(opt.seed, {stream_tag::percolation});
    std::vector<CrossingEstimate> all_sweeps;
    json pc = json::array();
    bool certified = true;
    for (int window : window_list) {
        const PcEstimate est = estimate_pc(sim.net, window, replicas, grid, rng);
        for (const CrossingEstimate& c : est.sweep) all_sweeps.push_back(c);
        pc.push_back(pc_json(est));
        certified = certified && est.upper_bracket > 0.0 && est.upper_bracket < 1.0;
    }
    ctx.artifact("sweep.csv", sweep_csv(all_sweeps));
    json verdict;
    verdict["windows"] = pc;
    verdict["pc_lt_1_certified"] = certified && window_list.size() >= 2;
    ctx.artifact_json("pc.json", verdict);
    return 0;
}

int run_growth(const CommonOptions& opt, int depth, int max_radius, int fit_lo, int fit_hi,
               std::size_t budget) {
    RunContext ctx("growth", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"depth", depth},
                    {"max_radius", max_radius},
                    {"fit_lo", fit_lo},
                    {"fit_hi", fit_hi}});
    ctx.stream_path("tree", {stream_tag::tree});
    const SimulatedTrace sim = simulate_trace(opt, depth, budget);
    const auto counts = volume_growth(sim.net, max_radius);
    ctx.artifact("growth.csv", growth_csv(counts));
    json fit_json;
    fit_json["max_radius"] = max_radius;
    fit_json["extent"] = sim.net.extent;
    if (fit_hi <= max_radius && fit_hi - fit_lo + 1 >= 3) {
        const GrowthFit fit = growth_rate_fit(counts, fit_lo, fit_hi);
        fit_json["rate"] = fit.rate;
        fit_json["scale"] = fit.scale;
        fit_json["slope_se"] = fit.slope_se;
        fit_json["quad_coeff"] = fit.quad_coeff;
        fit_json["quad_se"] = fit.quad_se;
        fit_json["curvature_flagged"] = fit.curvature_flagged();
    } else {
        fit_json["error"] = "fit range exceeds max radius";
    }
    ctx.artifact_json("fit.json", fit_json);
    return 0;
}

int run_cutpoints(const CommonOptions& opt, int depth, const std::string& windows,
                  std::size_t budget) {
    RunContext ctx("cutpoints", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"depth", depth},
                    {"windows", windows}});
    ctx.stream_path("tree", {stream_tag::tree});
    const SimulatedTrace sim = simulate_trace(opt, depth, budget);
    std::string csv = "window,count\n";
    json lists;
    for (int window : parse_int_list(windows)) {
        const auto cuts = find_cutpoints(sim.net, window);
        csv += std::to_string(window) + "," + std::to_string(cuts.size()) + "\n";
        json vertices = json::array();
        for (std::uint32_t v : cuts)
            vertices.push_back(element_to_string(sim.net.spec, sim.net.element[v]));
        lists[std::to_string(window)] = vertices;
    }
    ctx.artifact("cutpoints.csv", csv);
    ctx.artifact_json("cutpoints.json", lists);
    return 0;
}

int run_segments(const CommonOptions& opt, int depth, int k, std::size_t budget) {
    RunContext ctx("segments", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"depth", depth},
                    {"k", k}});
    ctx.stream_path("tree", {stream_tag::tree});
    const SimulatedTrace sim = simulate_trace(opt, depth, budget);
    const SegmentCensus census = find_line_segments(sim.net);
    std::string csv = "length\n";
    for (int len : census.maximal_lengths) csv += std::to_string(len) + "\n";
    ctx.artifact("segments.csv", csv);
    json j;
    j["longest"] = census.longest;
    j["count_at_least_k"] = census.count_at_least(k);
    j["k"] = k;
    if (census.longest >= 1) j["rho_lower_bound"] = segment_rho_lower_bound(census.longest);
    ctx.artifact_json("segments.json", j);
    return 0;
}

int run_mtp(const CommonOptions& opt, int samples) {
    RunContext ctx("mtp-test", opt,
                   {{"group", opt.group},
                    {"p", opt.offspring},
                    {"kind", opt.kind},
                    {"samples", samples}});
    ctx.stream_path("samples", {stream_tag::mtp});
    const OffspringDist dist = parse_offspring(opt.offspring);
    const TreeKind kind = tree_kind_from_string(opt.kind);
    RandomStream rng = RandomStream::derive(opt.seed, {stream_tag::mtp});
    std::vector<RootedTree> trees;
    trees.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) trees.push_back(sample_tree(dist, kind, 2, rng));
    const MtpReport report = mtp_check(trees);
    json j;
    j["seed"] = opt.seed;
    j["stream_path"] = {stream_tag::mtp};
    j["mean"] = report.mean;
    j["ci_low"] = report.ci_low;
    j["ci_high"] = report.ci_high;
    j["level"] = report.level;
    j["samples"] = report.sample_size;
    j["pass"] = report.pass;
    if (kind == TreeKind::ugw) {
        const auto law = ugw_root_degree_law(dist);
        std::vector<std::uint64_t> counts(law.size(), 0);
        for (const RootedTree& t : trees)
            for (std::size_t i = 0; i < law.size(); ++i)
                if (static_cast<int>(t.child_count(0)) == law[i].first) ++counts[i];
        std::vector<double> probs;
        for (auto [deg, p] : law) probs.push_back(p);
        const TestReport chi = chi_square(counts, probs);
        j["root_degree_chi_square"] = {{"statistic", chi.statistic},
                                       {"df", chi.df},
                                       {"p_value", chi.p_value}};
    }
    ctx.artifact_json("mtp.json", j);
    return 0;
}

int run_all(const CommonOptions& opt) {
    RunContext ctx("all", opt, {{"threads", opt.resolved_threads()}});
    SuiteOptions suite;
    suite.master_seed = opt.seed;
    suite.threads = opt.resolved_threads();
    json j = json::array();
    bool all_pass = true;
    for (CriterionFn fn : acceptance_criteria()) {
        const CriterionResult r = fn(suite);
        json entry;
        entry["id"] = r.id;
        entry["name"] = r.name;
        entry["pass"] = r.pass;
        entry["detail"] = r.detail;
        j.push_back(entry);
        all_pass = all_pass && r.pass;
        std::printf("%s criterion %d: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
        std::fflush(stdout);
    }
    json summary;
    summary["criteria"] = j;
    summary["all_pass"] = all_pass;
    ctx.artifact_json("summary.json", summary);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"branching random walk laboratory"};
    app.require_subcommand(1);

    CommonOptions opt;
    int depth = 60;
    int horizon = 60;
    int replicas = 200;
    int radius = 0;
    int max_radius = 30;
    int fit_lo = 5, fit_hi = 20;
    int k = 5;
    int samples = 100000;
    std::size_t budget = default_vertex_budget;
    std::uint64_t stream_budget = default_stream_budget;
    bool emit_tree = false;
    std::string n_set = "1,2,5,10,20";
    std::string radii = "10,20";
    std::string windows = "6,10";
    std::string cut_windows = "20,30,40";
    std::string grid = "default";

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run one BRW and emit the trace network (trace.csv: x,y,n)");
    add_common(simulate, opt);
    simulate->add_option("--depth", depth, "tree truncation depth")->capture_default_str();
    simulate->add_option("--budget", budget, "vertex budget")->capture_default_str();
    simulate->add_flag("--emit-tree", emit_tree, "also write tree.csv (vertex,parent,level)");

    CLI::App* recurrence = app.add_subcommand(
        "recurrence",
        "streamed replica revisit counts and the recurrence verdict (revisits.csv)");
    add_common(recurrence, opt);
    recurrence->add_option("--horizon,--depth", horizon, "level horizon")
        ->capture_default_str();
    recurrence->add_option("--replicas", replicas, "replica count")->capture_default_str();
    recurrence->add_option("--budget", stream_budget, "per-replica streamed vertex budget")
        ->capture_default_str();

    CLI::App* spectral = app.add_subcommand(
        "spectral", "spectral radius of the base Cayley graph by killed-ball power iteration");
    add_common(spectral, opt, false);
    spectral->add_option("--radius", radius, "ball radius (0 = per-family default)")
        ->capture_default_str();

    CLI::App* trace_flow = app.add_subcommand(
        "trace-flow", "T_N subtrees, unit flows, induced energies, effective resistance");
    add_common(trace_flow, opt);
    trace_flow->add_option("--depth", depth, "tree truncation depth")->capture_default_str();
    trace_flow->add_option("--n-set", n_set, "comma list of T_N thresholds")
        ->capture_default_str();
    trace_flow->add_option("--radii", radii, "comma list of resistance shell radii")
        ->capture_default_str();
    trace_flow->add_option("--budget", budget, "vertex budget")->capture_default_str();

    CLI::App* percolate = app.add_subcommand(
        "percolate", "Bernoulli sweep on a sampled trace; p_c brackets (sweep.csv, pc.json)");
    add_common(percolate, opt);
    percolate->add_option("--depth", depth, "tree truncation depth")->capture_default_str();
    percolate->add_option("--windows", windows, "crossing windows (trace graph distance)")
        ->capture_default_str();
    percolate->add_option("--grid", grid, "probability grid: 'default' or comma list")
        ->capture_default_str();
    percolate->add_option("--replicas", replicas, "replicas per grid point")
        ->capture_default_str();
    percolate->add_option("--budget", budget, "vertex budget")->capture_default_str();

    CLI::App* growth = app.add_subcommand(
        "growth", "|Tr^(n)| sequence and exponential-rate fit (growth.csv, fit.json)");
    add_common(growth, opt);
    growth->add_option("--depth", depth, "tree truncation depth")->capture_default_str();
    growth->add_option("--max-radius", max_radius, "largest ball radius")->capture_default_str();
    growth->add_option("--fit-lo", fit_lo, "fit range start")->capture_default_str();
    growth->add_option("--fit-hi", fit_hi, "fit range end")->capture_default_str();
    growth->add_option("--budget", budget, "vertex budget")->capture_default_str();

    CLI::App* cutpoints = app.add_subcommand(
        "cutpoints", "cutpoint census across separation windows (cutpoints.csv)");
    add_common(cutpoints, opt);
    cutpoints->add_option("--depth", depth, "tree truncation depth")->capture_default_str();
    cutpoints->add_option("--windows", cut_windows, "comma list of windows")
        ->capture_default_str();
    cutpoints->add_option("--budget", budget, "vertex budget")->capture_default_str();

    CLI::App* segments = app.add_subcommand(
        "segments", "maximal degree-2 line segments and the spectral lower bound");
    add_common(segments, opt);
    segments->add_option("--depth", depth, "tree truncation depth")->capture_default_str();
    segments->add_option("--k", k, "segment length of interest")->capture_default_str();
    segments->add_option("--budget", budget, "vertex budget")->capture_default_str();

    CLI::App* mtp = app.add_subcommand(
        "mtp-test", "mass-transport statistic and UGW root-degree goodness of fit");
    add_common(mtp, opt);
    mtp->add_option("--samples", samples, "tree samples")->capture_default_str();

    CLI::App* all = app.add_subcommand("all", "run the full verification suite");
    add_common(all, opt, false);

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return run_simulate(opt, depth, budget, emit_tree);
        if (recurrence->parsed()) return run_recurrence(opt, horizon, replicas, stream_budget);
        if (spectral->parsed()) return run_spectral(opt, radius);
        if (trace_flow->parsed()) return run_trace_flow(opt, depth, n_set, radii, budget);
        if (percolate->parsed())
            return run_percolate(opt, depth, windows, grid, replicas, budget);
        if (growth->parsed()) return run_growth(opt, depth, max_radius, fit_lo, fit_hi, budget);
        if (cutpoints->parsed()) return run_cutpoints(opt, depth, cut_windows, budget);
        if (segments->parsed()) return run_segments(opt, depth, k, budget);
        if (mtp->parsed()) return run_mtp(opt, samples);
        if (all->parsed()) return run_all(opt);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const resource_error& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return 3;
    } catch (const convergence_error& e) {
        std::fprintf(stderr, "convergence error: %s\n", e.what());
        return 3;
    } catch (const validation_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
