// Command-line front end: plan | bench | gco | render | gen-suite.
// Exit codes: 0 success, 1 run failure, 2 usage or validation error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "gco/bench.hpp"
#include "gco/error.hpp"
#include "gco/svg.hpp"

namespace fs = std::filesystem;
using namespace gco;

namespace {

fs::path output_dir() {
    if (const char* env = std::getenv("GCO_OUT_DIR")) return fs::path(env);
    return fs::path(".");
}

fs::path resolve_out(const std::string& name) {
    fs::path p(name);
    if (p.is_absolute() || p.has_parent_path()) return p;
    fs::create_directories(output_dir());
    return output_dir() / p;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct PlannerFlags {
    std::string algo;
    long max_iters = -1;
    double prim_len = 0.0;
    int headings = 0;
    bool full_permutations = false;
    int euclidean = -1;  // -1 auto, 0 off, 1 on

    void attach(CLI::App* cmd) {
        cmd->add_option("--algo", algo, "planner variant: gspi|pibt");
        cmd->add_option("--max-iters", max_iters, "planner iteration cap (0 = derived default)");
        cmd->add_option("--prim-len", prim_len, "motion primitive length [m]");
        cmd->add_option("--headings", headings, "number of primitive headings");
        cmd->add_flag("--full-permutations", full_permutations,
                      "enumerate all orderings of every stepped-on set");
        cmd->add_option("--euclidean-dist", euclidean,
                        "distance fields: 1 straight-line, 0 grid, -1 auto");
    }

    void apply(Scenario& s) const {
        if (!algo.empty()) s.algo = algo;
        if (max_iters >= 0) s.max_iters = max_iters;
        if (prim_len > 0.0) s.primitives.length = prim_len;
        if (headings > 0) s.primitives.headings = headings;
        if (full_permutations) s.full_permutations = true;
        if (euclidean == 0) s.euclidean_dist = false;
        if (euclidean == 1) s.euclidean_dist = true;
    }
};

int cmd_plan(const std::string& scenario_path, const PlannerFlags& flags, uint64_t seed,
             bool timing, const std::string& out_name) {
    Scenario s = load_scenario(scenario_path);
    flags.apply(s);
    const PlanRun run = run_plan(s, algo_from_name(s.algo), seed, timing);

    const fs::path traj = resolve_out(
        out_name.empty() ? s.name + "_" + s.algo + "_s" + std::to_string(seed) + ".jsonl"
                         : out_name);
    write_file(traj, trajectories_to_jsonl(run.result.trajectories));

    std::cout << metrics_csv_header() << "\n" << metrics_csv_row(run.row) << "\n";
    std::cerr << "trajectory: " << traj.string() << "\n";
    return run.result.success ? 0 : 1;
}

int cmd_bench(const std::string& suite_dir, const std::string& methods_csv, bool timing,
              const std::string& out_name) {
    std::vector<Scenario> scenarios;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(suite_dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) scenarios.push_back(load_scenario(f.string()));
    if (scenarios.empty()) throw ValidationError("no .json scenarios in " + suite_dir);

    std::vector<PlanAlgo> methods;
    std::stringstream ss(methods_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) methods.push_back(algo_from_name(tok));

    const std::string csv = run_bench_csv(scenarios, methods, timing);
    const fs::path out = resolve_out(out_name.empty() ? "metrics.csv" : out_name);
    write_file(out, csv);
    std::cout << out.string() << "\n";
    return 0;
}

int cmd_gco(const std::string& scenario_path, const std::string& policy,
            const std::string& policy_file, uint64_t seed, int max_actions,
            const std::string& out_name) {
    Scenario s = load_scenario(scenario_path);
    if (max_actions >= 0) s.max_actions = max_actions;
    if (!policy.empty()) s.policy = policy;
    const GcoRun run = run_gco(s, s.policy, seed, policy_file);

    const fs::path trace = resolve_out(
        out_name.empty() ? s.name + "_gco_s" + std::to_string(seed) + ".json" : out_name);
    write_file(trace, run.trace.dump(2) + "\n");

    std::cout << metrics_csv_header() << "\n" << metrics_csv_row(run.row) << "\n";
    std::cerr << "trace: " << trace.string() << "\n";
    return run.episode.success ? 0 : 1;
}

int cmd_render(const std::string& scenario_path, const std::string& traj_path,
               const std::string& out_name, int frames) {
    const Scenario s = load_scenario(scenario_path);
    std::vector<std::vector<Vec2>> trajs;
    if (!traj_path.empty()) trajs = trajectories_from_jsonl(read_file(traj_path));

    const fs::path out = resolve_out(out_name.empty() ? s.name + ".svg" : out_name);
    write_file(out, render_svg(s, trajs));
    std::cout << out.string() << "\n";

    if (frames > 0) {
        size_t longest = 0;
        for (const auto& t : trajs) longest = std::max(longest, t.size());
        for (int k = 0; k < frames; ++k) {
            const size_t upto =
                longest == 0 ? 0 : (longest - 1) * static_cast<size_t>(k) / std::max(1, frames - 1);
            char suffix[32];
            std::snprintf(suffix, sizeof(suffix), "_frame_%03d.svg", k);
            const fs::path fp = out.parent_path() / (out.stem().string() + suffix);
            write_file(fp, render_svg_frame(s, trajs, upto));
        }
    }
    return 0;
}

int cmd_gen_suite(const std::string& out_dir, std::vector<int> empty_scales,
                  std::vector<int> obstacle_scales, bool with_gco) {
    SuiteParams params;
    if (!empty_scales.empty()) params.empty_scales = empty_scales;
    if (!obstacle_scales.empty()) params.obstacle_scales = obstacle_scales;
    fs::create_directories(out_dir);
    std::vector<Scenario> suite = generate_suite(params);
    if (with_gco) {
        suite.push_back(make_gco_push_single());
        suite.push_back(make_gco_push_multi());
    }
    for (const Scenario& s : suite) {
        const fs::path p = fs::path(out_dir) / (s.name + ".json");
        save_scenario(s, p.string());
        std::cout << p.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-robot coordination toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_name, traj_path, methods = "gspi,pibt";
    std::string policy, policy_file, suite_dir;
    uint64_t seed = 1;
    bool timing = false;
    int frames = 0, max_actions = -1;
    std::vector<int> empty_scales, obstacle_scales;
    bool with_gco = false;
    PlannerFlags flags;

    CLI::App* plan = app.add_subcommand("plan", "plan one scenario and write trajectories");
    plan->add_option("--scenario", scenario_path, "scenario JSON")->required();
    plan->add_option("--seed", seed, "run seed");
    plan->add_option("--out", out_name, "trajectory output file (JSON lines)");
    plan->add_flag("--timing", timing, "measure per-iteration time (non-deterministic output)");
    flags.attach(plan);

    CLI::App* bench = app.add_subcommand("bench", "run a suite directory and write metrics CSV");
    bench->add_option("--suite", suite_dir, "directory of scenario .json files")->required();
    bench->add_option("--methods", methods, "comma-separated planner list");
    bench->add_option("--out", out_name, "metrics CSV path");
    bench->add_flag("--timing", timing, "populate the timing column (non-deterministic)");

    CLI::App* gco_cmd = app.add_subcommand("gco", "run the closed manipulation loop");
    gco_cmd->add_option("--scenario", scenario_path, "scenario JSON with objects")->required();
    gco_cmd->add_option("--policy", policy, "manipulation policy: heuristic|external");
    gco_cmd->add_option("--policy-file", policy_file, "contact/trajectory file for external");
    gco_cmd->add_option("--seed", seed, "run seed");
    gco_cmd->add_option("--max-actions", max_actions, "episode action cap");
    gco_cmd->add_option("--out", out_name, "episode trace JSON path");

    CLI::App* render = app.add_subcommand("render", "render a scenario and trajectories to SVG");
    render->add_option("--scenario", scenario_path, "scenario JSON")->required();
    render->add_option("--trajectories", traj_path, "trajectory JSON lines");
    render->add_option("--out", out_name, "SVG path");
    render->add_option("--frames", frames, "also emit N time-slider frames");

    CLI::App* gen = app.add_subcommand("gen-suite", "write the built-in benchmark suite");
    gen->add_option("--out", suite_dir, "output directory")->required();
    gen->add_option("--empty-scales", empty_scales, "team sizes for obstacle-free maps");
    gen->add_option("--obstacle-scales", obstacle_scales, "team sizes for obstacle maps");
    gen->add_flag("--with-gco", with_gco, "include closed-loop pushing scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (plan->parsed()) return cmd_plan(scenario_path, flags, seed, timing, out_name);
        if (bench->parsed()) return cmd_bench(suite_dir, methods, timing, out_name);
        if (gco_cmd->parsed())
            return cmd_gco(scenario_path, policy, policy_file, seed, max_actions, out_name);
        if (render->parsed()) return cmd_render(scenario_path, traj_path, out_name, frames);
        if (gen->parsed()) return cmd_gen_suite(suite_dir, empty_scales, obstacle_scales, with_gco);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
