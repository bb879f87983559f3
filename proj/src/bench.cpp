#include "gco/bench.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "gco/error.hpp"
#include "gco/rng.hpp"

namespace gco {

using nlohmann::json;

namespace {

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

constexpr uint64_t kPlanRunSalt = 0x706c6e00;
constexpr uint64_t kGcoRunSalt = 0x67636f00;

}  // namespace

std::string metrics_csv_header() {
    return "scenario,method,n_robots,n_objects,success,sum_cost_m,avg_cost_per_robot_m,"
           "iterations,avg_iter_time_ms,swaps,waits,seed";
}

std::string metrics_csv_row(const MetricsRow& r) {
    std::ostringstream out;
    out << r.scenario << ',' << r.method << ',' << r.n_robots << ',' << r.n_objects << ','
        << (r.success ? 1 : 0) << ',' << fmt(r.sum_cost_m) << ','
        << fmt(r.avg_cost_per_robot_m) << ',' << r.iterations << ','
        << fmt(r.avg_iter_time_ms, 3) << ',' << r.swaps << ',' << r.waits << ',' << r.seed;
    return out.str();
}

const char* algo_name(PlanAlgo algo) {
    return algo == PlanAlgo::Gspi ? "gspi" : "pibt";
}

PlanAlgo algo_from_name(const std::string& name) {
    if (name == "gspi") return PlanAlgo::Gspi;
    if (name == "pibt") return PlanAlgo::Pibt;
    throw ValidationError("unknown algorithm '" + name + "' (want gspi|pibt)");
}

PlanRun run_plan(const Scenario& scenario, PlanAlgo algo, uint64_t seed, bool timing) {
    PlanProblem pb = make_plan_problem(scenario, algo, derive_seed(seed, kPlanRunSalt));

    const auto t0 = std::chrono::steady_clock::now();
    PlanRun run;
    run.result = plan(pb);
    const auto t1 = std::chrono::steady_clock::now();

    run.row.scenario = scenario.name;
    run.row.method = algo_name(algo);
    run.row.n_robots = static_cast<int>(scenario.starts.size());
    run.row.n_objects = static_cast<int>(scenario.objects.size());
    run.row.success = run.result.success;
    run.row.sum_cost_m = run.result.sum_path_length;
    run.row.avg_cost_per_robot_m =
        run.result.sum_path_length / std::max<size_t>(1, scenario.starts.size());
    run.row.iterations = run.result.iterations;
    if (timing && run.result.iterations > 0) {
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        run.row.avg_iter_time_ms = ms / static_cast<double>(run.result.iterations);
    }
    run.row.swaps = run.result.swap_count;
    run.row.waits = run.result.wait_count;
    run.row.seed = seed;
    return run;
}

GcoRun run_gco(const Scenario& scenario, const std::string& policy_name, uint64_t seed,
               const std::string& external_policy_path) {
    if (scenario.objects.empty())
        throw ValidationError("gco run requires a scenario with objects and object_goals");

    WorldState world = world_from_scenario(scenario);
    GcoConfig cfg = gco_config_from_scenario(scenario, derive_seed(seed, kGcoRunSalt));

    ManipulationPolicy policy;
    if (policy_name == "heuristic") {
        policy = make_heuristic_policy(cfg);
    } else if (policy_name == "external") {
        if (external_policy_path.empty())
            throw ValidationError("external policy requires a policy file path");
        policy = load_external_policy(external_policy_path, world);
    } else {
        throw ValidationError("unknown policy '" + policy_name + "' (want heuristic|external)");
    }

    GcoRun run;
    run.episode = run_episode(world, policy, cfg);

    run.row.scenario = scenario.name;
    run.row.method = "gco-" + policy_name;
    run.row.n_robots = static_cast<int>(scenario.starts.size());
    run.row.n_objects = static_cast<int>(scenario.objects.size());
    run.row.success = run.episode.success;
    run.row.sum_cost_m = run.episode.total_distance;
    run.row.avg_cost_per_robot_m = run.episode.avg_distance_per_robot;
    run.row.iterations = run.episode.actions_used;
    run.row.seed = seed;

    run.trace["scenario"] = scenario.name;
    run.trace["success"] = run.episode.success;
    run.trace["actions_used"] = run.episode.actions_used;
    run.trace["avg_distance_per_robot"] = run.episode.avg_distance_per_robot;
    run.trace["iterations"] = json::array();
    for (const IterationReport& rep : run.episode.iterations) {
        json it;
        it["failed"] = rep.failed;
        if (rep.failed) it["failure"] = rep.failure;
        it["contacts_used"] = rep.contacts_used;
        it["robot_distance"] = rep.robot_distance;
        it["conveyance_iterations"] = rep.conveyance_iterations;
        run.trace["iterations"].push_back(it);
    }
    return run;
}

std::string run_bench_csv(const std::vector<Scenario>& scenarios,
                          const std::vector<PlanAlgo>& methods, bool timing) {
    std::ostringstream out;
    out << metrics_csv_header() << '\n';
    for (const Scenario& s : scenarios) {
        for (PlanAlgo algo : methods) {
            for (uint64_t seed : s.seeds) {
                MetricsRow row;
                try {
                    row = run_plan(s, algo, seed, timing).row;
                } catch (const Error& e) {
                    // Partial failures become rows, never abort the suite.
                    row.scenario = s.name;
                    row.method = algo_name(algo);
                    row.n_robots = static_cast<int>(s.starts.size());
                    row.n_objects = static_cast<int>(s.objects.size());
                    row.success = false;
                    row.seed = seed;
                }
                out << metrics_csv_row(row) << '\n';
            }
        }
    }
    return out.str();
}

std::string trajectories_to_jsonl(const std::vector<std::vector<Vec2>>& trajectories) {
    std::ostringstream out;
    for (size_t robot = 0; robot < trajectories.size(); ++robot) {
        for (size_t t = 0; t < trajectories[robot].size(); ++t) {
            json rec;
            rec["robot"] = robot;
            rec["t"] = t;
            rec["x"] = trajectories[robot][t].x;
            rec["y"] = trajectories[robot][t].y;
            out << rec.dump() << '\n';
        }
    }
    return out.str();
}

std::map<std::pair<std::string, std::string>, SuccessRate> aggregate_success_rates(
    const std::string& csv) {
    std::map<std::pair<std::string, std::string>, SuccessRate> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string scenario, method, field;
        std::getline(row, scenario, ',');
        std::getline(row, method, ',');
        std::getline(row, field, ',');  // n_robots
        std::getline(row, field, ',');  // n_objects
        std::getline(row, field, ',');  // success
        SuccessRate& r = out[{scenario, method}];
        ++r.runs;
        r.successes += field == "1";
    }
    return out;
}

std::vector<std::vector<Vec2>> trajectories_from_jsonl(const std::string& text) {
    std::vector<std::vector<Vec2>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError("trajectory line " + std::to_string(lineno) + ": " + e.what());
        }
        const size_t robot = rec.at("robot").get<size_t>();
        const size_t t = rec.at("t").get<size_t>();
        if (out.size() <= robot) out.resize(robot + 1);
        if (out[robot].size() <= t) out[robot].resize(t + 1);
        out[robot][t] = {rec.at("x").get<double>(), rec.at("y").get<double>()};
    }
    return out;
}

}  // namespace gco
