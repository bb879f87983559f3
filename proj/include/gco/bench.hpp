#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gco/scenario.hpp"

namespace gco {

// One benchmark run. The timing column is populated only when timing was
// requested; default runs keep it at zero so outputs stay byte-deterministic.
struct MetricsRow {
    std::string scenario;
    std::string method;
    int n_robots = 0;
    int n_objects = 0;
    bool success = false;
    double sum_cost_m = 0.0;
    double avg_cost_per_robot_m = 0.0;
    long iterations = 0;
    double avg_iter_time_ms = 0.0;
    long swaps = 0;
    long waits = 0;
    uint64_t seed = 0;
};

// Header string doubles as the schema version: any column change bumps it.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsRow& row);

struct PlanRun {
    PlanResult result;
    MetricsRow row;
};

PlanRun run_plan(const Scenario& scenario, PlanAlgo algo, uint64_t seed, bool timing = false);

struct GcoRun {
    EpisodeResult episode;
    MetricsRow row;
    nlohmann::json trace;  // per-iteration report
};

GcoRun run_gco(const Scenario& scenario, const std::string& policy_name, uint64_t seed,
               const std::string& external_policy_path = "");

// Cross product of scenarios x methods x seeds, one CSV row each, in
// deterministic order. Failing runs become rows; they never abort the suite.
std::string run_bench_csv(const std::vector<Scenario>& scenarios,
                          const std::vector<PlanAlgo>& methods, bool timing = false);

// Trajectory file format: JSON lines, one record per robot per step,
// {"robot": i, "t": step, "x": ..., "y": ...}.
std::string trajectories_to_jsonl(const std::vector<std::vector<Vec2>>& trajectories);
std::vector<std::vector<Vec2>> trajectories_from_jsonl(const std::string& text);

const char* algo_name(PlanAlgo algo);
PlanAlgo algo_from_name(const std::string& name);

struct SuccessRate {
    int runs = 0;
    int successes = 0;
    double rate() const { return runs ? static_cast<double>(successes) / runs : 0.0; }
};

// Per (scenario, method) success rates aggregated from a metrics CSV.
std::map<std::pair<std::string, std::string>, SuccessRate> aggregate_success_rates(
    const std::string& csv);

}  // namespace gco
