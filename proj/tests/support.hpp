#pragma once

// Shared audit oracles for the planner test and acceptance suites. Everything
// here recomputes results from first principles, independent of the planner's
// own conflict math.

#include <algorithm>
#include <cmath>
#include <vector>

#include "gco/planner.hpp"

namespace gco::testing {

// Smallest center separation over densely sampled time, with a coarse
// triangle-inequality prescreen so full suites stay fast. The prescreen is
// sound: an affine relative motion cannot approach by more than its relative
// displacement.
inline double sampled_min_separation(const MotionEdge& a, const MotionEdge& b,
                                     int samples = 10000) {
    const Vec2 rel0 = b.from - a.from;
    const Vec2 relv = (b.to - b.from) - (a.to - a.from);
    double best = kInf;
    for (int k = 0; k <= samples; ++k) {
        const double t = static_cast<double>(k) / samples;
        best = std::min(best, norm(rel0 + relv * t));
    }
    return best;
}

struct SafetyAudit {
    long pairs_checked = 0;
    long violations = 0;
};

// Re-checks every committed step of a plan with the sampling oracle.
inline SafetyAudit audit_plan_safety(const PlanResult& result, double robot_radius,
                                     int samples = 10000) {
    SafetyAudit audit;
    const double threshold = 2.0 * robot_radius - 1e-9;
    for (const std::vector<MotionEdge>& step : result.committed) {
        for (size_t i = 0; i < step.size(); ++i) {
            for (size_t j = i + 1; j < step.size(); ++j) {
                const Vec2 rel0 = step[j].from - step[i].from;
                const Vec2 relv =
                    (step[j].to - step[j].from) - (step[i].to - step[i].from);
                // Prescreen: separation can shrink by at most |relv|.
                if (norm(rel0) - norm(relv) >= threshold) continue;
                ++audit.pairs_checked;
                if (sampled_min_separation(step[i], step[j], samples) < threshold)
                    ++audit.violations;
            }
        }
    }
    return audit;
}

struct SwapAudit {
    long swaps = 0;
    long condition_violations = 0;  // re-derived swap condition failed
    long cost_increases = 0;        // a swap stage increased total system cost
};

// Re-derives each logged swap's distances from the logged state and the
// scenario's distance fields, and re-checks both swap conditions plus the
// non-increase of the per-stage system cost.
inline SwapAudit audit_swaps(const PlanResult& result, const PlanProblem& problem) {
    SwapAudit audit;
    const bool euclid = problem.euclidean_fields.value_or(problem.map.empty());
    std::vector<DistanceField> fields;
    fields.reserve(problem.goals.size());
    for (const Vec2& g : problem.goals)
        fields.push_back(build_distance_field(problem.map, g, euclid));

    for (const SwapRecord& s : result.swap_log) {
        ++audit.swaps;
        const double d_ia = fields[s.goal_i].dist(s.pos_i);
        const double d_ib = fields[s.goal_j].dist(s.pos_i);
        const double d_ja = fields[s.goal_j].dist(s.pos_j);
        const double d_jb = fields[s.goal_i].dist(s.pos_j);
        const bool ok = d_ib < d_ia && d_ib + d_jb <= d_ia + d_ja;
        const bool logged_match = d_ia == s.d_ia && d_ib == s.d_ib && d_ja == s.d_ja &&
                                  d_jb == s.d_jb;
        if (!ok || !logged_match) ++audit.condition_violations;
    }
    for (size_t it = 0; it < result.stage_cost_after.size(); ++it)
        if (result.stage_cost_after[it] > result.stage_cost_before[it] + 1e-9)
            ++audit.cost_increases;
    return audit;
}

}  // namespace gco::testing
