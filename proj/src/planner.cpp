#include "gco/planner.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

#include "gco/error.hpp"
#include "gco/rng.hpp"

namespace gco {

namespace {

constexpr uint64_t kPrioritySalt = 0x70726900;
constexpr uint64_t kAssignSalt = 0x61736700;

class Planner {
public:
    explicit Planner(const PlanProblem& pb) : pb_(pb), n_(static_cast<int>(pb.starts.size())) {
        validate();
        pos_ = pb_.starts;
        level_.assign(n_, 0);
        reserved_.assign(n_, std::nullopt);
        init_priorities();
        init_assignment();
        build_fields();
    }

    PlanResult run() {
        PlanResult res;
        res.trajectories.assign(n_, {});
        for (int i = 0; i < n_; ++i) res.trajectories[i].push_back(pos_[i]);

        long cap = pb_.max_iters;
        if (cap <= 0) {
            const double diam = std::max(pb_.map.diameter(), pb_.primitives.length);
            cap = static_cast<long>(10.0 * n_ * (diam / pb_.primitives.length));
        }

        do {
            step(res);
        } while (!all_at_goal() && res.iterations < cap);

        res.success = all_at_goal();
        res.assignment = assign_;
        for (int i = 0; i < n_; ++i)
            for (size_t k = 1; k < res.trajectories[i].size(); ++k)
                res.sum_path_length +=
                    distance(res.trajectories[i][k], res.trajectories[i][k - 1]);
        return res;
    }

private:
    void validate() const {
        if (pb_.starts.empty() || pb_.starts.size() != pb_.goals.size())
            throw ValidationError("plan: |starts| must equal |goals| and be nonzero");
        std::ostringstream bad;
        for (int i = 0; i < n_; ++i) {
            if (!pb_.map.in_bounds(pb_.starts[i]) || pb_.map.occupied_at(pb_.starts[i]))
                bad << " start[" << i << "]";
            if (!pb_.map.in_bounds(pb_.goals[i]) || pb_.map.occupied_at(pb_.goals[i]))
                bad << " goal[" << i << "]";
        }
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (distance(pb_.starts[i], pb_.starts[j]) < 2.0 * pb_.robot_radius - 1e-12)
                    bad << " starts[" << i << "," << j << "]-overlap";
        if (!pb_.initial_assignment.empty()) {
            if (pb_.initial_assignment.size() != pb_.starts.size())
                bad << " assignment-size";
            else {
                std::set<int> seen(pb_.initial_assignment.begin(), pb_.initial_assignment.end());
                if (static_cast<int>(seen.size()) != n_ || *seen.begin() < 0 ||
                    *seen.rbegin() >= n_)
                    bad << " assignment-not-bijective";
            }
        }
        if (bad.tellp() > 0) throw ValidationError("plan: infeasible problem:" + bad.str());
    }

    void init_priorities() {
        SeqRng rng(derive_seed(pb_.seed, kPrioritySalt));
        std::set<double> used;
        base_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            double b = rng.uniform();
            while (!used.insert(b).second) b = rng.uniform();
            base_[i] = b;
        }
    }

    void init_assignment() {
        if (!pb_.initial_assignment.empty()) {
            assign_ = pb_.initial_assignment;
            return;
        }
        assign_.resize(n_);
        std::iota(assign_.begin(), assign_.end(), 0);
        SeqRng rng(derive_seed(pb_.seed, kAssignSalt));
        rng.shuffle(assign_);
    }

    void build_fields() {
        const bool euclid = pb_.euclidean_fields.value_or(pb_.map.empty());
        fields_.reserve(pb_.goals.size());
        for (const Vec2& g : pb_.goals) fields_.push_back(build_distance_field(pb_.map, g, euclid));
    }

    double effective_priority(int i) const { return level_[i] + base_[i]; }

    std::vector<int> priority_order() const {
        std::vector<int> order(n_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [this](int a, int b) {
            return effective_priority(a) > effective_priority(b);
        });
        return order;
    }

    double goal_dist(int robot, int goal) const { return fields_[goal].dist(pos_[robot]); }

    double total_cost() const {
        double c = 0.0;
        for (int i = 0; i < n_; ++i) c += goal_dist(i, assign_[i]);
        return c;
    }

    bool all_at_goal() const {
        for (int i = 0; i < n_; ++i)
            if (pos_[i] != pb_.goals[assign_[i]]) return false;
        return true;
    }

    void try_swap(int i, long iteration, PlanResult& res) {
        // Lower-priority candidates are fixed at entry; distances and the goal
        // map are re-read live so earlier swaps in the same pass take effect.
        const double entry_priority = effective_priority(i);
        std::vector<int> lower;
        for (int j = 0; j < n_; ++j)
            if (j != i && effective_priority(j) < entry_priority) lower.push_back(j);
        std::sort(lower.begin(), lower.end(), [this](int a, int b) {
            return effective_priority(a) > effective_priority(b);
        });

        for (int j : lower) {
            const double d_ia = goal_dist(i, assign_[i]);
            const double d_ib = goal_dist(i, assign_[j]);
            const double d_ja = goal_dist(j, assign_[j]);
            const double d_jb = goal_dist(j, assign_[i]);
            if (d_ib < d_ia && d_ib + d_jb <= d_ia + d_ja) {
                res.swap_log.push_back({iteration, i, j, assign_[i], assign_[j], pos_[i], pos_[j],
                                        d_ia, d_ib, d_ja, d_jb});
                std::swap(assign_[i], assign_[j]);
                std::swap(base_[i], base_[j]);
                std::swap(level_[i], level_[j]);
                ++res.swap_count;
            }
        }
    }

    bool conflicts_with_reserved(const MotionEdge& e) const {
        for (int j : reservation_log_)
            if (edge_edge_conflict(e, *reserved_[j], pb_.robot_radius)) return true;
        return false;
    }

    void reserve(int i, const MotionEdge& e) {
        reserved_[i] = e;
        reservation_log_.push_back(i);
    }

    void rollback(size_t mark) {
        while (reservation_log_.size() > mark) {
            reserved_[reservation_log_.back()].reset();
            reservation_log_.pop_back();
        }
    }

    bool try_move(int i, int depth) {
        if (depth > n_)
            throw Error("internal invariant violated: priority-inheritance recursion depth > N");

        const auto candidates =
            generate_motion_edges(i, pos_[i], fields_[assign_[i]], pb_.map, pb_.primitives);

        for (const MotionEdge& e : candidates) {
            if (e.kind == EdgeKind::Wait) break;  // wait is the explicit fallback below
            if (conflicts_with_reserved(e)) continue;

            std::vector<int> stepped_on;
            for (int j : move_order_)
                if (j != i && !reserved_[j] && edge_state_conflict(e, pos_[j], pb_.robot_radius))
                    stepped_on.push_back(j);

            if (stepped_on.empty()) {
                reserve(i, e);
                return true;
            }

            const size_t mark = reservation_log_.size();
            const bool enumerate = pb_.full_permutations ||
                                   static_cast<int>(stepped_on.size()) <= pb_.permutation_limit;
            std::vector<int> order(stepped_on.size());
            std::iota(order.begin(), order.end(), 0);
            do {
                reserve(i, e);
                bool ok = true;
                for (int idx : order)
                    if (!try_move(stepped_on[idx], depth + 1)) {
                        ok = false;
                        break;
                    }
                if (ok) return true;
                rollback(mark);
            } while (enumerate && std::next_permutation(order.begin(), order.end()));
        }

        reserve(i, {i, pos_[i], pos_[i], EdgeKind::Wait});
        return false;
    }

    void step(PlanResult& res) {
        const long iteration = res.iterations;
        std::vector<double> priorities(n_);
        for (int i = 0; i < n_; ++i) priorities[i] = effective_priority(i);
        res.priority_trace.push_back(std::move(priorities));

        if (pb_.algo == PlanAlgo::Gspi) {
            res.stage_cost_before.push_back(total_cost());
            for (int i : priority_order()) try_swap(i, iteration, res);
            res.stage_cost_after.push_back(total_cost());
        }

        move_order_ = priority_order();
        for (int i : move_order_)
            if (!reserved_[i]) try_move(i, 1);

        std::vector<MotionEdge> committed(n_);
        for (int i = 0; i < n_; ++i) {
            const MotionEdge& e = *reserved_[i];
            committed[i] = e;
            pos_[i] = e.to;
            if (e.kind == EdgeKind::Wait) ++res.wait_count;
            if (pos_[i] == pb_.goals[assign_[i]])
                level_[i] = 0;
            else
                ++level_[i];
            res.trajectories[i].push_back(pos_[i]);
        }
        res.committed.push_back(std::move(committed));
        rollback(0);
        ++res.iterations;
    }

    const PlanProblem& pb_;
    int n_;
    std::vector<Vec2> pos_;
    std::vector<double> base_;
    std::vector<int> level_;
    std::vector<int> assign_;
    std::vector<DistanceField> fields_;
    std::vector<std::optional<MotionEdge>> reserved_;
    std::vector<int> reservation_log_;
    std::vector<int> move_order_;
};

}  // namespace

PlanResult plan(const PlanProblem& problem) {
    return Planner(problem).run();
}

}  // namespace gco
