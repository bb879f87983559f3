#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gco/geometry.hpp"
#include "gco/rng.hpp"

namespace gco {

// Hard cap on robots per object; tokenized contact states carry 2 * kBudgetMax tokens.
constexpr int kBudgetMax = 3;

// Mask sentinel in the token alphabet {1..w} u {mask}.
constexpr int kMaskToken = 0;

// Conventional integration step count when callers have no preference.
constexpr int kDefaultSampleSteps = 100;

// Waypoint tensor of shape [slots, horizon, 2], row-major, meters, origin-rooted.
struct ContinuousState {
    int slots = kBudgetMax;
    int horizon = 16;
    std::vector<double> values;  // slots * horizon * 2

    ContinuousState() : values(static_cast<size_t>(slots) * horizon * 2, 0.0) {}
    ContinuousState(int slots_, int horizon_)
        : slots(slots_), horizon(horizon_), values(static_cast<size_t>(slots_) * horizon_ * 2, 0.0) {}

    size_t size() const { return values.size(); }
    double& at(int slot, int t, int axis) { return values[(slot * horizon + t) * 2 + axis]; }
    double at(int slot, int t, int axis) const { return values[(slot * horizon + t) * 2 + axis]; }
    bool same_shape(const ContinuousState& o) const {
        return slots == o.slots && horizon == o.horizon;
    }
};

// Token sequence of length 2 * kBudgetMax over {1..vocab} u {kMaskToken}.
struct DiscreteState {
    int vocab = 64;  // w: tokens index image pixels 1..w
    std::vector<int> tokens;

    explicit DiscreteState(int vocab_ = 64)
        : vocab(vocab_), tokens(2 * kBudgetMax, kMaskToken) {}

    int categories() const { return vocab + 1; }  // alphabet size |{1..w} u {mask}|
    static DiscreteState all_masked(int vocab_) { return DiscreteState(vocab_); }
    bool token_valid(int tok) const { return tok == kMaskToken || (tok >= 1 && tok <= vocab); }
};

// Conditioning tuple fed to velocity fields: per-object occupancy image, the
// requested transform, and the allocated robot budget.
struct Condition {
    int image_width = 64;
    std::vector<uint8_t> image;  // image_width^2, row-major
    Pose2 transform;
    int budget = 0;
};

// Pluggable velocity fields for sampling. Implementations may be scripted,
// analytic, or wrappers around externally trained models.
class VelocityOracle {
public:
    virtual ~VelocityOracle() = default;

    // Continuous velocity; must return a tensor shaped like X.values.
    virtual std::vector<double> continuous_velocity(double t, const ContinuousState& X,
                                                    const DiscreteState& K,
                                                    const Condition& cond) const = 0;

    // Per-token categorical distribution over K.categories(), row-major
    // [token][category]; every row must sum to 1 within 1e-6.
    virtual std::vector<double> discrete_velocity(double t, const ContinuousState& X,
                                                  const DiscreteState& K,
                                                  const Condition& cond) const = 0;
};

// (X1 - X0) * t + X0. Throws on t outside [0,1] or shape mismatch.
ContinuousState interp_continuous(const ContinuousState& X0, const ContinuousState& X1, double t);

// Each token takes K1's value with probability t, else K0's. Streams are
// derived per token so draws do not depend on evaluation order; `epoch`
// separates repeated interpolations under one rng.
DiscreteState interp_discrete(const DiscreteState& K0, const DiscreteState& K1, double t,
                              const CounterRng& rng, uint64_t epoch = 0);

// Forward Euler from t=0 to t=1 in `steps` equal increments.
ContinuousState sample_continuous(const VelocityOracle& oracle, const ContinuousState& X0,
                                  int steps, const Condition& cond);

// Categorical Markov chain: each of `steps` transitions resamples every token
// from the oracle's distribution. Token b at step k draws uniform(stream=b, counter=k).
DiscreteState sample_discrete(const VelocityOracle& oracle, const DiscreteState& K0, int steps,
                              const Condition& cond, const CounterRng& rng);

// Coupled generation: per step, both the discrete transition and the Euler
// update read the joint state from the start of the step. The discrete side
// consumes exactly the streams sample_discrete would, so decoupled oracles
// reduce bit-exactly to the single-modality samplers.
std::pair<ContinuousState, DiscreteState> cogenerate(const VelocityOracle& oracle,
                                                     const ContinuousState& X0,
                                                     const DiscreteState& K0, int steps,
                                                     const Condition& cond, const CounterRng& rng);

// Mean squared error between the predicted velocity and the sample velocity X1 - X0.
double fm_loss_continuous(const ContinuousState& pred_vel, const ContinuousState& X0,
                          const ContinuousState& X1);

// Sum over tokens of -log p(target); probabilities are floored at 1e-30.
double fm_loss_discrete(const std::vector<std::vector<double>>& pred_dists,
                        const DiscreteState& K1);

// Sum of ReLU(generated - allocated) over paired budget lists.
double budget_loss(const std::vector<int>& generated, const std::vector<int>& allocated);

}  // namespace gco
