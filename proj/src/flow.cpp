#include "gco/flow.hpp"

#include <cmath>

#include "gco/error.hpp"

namespace gco {

namespace {

void check_shapes(const ContinuousState& a, const ContinuousState& b, const char* what) {
    if (!a.same_shape(b)) throw ValidationError(std::string(what) + ": shape mismatch");
}

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw SamplingError(std::string(what) + ": non-finite value");
}

// Validates one categorical row and returns it as a span-friendly pointer.
void check_distribution(const double* row, int categories) {
    double sum = 0.0;
    for (int k = 0; k < categories; ++k) {
        if (!(row[k] >= 0.0)) throw SamplingError("discrete velocity: negative probability");
        sum += row[k];
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw SamplingError("discrete velocity: distribution does not sum to 1");
}

}  // namespace

ContinuousState interp_continuous(const ContinuousState& X0, const ContinuousState& X1, double t) {
    check_shapes(X0, X1, "interp_continuous");
    if (!(t >= 0.0 && t <= 1.0)) throw OutOfBoundsError("interp_continuous: t outside [0,1]");
    ContinuousState out(X0.slots, X0.horizon);
    for (size_t i = 0; i < out.size(); ++i)
        out.values[i] = (X1.values[i] - X0.values[i]) * t + X0.values[i];
    return out;
}

DiscreteState interp_discrete(const DiscreteState& K0, const DiscreteState& K1, double t,
                              const CounterRng& rng, uint64_t epoch) {
    if (K0.tokens.size() != K1.tokens.size() || K0.vocab != K1.vocab)
        throw ValidationError("interp_discrete: shape mismatch");
    DiscreteState out(K0.vocab);
    for (size_t b = 0; b < K0.tokens.size(); ++b)
        out.tokens[b] = rng.uniform(b, epoch) < t ? K1.tokens[b] : K0.tokens[b];
    return out;
}

ContinuousState sample_continuous(const VelocityOracle& oracle, const ContinuousState& X0,
                                  int steps, const Condition& cond) {
    if (steps < 1) throw ValidationError("sample_continuous: steps must be >= 1");
    ContinuousState x = X0;
    DiscreteState unused(cond.image_width);
    const double dt = 1.0 / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const std::vector<double> u = oracle.continuous_velocity(t, x, unused, cond);
        if (u.size() != x.size()) throw SamplingError("continuous velocity: wrong shape");
        check_finite(u, "continuous velocity");
        for (size_t i = 0; i < x.size(); ++i) x.values[i] += u[i] * dt;
    }
    return x;
}

namespace {

// One categorical transition over all tokens; shared by the single-modality
// sampler and the coupled one so their draws coincide stream-for-stream.
void discrete_transition(const VelocityOracle& oracle, double t, const ContinuousState& X,
                         DiscreteState& K, const Condition& cond, const CounterRng& rng,
                         uint64_t step_counter) {
    const int categories = K.categories();
    const std::vector<double> dists = oracle.discrete_velocity(t, X, K, cond);
    if (dists.size() != K.tokens.size() * static_cast<size_t>(categories))
        throw SamplingError("discrete velocity: wrong shape");
    for (size_t b = 0; b < K.tokens.size(); ++b) {
        const double* row = dists.data() + b * categories;
        check_distribution(row, categories);
        K.tokens[b] = rng.categorical({row, static_cast<size_t>(categories)}, b, step_counter);
    }
}

}  // namespace

DiscreteState sample_discrete(const VelocityOracle& oracle, const DiscreteState& K0, int steps,
                              const Condition& cond, const CounterRng& rng) {
    if (steps < 1) throw ValidationError("sample_discrete: steps must be >= 1");
    DiscreteState k = K0;
    ContinuousState unused;
    const double dt = 1.0 / steps;
    for (int s = 0; s < steps; ++s)
        discrete_transition(oracle, s * dt, unused, k, cond, rng, static_cast<uint64_t>(s));
    return k;
}

std::pair<ContinuousState, DiscreteState> cogenerate(const VelocityOracle& oracle,
                                                     const ContinuousState& X0,
                                                     const DiscreteState& K0, int steps,
                                                     const Condition& cond, const CounterRng& rng) {
    if (steps < 1) throw ValidationError("cogenerate: steps must be >= 1");
    ContinuousState x = X0;
    DiscreteState k = K0;
    const double dt = 1.0 / steps;
    for (int s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        // Both velocities are evaluated at the step-start joint state.
        const std::vector<double> u = oracle.continuous_velocity(t, x, k, cond);
        if (u.size() != x.size()) throw SamplingError("continuous velocity: wrong shape");
        check_finite(u, "continuous velocity");
        discrete_transition(oracle, t, x, k, cond, rng, static_cast<uint64_t>(s));
        for (size_t i = 0; i < x.size(); ++i) x.values[i] += u[i] * dt;
    }
    return {std::move(x), std::move(k)};
}

double fm_loss_continuous(const ContinuousState& pred_vel, const ContinuousState& X0,
                          const ContinuousState& X1) {
    check_shapes(pred_vel, X0, "fm_loss_continuous");
    check_shapes(X0, X1, "fm_loss_continuous");
    double acc = 0.0;
    for (size_t i = 0; i < pred_vel.size(); ++i) {
        const double d = pred_vel.values[i] - (X1.values[i] - X0.values[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(pred_vel.size());
}

double fm_loss_discrete(const std::vector<std::vector<double>>& pred_dists,
                        const DiscreteState& K1) {
    if (pred_dists.size() != K1.tokens.size())
        throw ValidationError("fm_loss_discrete: one distribution per token required");
    const int categories = K1.categories();
    double acc = 0.0;
    for (size_t b = 0; b < pred_dists.size(); ++b) {
        if (pred_dists[b].size() != static_cast<size_t>(categories))
            throw ValidationError("fm_loss_discrete: distribution has wrong arity");
        const int target = K1.tokens[b];  // kMaskToken occupies category 0
        const double p = std::max(pred_dists[b][target], 1e-30);
        acc -= std::log(p);
    }
    return acc;
}

double budget_loss(const std::vector<int>& generated, const std::vector<int>& allocated) {
    if (generated.size() != allocated.size())
        throw ValidationError("budget_loss: length mismatch");
    double acc = 0.0;
    for (size_t j = 0; j < generated.size(); ++j)
        acc += std::max(0, generated[j] - allocated[j]);
    return acc;
}

}  // namespace gco
