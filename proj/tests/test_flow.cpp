#include "gco/flow.hpp"

#include <cmath>

#include "doctest.h"
#include "gco/error.hpp"

using namespace gco;

namespace {

ContinuousState filled(double v, int slots = 3, int horizon = 4) {
    ContinuousState x(slots, horizon);
    for (double& e : x.values) e = v;
    return x;
}

Condition empty_condition(int w = 64) {
    Condition c;
    c.image_width = w;
    c.image.assign(static_cast<size_t>(w) * w, 0);
    return c;
}

// Velocity oracles used across the cases.

struct ConstantOracle : VelocityOracle {
    double v;
    explicit ConstantOracle(double v_) : v(v_) {}
    std::vector<double> continuous_velocity(double, const ContinuousState& X,
                                            const DiscreteState&, const Condition&) const override {
        return std::vector<double>(X.size(), v);
    }
    std::vector<double> discrete_velocity(double, const ContinuousState&, const DiscreteState& K,
                                          const Condition&) const override {
        // Identity-preserving chain.
        std::vector<double> d(K.tokens.size() * K.categories(), 0.0);
        for (size_t b = 0; b < K.tokens.size(); ++b) d[b * K.categories() + K.tokens[b]] = 1.0;
        return d;
    }
};

// Drives the continuous state toward a stored target along the rectified path
// and the discrete state toward a stored token sequence via one-hot rows.
struct RectifiedOracle : VelocityOracle {
    ContinuousState x0, x1;
    DiscreteState k1;
    RectifiedOracle(ContinuousState x0_, ContinuousState x1_, DiscreteState k1_)
        : x0(std::move(x0_)), x1(std::move(x1_)), k1(std::move(k1_)) {}

    std::vector<double> continuous_velocity(double, const ContinuousState&, const DiscreteState&,
                                            const Condition&) const override {
        std::vector<double> u(x0.size());
        for (size_t i = 0; i < u.size(); ++i) u[i] = x1.values[i] - x0.values[i];
        return u;
    }
    std::vector<double> discrete_velocity(double, const ContinuousState&, const DiscreteState& K,
                                          const Condition&) const override {
        std::vector<double> d(K.tokens.size() * K.categories(), 0.0);
        for (size_t b = 0; b < K.tokens.size(); ++b) d[b * K.categories() + k1.tokens[b]] = 1.0;
        return d;
    }
};

// Pulls every coordinate toward a point mass at x*, u = (x* - x) / (1 - t),
// with the denominator clipped at the final Euler step.
struct PointMassOracle : VelocityOracle {
    double target;
    double dt;
    PointMassOracle(double target_, int steps) : target(target_), dt(1.0 / steps) {}
    std::vector<double> continuous_velocity(double t, const ContinuousState& X,
                                            const DiscreteState&, const Condition&) const override {
        std::vector<double> u(X.size());
        const double denom = std::max(1.0 - t, dt);
        for (size_t i = 0; i < u.size(); ++i) u[i] = (target - X.values[i]) / denom;
        return u;
    }
    std::vector<double> discrete_velocity(double, const ContinuousState&, const DiscreteState& K,
                                          const Condition&) const override {
        std::vector<double> d(K.tokens.size() * K.categories(), 0.0);
        for (size_t b = 0; b < K.tokens.size(); ++b) d[b * K.categories() + K.tokens[b]] = 1.0;
        return d;
    }
};

struct UniformDiscreteOracle : VelocityOracle {
    std::vector<double> continuous_velocity(double, const ContinuousState& X,
                                            const DiscreteState&, const Condition&) const override {
        return std::vector<double>(X.size(), 0.0);
    }
    std::vector<double> discrete_velocity(double, const ContinuousState&, const DiscreteState& K,
                                          const Condition&) const override {
        // Uniform over the real tokens {1..w}; never emits the mask.
        std::vector<double> d(K.tokens.size() * K.categories(), 0.0);
        for (size_t b = 0; b < K.tokens.size(); ++b)
            for (int k = 1; k <= K.vocab; ++k) d[b * K.categories() + k] = 1.0 / K.vocab;
        return d;
    }
};

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("continuous interpolation endpoints and midpoint") {
    const ContinuousState x0 = filled(0.0);
    ContinuousState x1 = filled(0.0);
    x1.at(0, 0, 0) = 2.0;
    x1.at(0, 0, 1) = 4.0;

    CHECK(interp_continuous(x0, x1, 0.0).values == x0.values);
    CHECK(interp_continuous(x0, x1, 1.0).values == x1.values);
    const ContinuousState mid = interp_continuous(x0, x1, 0.5);
    CHECK(mid.at(0, 0, 0) == doctest::Approx(1.0));
    CHECK(mid.at(0, 0, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(interp_continuous(x0, x1, 1.5), OutOfBoundsError);
    CHECK_THROWS_AS(interp_continuous(x0, x1, -0.1), OutOfBoundsError);
}

TEST_CASE("discrete interpolation endpoints and mixture marginal") {
    const CounterRng rng(99);
    DiscreteState k0(64);  // all mask
    DiscreteState k1(64);
    for (int& t : k1.tokens) t = 7;

    CHECK(interp_discrete(k0, k1, 0.0, rng).tokens == k0.tokens);
    CHECK(interp_discrete(k0, k1, 1.0, rng).tokens == k1.tokens);

    // 3-sigma binomial bound at n = 10^4 draws: fraction of 7s in 0.5 +- 0.015.
    int sevens = 0, draws = 0;
    for (uint64_t trial = 0; trial < 10000 / 6; ++trial) {
        const DiscreteState mixed = interp_discrete(k0, k1, 0.5, rng, trial);
        for (int t : mixed.tokens) {
            ++draws;
            sevens += t == 7;
        }
    }
    const double fraction = static_cast<double>(sevens) / draws;
    CHECK(fraction == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("Euler under a constant field is exact for any step count") {
    const ContinuousState x0 = filled(0.25);
    const ConstantOracle oracle(1.5);
    for (int steps : {1, 3, 100}) {
        const ContinuousState out = sample_continuous(oracle, x0, steps, empty_condition());
        for (double v : out.values) CHECK(v == doctest::Approx(0.25 + 1.5).epsilon(1e-9));
    }
}

TEST_CASE("Euler reproduces a stored rectified pair") {
    const ContinuousState x0 = filled(-1.0);
    ContinuousState x1 = filled(2.0);
    x1.at(1, 2, 0) = -3.0;
    const RectifiedOracle oracle(x0, x1, DiscreteState(64));
    const ContinuousState out = sample_continuous(oracle, x0, 50, empty_condition());
    for (size_t i = 0; i < out.size(); ++i)
        CHECK(out.values[i] == doctest::Approx(x1.values[i]).epsilon(1e-9));
}

TEST_CASE("Euler tracks the analytic point-mass solution") {
    // Analytic flow: x(t) = x0 + (x* - x0) t, so x(1) = x*.
    const int steps = 1000;
    const ContinuousState x0 = filled(0.2);
    const PointMassOracle oracle(1.7, steps);
    const ContinuousState out = sample_continuous(oracle, x0, steps, empty_condition());
    for (double v : out.values) CHECK(std::abs(v - 1.7) < 1e-3);
}

TEST_CASE("sampling rejects a non-finite oracle") {
    struct BadOracle : ConstantOracle {
        BadOracle() : ConstantOracle(0.0) {}
        std::vector<double> continuous_velocity(double, const ContinuousState& X,
                                                const DiscreteState&,
                                                const Condition&) const override {
            return std::vector<double>(X.size(), std::nan(""));
        }
    };
    CHECK_THROWS_AS(sample_continuous(BadOracle{}, filled(0.0), 4, empty_condition()),
                    SamplingError);
}

TEST_CASE("one-hot chains absorb and identity chains hold still") {
    const CounterRng rng(5);
    DiscreteState k0(64);
    DiscreteState k_target(64);
    for (int& t : k_target.tokens) t = 13;

    const RectifiedOracle absorbing(filled(0), filled(0), k_target);
    CHECK(sample_discrete(absorbing, k0, 1, empty_condition(), rng).tokens == k_target.tokens);
    CHECK(sample_discrete(absorbing, k0, 25, empty_condition(), rng).tokens == k_target.tokens);

    DiscreteState k_mixed(64);
    k_mixed.tokens = {5, kMaskToken, 17, 1, 64, kMaskToken};
    const ConstantOracle identity(0.0);
    CHECK(sample_discrete(identity, k_mixed, 10, empty_condition(), rng).tokens ==
          k_mixed.tokens);
}

TEST_CASE("uniform oracle yields a uniform empirical marginal (chi-square)") {
    const UniformDiscreteOracle oracle;
    std::vector<long> counts(65, 0);
    long draws = 0;
    for (uint64_t rep = 0; rep < 1700; ++rep) {  // 1700 * 6 tokens > 10^4 draws
        const CounterRng rng(1000 + rep);
        const DiscreteState out =
            sample_discrete(oracle, DiscreteState(64), 3, empty_condition(), rng);
        for (int t : out.tokens) {
            ++counts[t];
            ++draws;
        }
    }
    CHECK(counts[kMaskToken] == 0);
    const double expected = static_cast<double>(draws) / 64.0;
    double chi2 = 0.0;
    for (int k = 1; k <= 64; ++k) {
        const double d = counts[k] - expected;
        chi2 += d * d / expected;
    }
    // df = 63; mean 63, sd ~ sqrt(126) ~ 11.2; 110 is beyond four sigma.
    CHECK(chi2 < 110.0);
}

TEST_CASE("sample_discrete validates oracle distributions") {
    struct Unnormalized : UniformDiscreteOracle {
        std::vector<double> discrete_velocity(double, const ContinuousState&,
                                              const DiscreteState& K,
                                              const Condition&) const override {
            return std::vector<double>(K.tokens.size() * K.categories(), 0.5);
        }
    };
    const CounterRng rng(1);
    CHECK_THROWS_AS(sample_discrete(Unnormalized{}, DiscreteState(64), 2, empty_condition(), rng),
                    SamplingError);
}

TEST_CASE("cogenerate reduces bit-exactly to the single-modality samplers") {
    const CounterRng rng(321);
    const Condition cond = empty_condition();
    const ContinuousState x0 = filled(0.5);
    DiscreteState k_target(64);
    for (size_t b = 0; b < k_target.tokens.size(); ++b)
        k_target.tokens[b] = static_cast<int>(b) + 10;
    ContinuousState x_target = filled(1.25);
    const RectifiedOracle oracle(x0, x_target, k_target);

    const auto [cx, ck] = cogenerate(oracle, x0, DiscreteState(64), 40, cond, rng);
    const ContinuousState sx = sample_continuous(oracle, x0, 40, cond);
    const DiscreteState sk = sample_discrete(oracle, DiscreteState(64), 40, cond, rng);

    CHECK(cx.values == sx.values);  // bitwise
    CHECK(ck.tokens == sk.tokens);
    // And the coupled run converged to the scripted pair.
    CHECK(ck.tokens == k_target.tokens);
    for (size_t i = 0; i < cx.size(); ++i)
        CHECK(cx.values[i] == doctest::Approx(x_target.values[i]).epsilon(1e-9));
}

TEST_CASE("continuous loss is the mean squared error against the sample velocity") {
    const ContinuousState x0 = filled(0.0);
    const ContinuousState x1 = filled(1.0);
    ContinuousState truth = filled(1.0);
    CHECK(fm_loss_continuous(truth, x0, x1) == 0.0);

    const ContinuousState zero = filled(0.0);
    CHECK(fm_loss_continuous(zero, x0, x1) == doctest::Approx(1.0));

    // Brute-force recomputation on pseudo-random tensors.
    CounterRng rng(7);
    ContinuousState pred = filled(0.0), a = filled(0.0), b = filled(0.0);
    for (size_t i = 0; i < pred.size(); ++i) {
        pred.values[i] = rng.uniform(0, i) * 4 - 2;
        a.values[i] = rng.uniform(1, i) * 4 - 2;
        b.values[i] = rng.uniform(2, i) * 4 - 2;
    }
    double mse = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        const double d = pred.values[i] - (b.values[i] - a.values[i]);
        mse += d * d;
    }
    mse /= static_cast<double>(pred.size());
    CHECK(std::abs(fm_loss_continuous(pred, a, b) - mse) < 1e-12);
}

TEST_CASE("discrete loss matches closed-form cross-entropies") {
    DiscreteState k1(64);
    for (int& t : k1.tokens) t = 3;

    std::vector<std::vector<double>> one_hot(6, std::vector<double>(65, 0.0));
    for (auto& row : one_hot) row[3] = 1.0;
    CHECK(fm_loss_discrete(one_hot, k1) == doctest::Approx(0.0));

    std::vector<std::vector<double>> uniform(6, std::vector<double>(65, 1.0 / 65.0));
    CHECK(fm_loss_discrete(uniform, k1) == doctest::Approx(6.0 * std::log(65.0)));
    CHECK(fm_loss_discrete(uniform, k1) == doctest::Approx(25.046).epsilon(1e-4));

    // One soft token among one-hot rows contributes exactly ln 2.
    std::vector<std::vector<double>> soft = one_hot;
    soft[0].assign(65, 0.0);
    soft[0][3] = 0.5;
    soft[0][4] = 0.5;
    CHECK(fm_loss_discrete(soft, k1) == doctest::Approx(std::log(2.0)));

    // Zero mass on the target hits the documented floor instead of infinity.
    std::vector<std::vector<double>> zero = one_hot;
    zero[0].assign(65, 0.0);
    zero[0][4] = 1.0;
    CHECK(fm_loss_discrete(zero, k1) == doctest::Approx(-std::log(1e-30)));
}

TEST_CASE("budget loss is the per-object ReLU sum") {
    CHECK(budget_loss({3}, {2}) == 1.0);
    CHECK(budget_loss({2}, {3}) == 0.0);
    CHECK(budget_loss({3, 1, 2}, {1, 1, 3}) == 2.0);

    CounterRng rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<int> gen(5), alloc(5);
        double expected = 0.0;
        for (int i = 0; i < 5; ++i) {
            gen[i] = static_cast<int>(rng.uniform(0, trial * 5 + i) * 4);
            alloc[i] = static_cast<int>(rng.uniform(1, trial * 5 + i) * 4);
            expected += std::max(0, gen[i] - alloc[i]);
        }
        CHECK(budget_loss(gen, alloc) == expected);
    }
}

TEST_CASE("all losses vanish exactly at ground truth") {
    const ContinuousState x0 = filled(0.3);
    ContinuousState x1 = filled(0.9);
    ContinuousState truth(x0.slots, x0.horizon);
    for (size_t i = 0; i < truth.size(); ++i) truth.values[i] = x1.values[i] - x0.values[i];
    CHECK(fm_loss_continuous(truth, x0, x1) <= 1e-12);

    DiscreteState k1(64);
    k1.tokens = {1, 2, 3, 4, 5, 6};
    std::vector<std::vector<double>> exact(6, std::vector<double>(65, 0.0));
    for (int b = 0; b < 6; ++b) exact[b][k1.tokens[b]] = 1.0;
    CHECK(fm_loss_discrete(exact, k1) <= 1e-12);
    CHECK(budget_loss({1, 2, 3}, {1, 2, 3}) == 0.0);
}

}  // TEST_SUITE
