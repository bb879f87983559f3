#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gco {

// splitmix64 finalizer. Stateless, platform-independent.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline double to_unit_double(uint64_t bits) {
    return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

// Counter-based generator: every draw is a pure function of (seed, stream, counter),
// so independent consumers of the same stream ids see identical values regardless of
// what else was drawn in between.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed = 0) : seed_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t bits(uint64_t stream, uint64_t counter) const {
        return mix64(seed_ ^ mix64(stream ^ 0x5851f42d4c957f2dull) ^ mix64(counter));
    }

    double uniform(uint64_t stream, uint64_t counter) const {
        return to_unit_double(bits(stream, counter));
    }

    // Index into a normalized probability vector by inverse CDF.
    int categorical(std::span<const double> probs, uint64_t stream, uint64_t counter) const {
        double u = uniform(stream, counter);
        double acc = 0.0;
        for (size_t k = 0; k < probs.size(); ++k) {
            acc += probs[k];
            if (u < acc) return static_cast<int>(k);
        }
        return static_cast<int>(probs.size()) - 1;
    }

private:
    uint64_t seed_;
};

// Sequential convenience wrapper over CounterRng for shuffles and one-off draws.
class SeqRng {
public:
    explicit SeqRng(uint64_t seed) : rng_(seed) {}

    double uniform() { return rng_.uniform(0, counter_++); }

    uint64_t next_bits() { return rng_.bits(0, counter_++); }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_bits() % i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    CounterRng rng_;
    uint64_t counter_ = 0;
};

// Derives child seeds from a root seed, for fanning one run seed out to
// independent components (priorities, assignments, policy sampling, ...).
inline uint64_t derive_seed(uint64_t root, uint64_t salt) {
    return mix64(root ^ mix64(salt));
}

}  // namespace gco
