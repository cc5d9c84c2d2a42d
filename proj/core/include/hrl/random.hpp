#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace hrl {

std::uint64_t splitmix64(std::uint64_t x);

/// Named phases for child RNG streams.
enum class Phase : std::uint64_t {
    task_learning = 1,
    reward_free = 2,
    exit_detection = 3,
    learn_exit = 4,
    brute_force = 5,
    meta_test = 6,
    separation = 7,
    validation = 8,
    test = 9,
};

/// Platform independent generator: mt19937_64 plus hand rolled sampling.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, n).
    int uniform_int(int n);
    /// Samples an index from weights summing to one.
    int categorical(std::span<const double> probs);
    /// Independent child stream keyed by an integer.
    Rng child(std::uint64_t key) const;

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

/// Stream for (task, phase, episode) derived from a single root seed.
Rng make_stream(std::uint64_t root, std::uint64_t task, Phase phase, std::uint64_t episode = 0);

/// Monotone count of environment timesteps charged to one task.
class QueryCounter {
public:
    void add(std::int64_t steps) { count_ += steps; }
    std::int64_t count() const { return count_; }

private:
    std::int64_t count_ = 0;
};

}  // namespace hrl
