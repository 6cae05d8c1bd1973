#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace netgroups {

/// Seeded pseudo-random stream with deterministic stream splitting.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The engine seed is SplitMix64(seed ^ SplitMix64(stream)), so a
/// (seed, stream) pair names one sequence on every platform. All variates are
/// derived here from raw 64-bit words rather than through the
/// implementation-defined std:: distributions.
///
/// split(i) derives a child whose seed mixes (seed, stream) and whose stream
/// index is i; realization i of an experiment therefore uses split(i) of the
/// technique's source and never depends on scheduling.
class RandomSource {
public:
    static constexpr std::string_view kGeneratorName = "mt19937_64+splitmix64/v1";

    explicit RandomSource(std::uint64_t seed = 0, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    RandomSource split(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    bool bernoulli(double p) { return uniform01() < p; }

    /// Number of consecutive successes before the first failure, where each
    /// trial continues with probability `continue_p`; support {0, 1, 2, ...},
    /// mean continue_p / (1 - continue_p).
    std::uint64_t geometric(double continue_p);

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    friend bool operator==(const RandomSource& a, const RandomSource& b) {
        return a.seed_ == b.seed_ && a.stream_ == b.stream_ && a.engine_ == b.engine_;
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace netgroups
