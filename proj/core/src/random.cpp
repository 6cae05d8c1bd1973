#include "netgroups/random.hpp"

#include <stdexcept>

namespace netgroups {

namespace {
__extension__ typedef unsigned __int128 Wide;
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(seed ^ splitmix64(stream))) {}

RandomSource RandomSource::split(std::uint64_t index) const {
    const std::uint64_t child_seed = splitmix64(seed_ ^ splitmix64(stream_ ^ 0xD1B54A32D192ED03ULL));
    return RandomSource(child_seed, index);
}

std::uint64_t RandomSource::uniform_index(std::uint64_t bound) {
    if (bound == 0) {
        throw std::domain_error("uniform_index: bound must be positive");
    }
    // Lemire's multiply-shift with rejection; exact and platform independent.
    Wide product = static_cast<Wide>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<Wide>(engine_()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

double RandomSource::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::geometric(double continue_p) {
    if (!(continue_p >= 0.0 && continue_p < 1.0)) {
        throw std::domain_error("geometric: continuation probability must lie in [0, 1)");
    }
    std::uint64_t count = 0;
    while (uniform01() < continue_p) {
        ++count;
    }
    return count;
}

}  // namespace netgroups
