#pragma once

#include <cstdint>
#include <random>

namespace fieldcrypt {

/// Seeded uniform integer source. Bounded draws are done with plain
/// modulo-rejection on top of mt19937_64 instead of
/// std::uniform_int_distribution, whose output is implementation-defined;
/// this keeps seeded sequences identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi], both ends inclusive.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) { // full 64-bit span
            return static_cast<std::int64_t>(engine_());
        }
        const std::uint64_t threshold = (0 - range) % range;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r < threshold);
        return lo + static_cast<std::int64_t>(r % range);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fieldcrypt
