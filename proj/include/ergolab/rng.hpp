#ifndef ERGOLAB_RNG_HPP
#define ERGOLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace ergolab {

/// Seeded generator with a fixed uniform-double construction so identical
/// seeds give bit-identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform01() {
        // 53 random bits into [0,1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Stream for sample index i derived from a base seed; matches the
    /// convention "seed + index" used by all Monte Carlo drivers.
    static Rng for_sample(std::uint64_t base_seed, std::uint64_t index) {
        return Rng(base_seed + index);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace ergolab

#endif
