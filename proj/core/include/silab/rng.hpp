#ifndef SILAB_RNG_HPP
#define SILAB_RNG_HPP

#include <cstdint>
#include <random>

namespace silab {

// mt19937_64 with hand-rolled reductions: std::uniform_*_distribution is
// implementation-defined, and reports must be byte-identical across builds.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    // Uniform in [0, n).
    uint64_t below(uint64_t n) {
        // modulo with rejection to kill the bias
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform double in [-1, 1].
    double symmetric_unit() { return 2.0 * unit() - 1.0; }

    // Uniform double in [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace silab

#endif
