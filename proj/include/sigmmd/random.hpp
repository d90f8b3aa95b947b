#ifndef SIGMMD_RANDOM_HPP
#define SIGMMD_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sigmmd {

/*
 * Random source used throughout: std::mt19937_64 (its output sequence is
 * fixed by the C++ standard) seeded through splitmix64 derivation. All
 * variates below are drawn by hand-written transforms so that streams are
 * identical across standard library implementations.
 *
 *   sign:     top bit of one draw
 *   uniform:  (draw >> 11) * 2^-53, in [0, 1)
 *   index:    rejection sampling on the top bits
 *   normal:   Box-Muller, cosine branch, two uniforms per variate
 */
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Sub-stream seed for (seed, k_1, k_2, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = splitmix64(seed);
    for (std::uint64_t k : keys) s = splitmix64(s ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
    return s;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// +1 or -1 with probability 1/2 each.
    int sign() { return (next() >> 63) != 0 ? 1 : -1; }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); n > 0.
    std::uint64_t index(std::uint64_t n);

    double normal();

private:
    std::mt19937_64 engine_;
};

} // namespace sigmmd

#endif
