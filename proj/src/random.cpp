#include "sigmmd/random.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace sigmmd {

std::uint64_t Rng::index(std::uint64_t n) {
    if (n <= 1) return 0;
    const int bits = std::bit_width(n - 1);
    for (;;) {
        const std::uint64_t v = next() >> (64 - bits);
        if (v < n) return v;
    }
}

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace sigmmd
