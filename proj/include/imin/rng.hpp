#ifndef IMIN_RNG_HPP
#define IMIN_RNG_HPP

#include <cstdint>
#include <random>

namespace imin {

/// Uniform double in [0, 1) with 53 random bits. mt19937_64's output sequence
/// is pinned by the standard, and mapping it manually sidesteps the
/// implementation-defined std::uniform_real_distribution, so seeded results
/// replay bit-exactly on every platform.
inline double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace imin

#endif
