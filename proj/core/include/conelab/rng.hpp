#pragma once

#include <cstdint>

#include "conelab/vectors.hpp"

namespace conelab {

/// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom mixer)
/// used in pure counter mode: out(i) = mix(seed + (i+1) * 0x9E3779B97F4A7C15).
/// Platform-independent by construction; this is part of the determinism
/// contract, so the constants are fixed here and tested.
struct SplitMix64 {
    uint64_t seed = 0;

    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    uint64_t at(uint64_t i) const {
        return mix(seed + (i + 1) * 0x9E3779B97F4A7C15ull);
    }
};

/// Documented stream splitting: substream k of `seed` is itself a SplitMix64
/// over mix(seed ^ mix(k + 1)).
uint64_t derive_subseed(uint64_t seed, uint64_t index);

/// Exact dyadic uniform draw in [0, 1) with 128 fractional bits, consuming
/// counters i0 and i0+1.
mpq_class uniform_unit_dyadic(const SplitMix64& g, uint64_t i0);

/// Uniform point in [0,1)^n, coordinates exact dyadic rationals.
RealVector sample_unit_vector(uint64_t seed, int n, int bits = 192);

}  // namespace conelab
