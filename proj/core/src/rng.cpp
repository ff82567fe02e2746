#include "conelab/rng.hpp"

namespace conelab {

uint64_t derive_subseed(uint64_t seed, uint64_t index) {
    return SplitMix64::mix(seed ^ SplitMix64::mix(index + 1));
}

mpq_class uniform_unit_dyadic(const SplitMix64& g, uint64_t i0) {
    mpz_class m = 0;
    m += mpz_class(static_cast<unsigned long>(g.at(i0)));
    m <<= 64;
    m += mpz_class(static_cast<unsigned long>(g.at(i0 + 1)));
    mpq_class q(m, mpz_class(1) << 128);
    q.canonicalize();
    return q;
}

RealVector sample_unit_vector(uint64_t seed, int n, int bits) {
    SplitMix64 g{seed};
    std::vector<PrecisionReal> c;
    c.reserve(n);
    for (int i = 0; i < n; ++i)
        c.push_back(PrecisionReal::from_rational(uniform_unit_dyadic(g, 2 * i), bits));
    return RealVector(std::move(c));
}

}  // namespace conelab
