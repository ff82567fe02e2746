#pragma once

#include <gmpxx.h>

#include <vector>

#include "conelab/precision_real.hpp"

namespace conelab {

/// Integer vector; never all-zero when used as a solution candidate.
struct IntVector {
    std::vector<mpz_class> entries;

    IntVector() = default;
    explicit IntVector(std::vector<mpz_class> e) : entries(std::move(e)) {}
    static IntVector from_longs(const std::vector<long>& e);

    int n() const { return static_cast<int>(entries.size()); }
    bool is_zero() const;

    bool operator==(const IntVector& o) const { return entries == o.entries; }
    /// Entry-wise lexicographic order (used for deterministic tie-breaks).
    bool lex_less(const IntVector& o) const;
};

/// H(x) = max |x_i|.
mpz_class height(const IntVector& x);

/// Cone membership parameters: the height must be attained among the first
/// `ell` coordinates, up to the constant C.
struct ConeSpec {
    int ell = 1;
    mpq_class constant_C = 1;
    bool strict = true;

    static ConeSpec cone(int ell) { return ConeSpec{ell, 1, true}; }
};

/// max(|x_{ell+1}|, ..., |x_n|) < C * max(|x_1|, ..., |x_ell|)
/// ("<=" when strict = false); vacuously true for ell = n.
bool in_cone(const IntVector& x, const ConeSpec& spec);

/// The factor-2 nonnegative cone used by the primitive-point counts:
/// 2 * max tail <= max head (non-strict, fixed constant).
bool in_counting_cone(const IntVector& x, int ell);

/// A real point with coordinates carried at certified precision.
struct RealVector {
    std::vector<PrecisionReal> coords;

    RealVector() = default;
    explicit RealVector(std::vector<PrecisionReal> c);

    int n() const { return static_cast<int>(coords.size()); }
    /// Common minimum precision across coordinates.
    int precision_bits() const;
    bool all_exact() const;

    RealVector at_precision(int bits) const;
};

}  // namespace conelab
