#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conelab/interval.hpp"

namespace conelab {

/// How a real value entered the system. The first four kinds are accepted in
/// input files; `derived` marks results of operations, which stay
/// re-evaluable through a closure over their inputs.
enum class OriginKind { rational, decimal, algebraic, series, derived };

const char* origin_kind_name(OriginKind k);

/// A real number carried as a certified enclosure plus enough origin
/// information to re-evaluate it at any precision.
///
/// Invariants: enclosure width <= 2^(2-bits) * max(1, |value|); rational and
/// decimal origins additionally carry their exact rational value.
class PrecisionReal {
public:
    PrecisionReal() : PrecisionReal(from_rational(0, 64)) {}

    static PrecisionReal from_rational(const mpq_class& v, int bits);
    static PrecisionReal from_long(long v, int bits);
    /// Parses a (possibly signed) decimal string, e.g. "3.1415" or "-0.5".
    static PrecisionReal from_decimal(const std::string& text, int bits);
    /// Real root of `poly` (constant-first integer coefficients) inside the
    /// isolating interval [lo, hi]; signs of poly(lo), poly(hi) must differ.
    static PrecisionReal from_algebraic(std::vector<mpz_class> poly,
                                        const mpq_class& lo,
                                        const mpq_class& hi, int bits);
    /// Lacunary binary series sum_k 2^(-a_k) with a_1 = 1 and
    /// a_{k+1} = ceil((w+1) a_k); partial sums are exact dyadic rationals and
    /// the tail after index k is at most 2^(1 - a_{k+1}).
    static PrecisionReal gap_series(const mpq_class& w_target, int bits);
    static PrecisionReal derived(std::function<Interval(int)> eval, int bits);

    OriginKind origin() const;
    int precision_bits() const { return bits_; }
    const Interval& enclosure() const { return enc_; }

    /// Re-evaluates from the origin; result satisfies the width invariant at
    /// the new precision.
    PrecisionReal at_precision(int bits) const;

    /// Exact value when available (rational and decimal origins, plus
    /// degenerate algebraic roots that landed on a rational point).
    const mpq_class* exact_value() const;

    /// Exponent sequence a_1, a_2, ... of a series origin, up to a_k <= limit.
    static std::vector<mpz_class> gap_series_exponents(const mpq_class& w_target,
                                                       long limit);

    // Origin introspection, used by serialization.
    const std::string& decimal_text() const;
    const std::vector<mpz_class>& algebraic_poly() const;
    std::pair<mpq_class, mpq_class> algebraic_isolation() const;
    const mpq_class& series_w_target() const;

private:
    struct Payload;
    std::shared_ptr<const Payload> p_;
    int bits_;
    Interval enc_;

    PrecisionReal(std::shared_ptr<const Payload> p, int bits, Interval enc);
};

}  // namespace conelab
