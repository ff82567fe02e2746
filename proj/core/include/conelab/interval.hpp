#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace conelab {

/// Closed interval [lo, hi] with MPFR endpoints and outward rounding.
///
/// Every arithmetic operation returns an interval that is guaranteed to
/// contain the exact result; endpoint precision is a per-value property.
/// This is the certification primitive everything else sits on: a comparison
/// is trusted only when the intervals are disjoint.
class Interval {
public:
    Interval();                         // [0, 0] at default precision
    explicit Interval(mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static Interval from_long(long v, mpfr_prec_t prec);
    static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec);
    /// Tightest enclosure of p/q at the given precision.
    static Interval from_mpq(const mpq_class& v, mpfr_prec_t prec);
    static Interval from_endpoints(const mpq_class& lo, const mpq_class& hi,
                                   mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    Interval neg() const;
    Interval abs() const;
    Interval add(const Interval& o) const;
    Interval sub(const Interval& o) const;
    Interval mul(const Interval& o) const;
    Interval div(const Interval& o) const;     // o must not straddle zero
    Interval mul_mpz(const mpz_class& k) const;
    Interval div_mpz(const mpz_class& k) const; // k != 0
    Interval sqrt() const;                      // lo >= 0 required
    Interval log() const;                       // lo > 0 required
    Interval pow_int(long e) const;

    /// Image of x -> |x - nearest integer(x)|; always inside [0, 1/2].
    Interval dist_to_nearest_int() const;

    bool contains_zero() const;
    bool is_point() const;
    /// -1, 0 (straddles), +1
    int sign() const;
    /// True when hi < o.lo: every value here is below every value there.
    bool certainly_less(const Interval& o) const;
    bool certainly_greater(const Interval& o) const { return o.certainly_less(*this); }
    bool contains(const mpq_class& v) const;

    /// Upper bound of the width, rounded up, as a double.
    double width_upper() const;
    double lo_double() const;   // rounded down
    double hi_double() const;   // rounded up
    double mid_double() const;

    /// Meets the PrecisionReal contract: width <= 2^(2-bits) * max(1, |value|).
    bool width_ok_for(int bits) const;

    std::string to_string(int digits = 20) const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;

    void init(mpfr_prec_t prec);
};

}  // namespace conelab
