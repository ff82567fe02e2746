#include "conelab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "conelab/errors.hpp"

namespace conelab {

namespace {
constexpr mpfr_prec_t kMinPrec = 16;
}

void Interval::init(mpfr_prec_t prec) {
    prec_ = std::max<mpfr_prec_t>(prec, kMinPrec);
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval() { init(64); }
Interval::Interval(mpfr_prec_t prec) { init(prec); }

Interval::Interval(const Interval& o) {
    init(o.prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    prec_ = o.prec_;
    lo_[0] = o.lo_[0];
    hi_[0] = o.hi_[0];
    // Leave the source in a destructible state.
    mpfr_init2(o.lo_, kMinPrec);
    mpfr_init2(o.hi_, kMinPrec);
    o.prec_ = kMinPrec;
}

Interval& Interval::operator=(const Interval& o) {
    if (this == &o) return *this;
    if (prec_ != o.prec_) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    if (this == &o) return *this;
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_long(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(const mpq_class& lo, const mpq_class& hi,
                                  mpfr_prec_t prec) {
    if (lo > hi) throw InvariantViolation("interval endpoints out of order");
    Interval r(prec);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::neg() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    Interval r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return neg();
    // straddles zero
    mpfr_set_zero(r.lo_, 1);
    mpfr_t na;
    mpfr_init2(na, prec_);
    mpfr_neg(na, lo_, MPFR_RNDU);
    if (mpfr_cmp(na, hi_) > 0)
        mpfr_set(r.hi_, na, MPFR_RNDU);
    else
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
    mpfr_clear(na);
    return r;
}

Interval Interval::add(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sub(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::mul(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_t t, best_lo, best_hi;
    mpfr_init2(t, r.prec_);
    mpfr_init2(best_lo, r.prec_);
    mpfr_init2(best_hi, r.prec_);
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, best_lo) < 0) mpfr_set(best_lo, t, MPFR_RNDD);
            mpfr_mul(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, best_hi) > 0) mpfr_set(best_hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.lo_, best_lo, MPFR_RNDD);
    mpfr_set(r.hi_, best_hi, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
    return r;
}

Interval Interval::div(const Interval& o) const {
    if (o.contains_zero()) throw DomainError("interval division by zero-straddling interval");
    Interval r(std::max(prec_, o.prec_));
    mpfr_t t, best_lo, best_hi;
    mpfr_init2(t, r.prec_);
    mpfr_init2(best_lo, r.prec_);
    mpfr_init2(best_hi, r.prec_);
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, best_lo) < 0) mpfr_set(best_lo, t, MPFR_RNDD);
            mpfr_div(t, a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, best_hi) > 0) mpfr_set(best_hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.lo_, best_lo, MPFR_RNDD);
    mpfr_set(r.hi_, best_hi, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
    return r;
}

Interval Interval::mul_mpz(const mpz_class& k) const {
    Interval r(prec_);
    if (mpz_sgn(k.get_mpz_t()) >= 0) {
        mpfr_mul_z(r.lo_, lo_, k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, hi_, k.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(r.lo_, hi_, k.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, lo_, k.get_mpz_t(), MPFR_RNDU);
    }
    return r;
}

Interval Interval::div_mpz(const mpz_class& k) const {
    if (mpz_sgn(k.get_mpz_t()) == 0) throw DomainError("division by zero");
    Interval r(prec_);
    if (mpz_sgn(k.get_mpz_t()) > 0) {
        mpfr_div_z(r.lo_, lo_, k.get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(r.hi_, hi_, k.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_div_z(r.lo_, hi_, k.get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(r.hi_, lo_, k.get_mpz_t(), MPFR_RNDU);
    }
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw DomainError("sqrt of interval with negative lower bound");
    Interval r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw DomainError("log of interval touching zero");
    Interval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pow_int(long e) const {
    if (e == 0) return from_long(1, prec_);
    if (e < 0) return from_long(1, prec_).div(pow_int(-e));
    Interval acc = from_long(1, prec_);
    Interval base = *this;
    long k = e;
    while (k > 0) {
        if (k & 1) acc = acc.mul(base);
        base = base.mul(base);
        k >>= 1;
    }
    return acc;
}

Interval Interval::dist_to_nearest_int() const {
    // Work at enough precision that integer parts are represented exactly.
    mpfr_exp_t mag = 0;
    if (!mpfr_zero_p(hi_)) mag = std::max(mag, mpfr_get_exp(hi_));
    if (!mpfr_zero_p(lo_)) mag = std::max(mag, mpfr_get_exp(lo_));
    mpfr_prec_t wp = prec_ + std::max<mpfr_exp_t>(mag, 0) + 8;

    Interval r(prec_);
    mpfr_t w, one;
    mpfr_init2(w, wp);
    mpfr_init2(one, kMinPrec);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    if (mpfr_cmp(w, one) >= 0) {
        // Full period covered: the image is everything.
        mpfr_set_zero(r.lo_, 1);
        mpfr_set_d(r.hi_, 0.5, MPFR_RNDU);
        mpfr_clear(w);
        mpfr_clear(one);
        return r;
    }
    mpfr_clear(w);
    mpfr_clear(one);

    // d(x) = |x - round(x)|; endpoints evaluated with outward rounding.
    auto endpoint_dist = [&](const mpfr_t x, mpfr_t out_lo, mpfr_t out_hi) {
        mpfr_t n, d;
        mpfr_init2(n, wp);
        mpfr_init2(d, wp);
        mpfr_round(n, x);                      // exact at wp
        mpfr_sub(d, x, n, MPFR_RNDN);          // exact: wp covers both magnitudes
        mpfr_abs(d, d, MPFR_RNDN);
        mpfr_set(out_lo, d, MPFR_RNDD);
        mpfr_set(out_hi, d, MPFR_RNDU);
        mpfr_clear(n);
        mpfr_clear(d);
    };

    mpfr_t da_lo, da_hi, db_lo, db_hi;
    mpfr_init2(da_lo, prec_);
    mpfr_init2(da_hi, prec_);
    mpfr_init2(db_lo, prec_);
    mpfr_init2(db_hi, prec_);
    endpoint_dist(lo_, da_lo, da_hi);
    endpoint_dist(hi_, db_lo, db_hi);

    // Does [lo, hi] contain an integer? A half-integer?
    mpfr_t fa, fb, t;
    mpfr_init2(fa, wp);
    mpfr_init2(fb, wp);
    mpfr_init2(t, wp);
    mpfr_ceil(fa, lo_);
    bool has_int = mpfr_cmp(fa, hi_) <= 0;
    mpfr_mul_2si(t, lo_, 1, MPFR_RNDD);   // exact
    mpfr_ceil(fa, t);
    mpfr_mul_2si(fb, hi_, 1, MPFR_RNDU);  // exact
    bool has_half = false;
    {
        // odd integer in [2*lo, 2*hi] <=> half-integer in [lo, hi]
        mpfr_t k;
        mpfr_init2(k, wp);
        mpfr_set(k, fa, MPFR_RNDN);
        if (mpfr_cmp(k, fb) <= 0) {
            // fa = ceil(2*lo); check fa or fa+1 odd and <= 2*hi
            mpz_class kz;
            mpfr_get_z(kz.get_mpz_t(), k, MPFR_RNDN);
            if (kz % 2 == 0) {
                mpfr_add_ui(k, k, 1, MPFR_RNDN);
                has_half = mpfr_cmp(k, fb) <= 0;
            } else {
                has_half = true;
            }
        }
        mpfr_clear(k);
    }

    if (has_int)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_set(r.lo_, mpfr_cmp(da_lo, db_lo) < 0 ? da_lo : db_lo, MPFR_RNDD);
    if (has_half)
        mpfr_set_d(r.hi_, 0.5, MPFR_RNDU);
    else
        mpfr_set(r.hi_, mpfr_cmp(da_hi, db_hi) > 0 ? da_hi : db_hi, MPFR_RNDU);

    // Clamp to [0, 1/2].
    if (mpfr_sgn(r.lo_) < 0) mpfr_set_zero(r.lo_, 1);
    mpfr_set_d(t, 0.5, MPFR_RNDN);
    if (mpfr_cmp(r.hi_, t) > 0) mpfr_set_d(r.hi_, 0.5, MPFR_RNDU);

    mpfr_clear(fa);
    mpfr_clear(fb);
    mpfr_clear(t);
    mpfr_clear(da_lo);
    mpfr_clear(da_hi);
    mpfr_clear(db_lo);
    mpfr_clear(db_hi);
    return r;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::is_point() const { return mpfr_cmp(lo_, hi_) == 0; }

int Interval::sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

bool Interval::certainly_less(const Interval& o) const {
    return mpfr_cmp(hi_, o.lo_) < 0;
}

bool Interval::contains(const mpq_class& v) const {
    // lo <= v <= hi, decided exactly.
    if (mpfr_cmp_q(lo_, v.get_mpq_t()) > 0) return false;
    if (mpfr_cmp_q(hi_, v.get_mpq_t()) < 0) return false;
    return true;
}

double Interval::width_upper() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
    mpfr_t m;
    mpfr_init2(m, 64);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

bool Interval::width_ok_for(int bits) const {
    mpfr_t w, bound;
    mpfr_init2(w, 64);
    mpfr_init2(bound, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    // bound = 2^(2-bits) * max(1, |value|), |value| taken from the magnitude
    // upper bound of the enclosure.
    mpfr_t a;
    mpfr_init2(a, 64);
    mpfr_abs(a, lo_, MPFR_RNDU);
    mpfr_abs(bound, hi_, MPFR_RNDU);
    if (mpfr_cmp(a, bound) > 0) mpfr_set(bound, a, MPFR_RNDU);
    if (mpfr_cmp_ui(bound, 1) < 0) mpfr_set_ui(bound, 1, MPFR_RNDU);
    mpfr_mul_2si(bound, bound, 2 - bits, MPFR_RNDU);
    bool ok = mpfr_cmp(w, bound) <= 0;
    mpfr_clear(w);
    mpfr_clear(bound);
    mpfr_clear(a);
    return ok;
}

std::string Interval::to_string(int digits) const {
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, "%.*Rg", digits, lo_);
    mpfr_asprintf(&b, "%.*Rg", digits, hi_);
    std::string s = std::string("[") + a + ", " + b + "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return s;
}

}  // namespace conelab
