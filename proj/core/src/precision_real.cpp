#include "conelab/precision_real.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

// Exact sign of poly(x) for integer coefficients (constant first).
int sign_at(const std::vector<mpz_class>& poly, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + mpq_class(*it);
    return sgn(acc);
}

}  // namespace

struct PrecisionReal::Payload {
    OriginKind kind = OriginKind::rational;
    std::optional<mpq_class> exact;
    std::string decimal_text;
    std::vector<mpz_class> poly;
    mpq_class iso_lo, iso_hi;
    mpq_class w_target;
    std::function<Interval(int)> eval;

    // Root refinement is monotone, so the narrowest bracket seen so far is
    // shared across copies; re-evaluations continue from it instead of
    // re-bisecting from the isolating interval.
    mutable std::mutex cache_mu;
    mutable bool has_cache = false;
    mutable mpq_class cache_lo, cache_hi;
};

const char* origin_kind_name(OriginKind k) {
    switch (k) {
        case OriginKind::rational: return "rational";
        case OriginKind::decimal: return "decimal";
        case OriginKind::algebraic: return "algebraic";
        case OriginKind::series: return "series";
        case OriginKind::derived: return "derived";
    }
    return "?";
}

PrecisionReal::PrecisionReal(std::shared_ptr<const Payload> p, int bits, Interval enc)
    : p_(std::move(p)), bits_(bits), enc_(std::move(enc)) {}

OriginKind PrecisionReal::origin() const { return p_->kind; }

const mpq_class* PrecisionReal::exact_value() const {
    return p_->exact ? &*p_->exact : nullptr;
}

const std::string& PrecisionReal::decimal_text() const { return p_->decimal_text; }
const std::vector<mpz_class>& PrecisionReal::algebraic_poly() const { return p_->poly; }
std::pair<mpq_class, mpq_class> PrecisionReal::algebraic_isolation() const {
    return {p_->iso_lo, p_->iso_hi};
}
const mpq_class& PrecisionReal::series_w_target() const { return p_->w_target; }

PrecisionReal PrecisionReal::from_rational(const mpq_class& v, int bits) {
    auto p = std::make_shared<Payload>();
    p->kind = OriginKind::rational;
    p->exact = v;
    Interval enc = Interval::from_mpq(v, bits + 4);
    return PrecisionReal(std::move(p), bits, std::move(enc));
}

PrecisionReal PrecisionReal::from_long(long v, int bits) {
    return from_rational(mpq_class(v), bits);
}

PrecisionReal PrecisionReal::from_decimal(const std::string& text, int bits) {
    // Parse sign, integer part, optional fraction: p / 10^k exactly.
    std::string t = text;
    bool neg = false;
    size_t i = 0;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
        neg = t[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < t.size(); ++i) {
        if (t[i] == '.') {
            if (seen_dot) throw ValidationError("bad decimal literal: " + text);
            seen_dot = true;
        } else if (t[i] >= '0' && t[i] <= '9') {
            digits.push_back(t[i]);
            seen_digit = true;
            if (seen_dot) ++frac_len;
        } else {
            throw ValidationError("bad decimal literal: " + text);
        }
    }
    if (!seen_digit) throw ValidationError("bad decimal literal: " + text);
    mpz_class num(digits.empty() ? "0" : digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_len));
    mpq_class v(num, den);
    v.canonicalize();
    if (neg) v = -v;

    auto p = std::make_shared<Payload>();
    p->kind = OriginKind::decimal;
    p->exact = v;
    p->decimal_text = text;
    Interval enc = Interval::from_mpq(v, bits + 4);
    return PrecisionReal(std::move(p), bits, std::move(enc));
}

PrecisionReal PrecisionReal::from_algebraic(std::vector<mpz_class> poly,
                                            const mpq_class& lo,
                                            const mpq_class& hi, int bits) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    if (poly.size() < 2) throw ValidationError("algebraic origin needs degree >= 1");
    if (lo > hi) throw ValidationError("algebraic origin: empty isolating interval");
    int slo = sign_at(poly, lo);
    int shi = sign_at(poly, hi);
    if (slo == 0 || shi == 0) {
        // Endpoint is the root itself: value is exactly rational.
        mpq_class v = slo == 0 ? lo : hi;
        auto p = std::make_shared<Payload>();
        p->kind = OriginKind::algebraic;
        p->exact = v;
        p->poly = std::move(poly);
        p->iso_lo = v;
        p->iso_hi = v;
        Interval enc = Interval::from_mpq(v, bits + 4);
        return PrecisionReal(std::move(p), bits, std::move(enc));
    }
    if (slo == shi)
        throw ValidationError("algebraic origin: no sign change on isolating interval");

    auto p = std::make_shared<Payload>();
    p->kind = OriginKind::algebraic;
    p->poly = std::move(poly);
    p->iso_lo = lo;
    p->iso_hi = hi;
    auto tmp = PrecisionReal(p, bits, Interval());
    return tmp.at_precision(bits);
}

std::vector<mpz_class> PrecisionReal::gap_series_exponents(const mpq_class& w_target,
                                                           long limit) {
    std::vector<mpz_class> a;
    mpz_class cur = 1;
    mpq_class growth = w_target + 1;
    while (cur <= limit) {
        a.push_back(cur);
        mpq_class next = mpq_class(cur) * growth;
        mpz_class ceilv;
        mpz_cdiv_q(ceilv.get_mpz_t(), next.get_num_mpz_t(), next.get_den_mpz_t());
        if (ceilv <= cur) ceilv = cur + 1;
        cur = ceilv;
    }
    a.push_back(cur);  // first exponent beyond the limit, for tail bounds
    return a;
}

PrecisionReal PrecisionReal::gap_series(const mpq_class& w_target, int bits) {
    if (w_target < 1) throw ValidationError("gap series needs w_target >= 1");
    auto p = std::make_shared<Payload>();
    p->kind = OriginKind::series;
    p->w_target = w_target;
    auto tmp = PrecisionReal(p, bits, Interval());
    return tmp.at_precision(bits);
}

PrecisionReal PrecisionReal::derived(std::function<Interval(int)> eval, int bits) {
    auto p = std::make_shared<Payload>();
    p->kind = OriginKind::derived;
    p->eval = std::move(eval);
    Interval enc = p->eval(bits);
    return PrecisionReal(std::move(p), bits, std::move(enc));
}

PrecisionReal PrecisionReal::at_precision(int bits) const {
    const Payload& pl = *p_;
    switch (pl.kind) {
        case OriginKind::rational:
        case OriginKind::decimal:
            return PrecisionReal(p_, bits, Interval::from_mpq(*pl.exact, bits + 4));
        case OriginKind::derived:
            return PrecisionReal(p_, bits, pl.eval(bits));
        case OriginKind::series: {
            // Partial sum of terms with a_k <= bits+4 is an exact dyadic
            // rational; the tail is bracketed by [0, 2^(1 - a_next)].
            auto a = gap_series_exponents(pl.w_target, bits + 4);
            mpq_class sum = 0;
            for (size_t k = 0; k + 1 < a.size(); ++k) {
                mpq_class term(1);
                mpz_class den;
                mpz_ui_pow_ui(den.get_mpz_t(), 2, mpz_get_ui(a[k].get_mpz_t()));
                term /= mpq_class(den);
                sum += term;
            }
            const mpz_class& a_next = a.back();
            mpq_class tail_hi(2);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 2, mpz_get_ui(a_next.get_mpz_t()));
            tail_hi /= mpq_class(den);
            return PrecisionReal(p_, bits,
                                 Interval::from_endpoints(sum, sum + tail_hi, bits + 8));
        }
        case OriginKind::algebraic: {
            if (pl.exact)
                return PrecisionReal(p_, bits, Interval::from_mpq(*pl.exact, bits + 4));
            std::lock_guard<std::mutex> lock(pl.cache_mu);
            mpq_class lo = pl.has_cache ? pl.cache_lo : pl.iso_lo;
            mpq_class hi = pl.has_cache ? pl.cache_hi : pl.iso_hi;
            int slo = sign_at(pl.poly, lo);
            // Bisect until the dyadic window is below the target width. The
            // root magnitude is bounded by max(|lo|,|hi|), so an absolute
            // width of 2^(-bits-2) always satisfies the relative contract.
            mpq_class target(mpz_class(1), mpz_class(1));
            {
                mpz_class den;
                mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits + 2));
                target = mpq_class(mpz_class(1), den);
            }
            while (hi - lo > target) {
                mpq_class mid = (lo + hi) / 2;
                int sm = sign_at(pl.poly, mid);
                if (sm == 0) {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (sm == slo)
                    lo = mid;
                else
                    hi = mid;
            }
            if (!pl.has_cache || hi - lo < pl.cache_hi - pl.cache_lo) {
                pl.cache_lo = lo;
                pl.cache_hi = hi;
                pl.has_cache = true;
            }
            return PrecisionReal(p_, bits, Interval::from_endpoints(lo, hi, bits + 8));
        }
    }
    throw InvariantViolation("unreachable origin kind");
}

}  // namespace conelab
