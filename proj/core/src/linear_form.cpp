#include "conelab/linear_form.hpp"

#include <algorithm>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

mpq_class frac_dist_exact(const mpq_class& v) {
    // ||v|| = |v - round(v)| computed exactly.
    mpz_class num = v.get_num(), den = v.get_den();
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpq_class frac(r, den);
    frac.canonicalize();
    mpq_class d = frac <= mpq_class(1, 2) ? frac : mpq_class(1) - frac;
    return d;
}

}  // namespace

Interval linear_form_enclosure(const RealVector& alpha, const IntVector& x,
                               int bits) {
    if (alpha.n() != x.n()) throw DimensionMismatch("linear form: dimension mismatch");
    // Extra headroom for the coefficient magnitudes.
    mpz_class scale = 1;
    for (const auto& e : x.entries) scale += ::abs(e);
    int margin = static_cast<int>(mpz_sizeinbase(scale.get_mpz_t(), 2)) + 4;
    RealVector a = alpha.at_precision(bits + margin);
    Interval sum = Interval::from_long(0, bits + margin);
    for (int i = 0; i < x.n(); ++i) {
        if (x.entries[i] == 0) continue;
        sum = sum.add(a.coords[i].enclosure().mul_mpz(x.entries[i]));
    }
    return sum;
}

PrecisionReal dist_to_nearest_int(const PrecisionReal& r, const EscalationPolicy& pol) {
    int target = pol.start_bits > 0 ? pol.start_bits : r.precision_bits();
    if (r.exact_value()) {
        mpq_class d = frac_dist_exact(*r.exact_value());
        return PrecisionReal::from_rational(d, target);
    }
    // Derived value: re-evaluates the argument and reduces, escalating until
    // the result interval meets the width contract for the requested bits.
    PrecisionReal arg = r;
    int cap = pol.cap_bits;
    auto eval = [arg, cap](int bits) -> Interval {
        int wp = std::max(bits, arg.precision_bits());
        while (true) {
            Interval d = arg.at_precision(wp).enclosure().dist_to_nearest_int();
            if (d.width_ok_for(bits)) return d;
            // A genuinely zero distance cannot meet a relative-width contract;
            // accept an absolute enclosure touching zero once it is tiny.
            if (d.contains_zero() && d.width_ok_for(bits) == false) {
                mpfr_t tiny;
                mpfr_init2(tiny, 32);
                mpfr_set_ui_2exp(tiny, 1, -bits - 2, MPFR_RNDN);
                bool small = mpfr_cmp(d.hi(), tiny) <= 0;
                mpfr_clear(tiny);
                if (small) return d;
            }
            if (wp >= cap)
                throw PrecisionExhausted("dist_to_nearest_int: cap reached at " +
                                         std::to_string(wp) + " bits");
            wp = std::min(cap, wp * 2);
        }
    };
    return PrecisionReal::derived(eval, target);
}

FormValue linear_form_error(const RealVector& alpha, const IntVector& x,
                            const EscalationPolicy& pol) {
    if (alpha.n() != x.n()) throw DimensionMismatch("linear form: dimension mismatch");
    int target = pol.start_bits > 0 ? pol.start_bits : alpha.precision_bits();

    if (alpha.all_exact()) {
        mpq_class v = 0;
        for (int i = 0; i < x.n(); ++i)
            v += mpq_class(x.entries[i]) * *alpha.coords[i].exact_value();
        mpq_class d = frac_dist_exact(v);
        FormValue out;
        out.bits_used = target;
        if (d == 0) {
            out.kind = FormValue::Kind::exact_zero;
            out.dist = Interval::from_long(0, target);
            out.exact_dist = mpq_class(0);
            return out;
        }
        out.kind = FormValue::Kind::positive;
        out.exact_dist = d;
        out.dist = Interval::from_mpq(d, target + 4);
        return out;
    }

    int wp = std::max(target, 64);
    while (true) {
        Interval d = linear_form_enclosure(alpha, x, wp).dist_to_nearest_int();
        if (!d.contains_zero() && d.width_ok_for(target)) {
            FormValue out;
            out.kind = FormValue::Kind::positive;
            out.dist = std::move(d);
            out.bits_used = wp;
            return out;
        }
        if (wp >= pol.cap_bits)
            throw PrecisionExhausted("linear_form_error: undecided at cap (" +
                                     std::to_string(pol.cap_bits) + " bits)");
        wp = std::min(pol.cap_bits, wp * 2);
    }
}

}  // namespace conelab
