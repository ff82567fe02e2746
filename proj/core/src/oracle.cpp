#include <algorithm>
#include <cmath>
#include <map>

#include "conelab/errors.hpp"
#include "conelab/scan.hpp"

namespace conelab {

namespace {

// Everything here is the straightforward reference path: full box
// enumeration with a rigorous double-precision prefilter and certified
// interval arithmetic on the shortlisted candidates. It shares no shell or
// ladder machinery with record_scan.

struct DoubleAlpha {
    std::vector<double> a;
    double coeff_err;  // |approx - true| <= coeff_err per unit of |x_i|

    static DoubleAlpha build(const RealVector& alpha) {
        DoubleAlpha out;
        double worst = 0;
        for (const auto& c : alpha.coords) {
            const Interval& e = c.enclosure();
            double lo = e.lo_double(), hi = e.hi_double();
            double mid = 0.5 * (lo + hi);
            out.a.push_back(mid);
            double w = (hi - lo) + std::abs(mid) * 1e-15 + 1e-300;
            worst = std::max(worst, w);
        }
        // Headroom for the dot product's own rounding.
        out.coeff_err = worst + (1.0 + worst) * 1e-14;
        return out;
    }

    double dist(const std::vector<long>& x) const {
        double s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += static_cast<double>(x[i]) * a[i];
        double f = s - std::nearbyint(s);
        return std::abs(f);
    }
};

bool cone_ok(const std::vector<long>& x, const ConeSpec& spec) {
    int n = static_cast<int>(x.size());
    if (spec.ell == n) return true;
    long head = 0, tail = 0;
    for (int i = 0; i < spec.ell; ++i) head = std::max(head, std::labs(x[i]));
    for (int i = spec.ell; i < n; ++i) tail = std::max(tail, std::labs(x[i]));
    mpq_class lhs(tail), rhs = spec.constant_C * mpq_class(head);
    return spec.strict ? lhs < rhs : lhs <= rhs;
}

}  // namespace

std::vector<ConeRecord> brute_force_oracle(const RealVector& alpha, const ConeSpec& spec,
                                           long N, ScanStats* stats, long cap,
                                           const EscalationPolicy& pol) {
    int n = alpha.n();
    if (spec.ell < 1 || spec.ell > n) throw DomainError("oracle: ell out of range");
    long eff_cap = n <= 3 ? cap : std::min<long>(cap, 30);
    if (N > eff_cap)
        throw CapExceeded("brute_force_oracle: N exceeds cap " + std::to_string(eff_cap));
    std::vector<ConeRecord> out;
    if (N <= 0) return out;

    DoubleAlpha da = DoubleAlpha::build(alpha);

    // Shortlist per height: everything within the rigorous margin of the
    // height's running minimum.
    struct Cand {
        double d;
        std::vector<long> x;
    };
    std::map<long, std::vector<Cand>> byh;
    std::map<long, double> minh;

    std::vector<long> x(n, 0);
    auto margin_for = [&](long h) {
        return 4.0 * da.coeff_err * static_cast<double>(n) * static_cast<double>(h) + 1e-13;
    };

    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            long h = 0;
            for (long v : x) h = std::max(h, std::labs(v));
            if (h == 0) return;
            if (!cone_ok(x, spec)) return;
            double d = da.dist(x);
            double m = margin_for(h);
            auto it = minh.find(h);
            double cur = it == minh.end() ? 1e300 : it->second;
            if (d > cur + 2 * m) return;
            byh[h].push_back(Cand{d, x});
            if (d < cur) minh[h] = d;
            return;
        }
        for (long v = -N; v <= N; ++v) {
            x[i] = v;
            rec(i + 1);
        }
        x[i] = 0;
    };
    rec(0);

    // Certify, height by height.
    bool have_best = false;
    FormValue best;
    IntVector best_x;
    for (auto& [h, cands] : byh) {
        double m = margin_for(h);
        double cur = minh[h];
        struct Certified {
            FormValue fv;
            IntVector x;
        };
        std::vector<Certified> pos;
        for (auto& c : cands) {
            if (c.d > cur + 2 * m) continue;
            IntVector xv;
            for (long v : c.x) xv.entries.emplace_back(v);
            try {
                FormValue fv = linear_form_error(alpha, xv, pol);
                if (stats) ++stats->certified_evals;
                if (fv.is_zero()) {
                    if (stats) stats->note_zero(h);
                    continue;
                }
                pos.push_back(Certified{std::move(fv), std::move(xv)});
            } catch (const PrecisionExhausted&) {
                if (stats) stats->note_unresolved(h);
            }
        }
        if (pos.empty()) continue;

        std::vector<size_t> ties{0};
        bool skip_shell = false;
        for (size_t i = 1; i < pos.size(); ++i) {
            try {
                // Re-resolve minimum with certified comparisons.
                FormValue& a = pos[i].fv;
                FormValue& b = pos[ties[0]].fv;
                int c;
                while (true) {
                    if (a.exact_dist && b.exact_dist) {
                        int q = cmp(*a.exact_dist, *b.exact_dist);
                        c = q < 0 ? -1 : (q > 0 ? 1 : 0);
                        break;
                    }
                    if (a.dist.certainly_less(b.dist)) {
                        c = -1;
                        break;
                    }
                    if (b.dist.certainly_less(a.dist)) {
                        c = 1;
                        break;
                    }
                    int next = std::max(a.bits_used, b.bits_used) * 2;
                    if (next > pol.cap_bits) throw PrecisionExhausted("oracle tie");
                    EscalationPolicy p2 = pol;
                    p2.start_bits = next;
                    if (!a.exact_dist) a = linear_form_error(alpha, pos[i].x, p2);
                    if (!b.exact_dist) b = linear_form_error(alpha, pos[ties[0]].x, p2);
                }
                if (c < 0)
                    ties = {i};
                else if (c == 0)
                    ties.push_back(i);
            } catch (const PrecisionExhausted&) {
                if (stats) stats->note_unresolved(h);
            }
        }
        FormValue& win = pos[ties[0]].fv;

        if (have_best) {
            try {
                FormValue& b = best;
                FormValue& a = win;
                int c;
                while (true) {
                    if (a.exact_dist && b.exact_dist) {
                        int q = cmp(*a.exact_dist, *b.exact_dist);
                        c = q < 0 ? -1 : (q > 0 ? 1 : 0);
                        break;
                    }
                    if (a.dist.certainly_less(b.dist)) {
                        c = -1;
                        break;
                    }
                    if (b.dist.certainly_less(a.dist)) {
                        c = 1;
                        break;
                    }
                    int next = std::max(a.bits_used, b.bits_used) * 2;
                    if (next > pol.cap_bits) throw PrecisionExhausted("oracle best");
                    EscalationPolicy p2 = pol;
                    p2.start_bits = next;
                    if (!a.exact_dist) a = linear_form_error(alpha, pos[ties[0]].x, p2);
                    if (!b.exact_dist) b = linear_form_error(alpha, best_x, p2);
                }
                if (c >= 0) skip_shell = true;
            } catch (const PrecisionExhausted&) {
                if (stats) stats->note_unresolved(h);
                skip_shell = true;
            }
        }
        if (skip_shell) continue;

        // Lexicographically smallest winner (mirrors were enumerated too).
        IntVector best_vec = pos[ties[0]].x;
        for (size_t k = 1; k < ties.size(); ++k)
            if (pos[ties[k]].x.lex_less(best_vec)) best_vec = pos[ties[k]].x;

        ConeRecord rec_out;
        rec_out.x = best_vec;
        rec_out.h = h;
        rec_out.err = win.dist;
        rec_out.exact_err = win.exact_dist;
        if (h > 1) {
            // same ratio convention as the scanner
            mpfr_t num, den, q, hh;
            mpfr_init2(num, 64);
            mpfr_init2(den, 64);
            mpfr_init2(q, 64);
            mpfr_init2(hh, 64);
            mpfr_set_si(hh, h, MPFR_RNDN);
            mpfr_log(num, win.dist.hi(), MPFR_RNDU);
            mpfr_neg(num, num, MPFR_RNDN);
            mpfr_log(den, hh, MPFR_RNDU);
            mpfr_div(q, num, den, MPFR_RNDD);
            rec_out.ratio_lo = mpfr_get_d(q, MPFR_RNDD);
            mpfr_log(num, win.dist.lo(), MPFR_RNDD);
            mpfr_neg(num, num, MPFR_RNDN);
            mpfr_log(den, hh, MPFR_RNDD);
            mpfr_div(q, num, den, MPFR_RNDU);
            rec_out.ratio_hi = mpfr_get_d(q, MPFR_RNDU);
            rec_out.ratio = 0.5 * (rec_out.ratio_lo + rec_out.ratio_hi);
            mpfr_clear(num);
            mpfr_clear(den);
            mpfr_clear(q);
            mpfr_clear(hh);
        }
        out.push_back(rec_out);
        have_best = true;
        best = win;
        best_x = best_vec;
    }
    return out;
}

}  // namespace conelab
