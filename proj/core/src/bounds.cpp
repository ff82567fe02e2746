#include "conelab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "conelab/errors.hpp"

namespace conelab {

double bound_eq5(double w_hat, int n, int ell) {
    if (!(1 <= ell && ell < n)) throw DomainError("bound_eq5: need 1 <= ell < n");
    if (!(w_hat > n - ell)) throw DomainError("bound_eq5 needs w_hat > n - ell");
    return ell * w_hat / (w_hat - n + ell);
}

mpq_class bound_eq5_exact(const mpq_class& w_hat, int n, int ell) {
    if (!(1 <= ell && ell < n)) throw DomainError("bound_eq5: need 1 <= ell < n");
    if (!(w_hat > n - ell)) throw DomainError("bound_eq5 needs w_hat > n - ell");
    return mpq_class(ell) * w_hat / (w_hat - n + ell);
}

double bound_thurnheer(double w_hat, double w) {
    if (!(w >= w_hat && w_hat > 1)) throw DomainError("bound_thurnheer needs w >= w_hat > 1");
    return w_hat - 1 + w_hat / w;
}

double bound_golden(int n) {
    if (n < 2) throw DomainError("bound_golden: n >= 2");
    double nn = n;
    return (nn - 1 + std::sqrt(nn * nn + 2 * nn - 3)) / 2;
}

Interval bound_golden_interval(int n, int bits) {
    if (n < 2) throw DomainError("bound_golden: n >= 2");
    mpz_class disc = mpz_class(n) * n + 2 * n - 3;
    Interval root = Interval::from_mpz(disc, bits).sqrt();
    return root.add(Interval::from_long(n - 1, bits)).div_mpz(2);
}

double bound_veronese(int n, int ell) {
    return bound_veronese_exact(n, ell).get_d();
}

mpq_class bound_veronese_exact(int n, int ell) {
    if (!(1 <= ell && ell < n)) throw DomainError("bound_veronese: need 1 <= ell < n");
    return 2 * mpq_class(ell) - mpq_class(ell) * (2 * ell - 1) / (n - 1 + ell);
}

double eta_for(double mu, int ell, int n, double eps) {
    if (!(mu + eps > ell)) throw DomainError("eta_for needs mu + eps > ell");
    if (!(1 <= ell && ell <= n)) throw DomainError("eta_for: ell out of range");
    return (n - ell) / (mu + eps - ell);
}

mpq_class eta_for_exact(const mpq_class& mu, int ell, int n, const mpq_class& eps) {
    if (!(mu + eps > ell)) throw DomainError("eta_for needs mu + eps > ell");
    if (!(1 <= ell && ell <= n)) throw DomainError("eta_for: ell out of range");
    return mpq_class(n - ell) / (mu + eps - mpq_class(ell));
}

mpq_class BodySpec::volume_exponent() const {
    // ell * eta + (n - ell) + (-ell eta - n + ell) == 0
    return mpq_class(ell) * eta + (n() - ell) + form_exponent();
}

namespace {

/// floor(N^eta) for rational eta = p/q >= 0: floor((N^p)^(1/q)).
mpz_class pow_floor(long N, const mpq_class& eta) {
    mpz_class np;
    mpz_pow_ui(np.get_mpz_t(), mpz_class(N).get_mpz_t(),
               mpz_get_ui(eta.get_num().get_mpz_t()));
    unsigned long q = mpz_get_ui(eta.get_den().get_mpz_t());
    if (q == 1) return np;
    mpz_class r;
    mpz_root(r.get_mpz_t(), np.get_mpz_t(), q);
    return r;
}

/// Certified enclosure of N^(-e) for rational e > 0.
Interval pow_neg(long N, const mpq_class& e, int bits) {
    mpfr_t lg, lo, hi;
    mpfr_init2(lg, bits + 16);
    mpfr_init2(lo, bits);
    mpfr_init2(hi, bits);
    for (int side = 0; side < 2; ++side) {
        mpfr_rnd_t rnd = side == 0 ? MPFR_RNDD : MPFR_RNDU;
        mpfr_rnd_t anti = side == 0 ? MPFR_RNDU : MPFR_RNDD;
        mpfr_set_ui(lg, static_cast<unsigned long>(N), MPFR_RNDN);
        mpfr_log(lg, lg, anti);
        mpfr_mul_q(lg, lg, e.get_mpq_t(), anti);
        mpfr_neg(lg, lg, MPFR_RNDN);
        mpfr_exp(side == 0 ? lo : hi, lg, rnd);
    }
    mpq_class qlo, qhi;
    mpfr_get_q(qlo.get_mpq_t(), lo);
    mpfr_get_q(qhi.get_mpq_t(), hi);
    mpfr_clear(lg);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return Interval::from_endpoints(qlo, qhi, bits);
}

u128 units_of(const mpfr_t v, bool up) {
    mpfr_t t;
    mpfr_init2(t, 256);
    mpfr_mul_2ui(t, v, 128, up ? MPFR_RNDU : MPFR_RNDD);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, up ? MPFR_RNDU : MPFR_RNDD);
    mpfr_clear(t);
    if (z < 0) return 0;
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 128) return ~u128(0);
    u128 u = 0;
    for (int limb = 0; limb < 2; ++limb) {
        mpz_class part = (z >> (64 * limb)) & mpz_class(0xFFFFFFFFFFFFFFFFUL);
        u |= static_cast<u128>(part.get_ui()) << (64 * limb);
    }
    return u;
}

/// d <= tau, certified; escalates the form enclosure, decides exactly on
/// the all-rational path.
bool certified_admissible(const RealVector& alpha, const IntVector& x,
                          const mpz_class& x0, long N, const mpq_class& e,
                          Interval& form_out) {
    // exact route
    bool exact = alpha.all_exact();
    if (exact) {
        mpq_class v = 0;
        for (int i = 0; i < x.n(); ++i)
            v += mpq_class(x.entries[i]) * *alpha.coords[i].exact_value();
        v += mpq_class(x0);
        mpq_class av = ::abs(v);
        // av <= N^(-e)  <=>  av^q * N^(e q) <= 1
        unsigned long q = mpz_get_ui(e.get_den().get_mpz_t());
        unsigned long pq = mpz_get_ui(e.get_num().get_mpz_t());
        mpq_class lhs = 1;
        for (unsigned long i = 0; i < q; ++i) lhs *= av;
        mpz_class npow;
        mpz_pow_ui(npow.get_mpz_t(), mpz_class(N).get_mpz_t(), pq);
        lhs *= mpq_class(npow);
        form_out = Interval::from_mpq(av, 128);
        return lhs <= 1;
    }
    int bits = 192;
    while (bits <= 4096) {
        Interval v = linear_form_enclosure(alpha, x, bits)
                         .add(Interval::from_mpz(x0, bits))
                         .abs();
        Interval tau = pow_neg(N, e, bits);
        if (mpfr_cmp(v.hi(), tau.lo()) <= 0) {
            form_out = v;
            return true;
        }
        if (mpfr_cmp(v.lo(), tau.hi()) > 0) return false;
        bits *= 2;
    }
    throw PrecisionExhausted("minkowski admissibility undecided at cap");
}

}  // namespace

BodyPoint minkowski_body_search(const BodySpec& spec) {
    const int n = spec.n();
    if (spec.ell < 1 || spec.ell > n) throw DomainError("body: ell out of range");
    if (spec.eta < 1) throw DomainError("body: eta >= 1 required");
    if (spec.N < 1) throw DomainError("body: N >= 1");

    mpq_class e = -spec.form_exponent();  // ell*eta + n - ell > 0
    BodyPoint out;
    out.head_bound = pow_floor(spec.N, spec.eta);

    if (spec.N == 1) {
        // tau = 1: (x0, x) = (1, 0) is admissible.
        out.x0 = 1;
        out.x = IntVector(std::vector<mpz_class>(n, 0));
        out.form_value = Interval::from_long(1, 64);
        return out;
    }

    FixedPointAlpha fp = FixedPointAlpha::build(spec.alpha);
    Interval tau = pow_neg(spec.N, e, 192);
    u128 tau_hi_units = units_of(tau.hi(), true);

    if (!out.head_bound.fits_slong_p())
        throw DomainError("body: head bound too large for the exhaustive search");
    long B = out.head_bound.get_si();

    // Ladder over x_1; remaining coordinates are looped lexicographically.
    PositionLadder lad(fp.units[0], B);
    lad.extend_to(B);

    std::vector<long> bounds(n);
    bounds[0] = B;
    for (int i = 1; i < n; ++i) bounds[i] = i < spec.ell ? B : spec.N;

    std::vector<long> x(n, 0);
    long slack_rest = 0;
    for (int i = 1; i < n; ++i) slack_rest += bounds[i] * fp.slack[i];
    u128 slack_all = static_cast<u128>(slack_rest) + static_cast<u128>(B) * fp.slack[0];
    u128 cutoff = tau_hi_units + slack_all;
    if (cutoff < tau_hi_units) cutoff = ~u128(0);  // saturate

    std::optional<BodyPoint> found;
    // Lexicographic scan over (x_2, ..., x_n).
    std::function<bool(int, u128)> rec = [&](int i, u128 base) -> bool {
        if (i == n) {
            auto w = lad.walk(u128(0) - base);
            long k;
            u128 d;
            while (w.next(k, d)) {
                if (d > cutoff) break;  // certified too far
                x[0] = k;
                bool all_zero = std::all_of(x.begin(), x.end(),
                                            [](long v) { return v == 0; });
                if (all_zero) continue;  // x = 0 needs |x0| >= 1 > tau
                IntVector xv;
                for (long v : x) xv.entries.emplace_back(v);
                // x0 = nearest integer to -x.alpha
                Interval fv = linear_form_enclosure(spec.alpha, xv, 192);
                mpfr_t mid;
                mpfr_init2(mid, 200);
                mpfr_add(mid, fv.lo(), fv.hi(), MPFR_RNDN);
                mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
                mpfr_round(mid, mid);
                mpz_class x0;
                mpfr_get_z(x0.get_mpz_t(), mid, MPFR_RNDN);
                mpfr_clear(mid);
                x0 = -x0;
                Interval certified;
                try {
                    if (certified_admissible(spec.alpha, xv, x0, spec.N, e, certified)) {
                        BodyPoint hit;
                        hit.x0 = x0;
                        hit.x = xv;
                        hit.form_value = certified;
                        hit.head_bound = B;
                        found = std::move(hit);
                        return true;
                    }
                } catch (const PrecisionExhausted&) {
                    // skip undecidable boundary candidates
                }
            }
            return false;
        }
        for (long v = -bounds[i]; v <= bounds[i]; ++v) {
            u128 nb = base + (v >= 0 ? fp.units[i] * static_cast<u128>(v)
                                     : u128(0) - fp.units[i] * static_cast<u128>(-v));
            x[i] = v;
            if (rec(i + 1, nb)) return true;
        }
        x[i] = 0;
        return false;
    };

    if (rec(1, 0)) return *found;
    throw SearchBudgetExceeded(
        "minkowski_body_search found no point; the body has volume 2^(n+1), "
        "so this is a scan bug");
}

BoundsReport bounds_report(const RealVector& alpha, int ell, long n_max, long burn_in) {
    const int n = alpha.n();
    if (ell < 1 || ell > n) throw DomainError("bounds_report: ell out of range");
    BoundsReport rep;
    rep.n = n;
    rep.ell = ell;
    rep.n_max = n_max;

    ExponentReport what = estimate_w_hat(alpha, n_max);
    rep.w_hat_estimate = what.estimate;

    ExponentReport w = estimate_mu(std::vector<ConeRecord>(what.records), burn_in, n, n,
                                   n_max, what.unresolved_count);
    rep.w_estimate = w.estimate;
    rep.mu_full_estimate = w.estimate;

    ExponentReport mu = estimate_mu(alpha, ConeSpec::cone(ell), n_max, burn_in);
    rep.mu_estimate = mu.estimate;

    rep.golden = bound_golden(n);
    for (int l = 1; l < n; ++l) rep.veronese.push_back(bound_veronese(n, l));

    if (ell < n) {
        if (rep.w_hat_estimate > n - ell)
            rep.eq5_at_estimates = bound_eq5(rep.w_hat_estimate, n, ell);
        else
            rep.notes.push_back("eq5 skipped: w_hat estimate at the Dirichlet floor");
    }
    if (rep.w_estimate >= rep.w_hat_estimate && rep.w_hat_estimate > 1)
        rep.thurnheer_at_estimates = bound_thurnheer(rep.w_hat_estimate, rep.w_estimate);
    else
        rep.notes.push_back("thurnheer skipped: estimates violate w >= w_hat > 1");

    // Tautology mu_ell <= mu_n: flag only certified violations.
    const ConeRecord* a = nullptr;
    for (const auto& r : mu.records)
        if (r.h >= burn_in && r.ratio && (!a || *r.ratio > *a->ratio)) a = &r;
    const ConeRecord* b = nullptr;
    for (const auto& r : w.records)
        if (r.h >= burn_in && r.ratio && (!b || *r.ratio > *b->ratio)) b = &r;
    if (a && b && a->ratio_lo > b->ratio_hi) rep.tautology_violated = true;
    if (rep.mu_estimate > rep.mu_full_estimate && !rep.tautology_violated)
        rep.notes.push_back(
            "mu_ell midpoint above mu_n midpoint within certified slack only");
    return rep;
}

}  // namespace conelab
