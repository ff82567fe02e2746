#include "conelab/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/errors.hpp"

namespace conelab {

const char* exponent_kind_name(ExponentKind k) {
    switch (k) {
        case ExponentKind::mu: return "mu";
        case ExponentKind::w: return "w";
        case ExponentKind::w_hat: return "w_hat";
        case ExponentKind::nu_tilde: return "nu_tilde";
    }
    return "?";
}

std::vector<long> default_uniform_grid(long n_max) {
    std::vector<long> g;
    for (long x = 2; x <= n_max; x *= 2) g.push_back(x);
    if (g.empty() && n_max >= 2) g.push_back(n_max);
    return g;
}

ExponentReport estimate_mu(std::vector<ConeRecord> records, long burn_in, int n, int ell,
                           long n_max, long unresolved_count) {
    if (burn_in < 2) throw DomainError("burn_in must be >= 2");
    ExponentReport rep;
    rep.kind = ExponentKind::mu;
    rep.n = n;
    rep.ell = ell;
    rep.burn_in_height = burn_in;
    rep.truncation_height = n_max;
    rep.unresolved_count = unresolved_count;
    rep.records = std::move(records);

    bool any = false;
    double best = 0;
    for (const auto& r : rep.records) {
        if (r.h < burn_in || !r.ratio) continue;
        if (!any || *r.ratio > best) best = *r.ratio;
        any = true;
    }
    if (!any) throw NoRecords("no record at or beyond the burn-in height");
    rep.estimate = best;
    return rep;
}

ExponentReport estimate_mu(const RealVector& alpha, const ConeSpec& spec, long n_max,
                           long burn_in, const EscalationPolicy& pol) {
    ScanStats st;
    auto recs = record_scan(alpha, spec, n_max, &st, pol);
    ExponentReport rep =
        estimate_mu(std::move(recs), burn_in, alpha.n(), spec.ell, n_max, st.unresolved);
    rep.kind = spec.ell == alpha.n() ? ExponentKind::w : ExponentKind::mu;
    return rep;
}

ExponentReport estimate_w(const RealVector& alpha, long n_max, long burn_in,
                          const EscalationPolicy& pol) {
    ExponentReport rep =
        estimate_mu(alpha, ConeSpec::cone(alpha.n()), n_max, burn_in, pol);
    rep.kind = ExponentKind::w;
    return rep;
}

namespace {

// bestErr(X) from the record list: records are exactly the prefix minima.
const ConeRecord* best_at(const std::vector<ConeRecord>& recs, long X) {
    const ConeRecord* out = nullptr;
    for (const auto& r : recs) {
        if (r.h > X) break;
        out = &r;
    }
    return out;
}

mpq_class dirichlet_bound(long X, int dims) {
    mpz_class m = mpz_class(X) + 1;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(dims));
    return mpq_class(mpz_class(1), p - 1);
}

/// err < bound, certified (escalating the enclosure through the record's
/// exact value when present).
bool certified_below(const ConeRecord& r, const mpq_class& bound) {
    if (r.exact_err) return *r.exact_err < bound;
    // The record enclosure is tight; compare the upper end.
    if (mpfr_cmp_q(r.err.hi(), const_cast<mpq_class&>(bound).get_mpq_t()) < 0) return true;
    if (mpfr_cmp_q(r.err.lo(), const_cast<mpq_class&>(bound).get_mpq_t()) > 0) return false;
    throw PrecisionExhausted("Dirichlet bound comparison undecided");
}

}  // namespace

ExponentReport estimate_w_hat(const RealVector& alpha, long n_max, std::vector<long> grid,
                              const EscalationPolicy& pol) {
    if (n_max < 2) throw DomainError("estimate_w_hat needs n_max >= 2");
    if (grid.empty()) grid = default_uniform_grid(n_max);
    for (long X : grid)
        if (X < 2 || X > n_max) throw DomainError("grid X out of [2, n_max]");

    ScanStats st;
    auto recs = record_scan(alpha, ConeSpec::cone(alpha.n()), n_max, &st, pol);

    ExponentReport rep;
    rep.kind = ExponentKind::w_hat;
    rep.n = alpha.n();
    rep.ell = alpha.n();
    rep.burn_in_height = 0;
    rep.truncation_height = n_max;
    rep.unresolved_count = st.unresolved;

    bool any = false;
    double best = 0;
    for (long X : grid) {
        const ConeRecord* r = best_at(recs, X);
        ExponentReport::GridPoint gp;
        gp.X = X;
        if (!r) {
            gp.dirichlet_ok = false;
            rep.grid_points.push_back(gp);
            continue;
        }
        gp.best_err_lo = r->err.lo_double();
        gp.best_err_hi = r->err.hi_double();
        // ratio at X uses log X, not log h.
        double num = -std::log(0.5 * (gp.best_err_lo + gp.best_err_hi));
        gp.ratio = num / std::log(static_cast<double>(X));

        mpq_class bound = dirichlet_bound(X, alpha.n());
        bool shadowed = st.shadowed_at(X);
        gp.dirichlet_ok = shadowed ? true : certified_below(*r, bound);
        if (!shadowed && !gp.dirichlet_ok)
            throw InvariantViolation(
                "Dirichlet guarantee violated at X = " + std::to_string(X) +
                " (scan bug by pigeonhole)");
        rep.grid_points.push_back(gp);
        if (!any || gp.ratio < best) best = gp.ratio;
        any = true;
    }
    if (!any) throw NoRecords("no grid point admits a positive best error");
    rep.estimate = best;
    rep.records = std::move(recs);
    return rep;
}

ExponentReport estimate_nu_tilde(const RealVector& alpha, int ell, long n_max,
                                 long burn_in, const EscalationPolicy& pol) {
    if (ell < 1 || ell >= alpha.n()) throw DomainError("nu_tilde needs 1 <= ell < n");
    ScanStats st;
    auto recs = nu_tilde_scan(alpha, ell, n_max, &st, pol);
    ExponentReport rep =
        estimate_mu(std::move(recs), burn_in, alpha.n(), ell, n_max, st.unresolved);
    rep.kind = ExponentKind::nu_tilde;
    return rep;
}

bool dirichlet_floor_check(const RealVector& alpha, const ConeSpec& spec, long N,
                           const EscalationPolicy& pol) {
    if (N < 1) throw DomainError("dirichlet_floor_check needs N >= 1");
    BestError be = head_best_error(alpha, spec.ell, N, nullptr, pol);
    if (!be.found) return true;  // no positive value at all: nothing to witness
    mpq_class bound = dirichlet_bound(N, spec.ell);
    if (be.value.exact_dist) return *be.value.exact_dist < bound;
    if (mpfr_cmp_q(be.value.dist.hi(), bound.get_mpq_t()) < 0) return true;
    if (mpfr_cmp_q(be.value.dist.lo(), bound.get_mpq_t()) > 0) return false;
    throw PrecisionExhausted("dirichlet_floor_check comparison undecided");
}

}  // namespace conelab
