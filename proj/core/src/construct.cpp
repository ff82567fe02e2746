#include "conelab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<u128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Certified enclosure of g^(-nu) for rational nu > 0.
Interval pow_neg_interval(const mpz_class& g, const mpq_class& nu, int bits) {
    mpfr_t lg, t, lo, hi;
    mpfr_init2(lg, bits + 16);
    mpfr_init2(t, bits + 16);
    mpfr_init2(lo, bits);
    mpfr_init2(hi, bits);
    for (int side = 0; side < 2; ++side) {
        mpfr_rnd_t rnd = side == 0 ? MPFR_RNDD : MPFR_RNDU;
        mpfr_rnd_t anti = side == 0 ? MPFR_RNDU : MPFR_RNDD;
        mpfr_set_z(t, g.get_mpz_t(), MPFR_RNDN);
        mpfr_log(lg, t, anti);  // exponent is negative: larger log -> smaller
        mpfr_mul_q(lg, lg, nu.get_mpq_t(), anti);
        mpfr_neg(lg, lg, MPFR_RNDN);
        mpfr_exp(side == 0 ? lo : hi, lg, rnd);
    }
    mpq_class qlo, qhi;
    mpfr_get_q(qlo.get_mpq_t(), lo);
    mpfr_get_q(qhi.get_mpq_t(), hi);
    mpfr_clear(lg);
    mpfr_clear(t);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return Interval::from_endpoints(qlo, qhi, bits);
}

/// Bisect a sign-change bracket of P down to width <= eps.
void refine_bracket(const ZPoly& P, mpq_class& lo, mpq_class& hi, const mpq_class& eps) {
    int slo = zp_sign_at(P, lo);
    if (slo == 0) {
        hi = lo;
        return;
    }
    while (hi - lo > eps) {
        mpq_class mid = (lo + hi) / 2;
        int sm = zp_sign_at(P, mid);
        if (sm == 0) {
            lo = mid;
            hi = mid;
            return;
        }
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
}

mpq_class pow2_q(long e) {
    if (e >= 0) return mpq_class(mpz_class(1) << e);
    return mpq_class(mpz_class(1), mpz_class(1) << (-e));
}

}  // namespace

bool is_prime_u64(unsigned long long v) {
    if (v < 2) return false;
    for (unsigned long long p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                                 23ull, 29ull, 31ull, 37ull}) {
        if (v % p == 0) return v == p;
    }
    uint64_t d = v - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic for every v < 3.3 * 10^24 with this base set.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                       31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, v);
        if (x == 1 || x == v - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, v);
            if (x == v - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

mpq_class ConstructionParams::delta(int n, int ell) {
    return mpq_class(1) - mpq_class(n) * mpq_class(ell - 1, ell);
}

mpz_class ConstructionParams::gelfond_G(int n) {
    mpz_class nn(n);
    return 2 * nn * nn * nn + 2 * nn * nn + 2 * nn + 1;
}

ConstructionParams ConstructionParams::make(int n, std::vector<mpq_class> targets,
                                            std::optional<mpq_class> chi) {
    if (n < 2) throw ValidationError("construction needs n >= 2");
    ConstructionParams p;
    p.n = n;
    if (targets.empty()) {
        // default ladder starting at 2n^3
        mpq_class base = 2 * mpq_class(n) * n * n;
        for (int ell = 1; ell <= n; ++ell) targets.push_back(base + (ell - 1));
    }
    if (static_cast<int>(targets.size()) != n)
        throw ValidationError("construction: need exactly n targets");
    for (int i = 1; i < n; ++i)
        if (targets[i] < targets[i - 1])
            throw ValidationError("construction: targets must be non-decreasing");
    p.targets = std::move(targets);
    p.chi = chi ? *chi : mpq_class(gelfond_G(n) + 1);
    if (p.chi <= mpq_class(gelfond_G(n)))
        p.warnings.push_back("chi <= G(n): the Gelfond step has no headroom");
    if (p.targets[0] < p.chi + n)
        p.warnings.push_back(
            "mu_1 below chi + n: the lower-bound audit is not backed by the "
            "Gelfond step at these sizes");
    p.g_cap = mpz_class(1) << 40;
    p.hard_cap = mpz_class(1) << 48;
    for (int ell = 1; ell <= n; ++ell)
        p.lambda.push_back(mpq_class(n) * (p.targets[ell - 1] - delta(n, ell)));
    for (int i = 1; i < n; ++i)
        if (p.lambda[i] < p.lambda[i - 1])
            throw InvariantViolation("lambda ladder not ascending");
    if (p.lambda[0] <= 1)
        p.warnings.push_back("lambda_1 <= 1: nesting windows shrink slower than 1/g");
    return p;
}

ConstructionState construction_begin(ConstructionParams params) {
    ConstructionState st;
    st.params = std::move(params);
    return st;
}

std::pair<mpq_class, mpq_class> ConstructionState::gamma_refined(long j, int bits) const {
    const ConstructionStep& s = steps.at(j - 1);
    mpq_class lo = s.gamma_lo, hi = s.gamma_hi;
    mpq_class eps = pow2_q(-bits);
    refine_bracket(s.P, lo, hi, eps);
    return {lo, hi};
}

Interval ConstructionState::xi_enclosure(long j, int bits) const {
    const ConstructionStep& s = steps.at(j - 1);
    auto [glo, ghi] = gamma_refined(j, bits + 8);
    mpq_class xlo = (mpq_class(s.c) + glo) / mpq_class(s.g);
    mpq_class xhi = (mpq_class(s.c) + ghi) / mpq_class(s.g);
    return Interval::from_endpoints(xlo, xhi, bits + 8);
}

void next_step(ConstructionState& state) {
    const ConstructionParams& par = state.params;
    const int n = par.n;
    const long j = static_cast<long>(state.steps.size()) + 1;
    const int ell = par.ell_of(j);

    // Global window (2^(-2n-4), 2^(-2n)).
    mpq_class gwin_lo = pow2_q(-2 * n - 4);
    mpq_class gwin_hi = pow2_q(-2 * n);

    // Nesting window around the previous step.
    mpq_class win_lo = gwin_lo, win_hi = gwin_hi;
    if (j >= 2) {
        ConstructionStep& prev = state.steps.back();
        // r = g_{j-1}^(-nu_{j-1}) bracketed to 192 significant bits.
        Interval r = pow_neg_interval(prev.g, prev.nu, 192);
        mpq_class r_lo, r_hi;
        mpfr_get_q(r_lo.get_mpq_t(), r.lo());
        mpfr_get_q(r_hi.get_mpq_t(), r.hi());
        if (r_lo <= 0) throw InvariantViolation("nesting radius bracket touched zero");
        // Sharpen the previous root bracket until its xi uncertainty is far
        // below the window radius, so the window bracket is faithful.
        mpq_class eps = r_lo * mpq_class(prev.g) / 16;
        refine_bracket(prev.P, prev.gamma_lo, prev.gamma_hi, eps);
        prev.xi_lo = (mpq_class(prev.c) + prev.gamma_lo) / mpq_class(prev.g);
        prev.xi_hi = (mpq_class(prev.c) + prev.gamma_hi) / mpq_class(prev.g);
        // Conservative inner bracket of the open interval
        // (xi_prev - r/2, xi_prev + 3r/4): membership certified against the
        // left endpoint's upper bound and the right endpoint's lower bound.
        mpq_class left_hi = prev.xi_hi - r_lo / 2;
        mpq_class right_lo = prev.xi_lo + 3 * r_lo / 4;
        if (left_hi > win_lo) win_lo = left_hi;
        if (right_lo < win_hi) win_hi = right_lo;
        if (win_lo >= win_hi)
            throw SearchExhausted(
                "step " + std::to_string(j) +
                ": nesting window empty against the global window");
    }

    // The ell = n family X^n - 2 g^n has its real root at 2^(1/n) g, so
    // xi = c/g + 2^(1/n) can never enter a window below 2^(-2n). Detect and
    // report instead of burning the budget.
    if (ell == n) {
        // 2^(1/n) > 1 > gwin_hi always.
        throw SearchExhausted(
            "step " + std::to_string(j) + " (ell = n): the family X^n - 2 g^n places "
            "xi_j near 2^(1/n) + c/g, outside every admissible window below 2^(-2n); "
            "no (c, g) pair is admissible");
    }

    long budget = par.candidate_budget;
    mpz_class cap = par.g_cap;
    for (int attempt = 0; attempt <= par.enlarge_retries; ++attempt) {
        mpz_class c = 1;
        for (; budget > 0; ++c) {
            mpz_class g_eq13_lo = c << (2 * n + 2);
            mpz_class g_eq13_hi = c << (2 * n + 3);
            if (g_eq13_lo > cap) break;
            if (g_eq13_hi > cap) g_eq13_hi = cap;

            // Window-derived g range: g = (c + gamma)/xi with gamma in [0, 1].
            mpq_class g_win_lo_q = mpq_class(c) / win_hi;
            mpq_class g_win_hi_q = (mpq_class(c) + 1) / win_lo;
            mpz_class g_lo, g_hi;
            mpz_cdiv_q(g_lo.get_mpz_t(), g_win_lo_q.get_num_mpz_t(),
                       g_win_lo_q.get_den_mpz_t());
            mpz_fdiv_q(g_hi.get_mpz_t(), g_win_hi_q.get_num_mpz_t(),
                       g_win_hi_q.get_den_mpz_t());
            if (g_lo < g_eq13_lo) g_lo = g_eq13_lo;
            if (g_hi > g_eq13_hi) g_hi = g_eq13_hi;

            for (mpz_class g = g_lo; g <= g_hi && budget > 0; ++g) {
                --budget;
                if (!g.fits_ulong_p()) break;  // beyond the u64 primality range
                if (!is_prime_u64(g.get_ui())) continue;

                ZPoly P = poly_family(n, ell, g);
                if (!is_eisenstein(P, 2))
                    throw InvariantViolation("family polynomial not Eisenstein at 2");

                // gamma: the root designed to sit near 1/[g^((n-ell)/ell)].
                mpz_class a = family_stretch(n, ell, g);
                mpq_class tgt(1, a);
                mpq_class radius = mpq_class(1, 4 * a * g);
                mpq_class glo_q, ghi_q;
                try {
                    auto iv = isolate_root_near(P, tgt, radius);
                    glo_q = iv.first;
                    ghi_q = iv.second;
                } catch (const NoRootInWindow&) {
                    continue;
                }

                // Condition (I_j): g must not divide Norm(c + gamma) =
                // (-1)^n P(-c).
                mpz_class norm = zp_eval_z(P, mpz_class(-c));
                if (n % 2) norm = -norm;
                if (norm % g == 0) continue;

                // xi = (c + gamma)/g with membership decided exactly;
                // refine gamma until the strict inequalities resolve.
                mpq_class xlo = (mpq_class(c) + glo_q) / mpq_class(g);
                mpq_class xhi = (mpq_class(c) + ghi_q) / mpq_class(g);
                int rounds = 0;
                while (!(xlo > win_lo && xhi < win_hi) && rounds < 8) {
                    if (xhi <= win_lo || xlo >= win_hi) break;  // certainly outside
                    mpq_class w = (ghi_q - glo_q) / 4;
                    if (w == 0) break;
                    refine_bracket(P, glo_q, ghi_q, w);
                    xlo = (mpq_class(c) + glo_q) / mpq_class(g);
                    xhi = (mpq_class(c) + ghi_q) / mpq_class(g);
                    ++rounds;
                }
                if (!(xlo > win_lo && xhi < win_hi)) continue;

                ConstructionStep step;
                step.j = j;
                step.ell = ell;
                step.c = c;
                step.g = g;
                step.P = P;
                step.Q = zp_compose_linear(P, g, -c);
                step.gamma_lo = glo_q;
                step.gamma_hi = ghi_q;
                step.xi_lo = xlo;
                step.xi_hi = xhi;
                step.HQ = zp_height(step.Q);
                step.nu = par.nu_of(j);
                state.steps.push_back(std::move(step));
                return;
            }
        }
        cap = std::min(mpz_class(cap << 4), par.hard_cap);
        if (cap == par.g_cap) break;
    }
    throw SearchExhausted("step " + std::to_string(j) +
                          ": no admissible (c, g) within the candidate budget of " +
                          std::to_string(par.candidate_budget) + " pairs");
}

StepAudit audit_step(const ConstructionState& state, long j, int bits) {
    if (state.steps.empty()) throw DomainError("audit_step: empty state");
    if (j < 1 || j > static_cast<long>(state.steps.size()))
        throw DomainError("audit_step: no such step");
    const ConstructionStep& s = state.steps[j - 1];
    const long J = static_cast<long>(state.steps.size());

    StepAudit audit;
    audit.j = j;
    audit.ell = s.ell;
    mpq_class mu = state.params.target_of(s.ell);
    audit.target = mu.get_d();

    int wp = bits;
    for (int rounds = 0; rounds < 4; ++rounds, wp *= 2) {
        Interval xi = state.xi_enclosure(J, wp);
        Interval qv = zp_eval_interval(s.Q, xi).abs();
        if (qv.sign() <= 0) continue;  // straddles zero: refine and retry
        mpfr_t l, hq;
        mpfr_init2(l, 128);
        mpfr_init2(hq, 128);
        // upper-endpoint logs are plenty for a +-0.5 audit
        mpfr_log(l, qv.hi(), MPFR_RNDN);
        audit.log_qval = mpfr_get_d(l, MPFR_RNDN);
        mpfr_set_z(hq, s.HQ.get_mpz_t(), MPFR_RNDN);
        mpfr_log(hq, hq, MPFR_RNDN);
        audit.log_height = mpfr_get_d(hq, MPFR_RNDN);
        audit.log_ratio = -audit.log_qval / audit.log_height;
        audit.deviation = audit.log_ratio - audit.target;
        audit.resolved = true;
        mpfr_clear(l);
        mpfr_clear(hq);
        return audit;
    }
    audit.resolved = false;
    return audit;
}

LowerBoundAudit audit_lower_bound(const ConstructionState& state, int degree_cap,
                                  long height_cap, int bits) {
    if (state.steps.empty()) throw DomainError("audit_lower_bound: empty state");
    LowerBoundAudit out;
    out.degree_cap = degree_cap;
    out.height_cap = height_cap;
    const long J = static_cast<long>(state.steps.size());
    Interval xi = state.xi_enclosure(J, bits);
    double mu1 = state.params.targets[0].get_d();

    // All primitive polynomials with positive leading coefficient (sign
    // cannot change |Q(xi)|), degree <= degree_cap, height <= height_cap.
    ZPoly q(degree_cap + 1, 0);
    bool first = true;
    std::function<void(int)> rec = [&](int idx) {
        if (idx < 0) {
            ZPoly qq = q;
            zp_normalize(qq);
            int d = zp_degree(qq);
            if (d < 1) return;  // constants say nothing here
            if (qq.back() < 0) return;
            if (zp_content(qq) != 1) return;
            for (const auto& st : state.steps)
                if (zp_proportional(qq, st.Q)) {
                    ++out.skipped_proportional;
                    return;
                }
            ++out.scanned;
            Interval v = zp_eval_interval(qq, xi).abs();
            if (v.sign() <= 0) {
                // refine once at double precision before giving up
                Interval xi2 = state.xi_enclosure(J, bits * 2);
                v = zp_eval_interval(qq, xi2).abs();
                if (v.sign() <= 0) {
                    ++out.unresolved;
                    return;
                }
            }
            mpfr_t l;
            mpfr_init2(l, 96);
            mpfr_log2(l, v.lo(), MPFR_RNDD);
            double log2v = mpfr_get_d(l, MPFR_RNDD);
            mpfr_clear(l);
            double margin =
                log2v + mu1 * std::log2(static_cast<double>(zp_height(qq).get_d()));
            if (first || margin < out.lambda_hat_log2) {
                out.lambda_hat_log2 = margin;
                out.argmin = qq;
                first = false;
            }
            return;
        }
        for (long v = -height_cap; v <= height_cap; ++v) {
            q[idx] = v;
            rec(idx - 1);
        }
        q[idx] = 0;
    };
    rec(degree_cap);
    out.positive = out.unresolved == 0 && out.scanned > 0;
    return out;
}

}  // namespace conelab
