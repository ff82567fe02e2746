#include "conelab/metrical.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "conelab/errors.hpp"

namespace conelab {

ApproxFunction ApproxFunction::power(const mpq_class& w) {
    return power_log(w, 0);
}

ApproxFunction ApproxFunction::power_log(const mpq_class& w, const mpq_class& log_exp) {
    if (w <= 0) throw DomainError("ApproxFunction: w must be positive");
    ApproxFunction f;
    f.w = w;
    f.log_exp = log_exp;
    // d/dh [h^-w (log h)^c] < 0 once log h > c/w.
    if (log_exp > 0) {
        double c = log_exp.get_d() / w.get_d();
        f.monotone_from = std::max<long>(2, static_cast<long>(std::ceil(std::exp(c))) + 1);
    } else {
        f.monotone_from = 2;
    }
    return f;
}

std::optional<mpq_class> ApproxFunction::eval_exact(long h) const {
    if (h < 1) return std::nullopt;
    if (h == 1) return mpq_class(1);
    if (log_exp != 0 || w.get_den() != 1) return std::nullopt;
    unsigned long e = mpz_get_ui(w.get_num().get_mpz_t());
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(h), e);
    return mpq_class(mpz_class(1), p);
}

Interval ApproxFunction::eval(long h, int bits) const {
    if (h < 1) throw DomainError("psi undefined below h = 1");
    if (auto ex = eval_exact(h)) return Interval::from_mpq(*ex, bits);
    if (h == 1) return Interval::from_long(1, bits);
    // h^(-w) (log h)^c = exp(-w log h + c log log h), outward endpoints.
    mpfr_t lh, llh, t, lo, hi;
    mpfr_init2(lh, bits + 16);
    mpfr_init2(llh, bits + 16);
    mpfr_init2(t, bits + 16);
    mpfr_init2(lo, bits);
    mpfr_init2(hi, bits);
    for (int side = 0; side < 2; ++side) {
        mpfr_rnd_t rnd = side == 0 ? MPFR_RNDD : MPFR_RNDU;
        mpfr_rnd_t anti = side == 0 ? MPFR_RNDU : MPFR_RNDD;
        mpfr_set_ui(t, static_cast<unsigned long>(h), MPFR_RNDN);
        mpfr_log(lh, t, anti);  // -w*log h: larger log -> smaller value
        mpfr_mul_q(lh, lh, w.get_mpq_t(), anti);
        mpfr_neg(lh, lh, MPFR_RNDN);
        if (log_exp != 0) {
            mpfr_set_ui(t, static_cast<unsigned long>(h), MPFR_RNDN);
            mpfr_log(llh, t, rnd);
            mpfr_log(llh, llh, rnd);
            mpfr_mul_q(llh, llh, log_exp.get_mpq_t(), rnd);
            mpfr_add(lh, lh, llh, rnd);
        }
        mpfr_exp(side == 0 ? lo : hi, lh, rnd);
    }
    mpq_class qlo, qhi;
    mpfr_get_q(qlo.get_mpq_t(), lo);
    mpfr_get_q(qhi.get_mpq_t(), hi);
    mpfr_clear(lh);
    mpfr_clear(llh);
    mpfr_clear(t);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return Interval::from_endpoints(qlo, qhi, bits);
}

double ApproxFunction::eval_double(long h) const {
    if (h <= 1) return 1.0;
    double lh = std::log(static_cast<double>(h));
    return std::exp(-w.get_d() * lh + log_exp.get_d() * std::log(lh));
}

namespace {

/// floor(2^128 / h^e) saturated to u128; d <= that  <=>  d * h^e <= 2^128.
u128 unit_threshold(long h, unsigned long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(h), e);
    mpz_class t = (mpz_class(1) << 128) / p;
    if (mpz_sizeinbase(t.get_mpz_t(), 2) > 128) return ~u128(0);
    u128 u = 0;
    for (int limb = 0; limb < 2; ++limb) {
        mpz_class part = (t >> (64 * limb)) & mpz_class(0xFFFFFFFFFFFFFFFFUL);
        u |= static_cast<u128>(part.get_ui()) << (64 * limb);
    }
    return u;
}

}  // namespace

TrialReport sample_experiment(int n, int ell, const ApproxFunction& psi, long n_max,
                              long trials, uint64_t seed, int threads) {
    if (trials < 1) throw DomainError("sample_experiment: trials >= 1");
    if (n_max < 2) throw DomainError("sample_experiment: n_max >= 2");
    if (ell < 1 || ell > n) throw DomainError("sample_experiment: ell out of range");
    if (threads < 1) throw DomainError("sample_experiment: threads >= 1");

    TrialReport rep;
    rep.n = n;
    rep.ell = ell;
    rep.psi = psi;
    rep.n_max = n_max;
    rep.trials = trials;
    rep.seed = seed;

    // Dyadic windows.
    for (long lo = 2; lo <= n_max; lo *= 2) {
        rep.window_lo.push_back(lo);
        rep.window_hi.push_back(std::min(2 * lo - 1, n_max));
    }
    rep.window_hit_trials.assign(rep.window_lo.size(), 0);

    // Exact unit thresholds for integer-exponent psi.
    bool exact_psi = psi.eval_exact(2).has_value();
    std::vector<u128> thresh;
    if (exact_psi) {
        unsigned long e = mpz_get_ui(psi.w.get_num().get_mpz_t());
        thresh.resize(n_max + 1, 0);
        for (long h = 2; h <= n_max; ++h) thresh[h] = unit_threshold(h, e);
    }

    ConeSpec spec = ConeSpec::cone(ell);
    struct TrialOutcome {
        long witness = 0;
        long first_hit = -1;
        std::vector<bool> win_hit;
        bool tail_half = false, tail_quarter = false;
        bool exhausted = false;
    };
    std::vector<TrialOutcome> outcomes(trials);

    auto run_trial = [&](long t) {
        TrialOutcome& oc = outcomes[t];
        uint64_t sub = derive_subseed(seed, static_cast<uint64_t>(t));
        RealVector alpha = sample_unit_vector(sub, n);
        std::vector<ShellMin> mins = shell_min_scan(alpha, spec, n_max);

        long witness = 0;
        long first_hit = -1;
        std::vector<bool> win_hit(rep.window_lo.size(), false);
        bool tail_half = false, tail_quarter = false;
        bool exhausted = false;

        for (long h = 2; h <= n_max; ++h) {
            const ShellMin& sm = mins[h - 1];
            if (!sm.any) continue;
            bool hit;
            if (exact_psi && sm.slack == 0) {
                hit = sm.d <= thresh[h];
            } else {
                // Certified comparison with the slack halo.
                Interval p = psi.eval(h, 160);
                mpq_class dlo(0), dhi(0);
                mpz_class dz = 0;
                u128 v = sm.d;
                for (int limb = 1; limb >= 0; --limb) {
                    dz <<= 64;
                    dz += mpz_class(static_cast<unsigned long>(
                        static_cast<uint64_t>(v >> (64 * limb))));
                }
                mpz_class den = mpz_class(1) << 128;
                dlo = mpq_class(std::max(mpz_class(dz - sm.slack), mpz_class(0)), den);
                dhi = mpq_class(dz + sm.slack, den);
                dlo.canonicalize();
                dhi.canonicalize();
                if (mpfr_cmp_q(p.lo(), dhi.get_mpq_t()) >= 0)
                    hit = true;
                else if (mpfr_cmp_q(p.hi(), dlo.get_mpq_t()) < 0)
                    hit = false;
                else {
                    exhausted = true;
                    continue;
                }
            }
            if (!hit) continue;
            ++witness;
            if (first_hit < 0) first_hit = h;
            size_t wi = 0;
            while (wi + 1 < rep.window_lo.size() && rep.window_lo[wi + 1] <= h) ++wi;
            win_hit[wi] = true;
            if (h > n_max / 2) tail_half = true;
            else if (h > n_max / 4) tail_quarter = true;
        }
        oc.witness = witness;
        oc.first_hit = first_hit;
        oc.win_hit = std::move(win_hit);
        oc.tail_half = tail_half;
        oc.tail_quarter = tail_quarter;
        oc.exhausted = exhausted;
    };

    if (threads <= 1 || trials == 1) {
        for (long t = 0; t < trials; ++t) run_trial(t);
    } else {
        int nt = static_cast<int>(std::min<long>(threads, trials));
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (int w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                for (long t = w; t < trials; t += nt) run_trial(t);
            });
        for (auto& th : pool) th.join();
    }

    // Deterministic merge in trial order.
    for (long t = 0; t < trials; ++t) {
        const TrialOutcome& oc = outcomes[t];
        rep.per_trial_witness_count.push_back(oc.witness);
        rep.per_trial_first_hit.push_back(oc.first_hit);
        if (oc.first_hit >= 0) ++rep.hits;
        if (oc.exhausted) ++rep.precision_exhausted_trials;
        for (size_t i = 0; i < oc.win_hit.size(); ++i)
            if (oc.win_hit[i]) ++rep.window_hit_trials[i];
        if (oc.tail_half) ++rep.tail_half_hit_trials;
        if (oc.tail_quarter) ++rep.tail_quarter_hit_trials;
    }

    rep.hit_fraction = static_cast<double>(rep.hits) / static_cast<double>(trials);
    rep.stderr_binomial =
        std::sqrt(rep.hit_fraction * (1.0 - rep.hit_fraction) /
                  static_cast<double>(trials));
    return rep;
}

double dim_exact_order(int n, double mu) {
    if (n < 1) throw DomainError("dim_exact_order: n >= 1");
    if (mu < n) throw DomainError("dim_exact_order needs mu >= n");
    return n - 1 + (n + 1) / (mu + 1);
}

double dim_aux(int ell, double nu) {
    if (ell < 1) throw DomainError("dim_aux: ell >= 1");
    if (nu < ell + 1) throw DomainError("dim_aux needs nu >= ell + 1");
    return ell - 1 + (ell + 2) / (nu + 1);
}

RealVector gap_series_vector(int n, const mpq_class& w_target, uint64_t seed, int bits) {
    if (n < 1) throw DomainError("gap_series_vector: n >= 1");
    if (w_target < 2) throw DomainError("gap_series_vector needs w_target >= 2");
    RealVector v = sample_unit_vector(seed, n, bits);
    v.coords[0] = PrecisionReal::gap_series(w_target, bits);
    return v;
}

}  // namespace conelab
