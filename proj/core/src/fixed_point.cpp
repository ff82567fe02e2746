#include "conelab/fixed_point.hpp"

#include <algorithm>
#include <cstdlib>

#include "conelab/errors.hpp"

namespace conelab {

FixedPointAlpha FixedPointAlpha::build(const RealVector& alpha) {
    FixedPointAlpha out;
    out.n = alpha.n();
    out.units.reserve(out.n);
    out.slack.reserve(out.n);
    for (const auto& c : alpha.coords) {
        // Enough working precision that the enclosure width is far below one
        // unit even after the integer part is stripped.
        const Interval& e0 = c.enclosure();
        mpfr_exp_t mag = 0;
        if (!mpfr_zero_p(e0.hi())) mag = std::max(mag, mpfr_get_exp(e0.hi()));
        if (!mpfr_zero_p(e0.lo())) mag = std::max(mag, mpfr_get_exp(e0.lo()));
        int wp = 200 + static_cast<int>(std::max<mpfr_exp_t>(mag, 0));
        PrecisionReal cc = c.at_precision(wp);
        const Interval& e = cc.enclosure();

        // z = floor(lo * 2^128) exactly.
        mpfr_t t;
        mpfr_init2(t, wp + 130);
        mpfr_mul_2ui(t, e.lo(), 128, MPFR_RNDD);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDD);
        mpfr_clear(t);
        mpz_class m = z & ((mpz_class(1) << 128) - 1);

        u128 u = 0;
        for (int limb = 0; limb < 2; ++limb) {
            mpz_class part = (m >> (64 * limb)) & mpz_class(0xFFFFFFFFFFFFFFFFUL);
            u |= static_cast<u128>(part.get_ui()) << (64 * limb);
        }

        // Exact dyadic coordinates with at most 128 fractional bits have an
        // exact unit representation; anything else is off by less than one.
        bool exact = false;
        if (const mpq_class* q = c.exact_value()) {
            mpz_class den = q->get_den();
            size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
            if (mpz_popcount(den.get_mpz_t()) == 1 && bits <= 129) exact = true;
        }
        out.units.push_back(u);
        out.slack.push_back(exact ? 0 : 1);
    }
    return out;
}

u128 FixedPointAlpha::position(const std::vector<long>& x) const {
    u128 p = 0;
    for (int i = 0; i < n; ++i) {
        long k = x[i];
        if (k == 0) continue;
        if (k > 0)
            p += units[i] * static_cast<u128>(k);
        else
            p -= units[i] * static_cast<u128>(-k);
    }
    return p;
}

long FixedPointAlpha::slack_units(const std::vector<long>& x) const {
    long s = 0;
    for (int i = 0; i < n; ++i) s += std::labs(x[i]) * slack[i];
    return s;
}

PositionLadder::PositionLadder(u128 unit, long reserve_bound) : unit_(unit) {
    sorted_.reserve(static_cast<size_t>(2 * reserve_bound + 1));
    sorted_.push_back(Entry{0, 0});
    bound_ = 0;
}

size_t PositionLadder::lower_bound_pos(u128 p) const {
    size_t lo = 0, hi = sorted_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (sorted_[mid].pos < p)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

void PositionLadder::insert(u128 pos, long k) {
    size_t at = lower_bound_pos(pos);
    sorted_.insert(sorted_.begin() + at, Entry{pos, k});
}

void PositionLadder::extend_to(long m) {
    for (long k = bound_ + 1; k <= m; ++k) {
        u128 p = unit_ * static_cast<u128>(k);
        insert(p, k);
        insert(~p + 1, -k);
    }
    if (m > bound_) bound_ = m;
}

PositionLadder::Walker PositionLadder::walk(u128 target) const {
    Walker w;
    w.lad_ = this;
    w.target_ = target;
    const size_t n = sorted_.size();
    w.fwd_ = lower_bound_pos(target) % n;
    w.bwd_ = w.fwd_ == 0 ? n - 1 : w.fwd_ - 1;
    return w;
}

bool PositionLadder::Walker::next(long& k, u128& d) {
    const auto& v = lad_->sorted_;
    const size_t n = v.size();
    if (emitted_ >= n) return false;
    u128 df = v[fwd_].pos - target_;
    u128 db = target_ - v[bwd_].pos;
    if (emitted_ + 1 == n) {
        // Single remaining entry is reachable from both sides.
        d = std::min(df, db);
        k = v[fwd_].k;
        ++emitted_;
        return true;
    }
    if (df <= db) {
        d = df;
        k = v[fwd_].k;
        fwd_ = (fwd_ + 1) % n;
    } else {
        d = db;
        k = v[bwd_].k;
        bwd_ = bwd_ == 0 ? n - 1 : bwd_ - 1;
    }
    ++emitted_;
    return true;
}

}  // namespace conelab
