#include "conelab/scan.hpp"

#include <algorithm>
#include <cstring>
#include <functional>

#include "conelab/errors.hpp"

namespace conelab {

namespace {

constexpr u128 kU128Max = ~u128(0);

u128 sat_add(u128 a, u128 b) {
    u128 s = a + b;
    return s < a ? kU128Max : s;
}

/// ceil(err.hi * 2^128) as saturated units.
u128 units_upper(const Interval& err) {
    mpfr_t t;
    mpfr_init2(t, 200);
    mpfr_mul_2ui(t, err.hi(), 128, MPFR_RNDU);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDU);
    mpfr_clear(t);
    if (z < 0) return 0;
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 128) return kU128Max;
    u128 u = 0;
    for (int limb = 0; limb < 2; ++limb) {
        mpz_class part = (z >> (64 * limb)) & mpz_class(0xFFFFFFFFFFFFFFFFUL);
        u |= static_cast<u128>(part.get_ui()) << (64 * limb);
    }
    return u;
}

/// a < b, a == b (exact only), a > b; escalates both sides as needed.
int certified_compare(const RealVector& alpha, const IntVector& xa, FormValue& a,
                      const IntVector& xb, FormValue& b, const EscalationPolicy& pol) {
    while (true) {
        if (a.exact_dist && b.exact_dist) {
            int c = cmp(*a.exact_dist, *b.exact_dist);
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        if (a.dist.certainly_less(b.dist)) return -1;
        if (b.dist.certainly_less(a.dist)) return 1;
        int next = std::max(a.bits_used, b.bits_used) * 2;
        if (next > pol.cap_bits)
            throw PrecisionExhausted("record comparison unresolved at precision cap");
        EscalationPolicy p2 = pol;
        p2.start_bits = next;
        if (!a.exact_dist) a = linear_form_error(alpha, xa, p2);
        if (!b.exact_dist) b = linear_form_error(alpha, xb, p2);
    }
}

void fill_ratio(ConeRecord& r) {
    if (r.h <= 1) {
        r.ratio = std::nullopt;
        return;
    }
    // ratio = -log(err) / log(h); -log is decreasing in err, so the interval
    // endpoints swap roles.
    mpfr_t num, den, q, hh;
    mpfr_init2(num, 64);
    mpfr_init2(den, 64);
    mpfr_init2(q, 64);
    mpfr_init2(hh, 64);
    mpfr_set_si(hh, r.h, MPFR_RNDN);  // exact

    mpfr_log(num, r.err.hi(), MPFR_RNDU);
    mpfr_neg(num, num, MPFR_RNDN);    // exact negate: num = (-log err.hi) rounded down
    mpfr_log(den, hh, MPFR_RNDU);
    mpfr_div(q, num, den, MPFR_RNDD);
    r.ratio_lo = mpfr_get_d(q, MPFR_RNDD);

    mpfr_log(num, r.err.lo(), MPFR_RNDD);
    mpfr_neg(num, num, MPFR_RNDN);    // num = (-log err.lo) rounded up
    mpfr_log(den, hh, MPFR_RNDD);
    mpfr_div(q, num, den, MPFR_RNDU);
    r.ratio_hi = mpfr_get_d(q, MPFR_RNDU);

    r.ratio = 0.5 * (r.ratio_lo + r.ratio_hi);
    mpfr_clear(num);
    mpfr_clear(den);
    mpfr_clear(q);
    mpfr_clear(hh);
}

IntVector to_intvec(const std::vector<long>& x) {
    std::vector<mpz_class> e;
    e.reserve(x.size());
    for (long v : x) e.emplace_back(v);
    return IntVector(std::move(e));
}

IntVector lex_min_with_mirror(const IntVector& x) {
    IntVector m;
    m.entries.reserve(x.entries.size());
    for (const auto& e : x.entries) m.entries.push_back(-e);
    return m.lex_less(x) ? m : x;
}

/// Tracks the running best across shells and turns certified shell minima
/// into records.
class RecordEngine {
public:
    RecordEngine(const RealVector& alpha, const EscalationPolicy& pol, ScanStats* stats)
        : alpha_(alpha), pol_(pol), stats_(stats) {}

    void begin_shell(long h, long slack_units) {
        h_ = h;
        s_ = static_cast<u128>(slack_units);
        cands_.clear();
        shell_min_pos_ = kU128Max;
    }

    inline void consider(u128 pos, const long* x, int n) {
        u128 d = FixedPointAlpha::wrap_dist(pos);
        u128 lim = sat_add(best_units_hi_, s_);
        u128 lim2 = sat_add(shell_min_pos_, 2 * s_);
        if (lim2 < lim) lim = lim2;
        u128 lim3 = 3 * s_;
        if (d > lim && d > lim3) return;
        cands_.emplace_back(Cand{d, std::vector<long>(x, x + n)});
        if (d > s_ && d < shell_min_pos_) shell_min_pos_ = d;
    }

    void end_shell(std::vector<ConeRecord>& out) {
        if (cands_.empty()) return;
        // Final filter with the settled shell minimum.
        u128 lim = sat_add(best_units_hi_, s_);
        u128 lim2 = sat_add(shell_min_pos_, 2 * s_);
        if (lim2 < lim) lim = lim2;
        u128 lim3 = 3 * s_;
        std::vector<Cand> keep;
        for (auto& c : cands_)
            if (c.d <= lim || c.d <= lim3) keep.push_back(std::move(c));
        if (keep.empty()) return;
        std::sort(keep.begin(), keep.end(), [](const Cand& a, const Cand& b) {
            if (a.d != b.d) return a.d < b.d;
            return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(),
                                                b.x.end());
        });
        keep.erase(std::unique(keep.begin(), keep.end(),
                               [](const Cand& a, const Cand& b) { return a.x == b.x; }),
                   keep.end());

        // Certify candidates; keep positive ones.
        struct Certified {
            FormValue fv;
            IntVector x;
        };
        std::vector<Certified> pos;
        for (auto& c : keep) {
            IntVector xv = to_intvec(c.x);
            try {
                FormValue fv = linear_form_error(alpha_, xv, pol_);
                if (stats_) ++stats_->certified_evals;
                if (fv.is_zero()) {
                    if (stats_) stats_->note_zero(h_);
                    continue;
                }
                pos.push_back(Certified{std::move(fv), std::move(xv)});
            } catch (const PrecisionExhausted&) {
                if (stats_) stats_->note_unresolved(h_);
            }
        }
        if (pos.empty()) return;

        // Certified strict minimum with exact ties collected.
        std::vector<size_t> ties{0};
        for (size_t i = 1; i < pos.size(); ++i) {
            try {
                int c = certified_compare(alpha_, pos[i].x, pos[i].fv, pos[ties[0]].x,
                                          pos[ties[0]].fv, pol_);
                if (c < 0)
                    ties = {i};
                else if (c == 0)
                    ties.push_back(i);
            } catch (const PrecisionExhausted&) {
                if (stats_) stats_->note_unresolved(h_);
            }
        }
        Certified& win = pos[ties[0]];

        if (have_best_) {
            try {
                int c = certified_compare(alpha_, win.x, win.fv, best_x_, best_, pol_);
                if (c >= 0) return;  // not a strict improvement
            } catch (const PrecisionExhausted&) {
                if (stats_) stats_->note_unresolved(h_);
                return;  // conservatively keep the old best
            }
        }

        // Tie-break: lexicographically smallest among the minimizers and
        // their mirrors.
        IntVector best_vec = lex_min_with_mirror(win.x);
        for (size_t k = 1; k < ties.size(); ++k) {
            IntVector cand = lex_min_with_mirror(pos[ties[k]].x);
            if (cand.lex_less(best_vec)) best_vec = cand;
        }

        ConeRecord rec;
        rec.x = best_vec;
        rec.h = h_;
        rec.err = win.fv.dist;
        rec.exact_err = win.fv.exact_dist;
        fill_ratio(rec);
        out.push_back(rec);

        have_best_ = true;
        best_ = win.fv;
        best_x_ = win.x;
        best_units_hi_ = units_upper(best_.dist);
    }

private:
    const RealVector& alpha_;
    EscalationPolicy pol_;
    ScanStats* stats_;
    long h_ = 0;
    u128 s_ = 0;

    bool have_best_ = false;
    FormValue best_;
    IntVector best_x_;
    u128 best_units_hi_ = kU128Max;

    struct Cand {
        u128 d;
        std::vector<long> x;
    };
    std::vector<Cand> cands_;
    u128 shell_min_pos_ = kU128Max;
};

/// Emits, per prefix query, a superset of: all entries within 3S of the
/// target, the nearest certainly-positive entry, and everything within 2S of
/// it — walked in increasing circular distance.
template <typename Emit>
void query_ladder(const PositionLadder& lad, u128 base, u128 s, Emit&& emit) {
    auto w = lad.walk(u128(0) - base);
    long k;
    u128 d;
    u128 stop = 3 * s;
    bool have_pos = false;
    while (w.next(k, d)) {
        if (d > stop) {
            if (have_pos) break;
            have_pos = true;
            stop = sat_add(d, 2 * s);
            emit(k, d);
            continue;
        }
        emit(k, d);
        if (!have_pos && d > s) {
            have_pos = true;
            stop = std::max(stop, sat_add(d, 2 * s));
        }
    }
}

long cone_tail_bound(const ConeSpec& spec, long h) {
    if (spec.constant_C == 1) return spec.strict ? h - 1 : h;
    mpq_class ch = spec.constant_C * h;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), ch.get_num_mpz_t(), ch.get_den_mpz_t());
    long b = fl.get_si();
    if (spec.strict && mpq_class(fl) == ch) b -= 1;
    return std::max(0L, std::min(b, h));
}

// ---------------------------------------------------------------------------
// Shell drivers. Each enumerates one canonical representative per mirror
// pair {x, -x}; RecordEngine restores the lex-minimal form afterwards.
// ---------------------------------------------------------------------------

template <class Sink>
void drive_n1(const FixedPointAlpha& fp, long n_max, Sink& sink) {
    u128 p = 0;
    for (long h = 1; h <= n_max; ++h) {
        p += fp.units[0];
        sink.begin_shell(h, h * fp.slack[0]);
        long x[1] = {h};
        sink.consider(p, x, 1);
        sink.end_shell_sink();
    }
}

template <class Sink>
void drive_n2_cone(const FixedPointAlpha& fp, const ConeSpec& spec, long n_max, Sink& sink) {
    PositionLadder lad(fp.units[1], n_max);
    u128 p1 = 0;
    long sl = fp.slack[0] + fp.slack[1];
    for (long h = 1; h <= n_max; ++h) {
        p1 += fp.units[0];
        long tb = cone_tail_bound(spec, h);
        lad.extend_to(tb);
        u128 s = static_cast<u128>(h) * sl;
        sink.begin_shell(h, h * sl);
        long x[2] = {h, 0};
        query_ladder(lad, p1, s, [&](long k, u128) {
            x[1] = k;
            sink.consider(p1 + (k >= 0 ? fp.units[1] * static_cast<u128>(k)
                                       : u128(0) - fp.units[1] * static_cast<u128>(-k)),
                          x, 2);
        });
        sink.end_shell_sink();
    }
}

template <class Sink>
void drive_n2_full(const FixedPointAlpha& fp, long n_max, Sink& sink) {
    PositionLadder lad2(fp.units[1], n_max);  // x2 free, x1 = h
    PositionLadder lad1(fp.units[0], n_max);  // x1 free, x2 = h
    u128 pa = 0, pb = 0;
    long sl = fp.slack[0] + fp.slack[1];
    for (long h = 1; h <= n_max; ++h) {
        pa += fp.units[0];
        pb += fp.units[1];
        lad2.extend_to(h);
        lad1.extend_to(h - 1);
        u128 s = static_cast<u128>(h) * sl;
        sink.begin_shell(h, h * sl);
        long x[2];
        query_ladder(lad2, pa, s, [&](long k, u128) {
            x[0] = h;
            x[1] = k;
            sink.consider(pa + (k >= 0 ? fp.units[1] * static_cast<u128>(k)
                                       : u128(0) - fp.units[1] * static_cast<u128>(-k)),
                          x, 2);
        });
        query_ladder(lad1, pb, s, [&](long k, u128) {
            x[0] = k;
            x[1] = h;
            sink.consider(pb + (k >= 0 ? fp.units[0] * static_cast<u128>(k)
                                       : u128(0) - fp.units[0] * static_cast<u128>(-k)),
                          x, 2);
        });
        sink.end_shell_sink();
    }
}

template <class Sink>
void drive_n3_cone_l1(const FixedPointAlpha& fp, const ConeSpec& spec, long n_max,
                      Sink& sink) {
    PositionLadder lad(fp.units[2], n_max);
    u128 p1 = 0;
    long sl = fp.slack[0] + fp.slack[1] + fp.slack[2];
    for (long h = 1; h <= n_max; ++h) {
        p1 += fp.units[0];
        long tb = cone_tail_bound(spec, h);
        lad.extend_to(tb);
        u128 s = static_cast<u128>(h) * sl;
        sink.begin_shell(h, h * sl);
        long x[3];
        u128 pref = p1 - fp.units[1] * static_cast<u128>(tb);
        for (long x2 = -tb; x2 <= tb; ++x2, pref += fp.units[1]) {
            x[0] = h;
            x[1] = x2;
            query_ladder(lad, pref, s, [&](long k, u128) {
                x[2] = k;
                sink.consider(pref + (k >= 0 ? fp.units[2] * static_cast<u128>(k)
                                             : u128(0) - fp.units[2] * static_cast<u128>(-k)),
                              x, 3);
            });
        }
        sink.end_shell_sink();
    }
}

template <class Sink>
void drive_n3_cone_l2(const FixedPointAlpha& fp, const ConeSpec& spec, long n_max,
                      Sink& sink) {
    PositionLadder lad(fp.units[2], n_max);
    u128 p1 = 0, p2 = 0;
    long sl = fp.slack[0] + fp.slack[1] + fp.slack[2];
    for (long h = 1; h <= n_max; ++h) {
        p1 += fp.units[0];
        p2 += fp.units[1];
        long tb = cone_tail_bound(spec, h);
        lad.extend_to(tb);
        u128 s = static_cast<u128>(h) * sl;
        sink.begin_shell(h, h * sl);
        long x[3];
        // heads with |x1| = h (canonical x1 = +h), x2 anywhere in [-h, h]
        u128 pref = p1 - fp.units[1] * static_cast<u128>(h);
        for (long x2 = -h; x2 <= h; ++x2, pref += fp.units[1]) {
            x[0] = h;
            x[1] = x2;
            query_ladder(lad, pref, s, [&](long k, u128) {
                x[2] = k;
                sink.consider(pref + (k >= 0 ? fp.units[2] * static_cast<u128>(k)
                                             : u128(0) - fp.units[2] * static_cast<u128>(-k)),
                              x, 3);
            });
        }
        // heads with |x2| = h (canonical x2 = +h), |x1| <= h-1
        pref = p2 - fp.units[0] * static_cast<u128>(h - 1);
        for (long x1 = -(h - 1); x1 <= h - 1; ++x1, pref += fp.units[0]) {
            x[0] = x1;
            x[1] = h;
            query_ladder(lad, pref, s, [&](long k, u128) {
                x[2] = k;
                sink.consider(pref + (k >= 0 ? fp.units[2] * static_cast<u128>(k)
                                             : u128(0) - fp.units[2] * static_cast<u128>(-k)),
                              x, 3);
            });
        }
        sink.end_shell_sink();
    }
}

template <class Sink>
void drive_n3_full(const FixedPointAlpha& fp, long n_max, Sink& sink) {
    PositionLadder lad3(fp.units[2], n_max);  // cases with head on (x1, x2)
    PositionLadder lad2(fp.units[1], n_max);  // case x3 = h, x1 looped
    u128 p1 = 0, p2 = 0, p3 = 0;
    long sl = fp.slack[0] + fp.slack[1] + fp.slack[2];
    for (long h = 1; h <= n_max; ++h) {
        p1 += fp.units[0];
        p2 += fp.units[1];
        p3 += fp.units[2];
        lad3.extend_to(h);
        lad2.extend_to(h - 1);
        u128 s = static_cast<u128>(h) * sl;
        sink.begin_shell(h, h * sl);
        long x[3];
        u128 pref = p1 - fp.units[1] * static_cast<u128>(h);
        for (long x2 = -h; x2 <= h; ++x2, pref += fp.units[1]) {
            x[0] = h;
            x[1] = x2;
            query_ladder(lad3, pref, s, [&](long k, u128) {
                x[2] = k;
                sink.consider(pref + (k >= 0 ? fp.units[2] * static_cast<u128>(k)
                                             : u128(0) - fp.units[2] * static_cast<u128>(-k)),
                              x, 3);
            });
        }
        pref = p2 - fp.units[0] * static_cast<u128>(h - 1);
        for (long x1 = -(h - 1); x1 <= h - 1; ++x1, pref += fp.units[0]) {
            x[0] = x1;
            x[1] = h;
            query_ladder(lad3, pref, s, [&](long k, u128) {
                x[2] = k;
                sink.consider(pref + (k >= 0 ? fp.units[2] * static_cast<u128>(k)
                                             : u128(0) - fp.units[2] * static_cast<u128>(-k)),
                              x, 3);
            });
        }
        // interior heads, |x3| = h (canonical x3 = +h)
        pref = p3 - fp.units[0] * static_cast<u128>(h - 1);
        for (long x1 = -(h - 1); x1 <= h - 1; ++x1, pref += fp.units[0]) {
            x[0] = x1;
            x[2] = h;
            query_ladder(lad2, pref, s, [&](long k, u128) {
                x[1] = k;
                sink.consider(pref + (k >= 0 ? fp.units[1] * static_cast<u128>(k)
                                             : u128(0) - fp.units[1] * static_cast<u128>(-k)),
                              x, 3);
            });
        }
        sink.end_shell_sink();
    }
}

/// Generic exhaustive driver for shapes without a fast path (n >= 4, C > 1,
/// or non-default cones). Cost is the full shell, so callers keep N small.
template <class Sink>
void drive_generic(const RealVector& alpha, const FixedPointAlpha& fp,
                   const ConeSpec& spec, long n_max, Sink& sink) {
    int n = alpha.n();
    std::vector<long> x(n, 0);
    long sl = 0;
    for (int i = 0; i < n; ++i) sl += fp.slack[i];
    for (long h = 1; h <= n_max; ++h) {
        sink.begin_shell(h, h * sl);
        // Enumerate the canonical half: first nonzero coordinate positive.
        // Recursion over coordinates; at least one |x_i| must equal h.
        std::function<void(int, bool, bool)> rec = [&](int i, bool attained, bool leading) {
            if (i == n) {
                if (!attained) return;
                IntVector xv = to_intvec(x);
                if (!in_cone(xv, spec)) return;
                sink.consider(fp.position(x), x.data(), n);
                return;
            }
            long lo = leading ? 0 : -h;
            for (long v = lo; v <= h; ++v) {
                x[i] = v;
                rec(i + 1, attained || v == h || v == -h, leading && v == 0);
            }
            x[i] = 0;
        };
        rec(0, false, true);
        sink.end_shell_sink();
    }
}

/// Adapter giving RecordEngine the sink interface plus the output list.
struct RecordSink {
    RecordEngine eng;
    std::vector<ConeRecord>* out;
    RecordSink(const RealVector& alpha, const EscalationPolicy& pol, ScanStats* stats,
               std::vector<ConeRecord>* o)
        : eng(alpha, pol, stats), out(o) {}
    void begin_shell(long h, long s) { eng.begin_shell(h, s); }
    inline void consider(u128 p, const long* x, int n) { eng.consider(p, x, n); }
    void end_shell_sink() { eng.end_shell(*out); }
};

}  // namespace

std::vector<ConeRecord> record_scan(const RealVector& alpha, const ConeSpec& spec,
                                    long n_max, ScanStats* stats,
                                    const EscalationPolicy& pol) {
    int n = alpha.n();
    if (spec.ell < 1 || spec.ell > n) throw DomainError("record_scan: ell out of range");
    if (spec.constant_C <= 0) throw DomainError("record_scan: C must be positive");
    std::vector<ConeRecord> out;
    if (n_max <= 0) return out;

    FixedPointAlpha fp = FixedPointAlpha::build(alpha);
    RecordSink sink(alpha, pol, stats, &out);

    bool vacuous = spec.ell == n;
    bool fast_cone = spec.constant_C <= 1;
    if (n == 1) {
        drive_n1(fp, n_max, sink);
    } else if (n == 2 && vacuous) {
        drive_n2_full(fp, n_max, sink);
    } else if (n == 2 && spec.ell == 1 && fast_cone) {
        drive_n2_cone(fp, spec, n_max, sink);
    } else if (n == 3 && vacuous) {
        drive_n3_full(fp, n_max, sink);
    } else if (n == 3 && spec.ell == 1 && fast_cone) {
        drive_n3_cone_l1(fp, spec, n_max, sink);
    } else if (n == 3 && spec.ell == 2 && fast_cone) {
        drive_n3_cone_l2(fp, spec, n_max, sink);
    } else {
        drive_generic(alpha, fp, spec, n_max, sink);
    }
    return out;
}

std::vector<ConeRecord> axis_record_scan(const RealVector& alpha, int axis, long n_max,
                                         ScanStats* stats, const EscalationPolicy& pol) {
    if (axis < 1 || axis > alpha.n()) throw DomainError("axis out of range");
    // Scan the 1-dimensional sub-problem, then pad the witnesses back.
    RealVector sub({alpha.coords[axis - 1]});
    std::vector<ConeRecord> recs = record_scan(sub, ConeSpec::cone(1), n_max, stats, pol);
    // Certified errors must refer to the full vector; the padded coordinates
    // contribute nothing, so only the witness shape changes.
    for (auto& r : recs) {
        std::vector<mpz_class> e(alpha.n(), 0);
        e[axis - 1] = r.x.entries[0];
        r.x = IntVector(std::move(e));
    }
    return recs;
}

BestError head_best_error(const RealVector& alpha, int ell, long N, ScanStats* stats,
                          const EscalationPolicy& pol) {
    if (ell < 1 || ell > alpha.n()) throw DomainError("head_best_error: ell out of range");
    std::vector<PrecisionReal> c(alpha.coords.begin(), alpha.coords.begin() + ell);
    RealVector sub(std::move(c));
    std::vector<ConeRecord> recs =
        record_scan(sub, ConeSpec::cone(ell), N, stats, pol);
    BestError out;
    if (recs.empty()) return out;
    const ConeRecord& last = recs.back();
    out.found = true;
    out.value.kind = FormValue::Kind::positive;
    out.value.dist = last.err;
    out.value.exact_dist = last.exact_err;
    std::vector<mpz_class> e(alpha.n(), 0);
    for (int i = 0; i < ell; ++i) e[i] = last.x.entries[i];
    out.witness = IntVector(std::move(e));
    return out;
}

std::vector<ConeRecord> nu_tilde_scan(const RealVector& alpha, int ell, long n_max,
                                      ScanStats* stats, const EscalationPolicy& pol) {
    int n = alpha.n();
    if (ell < 1 || ell >= n) throw DomainError("nu_tilde needs 1 <= ell < n");
    // With a single tail coordinate the full form is used and the definition
    // collapses to the cone records.
    if (n - ell == 1) return record_scan(alpha, ConeSpec::cone(ell), n_max, stats, pol);

    std::vector<ConeRecord> out;
    if (n_max <= 0) return out;
    FixedPointAlpha fp = FixedPointAlpha::build(alpha);
    RecordSink sink(alpha, pol, stats, &out);

    if (ell == 1) {
        // heads x1 = h; one tail coordinate active at a time.
        std::vector<PositionLadder> lads;
        lads.reserve(n - 1);
        for (int i = 1; i < n; ++i) lads.emplace_back(fp.units[i], n_max);
        u128 p1 = 0;
        long sl = 0;
        for (int i = 0; i < n; ++i) sl += fp.slack[i];
        std::vector<long> x(n, 0);
        for (long h = 1; h <= n_max; ++h) {
            p1 += fp.units[0];
            for (auto& l : lads) l.extend_to(h - 1);
            u128 s = static_cast<u128>(h) * sl;
            sink.begin_shell(h, h * sl);
            for (int i = 1; i < n; ++i) {
                std::fill(x.begin(), x.end(), 0);
                x[0] = h;
                query_ladder(lads[i - 1], p1, s, [&](long k, u128) {
                    x[i] = k;
                    sink.consider(p1 + (k >= 0 ? fp.units[i] * static_cast<u128>(k)
                                               : u128(0) - fp.units[i] * static_cast<u128>(-k)),
                                  x.data(), n);
                });
            }
            sink.end_shell_sink();
        }
        return out;
    }

    // Generic (small ell < n-1 with ell >= 2): enumerate heads exhaustively,
    // query each tail ladder. Heads are (x_1..x_ell) with max = h, canonical
    // first-nonzero-positive halves handled by mirror reduction downstream.
    std::vector<PositionLadder> lads;
    for (int i = ell; i < n; ++i) lads.emplace_back(fp.units[i], n_max);
    long sl = 0;
    for (int i = 0; i < n; ++i) sl += fp.slack[i];
    std::vector<long> head(ell, 0), x(n, 0);
    for (long h = 1; h <= n_max; ++h) {
        for (auto& l : lads) l.extend_to(h - 1);
        u128 s = static_cast<u128>(h) * sl;
        sink.begin_shell(h, h * sl);
        std::function<void(int, bool, bool, u128)> rec = [&](int i, bool attained,
                                                             bool leading, u128 base) {
            if (i == ell) {
                if (!attained) return;
                for (int t = 0; t < n - ell; ++t) {
                    std::fill(x.begin() + ell, x.end(), 0);
                    std::copy(head.begin(), head.end(), x.begin());
                    query_ladder(lads[t], base, s, [&](long k, u128) {
                        x[ell + t] = k;
                        sink.consider(base + (k >= 0 ? fp.units[ell + t] * static_cast<u128>(k)
                                                     : u128(0) - fp.units[ell + t] *
                                                           static_cast<u128>(-k)),
                                      x.data(), n);
                    });
                }
                return;
            }
            long lo = leading ? 0 : -h;
            for (long v = lo; v <= h; ++v) {
                head[i] = v;
                u128 nb = base + (v >= 0 ? fp.units[i] * static_cast<u128>(v)
                                         : u128(0) - fp.units[i] * static_cast<u128>(-v));
                rec(i + 1, attained || v == h || v == -h, leading && v == 0, nb);
            }
            head[i] = 0;
        };
        rec(0, false, true, 0);
        sink.end_shell_sink();
    }
    return out;
}

namespace {

/// Minimum-positive-per-shell sink (exact when all slacks are zero).
struct MinSink {
    const RealVector& alpha;
    const EscalationPolicy pol;
    std::vector<ShellMin>* out;
    long h = 0;
    u128 s = 0;
    ShellMin cur;

    MinSink(const RealVector& a, std::vector<ShellMin>* o) : alpha(a), pol{}, out(o) {}

    void begin_shell(long hh, long slack) {
        h = hh;
        s = static_cast<u128>(slack);
        cur = ShellMin{};
        cur.slack = slack;
    }
    inline void consider(u128 pos, const long* x, int n) {
        u128 d = FixedPointAlpha::wrap_dist(pos);
        if (d <= s) {
            // potential exact zero: classify now (rare)
            IntVector xv = to_intvec(std::vector<long>(x, x + n));
            FormValue fv = linear_form_error(alpha, xv, pol);
            if (fv.is_zero()) {
                cur.had_zero = true;
                return;
            }
            // positive but tiny: keep with its unit distance
        }
        if (!cur.any || d < cur.d) {
            cur.any = true;
            cur.d = d;
        }
    }
    void end_shell_sink() {
        out->push_back(cur);
    }
};

}  // namespace

std::vector<ShellMin> shell_min_scan(const RealVector& alpha, const ConeSpec& spec,
                                     long n_max) {
    int n = alpha.n();
    if (spec.ell < 1 || spec.ell > n) throw DomainError("shell_min_scan: ell out of range");
    std::vector<ShellMin> out;
    if (n_max <= 0) return out;
    out.reserve(n_max);
    FixedPointAlpha fp = FixedPointAlpha::build(alpha);
    MinSink sink(alpha, &out);
    bool vacuous = spec.ell == n;
    bool fast_cone = spec.constant_C <= 1;
    if (n == 1) {
        drive_n1(fp, n_max, sink);
    } else if (n == 2 && vacuous) {
        drive_n2_full(fp, n_max, sink);
    } else if (n == 2 && spec.ell == 1 && fast_cone) {
        drive_n2_cone(fp, spec, n_max, sink);
    } else if (n == 3 && vacuous) {
        drive_n3_full(fp, n_max, sink);
    } else if (n == 3 && spec.ell == 1 && fast_cone) {
        drive_n3_cone_l1(fp, spec, n_max, sink);
    } else if (n == 3 && spec.ell == 2 && fast_cone) {
        drive_n3_cone_l2(fp, spec, n_max, sink);
    } else {
        drive_generic(alpha, fp, spec, n_max, sink);
    }
    return out;
}

}  // namespace conelab
