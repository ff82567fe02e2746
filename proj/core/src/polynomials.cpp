#include "conelab/polynomials.hpp"

#include <algorithm>

#include "conelab/errors.hpp"

namespace conelab {

int zp_degree(const ZPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void zp_normalize(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class zp_height(const ZPoly& p) {
    mpz_class h = 0;
    for (const auto& c : p) {
        mpz_class a = ::abs(c);
        if (a > h) h = a;
    }
    return h;
}

mpz_class zp_content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_class a = ::abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    return g;
}

ZPoly zp_primitive_part(const ZPoly& p) {
    mpz_class c = zp_content(p);
    if (c == 0 || c == 1) return p;
    ZPoly out = p;
    for (auto& v : out) v /= c;
    return out;
}

ZPoly zp_neg(const ZPoly& p) {
    ZPoly out = p;
    for (auto& v : out) v = -v;
    return out;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    zp_normalize(out);
    return out;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    zp_normalize(out);
    return out;
}

ZPoly zp_pow(const ZPoly& a, unsigned long e) {
    ZPoly acc{mpz_class(1)};
    ZPoly base = a;
    while (e > 0) {
        if (e & 1) acc = zp_mul(acc, base);
        base = zp_mul(base, base);
        e >>= 1;
    }
    return acc;
}

ZPoly zp_derivative(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly out(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<long>(i);
    zp_normalize(out);
    return out;
}

ZPoly zp_compose_linear(const ZPoly& p, const mpz_class& a, const mpz_class& b) {
    // Horner on (aX + b).
    ZPoly lin{b, a};
    ZPoly acc;
    for (int i = zp_degree(p); i >= 0; --i) {
        acc = zp_mul(acc, lin);
        if (acc.empty()) acc = ZPoly{mpz_class(0)};
        if (acc.empty()) acc.push_back(0);
        acc[0] += p[i];
        zp_normalize(acc);
    }
    return acc;
}

bool zp_equal_up_to_sign(const ZPoly& a, const ZPoly& b) {
    ZPoly x = a, y = b;
    zp_normalize(x);
    zp_normalize(y);
    if (x == y) return true;
    return x == zp_neg(y);
}

bool zp_proportional(const ZPoly& a, const ZPoly& b) {
    ZPoly x = a, y = b;
    zp_normalize(x);
    zp_normalize(y);
    if (x.empty() || y.empty()) return x.empty() && y.empty();
    if (x.size() != y.size()) return false;
    // cross-multiplication equality a_i * b_j == a_j * b_i
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i] * y.back() != y[i] * x.back()) return false;
    return true;
}

mpz_class zp_eval_z(const ZPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

mpq_class zp_eval_q(const ZPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        acc = acc * x + mpq_class(p[i]);
    return acc;
}

int zp_sign_at(const ZPoly& p, const mpq_class& x) { return sgn(zp_eval_q(p, x)); }

Interval zp_eval_interval(const ZPoly& p, const Interval& x) {
    Interval acc = Interval::from_long(0, x.precision());
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        acc = acc.mul(x).add(Interval::from_mpz(p[i], x.precision()));
    return acc;
}

namespace {

// Primitive pseudo-remainder sequence; enough for the small degrees here.
ZPoly prem_neg(const ZPoly& a, const ZPoly& b) {
    // -prem(a, b), made primitive. Each elimination multiplies by |lc| only,
    // so the sign pattern needed by the Sturm chain survives.
    ZPoly r = a;
    ZPoly d = b;
    int db = zp_degree(d);
    mpz_class lc = d[db];
    mpz_class alc = ::abs(lc);
    int slc = sgn(lc);
    while (zp_degree(r) >= db && zp_degree(r) >= 0) {
        int dr = zp_degree(r);
        mpz_class coef = r[dr] * slc;
        // r = |lc| * r - sgn(lc) * coef * X^(dr-db) * d
        ZPoly shifted(dr - db, 0);
        shifted.insert(shifted.end(), d.begin(), d.end());
        for (auto& v : r) v *= alc;
        for (size_t i = 0; i < shifted.size(); ++i) r[i] -= coef * shifted[i];
        zp_normalize(r);
        if (static_cast<int>(r.size()) > dr) r.resize(dr);  // defensive truncate
        zp_normalize(r);
    }
    ZPoly out = zp_neg(r);
    out = zp_primitive_part(out);
    return out;
}

}  // namespace

SturmChain SturmChain::build(const ZPoly& p) {
    SturmChain chain;
    ZPoly p0 = zp_primitive_part(p);
    zp_normalize(p0);
    if (p0.empty()) throw DomainError("Sturm chain of the zero polynomial");
    chain.seq.push_back(p0);
    ZPoly p1 = zp_derivative(p0);
    if (!p1.empty()) {
        chain.seq.push_back(zp_primitive_part(p1));
        while (true) {
            const ZPoly& a = chain.seq[chain.seq.size() - 2];
            const ZPoly& b = chain.seq.back();
            if (zp_degree(b) <= 0) break;
            ZPoly r = prem_neg(a, b);
            if (r.empty()) break;
            chain.seq.push_back(std::move(r));
        }
    }
    return chain;
}

long SturmChain::variations_at(const mpq_class& x) const {
    int prev = 0;
    long v = 0;
    for (const auto& p : seq) {
        int s = zp_sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

long SturmChain::count_in(const mpq_class& a, const mpq_class& b) const {
    if (a >= b) return 0;
    return variations_at(a) - variations_at(b);
}

bool zp_squarefree(const ZPoly& p) {
    ZPoly d = zp_derivative(p);
    if (d.empty()) return zp_degree(p) <= 0;
    // gcd via the same pseudo-remainder loop.
    ZPoly a = zp_primitive_part(p), b = zp_primitive_part(d);
    while (!b.empty() && zp_degree(b) >= 0) {
        ZPoly r = prem_neg(a, b);
        a = b;
        b = r;
        if (zp_degree(b) < 0) break;
    }
    return zp_degree(a) <= 0;
}

mpq_class zp_root_bound(const ZPoly& p) {
    int d = zp_degree(p);
    if (d < 1) throw DomainError("root bound of a constant");
    mpz_class lead = ::abs(p[d]);
    mpz_class m = 0;
    for (int i = 0; i < d; ++i) {
        mpz_class a = ::abs(p[i]);
        if (a > m) m = a;
    }
    mpq_class b = 1 + mpq_class(m, lead);
    return b;
}

std::vector<std::pair<mpq_class, mpq_class>> isolate_all_roots(const ZPoly& p) {
    SturmChain chain = SturmChain::build(p);
    mpq_class B = zp_root_bound(p);
    std::vector<std::pair<mpq_class, mpq_class>> done;
    std::vector<std::pair<mpq_class, mpq_class>> todo{{-B, B}};
    while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        long c = chain.count_in(a, b);
        if (c == 0) continue;
        if (c == 1) {
            done.emplace_back(a, b);
            continue;
        }
        mpq_class m = (a + b) / 2;
        // Nudge off a root: (a, m] and (m, b] always partition (a, b].
        todo.emplace_back(a, m);
        todo.emplace_back(m, b);
    }
    std::sort(done.begin(), done.end());
    return done;
}

std::pair<mpq_class, mpq_class> isolate_root_near(const ZPoly& p, const mpq_class& target,
                                                  const mpq_class& radius) {
    if (radius <= 0) throw DomainError("isolate_root_near: radius must be positive");
    if (!zp_squarefree(p))
        throw MultipleRootsUnresolved("polynomial has repeated roots");
    auto roots = isolate_all_roots(p);
    if (roots.empty()) throw NoRootInWindow("no real root");

    SturmChain chain = SturmChain::build(p);
    // Pick the interval nearest to the target (distance 0 if inside).
    auto dist_to = [&](const std::pair<mpq_class, mpq_class>& iv) -> mpq_class {
        if (target < iv.first) return iv.first - target;
        if (target > iv.second) return target - iv.second;
        return 0;
    };
    size_t best = 0;
    mpq_class bestd = dist_to(roots[0]);
    for (size_t i = 1; i < roots.size(); ++i) {
        mpq_class d = dist_to(roots[i]);
        if (d < bestd) {
            best = i;
            bestd = d;
        }
    }
    auto [lo, hi] = roots[best];

    // Bisect down to the requested width. Intervals are half-open (lo, hi]
    // under the Sturm count, so track the count rather than signs (robust
    // even when an endpoint sits on a root of a chain element).
    while (hi - lo > radius) {
        mpq_class m = (lo + hi) / 2;
        if (chain.count_in(lo, m) == 1)
            hi = m;
        else
            lo = m;
    }
    return {lo, hi};
}

bool is_eisenstein(const ZPoly& p, const mpz_class& prime) {
    int d = zp_degree(p);
    if (d < 1) return false;
    if (p[d] % prime == 0) return false;
    for (int i = 0; i < d; ++i)
        if (p[i] % prime != 0) return false;
    return p[0] % (prime * prime) != 0;
}

mpz_class family_stretch(int n, int ell, const mpz_class& g) {
    // [g^((n-ell)/ell)] = floor((g^(n-ell))^(1/ell)), exact integer root.
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(n - ell));
    mpz_class r;
    mpz_root(r.get_mpz_t(), pw.get_mpz_t(), static_cast<unsigned long>(ell));
    return r;
}

ZPoly poly_family(int n, int ell, const mpz_class& g) {
    if (n < 2 || ell < 1 || ell > n) throw DomainError("poly_family: bad (n, ell)");
    if (g < 2) throw DomainError("poly_family: g >= 2");
    ZPoly xn(n + 1, 0);
    xn[n] = 1;
    if (ell == n) {
        mpz_class gn;
        mpz_pow_ui(gn.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(n));
        xn[0] = -2 * gn;
        return xn;
    }
    mpz_class a = family_stretch(n, ell, g);
    ZPoly lin{mpz_class(-1), a};  // aX - 1
    ZPoly q = zp_pow(lin, static_cast<unsigned long>(ell));
    for (auto& c : q) c *= 2;
    // X^n - 2 (aX - 1)^ell
    ZPoly out = zp_add(xn, zp_neg(q));
    return out;
}

}  // namespace conelab
