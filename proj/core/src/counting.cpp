#include "conelab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <functional>

#include "conelab/errors.hpp"

namespace conelab {

Sieve::Sieve(long limit) : limit_(std::max(limit, 2L)), spf_(limit_ + 1, 0) {
    for (long i = 2; i <= limit_; ++i) {
        if (spf_[i] == 0) {
            for (long j = i; j <= limit_; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<int32_t>(i);
        }
    }
}

std::vector<long> Sieve::factor(long m) const {
    if (m < 1) throw DomainError("factor: m must be >= 1");
    std::vector<long> ps;
    if (m <= limit_) {
        while (m > 1) {
            long p = spf_[m];
            ps.push_back(p);
            while (m % p == 0) m /= p;
        }
        return ps;
    }
    // trial division with the sieve as a prime source
    for (long p = 2; static_cast<long long>(p) * p <= m; ++p) {
        if (p <= limit_ && spf_[p] != p) continue;  // composite, skip
        if (m % p == 0) {
            ps.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

int Sieve::moebius(long m) const {
    if (m < 1) throw DomainError("moebius: m must be >= 1");
    if (m == 1) return 1;
    int k = 0;
    long rest = m;
    if (m <= limit_) {
        while (rest > 1) {
            long p = spf_[rest];
            rest /= p;
            if (rest % p == 0) return 0;
            ++k;
        }
    } else {
        for (long p = 2; static_cast<long long>(p) * p <= rest; ++p) {
            if (p <= limit_ && spf_[p] != p) continue;
            if (rest % p == 0) {
                rest /= p;
                if (rest % p == 0) return 0;
                ++k;
            }
        }
        if (rest > 1) ++k;
    }
    return k % 2 == 0 ? 1 : -1;
}

long Sieve::totient(long m) const {
    if (m < 1) throw DomainError("totient: m must be >= 1");
    long result = m;
    for (long p : factor(m)) result -= result / p;
    return result;
}

bool Sieve::is_prime(long m) const {
    if (m < 2) return false;
    if (m <= limit_) return spf_[m] == m;
    auto f = factor(m);
    return f.size() == 1 && f[0] == m;
}

std::vector<long> Sieve::primes_up_to(long N) const {
    if (N < 2) return {};
    if (N > limit_) throw DomainError("primes_up_to beyond sieve limit");
    std::vector<long> out;
    for (long i = 2; i <= N; ++i)
        if (spf_[i] == i) out.push_back(i);
    return out;
}

long Sieve::prime_count(long x) const {
    if (x < 2) return 0;
    if (x > limit_) throw DomainError("prime_count beyond sieve limit");
    long c = 0;
    for (long i = 2; i <= x; ++i)
        if (spf_[i] == i) ++c;
    return c;
}

namespace {
std::mutex g_sieve_mu;
std::shared_ptr<const Sieve> g_sieve;

void maybe_persist_primes(const Sieve& sv) {
    const char* dir = std::getenv("CONELAB_SIEVE_CACHE");
    if (!dir || !*dir) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    std::string path = std::string(dir) + "/primes_" + std::to_string(sv.limit()) + ".txt";
    if (std::filesystem::exists(path)) return;
    std::ofstream out(path);
    for (long p : sv.primes_up_to(sv.limit())) out << p << '\n';
}
}  // namespace

std::shared_ptr<const Sieve> shared_sieve(long at_least) {
    std::lock_guard<std::mutex> lock(g_sieve_mu);
    if (!g_sieve || g_sieve->limit() < at_least) {
        long lim = std::max(at_least, 100'000L);
        g_sieve = std::make_shared<Sieve>(lim);
        maybe_persist_primes(*g_sieve);
    }
    return g_sieve;
}

int moebius(long m) { return shared_sieve(std::min(m, 1'000'000L))->moebius(m); }
long totient(long m) { return shared_sieve(std::min(m, 1'000'000L))->totient(m); }

unsigned long long totient_partial_sum(long N) {
    if (N < 1) throw DomainError("totient_partial_sum: N >= 1");
    auto sv = shared_sieve(N);
    unsigned long long s = 0;
    for (long r = 1; r <= N; ++r) s += static_cast<unsigned long long>(sv->totient(r));
    return s;
}

std::vector<long> primes_up_to(long N) { return shared_sieve(N)->primes_up_to(N); }
long prime_count(long x) { return shared_sieve(x)->prime_count(x); }

namespace {

// #{(a, b) in [0, A] x [0, B] ...} style inner loops, n = 2 and n = 3
// unrolled; the generic recursion handles larger n for completeness.

inline bool cone2(long head, long tail) { return 2 * tail <= head; }

template <bool NeedGcd>
long long shell_count_n2(int ell, long N) {
    // x = (x1, x2), H = N, x2 >= 1, factor-2 cone with head split at ell = 1.
    (void)ell;  // ell == 1 is the only option for n == 2
    long long cnt = 0;
    // Case x1 = N: x2 in [1, N] with 2 x2 <= N.
    for (long x2 = 1; 2 * x2 <= N; ++x2) {
        if (NeedGcd && std::gcd(N, x2) != 1) continue;
        ++cnt;
    }
    // Case x2 = N, x1 < N: cone needs 2N <= x1 < N: empty.
    return cnt;
}

template <bool NeedGcd>
long long shell_count_n3(int ell, long N) {
    long long cnt = 0;
    if (ell == 1) {
        // head = {x1}, tail = {x2, x3}, x3 >= 1, 2 max(x2,x3) <= x1.
        // H(x) = N forces x1 = N (tail <= N/2 < N).
        for (long x2 = 0; 2 * x2 <= N; ++x2)
            for (long x3 = 1; 2 * x3 <= N; ++x3) {
                if (NeedGcd && std::gcd(std::gcd(N, x2), x3) != 1) continue;
                ++cnt;
            }
        return cnt;
    }
    // ell == 2: head = {x1, x2}, tail = {x3}, x3 >= 1, 2 x3 <= max(x1, x2).
    // H = N is attained in the head (x3 <= N/2).
    // Subcase x1 = N:
    for (long x2 = 0; x2 <= N; ++x2)
        for (long x3 = 1; 2 * x3 <= std::max(N, x2); ++x3) {
            if (NeedGcd && std::gcd(std::gcd(N, x2), x3) != 1) continue;
            ++cnt;
        }
    // Subcase x2 = N, x1 < N:
    for (long x1 = 0; x1 < N; ++x1)
        for (long x3 = 1; 2 * x3 <= N; ++x3) {
            if (NeedGcd && std::gcd(std::gcd(x1, N), x3) != 1) continue;
            ++cnt;
        }
    return cnt;
}

template <bool NeedGcd>
long long shell_count_generic(int n, int ell, long N) {
    std::vector<long> x(n, 0);
    long long cnt = 0;
    std::function<void(int, bool)> rec = [&](int i, bool attained) {
        if (i == n) {
            if (!attained || x[n - 1] < 1) return;
            long head = 0, tail = 0;
            for (int k = 0; k < ell; ++k) head = std::max(head, x[k]);
            for (int k = ell; k < n; ++k) tail = std::max(tail, x[k]);
            if (2 * tail > head) return;
            if (NeedGcd) {
                long g = 0;
                for (long v : x) g = std::gcd(g, v);
                if (g != 1) return;
            }
            ++cnt;
            return;
        }
        for (long v = 0; v <= N; ++v) {
            x[i] = v;
            rec(i + 1, attained || v == N);
        }
    };
    rec(0, false);
    return cnt;
}

template <bool NeedGcd>
long long shell_count(int n, int ell, long N) {
    if (n == 2) return shell_count_n2<NeedGcd>(ell, N);
    if (n == 3) return shell_count_n3<NeedGcd>(ell, N);
    return shell_count_generic<NeedGcd>(n, ell, N);
}

std::vector<long> divisors_of(long N) {
    std::vector<long> ds;
    for (long d = 1; static_cast<long long>(d) * d <= N; ++d) {
        if (N % d) continue;
        ds.push_back(d);
        if (d != N / d) ds.push_back(N / d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace

long long count_PN_exact(int n, int ell, long N) {
    if (!(1 <= ell && ell < n)) throw DomainError("count_PN: need 1 <= ell < n");
    if (N < 1) throw DomainError("count_PN: N >= 1");
    return shell_count<true>(n, ell, N);
}

long long count_cone_box(int n, int ell, long M) {
    if (!(1 <= ell && ell < n)) throw DomainError("count_cone_box: need 1 <= ell < n");
    if (M < 1) return 0;
    return shell_count<false>(n, ell, M);
}

long long count_PN_moebius(int n, int ell, long N) {
    if (!(1 <= ell && ell < n)) throw DomainError("count_PN: need 1 <= ell < n");
    if (N < 1) throw DomainError("count_PN: N >= 1");
    auto sv = shared_sieve(N);
    long long total = 0;
    for (long d : divisors_of(N)) {
        int mu = sv->moebius(d);
        if (mu == 0) continue;
        total += mu * count_cone_box(n, ell, N / d);
    }
    return total;
}

mpq_class moebius_sum_bound(int n, long N) {
    if (n < 3) throw DomainError("moebius_sum_bound needs n >= 3");
    if (N < 1) throw DomainError("moebius_sum_bound: N >= 1");
    // Multiplicative: product over primes p | N of (1 - p^(1-n)).
    mpq_class q = 1;
    for (long p : shared_sieve(N)->factor(N)) {
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(n - 1));
        q *= mpq_class(pw - 1, pw);
    }
    q.canonicalize();

    // Corridor (6/pi^2, 1]: upper bound exactly, lower bound through a
    // certified pi enclosure; q * pi^2 > 6 must hold.
    if (q > 1) throw CorridorViolation("moebius_sum_bound above 1");
    mpfr_t pi_lo, acc;
    mpfr_init2(pi_lo, 256);
    mpfr_init2(acc, 256);
    mpfr_const_pi(pi_lo, MPFR_RNDD);
    mpfr_sqr(acc, pi_lo, MPFR_RNDD);
    mpfr_mul_q(acc, acc, q.get_mpq_t(), MPFR_RNDD);
    bool ok = mpfr_cmp_ui(acc, 6) > 0;
    mpfr_clear(pi_lo);
    mpfr_clear(acc);
    if (!ok)
        throw CorridorViolation("moebius_sum_bound at or below 6/pi^2 for N = " +
                                std::to_string(N));
    return q;
}

std::vector<double> dyadic_divergence_probe(const ApproxFunction& psi, int K) {
    if (K < 0) throw DomainError("dyadic_divergence_probe: K >= 0");
    std::vector<double> partial;
    partial.reserve(K);
    if (K > 22) throw DomainError("dyadic_divergence_probe: K too large (<= 22)");
    if (K == 0) return partial;
    auto sv = shared_sieve(1L << (K + 1));
    double acc = 0;
    for (int k = 0; k < K; ++k) {
        long lo = 1L << k, hi = 1L << (k + 1);
        double block = 0;
        for (long r = lo; r < hi; ++r) block += static_cast<double>(sv->totient(r));
        acc += psi.eval_double(hi) * block;
        partial.push_back(acc);
    }
    return partial;
}

CountReport make_count_report(int n, int ell, long N_lo, long N_hi) {
    if (!(1 <= ell && ell < n)) throw ValidationError("count: need 1 <= ell < n");
    if (!(1 <= N_lo && N_lo <= N_hi)) throw ValidationError("count: bad N range");
    CountReport rep;
    rep.n = n;
    rep.ell = ell;
    rep.N_lo = N_lo;
    rep.N_hi = N_hi;
    bool have_ratio = false;
    auto sv = shared_sieve(N_hi);
    unsigned long long tsum = 0;
    for (long r = 1; r < N_lo; ++r) tsum += static_cast<unsigned long long>(sv->totient(r));
    for (long N = N_lo; N <= N_hi; ++N) {
        tsum += static_cast<unsigned long long>(sv->totient(N));
        rep.Ns.push_back(N);
        long long e = count_PN_exact(n, ell, N);
        long long m = count_PN_moebius(n, ell, N);
        rep.pn_exact.push_back(e);
        rep.pn_moebius.push_back(m);
        if (e != m)
            throw InvariantViolation("count_PN exact/moebius mismatch at N = " +
                                     std::to_string(N));
        if (n >= 3) {
            try {
                rep.moebius_sums.push_back(moebius_sum_bound(n, N));
            } catch (const CorridorViolation&) {
                rep.corridor_violations.push_back(N);
                rep.moebius_sums.push_back(0);
            }
        }
        rep.totient_sums.push_back(tsum);
        double ratio = static_cast<double>(e) / std::pow(static_cast<double>(N), n - 1);
        if (!have_ratio || ratio < rep.ratio_min) rep.ratio_min = ratio;
        if (!have_ratio || ratio > rep.ratio_max) rep.ratio_max = ratio;
        have_ratio = true;
    }
    return rep;
}

}  // namespace conelab
