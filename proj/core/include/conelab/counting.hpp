#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "conelab/metrical_psi.hpp"

namespace conelab {

/// Smallest-prime-factor sieve; immutable once built, shareable.
class Sieve {
public:
    explicit Sieve(long limit);
    long limit() const { return limit_; }

    int moebius(long m) const;
    long totient(long m) const;
    bool is_prime(long m) const;
    std::vector<long> primes_up_to(long N) const;
    long prime_count(long x) const;
    /// Distinct prime factors.
    std::vector<long> factor(long m) const;

private:
    long limit_;
    std::vector<int32_t> spf_;
};

/// Process-wide sieve, grown on demand (kept modest; design point 1e6).
/// Honors CONELAB_SIEVE_CACHE as a directory for persisting the prime list.
/// Returned as shared ownership so a later growth cannot invalidate callers.
std::shared_ptr<const Sieve> shared_sieve(long at_least);

int moebius(long m);
long totient(long m);
/// Sum of totient(r) for r <= N.
unsigned long long totient_partial_sum(long N);
std::vector<long> primes_up_to(long N);
long prime_count(long x);

/// Exact count of x in Z_{>=0}^n with H(x) = N, x_n >= 1,
/// gcd(x_1..x_n) = 1 and 2 max tail <= max head, by enumeration.
long long count_PN_exact(int n, int ell, long N);

/// Same count through Moebius inversion over gcd classes:
/// sum over d | N of mu(d) * #{H(x) = N/d, x_n >= 1, factor-2 cone}.
long long count_PN_moebius(int n, int ell, long N);

/// Box count without the gcd condition (the inner sum above).
long long count_cone_box(int n, int ell, long M);

/// Exact rational sum over d | N of mu(d)/d^(n-1); certifies membership in
/// (6/pi^2, 1]. A violation is a bug, not an input error.
mpq_class moebius_sum_bound(int n, long N);

/// Partial sums over dyadic blocks: S_K = sum_{k<=K} psi(2^{k+1}) *
/// sum_{2^k <= r < 2^{k+1}} totient(r). Growth of S_K witnesses the
/// divergence or convergence of the underlying series numerically.
std::vector<double> dyadic_divergence_probe(const ApproxFunction& psi, int K);

/// Everything the `count` subcommand reports.
struct CountReport {
    int n = 0;
    int ell = 0;
    long N_lo = 1, N_hi = 1;
    std::vector<long> Ns;
    std::vector<long long> pn_exact;
    std::vector<long long> pn_moebius;
    std::vector<mpq_class> moebius_sums;     // empty for n == 2
    std::vector<unsigned long long> totient_sums;
    std::vector<long> corridor_violations;   // must stay empty
    double ratio_min = 0, ratio_max = 0;     // empirical #P_N / N^(n-1) corridor
};
CountReport make_count_report(int n, int ell, long N_lo, long N_hi);

}  // namespace conelab
