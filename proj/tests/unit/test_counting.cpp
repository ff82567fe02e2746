#include <doctest.h>

#include <cmath>
#include <numeric>

#include "conelab/counting.hpp"
#include "conelab/errors.hpp"

using namespace conelab;

TEST_CASE("moebius, totient, primes: classical values") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(30) == -1);
    CHECK(totient(12) == 4);
    CHECK(totient_partial_sum(10) == 32);
    CHECK(primes_up_to(10) == std::vector<long>{2, 3, 5, 7});
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(2) == 1);
}

TEST_CASE("moebius is multiplicative on coprime arguments") {
    auto sv = shared_sieve(10'000);
    for (long a = 1; a <= 60; ++a)
        for (long b = 1; b <= 60; ++b) {
            if (std::gcd(a, b) != 1) continue;
            CHECK(sv->moebius(a * b) == sv->moebius(a) * sv->moebius(b));
        }
}

TEST_CASE("sum over divisors of moebius is the unit indicator") {
    auto sv = shared_sieve(10'000);
    for (long m = 1; m <= 10'000; ++m) {
        long s = 0;
        for (long d = 1; d * d <= m; ++d) {
            if (m % d) continue;
            s += sv->moebius(d);
            if (d != m / d) s += sv->moebius(m / d);
        }
        CHECK(s == (m == 1 ? 1 : 0));
    }
}

TEST_CASE("primitive cone counts: pinned examples") {
    CHECK(count_PN_exact(2, 1, 10) == 2);  // (10,1), (10,3)
    CHECK(count_PN_moebius(2, 1, 10) == 2);
    CHECK(count_PN_exact(2, 1, 1) == 0);   // x2 >= 1 incompatible with 2 x2 <= x1 <= 1
    CHECK(count_PN_exact(3, 2, 2) == count_PN_moebius(3, 2, 2));
}

TEST_CASE("exact and moebius counts agree on a sweep") {
    for (int n = 2; n <= 3; ++n)
        for (int ell = 1; ell < n; ++ell)
            for (long N = 1; N <= 120; ++N) {
                CAPTURE(n);
                CAPTURE(ell);
                CAPTURE(N);
                CHECK(count_PN_exact(n, ell, N) == count_PN_moebius(n, ell, N));
            }
}

TEST_CASE("prime heights keep only the trivial divisors") {
    // d in {1, N}: the formula reduces to box(N) - box(1).
    for (long N : {101L, 211L, 401L}) {
        long long expect = count_cone_box(3, 1, N) - count_cone_box(3, 1, 1);
        CHECK(count_PN_moebius(3, 1, N) == expect);
    }
}

TEST_CASE("moebius sum bound: values and corridor") {
    CHECK(moebius_sum_bound(3, 12) == mpq_class(2, 3));
    CHECK(moebius_sum_bound(3, 1) == 1);
    // multiplicativity at n = 4, N = 30
    mpq_class expect = mpq_class(7, 8) * mpq_class(26, 27) * mpq_class(124, 125);
    CHECK(moebius_sum_bound(4, 30) == expect);
    for (long N = 1; N <= 3000; ++N) {
        CHECK_NOTHROW(moebius_sum_bound(3, N));
        CHECK_NOTHROW(moebius_sum_bound(4, N));
    }
    CHECK_THROWS_AS(moebius_sum_bound(2, 10), DomainError);
}

TEST_CASE("totient partial sums track 3 N^2 / pi^2") {
    // |S(N) - 3 N^2/pi^2| <= 3 N ln N spot-checked on a grid
    auto sv = shared_sieve(20'000);
    unsigned long long s = 0;
    for (long N = 1; N <= 20'000; ++N) {
        s += static_cast<unsigned long long>(sv->totient(N));
        if (N < 10 || N % 977 != 0) continue;
        double target = 3.0 * static_cast<double>(N) * N / (M_PI * M_PI);
        double slack = 3.0 * N * std::log(static_cast<double>(N));
        CHECK(std::abs(static_cast<double>(s) - target) <= slack);
    }
}

TEST_CASE("dyadic divergence probe distinguishes the two regimes") {
    auto div = dyadic_divergence_probe(ApproxFunction::power(2), 12);
    auto conv = dyadic_divergence_probe(ApproxFunction::power(3), 15);
    REQUIRE(div.size() == 12);
    REQUIRE(conv.size() == 15);
    // divergent case: late increments do not decay
    double d1 = div[11] - div[10];
    double d0 = div[6] - div[5];
    CHECK(d1 > 0.5 * d0);
    // convergent case: Cauchy tail
    CHECK(conv[14] - conv[9] < 0.02 * conv[14]);
    CHECK(dyadic_divergence_probe(ApproxFunction::power(2), 0).empty());
}

TEST_CASE("count report records the empirical corridor") {
    CountReport rep = make_count_report(3, 1, 50, 200);
    CHECK(rep.corridor_violations.empty());
    CHECK(rep.ratio_min > 0);
    CHECK(rep.ratio_max >= rep.ratio_min);
    // #P_N / N^(n-1) bounded between positive constants
    CHECK(rep.ratio_max < 10.0);
}
