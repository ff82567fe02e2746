#include <doctest.h>

#include <cmath>

#include "conelab/bounds.hpp"
#include "conelab/errors.hpp"
#include "conelab/rng.hpp"

using namespace conelab;

namespace {
PrecisionReal sqrt_of(long m, int bits = 192) {
    long a = 1;
    while ((a + 1) * (a + 1) <= m) ++a;
    return PrecisionReal::from_algebraic({mpz_class(-m), mpz_class(0), mpz_class(1)},
                                         mpq_class(a), mpq_class(a + 1), bits);
}
}  // namespace

TEST_CASE("eq5: pinned values and domain") {
    CHECK(bound_eq5(3, 3, 1) == doctest::Approx(3.0));   // w_hat = n
    CHECK(bound_eq5(5, 3, 2) == doctest::Approx(2.5));
    CHECK_THROWS_AS(bound_eq5(1, 3, 1), DomainError);
}

TEST_CASE("eq5 at the Davenport-Schmidt cap equals the Veronese bound") {
    for (int n = 2; n <= 10; ++n)
        for (int ell = 1; ell < n; ++ell)
            CHECK(bound_eq5_exact(mpq_class(2 * n - 1), n, ell) ==
                  bound_veronese_exact(n, ell));
}

TEST_CASE("thurnheer bound") {
    CHECK(bound_thurnheer(2, 2) == doctest::Approx(2.0));  // w = w_hat = n = 2
    CHECK(bound_thurnheer(3, 6) == doctest::Approx(2.5));
    // w -> infinity approaches w_hat - 1
    CHECK(bound_thurnheer(3, 1e12) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(bound_thurnheer(3, 2), DomainError);
}

TEST_CASE("golden-ratio bound values") {
    CHECK(bound_golden(2) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(bound_golden(3) == doctest::Approx(1 + std::sqrt(3.0)).epsilon(1e-14));
    // exceeds n - 1/n for all n <= 50, via certified intervals
    for (int n = 2; n <= 50; ++n) {
        Interval g = bound_golden_interval(n, 160);
        mpq_class floor_bound = mpq_class(n) - mpq_class(1, n);
        CHECK(mpfr_cmp_q(g.lo(), floor_bound.get_mpq_t()) > 0);
    }
}

TEST_CASE("veronese bound: pinned values and the large-n limit") {
    CHECK(bound_veronese_exact(3, 1) == mpq_class(5, 3));
    CHECK(bound_veronese(200, 1) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("eta inversion reproduces the exponent identity") {
    CHECK(eta_for(1.5, 1, 2, 0) == doctest::Approx(2.0));
    // (ell eta + n - ell)/eta == mu + eps exactly on rationals
    for (long num = 13; num <= 40; num += 3) {
        mpq_class mu(num, 8);
        mu.canonicalize();
        int ell = 1, n = 3;
        if (mu <= ell) continue;
        mpq_class eta = eta_for_exact(mu, ell, n, 0);
        CHECK((mpq_class(ell) * eta + n - ell) / eta == mu);
    }
    CHECK_THROWS_AS(eta_for(1, 1, 2, 0), DomainError);
    // mu + eps = n gives the cube
    CHECK(eta_for(3, 1, 3, 0) == doctest::Approx(1.0));
}

TEST_CASE("body volume exponent cancels exactly") {
    BodySpec spec{sample_unit_vector(3, 3), 10, mpq_class(7, 3), 2};
    CHECK(spec.volume_exponent() == 0);
}

TEST_CASE("minkowski search: degenerate N = 1") {
    BodySpec spec{sample_unit_vector(5, 3), 1, mpq_class(1), 1};
    BodyPoint pt = minkowski_body_search(spec);
    CHECK(pt.x0 == 1);
    CHECK(pt.x.is_zero());
}

TEST_CASE("minkowski search returns certified points") {
    auto s2 = sqrt_of(2);
    auto s3 = sqrt_of(3);
    BodySpec spec{RealVector({s2, s3}), 10, mpq_class(2), 1};
    BodyPoint pt = minkowski_body_search(spec);
    // |x1| <= 100, |x2| <= 10, |x . alpha + x0| <= 10^-3
    CHECK(::abs(pt.x.entries[0]) <= 100);
    CHECK(::abs(pt.x.entries[1]) <= 10);
    CHECK(pt.form_value.hi_double() <= 1e-3);
    CHECK_FALSE(pt.x.is_zero());  // N >= 2 forces x != 0

    for (uint64_t seed : {21u, 22u, 23u}) {
        BodySpec s{sample_unit_vector(seed, 3), 50, mpq_class(2), 2};
        BodyPoint p = minkowski_body_search(s);
        CHECK(::abs(p.x.entries[0]) <= 2500);
        CHECK(::abs(p.x.entries[1]) <= 2500);
        CHECK(::abs(p.x.entries[2]) <= 50);
        CHECK_FALSE(p.x.is_zero());
        CHECK(p.form_value.hi_double() <= std::pow(50.0, -5.0));
    }
}

TEST_CASE("bounds report joins estimators and calculators") {
    RealVector alpha = sample_unit_vector(31, 3);
    BoundsReport rep = bounds_report(alpha, 1, 300);
    CHECK_FALSE(rep.tautology_violated);
    CHECK(rep.mu_estimate <= rep.mu_full_estimate + 1e-9);
    CHECK(rep.golden == doctest::Approx(bound_golden(3)));
    REQUIRE(rep.veronese.size() == 2);
    CHECK(rep.veronese[0] == doctest::Approx(5.0 / 3));
    CHECK(rep.w_hat_estimate > 1.0);
}
