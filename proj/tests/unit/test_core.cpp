#include <doctest.h>

#include "conelab/errors.hpp"
#include "conelab/linear_form.hpp"
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

TEST_CASE("height of integer vectors") {
    CHECK(height(IntVector::from_longs({3, -5, 2})) == 5);
    CHECK(height(IntVector::from_longs({0, 0})) == 0);
    CHECK(height(IntVector::from_longs({1, 1})) == 1);
}

TEST_CASE("height is zero exactly on the zero vector") {
    SplitMix64 g{23};
    for (int i = 0; i < 100; ++i) {
        std::vector<long> e(3);
        for (int k = 0; k < 3; ++k) e[k] = static_cast<long>(g.at(3 * i + k) % 21) - 10;
        IntVector x = IntVector::from_longs(e);
        CHECK((height(x) == 0) == x.is_zero());
    }
}

TEST_CASE("cone membership per the strict C = 1 rule") {
    ConeSpec spec = ConeSpec::cone(1);
    CHECK(in_cone(IntVector::from_longs({3, 1}), spec));
    CHECK_FALSE(in_cone(IntVector::from_longs({1, 1}), spec));  // strict inequality
    CHECK_FALSE(in_cone(IntVector::from_longs({2, -3}), spec));
    // ell = n is vacuous
    CHECK(in_cone(IntVector::from_longs({0, 7}), ConeSpec::cone(2)));
}

TEST_CASE("cone membership is invariant under independent sign flips") {
    SplitMix64 g{29};
    for (int i = 0; i < 200; ++i) {
        std::vector<long> e(3);
        for (int k = 0; k < 3; ++k) e[k] = static_cast<long>(g.at(3 * i + k) % 15) - 7;
        for (int ell = 1; ell <= 3; ++ell) {
            bool base = in_cone(IntVector::from_longs(e), ConeSpec::cone(ell));
            for (int mask = 0; mask < 8; ++mask) {
                std::vector<long> f = e;
                for (int k = 0; k < 3; ++k)
                    if (mask & (1 << k)) f[k] = -f[k];
                CHECK(in_cone(IntVector::from_longs(f), ConeSpec::cone(ell)) == base);
            }
        }
    }
}

TEST_CASE("relaxed constant-C cone") {
    ConeSpec half{1, mpq_class(1, 2), true};
    CHECK(in_cone(IntVector::from_longs({5, 2}), half));
    CHECK_FALSE(in_cone(IntVector::from_longs({5, 3}), half));
    ConeSpec nonstrict{1, 1, false};
    CHECK(in_cone(IntVector::from_longs({1, 1}), nonstrict));
}

TEST_CASE("factor-2 counting cone differs from the exponent cone") {
    // (5, 2): inside the strict cone, outside the factor-2 one.
    CHECK(in_cone(IntVector::from_longs({5, 3}), ConeSpec::cone(1)));
    CHECK_FALSE(in_counting_cone(IntVector::from_longs({5, 3}), 1));
    CHECK(in_counting_cone(IntVector::from_longs({5, 2}), 1));
}

TEST_CASE("linear form over exact rationals") {
    RealVector alpha({PrecisionReal::from_rational(mpq_class(1, 3), 128),
                      PrecisionReal::from_rational(mpq_class(1, 7), 128)});
    auto v = linear_form_error(alpha, IntVector::from_longs({1, 1}));
    REQUIRE(v.exact_dist.has_value());
    CHECK(*v.exact_dist == mpq_class(10, 21));
    auto z = linear_form_error(alpha, IntVector::from_longs({3, 0}));
    CHECK(z.is_zero());
}

TEST_CASE("linear form over sqrt2, sqrt3 at x = (1,1)") {
    RealVector alpha({sqrt_of(2, 128), sqrt_of(3, 128)});
    auto v = linear_form_error(alpha, IntVector::from_longs({1, 1}));
    CHECK_FALSE(v.is_zero());
    // frac(sqrt2 + sqrt3) = 0.1462643699419723423291350657..., frozen from a
    // direct high-precision evaluation of the two square roots.
    mpq_class frozen_lo =
        mpq_class("1462643699419723423291350656") / mpq_class("10000000000000000000000000000");
    mpq_class frozen_hi =
        mpq_class("1462643699419723423291350658") / mpq_class("10000000000000000000000000000");
    CHECK(mpfr_cmp_q(v.dist.lo(), frozen_lo.get_mpq_t()) > 0);
    CHECK(mpfr_cmp_q(v.dist.hi(), frozen_hi.get_mpq_t()) < 0);
    CHECK(v.dist.width_upper() < 1e-30);
}

TEST_CASE("dimension mismatch is rejected") {
    RealVector alpha({PrecisionReal::from_long(1, 64)});
    CHECK_THROWS_AS(linear_form_error(alpha, IntVector::from_longs({1, 2})),
                    DimensionMismatch);
}

TEST_CASE("doubled precision tightens the certified error") {
    RealVector alpha({sqrt_of(2), sqrt_of(3)});
    EscalationPolicy p1;
    p1.start_bits = 96;
    EscalationPolicy p2;
    p2.start_bits = 192;
    auto a = linear_form_error(alpha, IntVector::from_longs({5, -3}), p1);
    auto b = linear_form_error(alpha, IntVector::from_longs({5, -3}), p2);
    CHECK(mpfr_cmp(b.dist.lo(), a.dist.lo()) >= 0);
    CHECK(mpfr_cmp(b.dist.hi(), a.dist.hi()) <= 0);
}

TEST_CASE("precision exhaustion on a disguised zero") {
    // x . alpha = 0 exactly, but the origins cannot certify it: the policy
    // must give up at the cap instead of looping or guessing.
    auto r2a = sqrt_of(2);
    auto r2b = sqrt_of(2);
    RealVector alpha({r2a, r2b});
    EscalationPolicy pol;
    pol.cap_bits = 1024;
    CHECK_THROWS_AS(linear_form_error(alpha, IntVector::from_longs({1, -1}), pol),
                    PrecisionExhausted);
}

TEST_CASE("gap series partial sums obey the exact tail bound") {
    mpq_class w(4);
    auto a = PrecisionReal::gap_series_exponents(w, 700);
    REQUIRE(a.size() >= 4);
    CHECK(a[0] == 1);
    CHECK(a[1] == 5);
    CHECK(a[2] == 25);
    CHECK(a[3] == 125);
    // |alpha - sum_{j<=k} 2^-a_j| <= 2^(1 - a_{k+1})
    PrecisionReal alpha = PrecisionReal::gap_series(w, 800);
    for (size_t k = 1; k + 1 < a.size(); ++k) {
        mpq_class partial = 0;
        for (size_t j = 0; j < k; ++j) {
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 2, mpz_get_ui(a[j].get_mpz_t()));
            partial += mpq_class(1) / mpq_class(den);
        }
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, mpz_get_ui(a[k].get_mpz_t()));
        mpq_class tail_bound = mpq_class(2) / mpq_class(den);
        Interval diff = alpha.enclosure().sub(Interval::from_mpq(partial, 800)).abs();
        CHECK(mpfr_cmp_q(diff.hi(), tail_bound.get_mpq_t()) <= 0);
    }
}

TEST_CASE("w_target = 2 gap exponents follow the recurrence") {
    auto a = PrecisionReal::gap_series_exponents(mpq_class(2), 30);
    CHECK(a[0] == 1);
    CHECK(a[1] == 3);
    CHECK(a[2] == 9);
    CHECK(a[3] == 27);
}

TEST_CASE("decimal origin parses exactly") {
    auto r = PrecisionReal::from_decimal("-12.0625", 96);
    CHECK(*r.exact_value() == mpq_class(-193, 16));
    CHECK_THROWS_AS(PrecisionReal::from_decimal("1.2.3", 96), ValidationError);
}

TEST_CASE("real vector precision is the common minimum") {
    RealVector v({PrecisionReal::from_long(1, 64), PrecisionReal::from_long(2, 192)});
    CHECK(v.precision_bits() == 64);
}
