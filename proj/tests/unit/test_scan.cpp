#include <doctest.h>

#include "conelab/errors.hpp"
#include "conelab/estimators.hpp"
#include "conelab/rng.hpp"

using namespace conelab;

namespace {

PrecisionReal sqrt_of(long m, int bits = 192) {
    long a = 1;
    while ((a + 1) * (a + 1) <= m) ++a;
    return PrecisionReal::from_algebraic({mpz_class(-m), mpz_class(0), mpz_class(1)},
                                         mpq_class(a), mpq_class(a + 1), bits);
}

bool records_equal(const std::vector<ConeRecord>& a, const std::vector<ConeRecord>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].h != b[i].h) return false;
        if (!(a[i].x == b[i].x)) return false;
        // two certified routes to the same value: enclosures must overlap
        if (a[i].err.certainly_less(b[i].err)) return false;
        if (b[i].err.certainly_less(a[i].err)) return false;
        if (a[i].exact_err.has_value() != b[i].exact_err.has_value()) return false;
        if (a[i].exact_err && *a[i].exact_err != *b[i].exact_err) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("record_scan equals the brute-force oracle on seeded points") {
    for (int seed = 1; seed <= 6; ++seed) {
        for (int n = 2; n <= 3; ++n) {
            RealVector alpha = sample_unit_vector(1000 + seed, n);
            for (int ell = 1; ell <= n; ++ell) {
                auto fast = record_scan(alpha, ConeSpec::cone(ell), 25);
                auto ref = brute_force_oracle(alpha, ConeSpec::cone(ell), 25);
                CAPTURE(seed);
                CAPTURE(n);
                CAPTURE(ell);
                CHECK(records_equal(fast, ref));
            }
        }
    }
}

TEST_CASE("record_scan equals the oracle on algebraic and rational points") {
    RealVector surd({sqrt_of(2), sqrt_of(3)});
    CHECK(records_equal(record_scan(surd, ConeSpec::cone(1), 60),
                        brute_force_oracle(surd, ConeSpec::cone(1), 60)));

    RealVector rat({PrecisionReal::from_rational(mpq_class(3, 7), 192),
                    PrecisionReal::from_rational(mpq_class(2, 5), 192)});
    ScanStats st;
    auto fast = record_scan(rat, ConeSpec::cone(1), 40, &st);
    CHECK(records_equal(fast, brute_force_oracle(rat, ConeSpec::cone(1), 40)));
    CHECK(st.exact_zero_skips > 0);  // 35 . alpha is an integer vector multiple
}

TEST_CASE("relaxed cones agree with the oracle too") {
    // C != 1 exercises the generic shell driver.
    RealVector a2 = sample_unit_vector(67, 2);
    RealVector a3 = sample_unit_vector(68, 3);
    for (ConeSpec spec : {ConeSpec{1, mpq_class(3, 2), true}, ConeSpec{1, mpq_class(1, 2), true},
                          ConeSpec{1, mpq_class(2), false}}) {
        auto fast = record_scan(a2, spec, 20);
        auto ref = brute_force_oracle(a2, spec, 20);
        CAPTURE(spec.constant_C.get_d());
        CHECK(records_equal(fast, ref));
    }
    ConeSpec wide{2, mpq_class(5, 4), true};
    CHECK(records_equal(record_scan(a3, wide, 12), brute_force_oracle(a3, wide, 12)));
}

TEST_CASE("record lists improve strictly in both coordinates") {
    RealVector alpha = sample_unit_vector(424242, 3);
    auto recs = record_scan(alpha, ConeSpec::cone(1), 400);
    REQUIRE(!recs.empty());
    for (size_t i = 1; i < recs.size(); ++i) {
        CHECK(recs[i].h > recs[i - 1].h);
        CHECK(recs[i].err.certainly_less(recs[i - 1].err));
    }
}

TEST_CASE("empty scans") {
    RealVector alpha = sample_unit_vector(7, 2);
    CHECK(record_scan(alpha, ConeSpec::cone(1), 0).empty());
    CHECK(brute_force_oracle(alpha, ConeSpec::cone(1), 0).empty());
}

TEST_CASE("oracle cap") {
    RealVector alpha = sample_unit_vector(7, 2);
    CHECK_THROWS_AS(brute_force_oracle(alpha, ConeSpec::cone(1), 500), CapExceeded);
}

TEST_CASE("estimate_mu: single record and burn-in behaviour") {
    ConeRecord r;
    r.x = IntVector::from_longs({10, 0});
    r.h = 10;
    r.err = Interval::from_mpq(mpq_class(1, 10000000000L), 96);
    r.exact_err = mpq_class(1, 10000000000L);
    // fill certified ratio the way the scanner would
    r.ratio_lo = r.ratio_hi = 10.0;
    r.ratio = 10.0;
    auto rep = estimate_mu({r}, 2, 2, 1, 10);
    CHECK(rep.estimate == doctest::Approx(10.0));
    CHECK_THROWS_AS(estimate_mu({r}, 11, 2, 1, 10), NoRecords);
    CHECK_THROWS_AS(estimate_mu(std::vector<ConeRecord>{}, 2, 2, 1, 10), NoRecords);
}

TEST_CASE("estimate_mu is monotone non-decreasing in the truncation height") {
    RealVector alpha = sample_unit_vector(99, 2);
    double prev = 0;
    for (long nmax : {50L, 100L, 200L, 400L}) {
        auto rep = estimate_mu(alpha, ConeSpec::cone(1), nmax, 10);
        CHECK(rep.estimate >= prev - 1e-12);
        prev = rep.estimate;
    }
}

TEST_CASE("cone estimate never exceeds the unrestricted estimate") {
    for (int seed = 3; seed <= 8; ++seed) {
        RealVector alpha = sample_unit_vector(seed, 3);
        for (int ell = 1; ell <= 2; ++ell) {
            auto mu = estimate_mu(alpha, ConeSpec::cone(ell), 300, 10);
            auto w = estimate_mu(alpha, ConeSpec::cone(3), 300, 10);
            CHECK(mu.estimate <= w.estimate + 1e-12);
        }
    }
}

TEST_CASE("uniform exponent: Dirichlet guarantee and the n = 1 limit") {
    RealVector alpha({sqrt_of(2)});
    auto rep = estimate_w_hat(alpha, 4096);
    for (const auto& gp : rep.grid_points) CHECK(gp.dirichlet_ok);
    CHECK(rep.estimate == doctest::Approx(1.0).epsilon(0.2));

    RealVector a3 = sample_unit_vector(12345, 3);
    auto rep3 = estimate_w_hat(a3, 512);
    for (const auto& gp : rep3.grid_points) CHECK(gp.dirichlet_ok);
    CHECK(rep3.estimate >= 2.0);  // truncated uniform estimate, n = 3
}

TEST_CASE("nu_tilde coincides with mu when a single tail coordinate exists") {
    RealVector alpha = sample_unit_vector(55, 2);
    auto a = nu_tilde_scan(alpha, 1, 60);
    auto b = record_scan(alpha, ConeSpec::cone(1), 60);
    CHECK(records_equal(a, b));

    RealVector a3 = sample_unit_vector(56, 3);
    auto c = nu_tilde_scan(a3, 2, 40);
    auto d = record_scan(a3, ConeSpec::cone(2), 40);
    CHECK(records_equal(c, d));
}

TEST_CASE("nu_tilde records use one tail coordinate at a time") {
    RealVector a3 = sample_unit_vector(57, 3);
    auto recs = nu_tilde_scan(a3, 1, 80);
    REQUIRE(!recs.empty());
    for (const auto& r : recs) {
        CHECK((r.x.entries[1] == 0 || r.x.entries[2] == 0));
        mpz_class head = ::abs(r.x.entries[0]);
        CHECK(head > ::abs(r.x.entries[1]));
        CHECK(head > ::abs(r.x.entries[2]));
    }
    // its estimate can only improve on the full-form cone records
    auto mu = estimate_mu(a3, ConeSpec::cone(1), 80, 10);
    auto nu = estimate_nu_tilde(a3, 1, 80, 10);
    CHECK(nu.estimate >= mu.estimate - 1e-12);
}

TEST_CASE("nu_tilde oracle agreement via masked tails") {
    // Brute-force reference: enumerate (head, i, tail value) directly.
    RealVector a3 = sample_unit_vector(58, 3);
    auto recs = nu_tilde_scan(a3, 1, 20);
    // reference: min over cone vectors with one active tail
    struct Best {
        bool has = false;
        FormValue v;
    };
    std::vector<Best> best(21);
    for (long h = 1; h <= 20; ++h) {
        for (int i = 1; i <= 2; ++i)
            for (long t = -(h - 1); t <= h - 1; ++t) {
                std::vector<long> x(3, 0);
                x[0] = h;
                x[i] = t;
                auto fv = linear_form_error(a3, IntVector::from_longs(x));
                if (fv.is_zero()) continue;
                if (!best[h].has || fv.dist.certainly_less(best[h].v.dist)) {
                    best[h].has = true;
                    best[h].v = fv;
                }
            }
    }
    // every scan record must match the per-height reference minimum
    for (const auto& r : recs) {
        REQUIRE(best[r.h].has);
        CHECK_FALSE(r.err.certainly_less(best[r.h].v.dist));
        CHECK_FALSE(best[r.h].v.dist.certainly_less(r.err));
    }
}

TEST_CASE("dirichlet floor check") {
    RealVector s23({sqrt_of(2), sqrt_of(3)});
    CHECK(dirichlet_floor_check(s23, ConeSpec::cone(1), 100));

    RealVector s235({sqrt_of(2), sqrt_of(3), sqrt_of(5)});
    CHECK(dirichlet_floor_check(s235, ConeSpec::cone(2), 10));
    // independent exhaustive witness for the ell = 2 case
    mpq_class bound(1, 120);  // ((10+1)^2 - 1)^(-1)
    bool witness = false;
    for (long x1 = -10; x1 <= 10 && !witness; ++x1)
        for (long x2 = -10; x2 <= 10 && !witness; ++x2) {
            if (x1 == 0 && x2 == 0) continue;
            auto fv = linear_form_error(s235, IntVector::from_longs({x1, x2, 0}));
            if (fv.is_zero()) continue;
            if (mpfr_cmp_q(fv.dist.hi(), bound.get_mpq_t()) < 0) witness = true;
        }
    CHECK(witness);

    // rational alpha: zeros are skipped, a positive witness still exists
    RealVector rat({PrecisionReal::from_rational(mpq_class(1, 64), 128),
                    PrecisionReal::from_rational(mpq_class(1, 3), 128)});
    CHECK(dirichlet_floor_check(rat, ConeSpec::cone(1), 40));
}

TEST_CASE("axis scan restricts to one coordinate") {
    RealVector a3 = sample_unit_vector(61, 3);
    auto recs = axis_record_scan(a3, 2, 50);
    REQUIRE(!recs.empty());
    for (const auto& r : recs) {
        CHECK(r.x.entries[0] == 0);
        CHECK(r.x.entries[2] == 0);
        CHECK(::abs(r.x.entries[1]) == r.h);
    }
}

TEST_CASE("shell minima agree with the record prefix minima") {
    RealVector alpha = sample_unit_vector(77, 2);
    auto mins = shell_min_scan(alpha, ConeSpec::cone(1), 120);
    auto recs = record_scan(alpha, ConeSpec::cone(1), 120);
    REQUIRE(mins.size() == 120);
    // every record error matches its shell minimum (exact dyadic path)
    for (const auto& r : recs) {
        const ShellMin& sm = mins[r.h - 1];
        REQUIRE(sm.any);
        CHECK(sm.slack == 0);
        mpz_class d = 0;
        for (int limb = 1; limb >= 0; --limb) {
            d <<= 64;
            d += mpz_class(static_cast<unsigned long>(
                static_cast<uint64_t>(sm.d >> (64 * limb))));
        }
        mpq_class units(d, mpz_class(1) << 128);
        units.canonicalize();
        REQUIRE(r.exact_err.has_value());
        CHECK(units == *r.exact_err);
    }
}
