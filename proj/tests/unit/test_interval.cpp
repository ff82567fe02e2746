#include <doctest.h>

#include "conelab/interval.hpp"
#include "conelab/linear_form.hpp"
#include "conelab/rng.hpp"

using namespace conelab;

TEST_CASE("interval arithmetic encloses exact rational results") {
    SplitMix64 g{17};
    for (int i = 0; i < 200; ++i) {
        mpq_class a(static_cast<long>(g.at(4 * i) % 2001) - 1000,
                    static_cast<long>(g.at(4 * i + 1) % 97) + 1);
        mpq_class b(static_cast<long>(g.at(4 * i + 2) % 2001) - 1000,
                    static_cast<long>(g.at(4 * i + 3) % 97) + 1);
        a.canonicalize();
        b.canonicalize();
        Interval ia = Interval::from_mpq(a, 64);
        Interval ib = Interval::from_mpq(b, 64);
        CHECK(ia.add(ib).contains(a + b));
        CHECK(ia.sub(ib).contains(a - b));
        CHECK(ia.mul(ib).contains(a * b));
        if (b != 0 && !ib.contains_zero()) CHECK(ia.div(ib).contains(a / b));
    }
}

TEST_CASE("distance to nearest integer: trivial values") {
    auto d = [](const char* s) {
        return dist_to_nearest_int(PrecisionReal::from_decimal(s, 128));
    };
    CHECK(*d("2.3").exact_value() == mpq_class(3, 10));
    CHECK(*d("7").exact_value() == 0);
    CHECK(*d("-0.5").exact_value() == mpq_class(1, 2));
}

TEST_CASE("||r|| is integer-shift and sign invariant and lands in [0, 1/2]") {
    SplitMix64 g{5};
    for (int i = 0; i < 300; ++i) {
        mpq_class r = uniform_unit_dyadic(g, 2 * i) * 7 - 3;
        long k = static_cast<long>(g.at(10'000 + i) % 41) - 20;
        mpq_class d0 = *dist_to_nearest_int(PrecisionReal::from_rational(r, 96)).exact_value();
        mpq_class d1 =
            *dist_to_nearest_int(PrecisionReal::from_rational(r + k, 96)).exact_value();
        mpq_class d2 =
            *dist_to_nearest_int(PrecisionReal::from_rational(-r, 96)).exact_value();
        CHECK(d0 == d1);
        CHECK(d0 == d2);
        CHECK(d0 >= 0);
        CHECK(d0 <= mpq_class(1, 2));
    }
}

TEST_CASE("dist over a wide interval covers the full range") {
    Interval wide = Interval::from_endpoints(mpq_class(3, 10), mpq_class(17, 10), 64);
    Interval d = wide.dist_to_nearest_int();
    CHECK(d.lo_double() == 0.0);
    CHECK(d.hi_double() == 0.5);
}

TEST_CASE("interval sqrt and log stay certified") {
    Interval two = Interval::from_long(2, 128);
    Interval s = two.sqrt();
    CHECK(s.lo_double() <= 1.4142135623730951);
    CHECK(s.hi_double() >= 1.4142135623730949);
    CHECK(s.width_upper() < 1e-30);
    Interval l = two.log();
    CHECK(l.lo_double() <= 0.6931471805599454);
    CHECK(l.hi_double() >= 0.6931471805599452);
}

TEST_CASE("doubling precision nests the enclosure") {
    auto s2 = PrecisionReal::from_algebraic({mpz_class(-2), mpz_class(0), mpz_class(1)},
                                            1, 2, 96);
    Interval wide = s2.enclosure();
    Interval tight = s2.at_precision(192).enclosure();
    CHECK(mpfr_cmp(tight.lo(), wide.lo()) >= 0);
    CHECK(mpfr_cmp(tight.hi(), wide.hi()) <= 0);
}
