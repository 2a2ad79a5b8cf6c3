#include <doctest.h>

#include "fsg/nu_series.hpp"
#include "fsg/rng.hpp"

using namespace fsg;

namespace {

Polynomial P(const std::string& s, int dim = 2) { return parse_polynomial(s, dim); }

} // namespace

TEST_CASE("rational arithmetic stays reduced with positive denominator") {
    const Rational a(BigInt(4), BigInt(-6));
    CHECK(a.numerator() == BigInt(-2));
    CHECK(a.denominator() == BigInt(3));
    CHECK((a + Rational(BigInt(2), BigInt(3))).is_zero());
    CHECK(Rational::parse("7/21") == Rational(BigInt(1), BigInt(3)));
    CHECK(Rational::parse("-3").str() == "-3");
    CHECK(Rational(BigInt(1), BigInt(2)).str() == "1/2");
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DomainError);
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
}

TEST_CASE("polynomial product expands exactly") {
    CHECK(P("x1") * P("x2") == P("x1*x2"));
    CHECK(P("x1+x2") * P("1") == P("x1+x2"));
    // (x1+x2)(x1-x2) expanded term by term: x1^2 - x1 x2 + x2 x1 - x2^2
    Polynomial expect(2);
    expect.add_term({2, 0}, Rational(1));
    expect.add_term({1, 1}, Rational(-1));
    expect.add_term({1, 1}, Rational(1));
    expect.add_term({0, 2}, Rational(-1));
    CHECK(P("x1+x2") * P("x1-x2") == expect);
}

TEST_CASE("polynomial derivative") {
    CHECK(P("x1^2").derivative(0) == P("2*x1"));
    CHECK(P("x1").derivative(1).is_zero());
    CHECK(P("x1*x2").derivative(0) == P("x2"));
    CHECK_THROWS_AS(P("x1").derivative(5), DimensionError);
}

TEST_CASE("polynomial ring axioms on random instances") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial a = rng.polynomial(2, 3, 3);
        const Polynomial b = rng.polynomial(2, 3, 3);
        const Polynomial c = rng.polynomial(2, 3, 3);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("polynomial parsing mismatch errors") {
    CHECK_THROWS_AS(P("x3"), ParseError);
    CHECK_THROWS_AS(P("x1 +"), ParseError);
    CHECK_THROWS_AS(P(""), ParseError);
    CHECK(P("0").is_zero());
    // printer emits parseable text
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Polynomial p = rng.polynomial(3, 3, 4);
        CHECK(parse_polynomial(p.str(), 3) == p);
    }
}

TEST_CASE("series inversion against the multiply-back oracle") {
    const int n = 4;
    SUBCASE("constants") {
        const NuSeries two = NuSeries::constant(2, n, Rational(2));
        CHECK(two.inverse() == NuSeries::constant(2, n, Rational(BigInt(1), BigInt(2))));
        CHECK(NuSeries::one(2, n).inverse() == NuSeries::one(2, n));
    }
    SUBCASE("geometric series") {
        // (1 + nu x1)^{-1} = 1 - nu x1 + nu^2 x1^2 - ...
        NuSeries s = NuSeries::one(2, n) + NuSeries::from_polynomial(P("x1"), n).shifted(1);
        NuSeries inv = s.inverse();
        NuSeries expect(2, n);
        for (int r = 0; r <= n; ++r) {
            Polynomial pow = Polynomial::constant(2, Rational(r % 2 == 0 ? 1 : -1));
            for (int k = 0; k < r; ++k)
                pow = pow * P("x1");
            expect += NuSeries::from_polynomial(pow, n).shifted(r);
        }
        CHECK(inv == expect);
        CHECK(s * inv == NuSeries::one(2, n));
    }
    SUBCASE("random units multiply back to one") {
        Rng rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Polynomial> levels{Polynomial::constant(2, rng.coefficient())};
            for (int r = 1; r <= n; ++r)
                levels.push_back(rng.polynomial(2, 2, 2));
            const NuSeries s = NuSeries::from_levels(levels);
            CHECK(s * s.inverse() == NuSeries::one(2, n));
        }
    }
    SUBCASE("rejects non-units") {
        CHECK_THROWS_AS(NuSeries(2, n).inverse(), DomainError);
        CHECK_THROWS_AS(NuSeries::from_polynomial(P("x1"), n).inverse(), DomainError);
    }
}

TEST_CASE("series ring axioms on random instances") {
    Rng rng(7);
    const int n = 3;
    auto random_series = [&] {
        std::vector<Polynomial> levels;
        for (int r = 0; r <= n; ++r)
            levels.push_back(rng.polynomial(2, 2, 2));
        return NuSeries::from_levels(levels);
    };
    for (int trial = 0; trial < 15; ++trial) {
        const NuSeries a = random_series();
        const NuSeries b = random_series();
        const NuSeries c = random_series();
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("series log of a unit") {
    const int n = 4;
    // log(1 + nu x1) = nu x1 - nu^2 x1^2/2 + nu^3 x1^3/3 - ...
    NuSeries s = NuSeries::one(2, n) + NuSeries::from_polynomial(P("x1"), n).shifted(1);
    NuSeries lg = s.log_unit();
    NuSeries expect(2, n);
    for (int r = 1; r <= n; ++r) {
        Polynomial pow = Polynomial::constant(2, Rational(r % 2 == 1 ? 1 : -1) / Rational(r));
        for (int k = 0; k < r; ++k)
            pow = pow * P("x1");
        expect += NuSeries::from_polynomial(pow, n).shifted(r);
    }
    CHECK(lg == expect);
    // the constant factor is dropped: log(2 s) has the same series part
    CHECK((s * Rational(2)).log_unit() == lg);
}
