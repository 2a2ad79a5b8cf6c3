#include <doctest.h>

#include "fsg/groupoid.hpp"
#include "fsg/rng.hpp"

using namespace fsg;

namespace {

const int N = 4;

Polynomial P(const std::string& s, int dim = 2) { return parse_polynomial(s, dim); }

FormalDiffOp unit_plus_nu(Rng& rng, int dim, int trunc) {
    // 1 + nu (natural stuff): admissible for op_log and op_invert
    return FormalDiffOp::identity(dim, trunc) + rng.natural_op(dim, trunc, 2).shifted(1);
}

} // namespace

TEST_CASE("operator application") {
    const FormalDiffOp d1 = FormalDiffOp::from_level(DiffOp::partial(2, 0), 0, N);
    CHECK(d1.apply(P("x1^2")) == NuSeries::from_polynomial(P("2*x1"), N));
    const NuSeries f = NuSeries::from_polynomial(P("x1*x2 - 1/2"), N) +
                       NuSeries::from_polynomial(P("x2^2"), N).shifted(2);
    CHECK(FormalDiffOp::identity(2, N).apply(f) == f);

    // (x1 d1 + nu d2) x2 = nu, assembled term by term
    FormalDiffOp a = FormalDiffOp::from_level(DiffOp::term(P("x1"), {1, 0}), 0, N);
    a += FormalDiffOp::from_level(DiffOp::partial(2, 1), 1, N);
    CHECK(a.apply(P("x2")) == NuSeries::one(2, N).shifted(1));

    CHECK_THROWS_AS(d1.apply(NuSeries(3, N)), DimensionError);
}

TEST_CASE("composition follows the Leibniz rule") {
    const DiffOp d1 = DiffOp::partial(2, 0);
    const DiffOp x1 = DiffOp::multiplication(P("x1"));
    // d1 (x1 .) = x1 d1 + 1
    DiffOp expect = DiffOp::term(P("x1"), {1, 0});
    expect += DiffOp::identity(2);
    CHECK(d1.compose(x1) == expect);

    Rng rng(21);
    for (int t = 0; t < 5; ++t) {
        const FormalDiffOp a = rng.natural_op(2, N, 2);
        CHECK(a.compose(FormalDiffOp::identity(2, N)) == a);
        // composition agrees with sequential application
        const NuSeries f = NuSeries::from_polynomial(rng.polynomial(2, 3, 3), N);
        const FormalDiffOp b = rng.natural_op(2, N, 2);
        CHECK(a.compose(b).apply(f) == a.apply(b.apply(f)));
    }

    // Symb_2(d1 d2) = xi1 xi2 = Symb_1(d1) Symb_1(d2)
    const DiffOp d2 = DiffOp::partial(2, 1);
    CHECK(d1.compose(d2).principal_symbol(2) ==
          d1.principal_symbol(1) * d2.principal_symbol(1));
}

TEST_CASE("commutator over nu") {
    const FormalDiffOp nu_d1 = FormalDiffOp::from_level(DiffOp::partial(2, 0), 1, N);
    const FormalDiffOp x1 = FormalDiffOp::multiplication(P("x1"), N);
    CHECK(commutator_over_nu(nu_d1, x1) == FormalDiffOp::identity(2, N));

    Rng rng(31);
    const FormalDiffOp a = rng.natural_op(2, N, 2);
    CHECK(commutator_over_nu(a, a).is_zero());

    // inexact division signals non-natural input
    const FormalDiffOp d1 = FormalDiffOp::from_level(DiffOp::partial(2, 0), 0, N);
    CHECK_THROWS_AS(commutator_over_nu(d1, x1), DomainError);

    // sigma of the scaled commutator is the phase-space bracket (the nu^N
    // level of the quotient is padding, so stay below it)
    for (int t = 0; t < 5; ++t) {
        const FormalDiffOp u = rng.natural_op(2, N, 2);
        const FormalDiffOp v = rng.natural_op(2, N, 2);
        CHECK(sigma(commutator_over_nu(u, v)).truncated(N - 1) ==
              tstar_bracket(sigma(u), sigma(v)).truncated(N - 1));
    }
}

TEST_CASE("transpose by integration-by-parts rewriting") {
    const LogDensity lebesgue = LogDensity::lebesgue(2);
    const LogDensity exp_x1(NuSeries::from_polynomial(P("x1"), N));
    const FormalDiffOp d1 = FormalDiffOp::from_level(DiffOp::partial(2, 0), 0, N);

    CHECK(transpose(d1, lebesgue) == -d1);
    // against e^{x1}: one integration by parts gives -d1 - 1
    CHECK(transpose(d1, exp_x1) == -(d1 + FormalDiffOp::identity(2, N)));

    Rng rng(41);
    const LogDensity rho(NuSeries::from_polynomial(P("x1 + x2^2"), N) +
                         NuSeries::from_polynomial(P("x1*x2"), N).shifted(1));
    for (int t = 0; t < 4; ++t) {
        const FormalDiffOp a = rng.natural_op(2, N, 2);
        const FormalDiffOp b = rng.natural_op(2, N, 2);
        // involutive and an algebra anti-homomorphism
        CHECK(transpose(transpose(a, rho), rho) == a);
        CHECK(transpose(a.compose(b), rho) == transpose(b, rho).compose(transpose(a, rho)));
        // symbol flips the fiber sign
        CHECK(sigma(transpose(a, rho)) == epsilon_pullback(sigma(a)));
    }

    // change of density by a unit factor phi: A^t_{phi rho} = phi^-1 A^t phi
    const NuSeries phi = NuSeries::one(2, N) + NuSeries::from_polynomial(P("x2"), N).shifted(1);
    const LogDensity scaled = scaled_density(rho, phi);
    const FormalDiffOp m_phi = FormalDiffOp::multiplication(phi);
    const FormalDiffOp m_phi_inv = FormalDiffOp::multiplication(phi.inverse());
    for (int t = 0; t < 3; ++t) {
        const FormalDiffOp a = rng.natural_op(2, N, 2);
        CHECK(transpose(a, scaled) == m_phi_inv.compose(transpose(a, rho)).compose(m_phi));
    }
}

TEST_CASE("naturality predicate with witness") {
    CHECK(is_natural(FormalDiffOp::identity(2, N)));
    const FormalDiffOp bad = FormalDiffOp::from_level(DiffOp::partial(2, 0), 0, N);
    CHECK(natural_violation(bad) == 0);

    FormalDiffOp good(2, N);
    good.set_level(1, DiffOp::term(P("x1"), {0, 1}));
    good.set_level(2, DiffOp::term(P("1"), {1, 1}));
    CHECK(is_natural(good));
}

TEST_CASE("sigma-symbol") {
    CHECK(sigma(FormalDiffOp::identity(2, N)) == PhaseFunction::from_base(P("1"), N));

    // f + nu a d1 + nu^2 b d1 d2 -> f + a xi1 + b xi1 xi2
    const Polynomial f = P("x1*x2"), a = P("x2"), b = P("x1^2");
    FormalDiffOp op = FormalDiffOp::multiplication(f, N);
    op += FormalDiffOp::from_level(DiffOp::term(a, {1, 0}), 1, N);
    op += FormalDiffOp::from_level(DiffOp::term(b, {1, 1}), 2, N);
    PhaseFunction expect = PhaseFunction::from_base(f, N);
    expect.set_component(1, parse_polynomial("x2*x3", 4)); // a(x) xi1 in vars (x1,x2,xi1,xi2)
    expect.set_component(2, parse_polynomial("x1^2*x3*x4", 4));
    CHECK(sigma(op) == expect);

    // lower-order parts of each level are discarded: the kernel is nu * natural
    FormalDiffOp lower(2, N);
    lower.set_level(2, DiffOp::term(P("x1"), {0, 1})); // order 1 < 2
    CHECK(sigma(lower).is_zero());

    CHECK_THROWS_AS(sigma(FormalDiffOp::from_level(DiffOp::partial(2, 0), 0, N)), DomainError);

    Rng rng(51);
    for (int t = 0; t < 5; ++t) {
        const FormalDiffOp u = rng.natural_op(2, N, 2);
        const FormalDiffOp v = rng.natural_op(2, N, 2);
        CHECK(sigma(u.compose(v)) == sigma(u) * sigma(v));
    }
}

TEST_CASE("operator logarithm") {
    CHECK(op_log(FormalDiffOp::identity(2, N)).is_zero());

    // nu.log(1 - (nu/2) d2) from the scalar series: the k-th term is
    // -(1/(2^k k)) d2^k at level k+1.
    FormalDiffOp a = FormalDiffOp::identity(2, N);
    a -= FormalDiffOp::from_level(DiffOp::partial(2, 1), 1, N) * Rational(BigInt(1), BigInt(2));
    const FormalDiffOp x = op_log(a);
    FormalDiffOp expect(2, N + 1);
    BigInt pow2 = 2;
    for (int k = 1; k + 1 <= N + 1; ++k) {
        Exponents alpha{0, static_cast<unsigned>(k)};
        expect.set_level(k + 1,
                         DiffOp::term(Polynomial::constant(2, Rational(BigInt(-1), pow2 * k)), alpha));
        pow2 *= 2;
    }
    CHECK(x == expect);
    // round trip: exp(log A) recovers A at the original truncation
    CHECK(op_exp(x) == a);

    Rng rng(61);
    for (int t = 0; t < 4; ++t) {
        const FormalDiffOp b = unit_plus_nu(rng, 2, N);
        CHECK(op_exp(op_log(b)) == b);
    }

    CHECK_THROWS_AS(op_log(FormalDiffOp::multiplication(P("x1"), N)), DomainError);
}

TEST_CASE("operator exponential") {
    CHECK(op_exp(FormalDiffOp(2, N + 1)) == FormalDiffOp::identity(2, N));

    // exp(nu^2 d1 / nu) = sum nu^k d1^k / k!
    const FormalDiffOp x = FormalDiffOp::from_level(DiffOp::partial(2, 0), 2, N + 1);
    FormalDiffOp expect(2, N);
    BigInt kfact = 1;
    for (int k = 0; k <= N; ++k) {
        if (k > 0)
            kfact *= k;
        Exponents alpha{static_cast<unsigned>(k), 0};
        expect += FormalDiffOp::from_level(
            DiffOp::term(Polynomial::constant(2, Rational(BigInt(1), kfact)), alpha), k, N);
    }
    CHECK(op_exp(x) == expect);

    Rng rng(71);
    for (int t = 0; t < 4; ++t) {
        const FormalDiffOp g = rng.flow_generator(2, N + 1, 2);
        CHECK(op_exp(g).compose(op_exp(-g)) == FormalDiffOp::identity(2, N));
    }

    CHECK_THROWS_AS(op_exp(FormalDiffOp::identity(2, N)), DomainError);
}

TEST_CASE("operator inverse") {
    CHECK(op_invert(FormalDiffOp::identity(2, N)) == FormalDiffOp::identity(2, N));

    // (1 + nu d1)^{-1} = 1 - nu d1 + nu^2 d1^2 - ...
    const FormalDiffOp a =
        FormalDiffOp::identity(2, N) + FormalDiffOp::from_level(DiffOp::partial(2, 0), 1, N);
    FormalDiffOp expect(2, N);
    for (int k = 0; k <= N; ++k) {
        Exponents alpha{static_cast<unsigned>(k), 0};
        expect += FormalDiffOp::from_level(
            DiffOp::term(Polynomial::constant(2, Rational(k % 2 == 0 ? 1 : -1)), alpha), k, N);
    }
    CHECK(op_invert(a) == expect);

    Rng rng(81);
    for (int t = 0; t < 4; ++t) {
        const FormalDiffOp b = unit_plus_nu(rng, 2, N) * Rational(BigInt(3), BigInt(2));
        CHECK(op_invert(b).compose(b) == FormalDiffOp::identity(2, N));
        CHECK(b.compose(op_invert(b)) == FormalDiffOp::identity(2, N));
    }

    CHECK_THROWS_AS(op_invert(FormalDiffOp::multiplication(P("x1"), N)), DomainError);
    CHECK_THROWS_AS(op_invert(FormalDiffOp(2, N)), DomainError);
}

TEST_CASE("conjugation preserves naturality and flows symbols") {
    Rng rng(91);
    // natural B: trivial symbol action
    for (int t = 0; t < 3; ++t) {
        const FormalDiffOp b = unit_plus_nu(rng, 2, N);
        const FormalDiffOp a = rng.natural_op(2, N, 2);
        const FormalDiffOp conj = b.compose(a).compose(op_invert(b));
        REQUIRE(is_natural(conj));
        CHECK(sigma(conj) == sigma(a));
    }
    // B = exp(X/nu): acts on symbols by the flow of sigma(X)
    for (int t = 0; t < 3; ++t) {
        const FormalDiffOp x = rng.flow_generator(2, N, 2).extended(N + 1);
        const FormalDiffOp b = op_exp(x);
        const FormalDiffOp a = rng.natural_op(2, N, 2);
        const FormalDiffOp conj = b.compose(a).compose(op_invert(b));
        REQUIRE(is_natural(conj));
        CHECK(sigma(conj).truncated(N - 1) ==
              ham_flow(sigma(x).truncated(N), sigma(a), +1).truncated(N - 1));
    }
}
