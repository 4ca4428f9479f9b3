#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace pforms;
using pforms::testing::S;

namespace {

// Test-side long division: single-divisor reduction in graded-lex order,
// independent of Scalar's normalize path.
std::pair<Polynomial, Polynomial> long_divide(const Polynomial& a, const Polynomial& d) {
    Polynomial rem = a, quot;
    while (!rem.is_zero() && d.leading_monomial().divides(rem.leading_monomial())) {
        Monomial qm = rem.leading_monomial() / d.leading_monomial();
        mpq_class qc = rem.leading_coefficient() / d.leading_coefficient();
        quot.add_term(qm, qc);
        rem -= d * Polynomial::term(qm, qc);
    }
    return {quot, rem};
}

Scalar random_rational_function(SplitMix64& rng, int n, const GenBounds& b) {
    Polynomial num = random_polynomial(rng, n, b);
    Polynomial den = random_polynomial(rng, n, b);
    if (den.is_zero()) den = Polynomial(1);
    return Scalar(num, den);
}

} // namespace

TEST_CASE("field arithmetic on the worked examples") {
    CHECK(scalar_arith(S("x1"), S("x1"), ScalarOp::Sub).is_zero());
    CHECK(scalar_arith(S("x1/x2"), S("x2"), ScalarOp::Mul) == S("x1"));

    // Long-division oracle for (x1^2 - 1) / (x1 - 1).
    Polynomial a = parse_scalar("x1^2 - 1").num();
    Polynomial d = parse_scalar("x1 - 1").num();
    auto [quot, rem] = long_divide(a, d);
    CHECK(rem.is_zero());
    CHECK(Scalar(quot) == S("x1 + 1"));
    CHECK(scalar_arith(S("x1^2 - 1"), S("x1 - 1"), ScalarOp::Div) == Scalar(quot));
}

TEST_CASE("division by zero scalar") {
    CHECK_THROWS_AS(scalar_arith(S("x0"), Scalar(), ScalarOp::Div), DivisionByZero);
}

TEST_CASE("partial derivatives") {
    CHECK(partial_derivative(S("x1*x2"), 1, 4) == S("x2"));
    CHECK(partial_derivative(S("7"), 2, 4).is_zero());

    // Quotient-rule oracle for d/dx2 (x1/x2).
    Scalar s = S("x1/x2");
    Polynomial n = s.num(), d = s.den();
    Scalar oracle(n.derivative(2) * d - n * d.derivative(2), d * d);
    CHECK(partial_derivative(s, 2, 4) == oracle);
    CHECK(oracle == S("-x1/(x2^2)"));

    CHECK_THROWS_AS(partial_derivative(S("x0"), 9, 4), BadIndex);
    CHECK_THROWS_AS(partial_derivative(S("x0"), -1, 4), BadIndex);
}

TEST_CASE("equality decision procedure") {
    CHECK(scalar_eq(S("x1/x1"), S("1")));
    CHECK(scalar_eq(S("x1 + x2"), S("x2 + x1")));
    // Expansion oracle: build (x1+1)^2 by explicit multiplication.
    Scalar lhs = S("x1 + 1") * S("x1 + 1");
    CHECK(scalar_eq(lhs, S("x1^2 + 2*x1 + 1")));
    CHECK_FALSE(scalar_eq(S("x1"), S("x2")));
}

TEST_CASE("ring axioms on randomized triples") {
    SplitMix64 rng(20240811);
    GenBounds b;
    for (int trial = 0; trial < 40; ++trial) {
        Scalar x = random_rational_function(rng, 3, b);
        Scalar y = random_rational_function(rng, 3, b);
        Scalar z = random_rational_function(rng, 3, b);
        CHECK(scalar_eq((x + y) + z, x + (y + z)));
        CHECK(scalar_eq((x * y) * z, x * (y * z)));
        CHECK(scalar_eq(x * (y + z), x * y + x * z));
        CHECK(scalar_eq(x + y, y + x));
        CHECK(scalar_eq(x * y, y * x));
    }
}

TEST_CASE("derivation properties") {
    SplitMix64 rng(77);
    GenBounds b;
    for (int trial = 0; trial < 40; ++trial) {
        Scalar x = random_rational_function(rng, 3, b);
        Scalar y = random_rational_function(rng, 3, b);
        int mu = static_cast<int>(rng.below(3));
        int nu = static_cast<int>(rng.below(3));
        // Leibniz rule.
        CHECK(scalar_eq((x * y).derivative(mu), x.derivative(mu) * y + x * y.derivative(mu)));
        // Mixed partials commute.
        CHECK(scalar_eq(x.derivative(mu).derivative(nu), x.derivative(nu).derivative(mu)));
    }
}

TEST_CASE("canonical and cross-multiplied equality agree") {
    SplitMix64 rng(99);
    GenBounds b;
    for (int trial = 0; trial < 60; ++trial) {
        Scalar x = random_rational_function(rng, 3, b);
        Scalar y = random_rational_function(rng, 3, b);
        CHECK((x == y) == x.equals_cross(y));
        // A value and its unreduced clone must agree under both paths.
        Polynomial junk = random_polynomial(rng, 3, b);
        if (junk.is_zero()) junk = Polynomial(1);
        Scalar clone(x.num() * junk, x.den() * junk);
        CHECK(x == clone);
        CHECK(x.equals_cross(clone));
    }
}

TEST_CASE("canonical representation invariants") {
    SplitMix64 rng(4242);
    GenBounds b;
    for (int trial = 0; trial < 40; ++trial) {
        Scalar x = random_rational_function(rng, 3, b);
        if (x.is_zero()) {
            CHECK(x.den() == Polynomial(1));
            continue;
        }
        CHECK(poly_gcd(x.num(), x.den()).is_constant());
        CHECK(x.den().rational_content() == 1);  // integer-primitive, positive lead
    }
}

TEST_CASE("scalar text round-trip") {
    SplitMix64 rng(5);
    GenBounds b;
    for (int trial = 0; trial < 30; ++trial) {
        Scalar x = random_rational_function(rng, 4, b);
        CHECK(parse_scalar(to_string(x)) == x);
    }
    CHECK(to_string(S("3*x0^2*x1 - 1/2")) == "3*x0^2*x1 - 1/2");
    CHECK_THROWS_AS(parse_scalar("x0 + "), ParseError);
    CHECK_THROWS_AS(parse_scalar("(x0"), ParseError);
}
