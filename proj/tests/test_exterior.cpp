#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace pforms;
using pforms::testing::S;
using pforms::testing::form;

namespace {

DForm dx(int n, std::initializer_list<int> idx) { return DForm::coordinate_basis(n, idx); }

VectorField coord(int n, int mu) { return VectorField::coordinate(n, mu); }

} // namespace

TEST_CASE("wedge basics") {
    const int n = 4;
    DForm a = dx(n, {1});
    DForm b = dx(n, {2});
    CHECK(wedge(a, b) == dx(n, {1, 2}));
    CHECK(wedge(b, a) == neg(dx(n, {1, 2})));
    CHECK(wedge(a, a).is_zero());

    // Bilinear expansion: (x2 dx1) ^ (x1 dx2) = x1 x2 dx1^dx2.
    DForm u = scale(S("x2"), dx(n, {1}));
    DForm v = scale(S("x1"), dx(n, {2}));
    CHECK(wedge(u, v) == scale(S("x1*x2"), dx(n, {1, 2})));

    // Degree overflow clamps to the zero top form.
    DForm top = dx(n, {0, 1, 2, 3});
    CHECK(wedge(top, a).is_zero());
    CHECK(wedge(top, a).degree == n);

    DForm other_dim = dx(3, {0});
    CHECK_THROWS_AS(wedge(a, other_dim), DimensionMismatch);
}

TEST_CASE("exterior derivative basics") {
    const int n = 4;
    // d(x1) = dx1.
    DForm f = DForm::scalar(n, S("x1"));
    CHECK(exterior_derivative(f) == dx(n, {1}));

    // Coefficient-partials oracle for d(x1 dx2): assemble sum_mu d_mu c dx^mu ^ dx^I
    // by hand for this one-term form.
    DForm g = scale(S("x1"), dx(n, {2}));
    DForm expect(n, 2);
    for (int mu = 0; mu < n; ++mu) {
        Scalar c = partial_derivative(S("x1"), mu, n);
        if (c.is_zero()) continue;
        expect = add(expect, scale(c, wedge(dx(n, {mu}), dx(n, {2}))));
    }
    CHECK(exterior_derivative(g) == expect);
    CHECK(exterior_derivative(g) == dx(n, {1, 2}));

    // d(d(x1 x2 dx3)) = 0.
    DForm h = scale(S("x1*x2"), dx(n, {3}));
    CHECK(exterior_derivative(exterior_derivative(h)).is_zero());

    // d of a top form is the zero top form by convention.
    DForm top = scale(S("x0"), dx(n, {0, 1, 2, 3}));
    DForm dtop = exterior_derivative(top);
    CHECK(dtop.is_zero());
    CHECK(dtop.degree == n);
}

TEST_CASE("interior product basics") {
    const int n = 4;
    CHECK(interior_product(coord(n, 1), dx(n, {1})) == DForm::scalar(n, Scalar::one()));
    CHECK(interior_product(coord(n, 1), dx(n, {2, 3})).is_zero());
    // (d_1, x2 dx1^dx2) -> x2 dx2.
    DForm a = scale(S("x2"), dx(n, {1, 2}));
    CHECK(interior_product(coord(n, 1), a) == scale(S("x2"), dx(n, {2})));
    // Contraction of a 0-form vanishes.
    CHECK(interior_product(coord(n, 0), DForm::scalar(n, S("x0"))).is_zero());
    CHECK_THROWS_AS(interior_product(coord(3, 0), dx(n, {1})), DimensionMismatch);
}

TEST_CASE("lie derivative basics") {
    const int n = 4;
    SplitMix64 rng(11);
    GenBounds b;
    // Degree-0 case reduces to X . df.
    VectorField X = random_vector_field(rng, n, b);
    DForm f = DForm::scalar(n, S("x0*x1 + x3"));
    CHECK(lie_derivative(X, f) == interior_product(X, exterior_derivative(f)));

    // (d_0, x0 dx1) -> dx1 (hand expansion of the homotopy formula).
    DForm a = scale(S("x0"), dx(n, {1}));
    CHECK(lie_derivative(coord(n, 0), a) == dx(n, {1}));

    // d commutes with the Lie derivative.
    for (int trial = 0; trial < 10; ++trial) {
        VectorField Y = random_vector_field(rng, n, b);
        DForm w = random_form(rng, n, 2, Parity::Even, b);
        CHECK(exterior_derivative(lie_derivative(Y, w)) ==
              lie_derivative(Y, exterior_derivative(w)));
    }
}

TEST_CASE("graded algebra properties on random forms") {
    const int n = 4;
    SplitMix64 rng(2024);
    GenBounds b;
    for (int trial = 0; trial < 25; ++trial) {
        int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
        int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
        Parity pa = rng.below(2) ? Parity::Odd : Parity::Even;
        Parity pb = rng.below(2) ? Parity::Odd : Parity::Even;
        DForm a = random_form(rng, n, p, pa, b);
        DForm bb = random_form(rng, n, q, pb, b);
        VectorField X = random_vector_field(rng, n, b);

        // Graded commutativity.
        DForm lhs = wedge(a, bb);
        DForm rhs = wedge(bb, a);
        if ((p * q) % 2 == 1) rhs = neg(rhs);
        CHECK(sub(lhs, rhs).is_zero());

        // Parity bookkeeping.
        if (!lhs.is_zero()) CHECK(lhs.parity == (pa ^ pb));

        // d^2 = 0.
        CHECK(exterior_derivative(exterior_derivative(a)).is_zero());

        // Graded Leibniz for d.
        DForm dl = exterior_derivative(wedge(a, bb));
        DForm dr = add(wedge(exterior_derivative(a), bb),
                       (p % 2 == 0) ? wedge(a, exterior_derivative(bb))
                                    : neg(wedge(a, exterior_derivative(bb))));
        CHECK(sub(dl, dr).is_zero());

        // Interior product is an anti-derivation and squares to zero.
        DForm il = interior_product(X, wedge(a, bb));
        DForm ir = add(wedge(interior_product(X, a), bb),
                       (p % 2 == 0) ? wedge(a, interior_product(X, bb))
                                    : neg(wedge(a, interior_product(X, bb))));
        CHECK(sub(il, ir).is_zero());
        CHECK(interior_product(X, interior_product(X, a)).is_zero());

        // Cartan naturality: L_X is a derivation over the wedge.
        DForm ll = lie_derivative(X, wedge(a, bb));
        DForm lr = add(wedge(lie_derivative(X, a), bb), wedge(a, lie_derivative(X, bb)));
        CHECK(sub(ll, lr).is_zero());

        // Degree/parity preservation of d, interior, Lie.
        DForm da = exterior_derivative(a);
        if (!da.is_zero()) {
            CHECK(da.parity == pa);
            CHECK(da.degree == p + 1);
        }
        DForm ia = interior_product(X, a);
        if (!ia.is_zero()) CHECK(ia.parity == pa);
        DForm la = lie_derivative(X, a);
        if (!la.is_zero()) {
            CHECK(la.parity == pa);
            CHECK(la.degree == p);
        }
    }
}

TEST_CASE("form text round-trip") {
    const int n = 4;
    DForm a = form("(3*x0) dx0^dx1 + dx2^dx3", n);
    CHECK(a.degree == 2);
    CHECK(a.parity == Parity::Even);
    CHECK(a.coeff(0b0011) == S("3*x0"));
    CHECK(a.coeff(0b1100) == S("1"));

    DForm b = form("(x1) dx0 !odd", n);
    CHECK(b.parity == Parity::Odd);

    SplitMix64 rng(7);
    GenBounds bounds;
    for (int trial = 0; trial < 20; ++trial) {
        int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
        Parity par = rng.below(2) ? Parity::Odd : Parity::Even;
        DForm w = random_form(rng, n, p, par, bounds);
        CHECK(parse_form(to_string(w), n) == w);
    }
    CHECK_THROWS_AS(form("", n), ParseError);
    CHECK_THROWS_AS(form("dx9", n), ParseError);
}
