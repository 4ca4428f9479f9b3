#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace pforms;
using namespace pforms::testing;

namespace {

DForm dx(int n, std::initializer_list<int> idx) { return DForm::coordinate_basis(n, idx); }

// 2x2 adjugate inverse, written independently of the library's elimination.
Matrix<Scalar> adjugate2(const Matrix<Scalar>& m) {
    Scalar det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Matrix<Scalar> inv(2, std::vector<Scalar>(2));
    inv[0][0] = m[1][1] / det;
    inv[0][1] = -m[0][1] / det;
    inv[1][0] = -m[1][0] / det;
    inv[1][1] = m[0][0] / det;
    return inv;
}

} // namespace

TEST_CASE("flat holonomic coframe") {
    FrameGeometry g = flat_geometry(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            DForm c = interior_product(g.frame[a], g.coframe[b]);
            if (a == b)
                CHECK(c == DForm::scalar(4, Scalar::one()));
            else
                CHECK(c.is_zero());
        }
    DForm vol(4, 4, Parity::Odd);
    vol.set(0b1111, Scalar::one());
    CHECK(g.volume == vol);
    CHECK(g.det == Scalar::one());
}

TEST_CASE("polynomial coframe inverts exactly") {
    // theta^0 = dx0, theta^1 = x0 dx0 + dx1: unimodular with polynomial inverse.
    Matrix<Scalar> m(2, std::vector<Scalar>(2));
    m[0][0] = Scalar::one();
    m[1][0] = S("x0");
    m[1][1] = Scalar::one();
    FrameGeometry g = build_geometry(m, std::vector<int>{1, 1});
    Matrix<Scalar> inv = adjugate2(m);
    for (int a = 0; a < 2; ++a)
        for (int mu = 0; mu < 2; ++mu)
            CHECK(g.frame_matrix[a][mu] == inv[mu][a]);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            DForm c = interior_product(g.frame[a], g.coframe[b]);
            if (a == b)
                CHECK(c == DForm::scalar(2, Scalar::one()));
            else
                CHECK(c.is_zero());
        }
}

TEST_CASE("singular and malformed coframes are rejected") {
    Matrix<Scalar> sing(2, std::vector<Scalar>(2));
    sing[0][0] = S("x0");
    sing[0][1] = S("x1");
    sing[1][0] = S("x0");
    sing[1][1] = S("x1");
    CHECK_THROWS_AS(build_geometry(sing, std::vector<int>{1, 1}), SingularCoframe);

    Matrix<Scalar> rect(2, std::vector<Scalar>(3));
    CHECK_THROWS_AS(build_geometry(rect, std::vector<int>{1, 1}), BadShape);
    Matrix<Scalar> id(2, std::vector<Scalar>(2));
    id[0][0] = id[1][1] = Scalar::one();
    CHECK_THROWS_AS(build_geometry(id, std::vector<int>{1, 2}), BadShape);
}

TEST_CASE("hodge star on basis forms") {
    // n=2 Euclidean: *(dx0) = dx1.
    FrameGeometry e2 = euclidean_geometry(2);
    DForm sdx0 = dx(2, {1});
    sdx0.parity = Parity::Odd;
    CHECK(hodge_star(e2, dx(2, {0})) == sdx0);

    // n=4 Minkowski: *(theta^0 ^ theta^1) = theta^2 ^ theta^3.
    FrameGeometry m4 = flat_geometry(4);
    DForm expect = dx(4, {2, 3});
    expect.parity = Parity::Odd;
    CHECK(hodge_star(m4, dx(4, {0, 1})) == expect);

    // Linearity and parity flip.
    CHECK(hodge_star(m4, DForm::zero(4, 2)).is_zero());
    SplitMix64 rng(31);
    GenBounds b;
    for (int trial = 0; trial < 8; ++trial) {
        DForm w = random_form(rng, 4, 2, Parity::Even, b);
        if (w.is_zero()) continue;
        CHECK(hodge_star(m4, w).parity == Parity::Odd);
    }
    CHECK_THROWS_AS(hodge_star(m4, dx(3, {0})), DimensionMismatch);
}

TEST_CASE("pairing symmetry and double dual") {
    GenBounds b;
    for (int n : {2, 3, 4}) {
        SplitMix64 rng(static_cast<std::uint64_t>(100 + n));
        for (int trial = 0; trial < 6; ++trial) {
            FrameGeometry g = random_geometry(rng, n);
            int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
            DForm alpha = random_form(rng, n, p, Parity::Even, b);
            DForm beta = random_form(rng, n, p, Parity::Even, b);
            // alpha ^ *beta = beta ^ *alpha.
            CHECK(sub(wedge(alpha, hodge_star(g, beta)), wedge(beta, hodge_star(g, alpha)))
                      .is_zero());
            // ** = (-1)^{p(n-p)} sgn(det eta).
            DForm twice = hodge_star(g, hodge_star(g, alpha));
            int s = ((p * (n - p)) % 2 == 0 ? 1 : -1) * g.sig_det();
            CHECK(sub(twice, scale(mpq_class(s), alpha)).is_zero());
        }
    }
}

TEST_CASE("volume form conventions") {
    FrameGeometry m4 = flat_geometry(4);
    // *(vol) = 1 and *1 = det(eta) vol under eps^{01...} = +1.
    DForm star_vol = hodge_star(m4, m4.volume);
    CHECK(star_vol.degree == 0);
    CHECK(star_vol.coeff(0) == Scalar::one());
    CHECK(star_vol.parity == Parity::Even);

    DForm star_one = hodge_star(m4, DForm::scalar(4, Scalar::one()));
    CHECK(star_one.coeff(0b1111) == Scalar(mpq_class(-1)));
    CHECK(star_one.parity == Parity::Odd);
}

TEST_CASE("hodge variation against the jet oracle") {
    GenBounds b;
    for (int n : {2, 3, 4}) {
        SplitMix64 rng(static_cast<std::uint64_t>(7700 + n));
        for (int trial = 0; trial < 20; ++trial) {
            FrameGeometry g = random_geometry(rng, n);
            int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
            DForm alpha = random_form(rng, n, p, Parity::Even, b);
            std::vector<DForm> dtheta = random_coframe_dots(rng, n, b);

            DForm formula = hodge_variation(g, dtheta, alpha);

            // Oracle: star over the jet geometry with the argument held
            // fixed; the t-coefficient is (delta *) alpha.
            JetFrameGeometry jg = jet_geometry(g, dtheta);
            DForm oracle = jet_dot(hodge_star(jg, jet_lift(alpha)));
            CHECK(sub(formula, oracle).is_zero());
        }
    }
}

TEST_CASE("hodge variation worked example") {
    // n=2 Euclidean flat, alpha = dx0, delta theta^0 = dx1: the oracle fixes
    // the answer to dx0.
    FrameGeometry e2 = euclidean_geometry(2);
    std::vector<DForm> dtheta{dx(2, {1}), DForm::zero(2, 1)};
    DForm alpha = dx(2, {0});
    DForm expect = dx(2, {0});
    expect.parity = Parity::Odd;
    DForm got = hodge_variation(e2, dtheta, alpha);
    CHECK(got == expect);
    JetFrameGeometry jg = jet_geometry(e2, dtheta);
    CHECK(sub(jet_dot(hodge_star(jg, jet_lift(alpha))), expect).is_zero());

    std::vector<DForm> zero_dots{DForm::zero(2, 1), DForm::zero(2, 1)};
    CHECK(hodge_variation(e2, zero_dots, alpha).is_zero());
}
