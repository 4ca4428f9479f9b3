#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pforms/models.hpp"
#include "support.hpp"

using namespace pforms;
using namespace pforms::testing;

namespace {

// Jet-oracle cross-check of the full collection: the t-coefficient of the
// evaluated Lagrangian at a perturbed configuration must equal
// dpsi ^ sigma + d(dpsi) ^ pi + dtheta^a ^ Sigma_a + d(dtheta^a) ^ Pi_a.
void check_collection_against_jet(const Model& model, const FieldConfig& cfg,
                                  const DerivedCurrents& dc, SplitMix64& rng,
                                  const GenBounds& b) {
    auto fdots = random_field_dots(rng, model, b);
    auto cdots = random_coframe_dots(rng, model.n, b);
    DForm lhs = lagrangian_jet_dot(model.ast, model.decls, cfg, fdots, cdots);

    DForm rhs = DForm::zero(model.n, model.n, dc.lag_parity);
    if (dc.has_matter) {
        const DForm& dpsi = fdots.at(dc.matter);
        rhs = add(rhs, wedge(dpsi, dc.sigma));
        rhs = add(rhs, wedge(exterior_derivative(dpsi), dc.pi));
    }
    for (int a = 0; a < model.n; ++a) {
        rhs = add(rhs, wedge(cdots[static_cast<std::size_t>(a)],
                             dc.Sigma[static_cast<std::size_t>(a)]));
        rhs = add(rhs, wedge(exterior_derivative(cdots[static_cast<std::size_t>(a)]),
                             dc.Pi[static_cast<std::size_t>(a)]));
    }
    CHECK(sub(lhs, rhs).is_zero());
}

} // namespace

TEST_CASE("maxwell currents: the worked closed forms") {
    SplitMix64 rng(101);
    GenBounds b;
    b.poly_degree = 1;
    b.terms = 2;
    Model mx = maxwell_model(4, 1);
    for (int trial = 0; trial < 3; ++trial) {
        FieldConfig cfg = generate_config(rng.next(), b, mx, Mode::Dynamical, false);
        DerivedCurrents dc = variational_derivatives(mx.ast, mx.decls, cfg);
        DForm F = exterior_derivative(cfg.fields.at("A"));
        DForm sF = hodge_star(cfg.geom, F);

        // The potential carries no direct current; the momentum is -*F under
        // the left-factored collection of L = -1/2 F ^ *F.
        CHECK(dc.sigma.is_zero());
        CHECK(add(dc.pi, sF).is_zero());
        for (int a = 0; a < 4; ++a)
            CHECK(sub(dc.Sigma[static_cast<std::size_t>(a)],
                      maxwell_expected_sigma(cfg.geom, F, 1, a))
                      .is_zero());
        for (int a = 0; a < 4; ++a) CHECK(dc.Pi[static_cast<std::size_t>(a)].is_zero());

        // Field equation: Emat = d(pi) = -d*F, so Emat + d*F = 0.
        CHECK(add(dc.Emat, exterior_derivative(sF)).is_zero());

        // Parity of every collected current follows the odd Lagrangian.
        if (!dc.pi.is_zero()) CHECK(dc.pi.parity == Parity::Odd);
        for (int a = 0; a < 4; ++a)
            if (!dc.Sigma[static_cast<std::size_t>(a)].is_zero())
                CHECK(dc.Sigma[static_cast<std::size_t>(a)].parity == Parity::Odd);
    }
}

TEST_CASE("coframe model currents: the worked closed forms") {
    SplitMix64 rng(202);
    GenBounds b;
    b.poly_degree = 1;
    b.terms = 1;
    b.coeff_bound = 4;
    Model gr = coframe_gr_model();
    for (int trial = 0; trial < 2; ++trial) {
        FieldConfig cfg = generate_config(rng.next(), b, gr, Mode::Dynamical, false);
        DerivedCurrents dc = variational_derivatives(gr.ast, gr.decls, cfg);
        auto F = gr_f_forms(cfg.geom);
        auto C = gr_c_forms(cfg.geom);

        // L = 1/2 C_a ^ *F^a.
        DForm half(4, 4, Parity::Odd);
        for (int a = 0; a < 4; ++a)
            half = add(half, scale(mpq_class(cfg.geom.sig(a), 2),
                                   wedge(C[static_cast<std::size_t>(a)],
                                         hodge_star(cfg.geom, F[static_cast<std::size_t>(a)]))));
        CHECK(sub(dc.L, half).is_zero());

        // Pi_a = *F_a.
        for (int a = 0; a < 4; ++a) {
            DForm sf = scale(mpq_class(cfg.geom.sig(a)),
                             hodge_star(cfg.geom, F[static_cast<std::size_t>(a)]));
            CHECK(sub(dc.Pi[static_cast<std::size_t>(a)], sf).is_zero());
        }

        // Sigma_a = e_a . L - (e_a . C^b) ^ *F_b.
        for (int a = 0; a < 4; ++a) {
            const auto& e_a = cfg.geom.frame[static_cast<std::size_t>(a)];
            DForm expect = interior_product(e_a, dc.L);
            for (int bb = 0; bb < 4; ++bb) {
                DForm t = wedge(interior_product(e_a, C[static_cast<std::size_t>(bb)]),
                                hodge_star(cfg.geom, F[static_cast<std::size_t>(bb)]));
                expect = sub(expect, scale(mpq_class(cfg.geom.sig(bb)), t));
            }
            CHECK(sub(dc.Sigma[static_cast<std::size_t>(a)], expect).is_zero());
        }
    }

    // Flat fixture: everything vanishes and the field equation holds.
    FieldConfig flat = generate_config(1, b, gr, Mode::Dynamical, true);
    DerivedCurrents dc = variational_derivatives(gr.ast, gr.decls, flat);
    CHECK(dc.L.is_zero());
    for (int a = 0; a < 4; ++a) {
        CHECK(dc.Sigma[static_cast<std::size_t>(a)].is_zero());
        CHECK(dc.Pi[static_cast<std::size_t>(a)].is_zero());
        CHECK(dc.Egr[static_cast<std::size_t>(a)].is_zero());
    }
    for (const auto& f : gr_f_forms(flat.geom)) CHECK(f.is_zero());
}

TEST_CASE("premetric currents and the single field equation") {
    SplitMix64 rng(303);
    GenBounds b;
    b.poly_degree = 1;
    b.terms = 2;
    for (int trial = 0; trial < 2; ++trial) {
        ConstitutiveTensor chi = random_chi(rng, 4, /*symmetric=*/true);
        DForm j0(4, 3, Parity::Odd);
        Model ed = electrodynamics_model(chi, j0);
        FieldConfig cfg = generate_config(rng.next(), b, ed, Mode::Dynamical, false);
        DerivedCurrents dc = variational_derivatives(ed.ast, ed.decls, cfg);
        DForm F = exterior_derivative(cfg.fields.at("A"));
        DForm H = constitutive_map(chi, F, cfg.geom);

        CHECK(dc.sigma.is_zero());
        CHECK(add(dc.pi, H).is_zero());  // pi = -H
        CHECK(add(dc.Emat, exterior_derivative(H)).is_zero());  // dH = 0 is the equation
        for (int a = 0; a < 4; ++a)
            CHECK(sub(dc.Sigma[static_cast<std::size_t>(a)],
                      electro_expected_sigma(cfg.geom, F, H, a))
                      .is_zero());
    }
}

TEST_CASE("collection vs jet oracle on random configurations") {
    GenBounds b;
    b.poly_degree = 1;
    b.terms = 2;
    b.coeff_bound = 5;

    SUBCASE("maxwell(4,1)") {
        SplitMix64 rng(11);
        Model m = maxwell_model(4, 1);
        for (int trial = 0; trial < 4; ++trial) {
            FieldConfig cfg = generate_config(rng.next(), b, m, Mode::Dynamical, false);
            DerivedCurrents dc = variational_derivatives(m.ast, m.decls, cfg);
            check_collection_against_jet(m, cfg, dc, rng, b);
        }
    }
    SUBCASE("maxwell(3,0) and maxwell(5,2)") {
        for (auto [n, p] : {std::pair{3, 0}, std::pair{5, 2}}) {
            SplitMix64 rng(static_cast<std::uint64_t>(n * 100 + p));
            Model m = maxwell_model(n, p);
            FieldConfig cfg = generate_config(rng.next(), b, m, Mode::Dynamical, false);
            DerivedCurrents dc = variational_derivatives(m.ast, m.decls, cfg);
            check_collection_against_jet(m, cfg, dc, rng, b);
        }
    }
    SUBCASE("coframe-gr") {
        SplitMix64 rng(13);
        GenBounds bg = b;
        bg.terms = 1;
        bg.coeff_bound = 3;
        Model m = coframe_gr_model();
        for (int trial = 0; trial < 2; ++trial) {
            FieldConfig cfg = generate_config(rng.next(), bg, m, Mode::Dynamical, false);
            DerivedCurrents dc = variational_derivatives(m.ast, m.decls, cfg);
            check_collection_against_jet(m, cfg, dc, rng, bg);
        }
    }
    SUBCASE("premetric-ed") {
        SplitMix64 rng(17);
        ConstitutiveTensor chi = random_chi(rng, 3, true);
        DForm j0(4, 3, Parity::Odd);
        Model m = electrodynamics_model(chi, j0);
        for (int trial = 0; trial < 2; ++trial) {
            FieldConfig cfg = generate_config(rng.next(), b, m, Mode::Dynamical, false);
            DerivedCurrents dc = variational_derivatives(m.ast, m.decls, cfg);
            check_collection_against_jet(m, cfg, dc, rng, b);
        }
    }
}

TEST_CASE("euler_lagrange bundles the equation forms") {
    SplitMix64 rng(41);
    GenBounds b;
    b.poly_degree = 1;
    Model m = maxwell_model(4, 1);
    FieldConfig cfg = generate_config(rng.next(), b, m, Mode::Dynamical, false);
    DerivedCurrents dc = variational_derivatives(m.ast, m.decls, cfg);
    EulerLagrange el = euler_lagrange(dc);
    CHECK(sub(el.Emat, dc.Emat).is_zero());
    for (int a = 0; a < 4; ++a) {
        CHECK(sub(el.Egr[static_cast<std::size_t>(a)],
                  add(dc.Sigma[static_cast<std::size_t>(a)],
                      exterior_derivative(dc.Pi[static_cast<std::size_t>(a)])))
                  .is_zero());
    }
}

TEST_CASE("zero Lagrangian yields zero currents") {
    FieldDecls decls = {FieldDecl{"A", FieldDecl::Kind::Matter, 1, Parity::Even},
                        FieldDecl{"theta", FieldDecl::Kind::Coframe, 1, Parity::Even}};
    ExprPtr zero = parse_lagrangian("0", decls);
    FieldConfig cfg;
    cfg.geom = flat_geometry(4);
    cfg.fields.emplace("A", DForm::zero(4, 1));
    DerivedCurrents dc = variational_derivatives(zero, decls, cfg);
    CHECK(dc.L.is_zero());
    CHECK(dc.Emat.is_zero());
    for (int a = 0; a < 4; ++a) CHECK(dc.Egr[static_cast<std::size_t>(a)].is_zero());
}

TEST_CASE("d over a star-bearing subtree is rejected for collection") {
    FieldDecls decls = {FieldDecl{"A", FieldDecl::Kind::Matter, 1, Parity::Even},
                        FieldDecl{"theta", FieldDecl::Kind::Coframe, 1, Parity::Even}};
    ExprPtr bad = parse_lagrangian("A ^ d(star(d(A)))", decls);
    FieldConfig cfg;
    cfg.geom = flat_geometry(4);
    cfg.fields.emplace("A", DForm::coordinate_basis(4, {1}));
    CHECK_THROWS_AS(variational_derivatives(bad, decls, cfg), UnsupportedNode);
    // Plain evaluation still works on the same expression.
    CHECK_NOTHROW(evaluate(bad, decls, cfg));
}
