#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "pforms/models.hpp"
#include "support.hpp"

using namespace pforms;
using namespace pforms::testing;

namespace {

FieldDecls decls_for(int p) {
    return {FieldDecl{"A", FieldDecl::Kind::Matter, p, Parity::Even},
            FieldDecl{"theta", FieldDecl::Kind::Coframe, 1, Parity::Even}};
}

DForm dx(int n, std::initializer_list<int> idx) { return DForm::coordinate_basis(n, idx); }

} // namespace

TEST_CASE("parsing the Maxwell-type Lagrangian") {
    FieldDecls decls = decls_for(1);
    ExprPtr e = parse_lagrangian("-1/2 * (d A) ^ star(d A)", decls);
    REQUIRE(e->kind == NodeKind::ScalarMul);
    CHECK(e->factor == mpq_class(-1, 2));
    REQUIRE(e->kids.size() == 1);
    const auto& w = e->kids[0];
    REQUIRE(w->kind == NodeKind::Wedge);
    CHECK(w->kids[0]->kind == NodeKind::ExteriorD);
    CHECK(w->kids[1]->kind == NodeKind::Hodge);
    CHECK(w->kids[1]->kids[0]->kind == NodeKind::ExteriorD);
    CHECK(w->kids[0]->kids[0]->name == "A");
}

TEST_CASE("parse errors carry position and unknown fields are rejected") {
    FieldDecls decls = decls_for(1);
    CHECK_THROWS_AS(parse_lagrangian("", decls), ParseError);
    CHECK_THROWS_AS(parse_lagrangian("d A ^", decls), ParseError);
    CHECK_THROWS_AS(parse_lagrangian("B ^ d B", decls), UnknownField);
    try {
        parse_lagrangian("d A ^\n  star(", decls);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("parsing the coframe Lagrangian with contracted index pairs") {
    Model gr = coframe_gr_model();
    REQUIRE(gr.ast != nullptr);
    ExprPtr e = gr.ast;
    REQUIRE(e->kind == NodeKind::Sum);
    bool found_contract = false;
    std::function<void(const ExprPtr&)> scan = [&](const ExprPtr& x) {
        if (x->kind == NodeKind::Contract) {
            found_contract = true;
            CHECK(x->bound.size() == 2);
        }
        for (const auto& k : x->kids) scan(k);
    };
    scan(e);
    CHECK(found_contract);
    // The expansion is sum-free.
    ExprPtr ex = expand_sums(e, 4);
    std::function<bool(const ExprPtr&)> has_contract = [&](const ExprPtr& x) {
        if (x->kind == NodeKind::Contract) return true;
        for (const auto& k : x->kids)
            if (has_contract(k)) return true;
        return false;
    };
    CHECK_FALSE(has_contract(ex));
}

TEST_CASE("typecheck classifies viability") {
    FieldDecls decls = decls_for(1);
    ExprPtr maxwell = parse_lagrangian("-1/2 * d(A) ^ star(d(A))", decls);
    TypeInfo t = typecheck(maxwell, decls, 4);
    CHECK(t.degree == 4);
    CHECK(t.parity == Parity::Odd);
    CHECK(t.viable);
    CHECK(t.warnings.empty());

    ExprPtr cs = parse_lagrangian("A ^ d A", decls);
    TypeInfo t2 = typecheck(cs, decls, 3);
    CHECK(t2.degree == 3);
    CHECK(t2.parity == Parity::Even);
    CHECK_FALSE(t2.viable);
    CHECK_FALSE(t2.warnings.empty());

    // Unbound frame index.
    CHECK_THROWS_AS(typecheck(parse_lagrangian("star(star(theta[a]))", decls), decls, 4),
                    TypeError);
    // Degree overflow inside a Hodge argument.
    ExprPtr overflow = parse_lagrangian("star(d(A) ^ d(A) ^ d(A))", decls);
    CHECK_THROWS_AS(typecheck(overflow, decls, 4), TypeError);
    // Mixed-degree sum.
    CHECK_THROWS_AS(typecheck(parse_lagrangian("A + d(A)", decls), decls, 4), TypeError);
    // Coframe reference without an index.
    CHECK_THROWS_AS(typecheck(parse_lagrangian("theta ^ A", decls), decls, 4), TypeError);
}

TEST_CASE("evaluation of the Maxwell Lagrangian") {
    Model mx = maxwell_model(4, 1);
    FrameGeometry g = flat_geometry(4);

    FieldConfig cfg;
    cfg.geom = g;
    cfg.fields.emplace("A", DForm::zero(4, 1));
    CHECK(evaluate(mx.ast, mx.decls, cfg).is_zero());

    // Constant F = c dx0^dx1 via A = c x0 dx1; value fixed by the
    // componentwise oracle with the vacuum constitutive tensor.
    mpq_class c(3, 2);
    FieldConfig cfg2;
    cfg2.geom = g;
    DForm A(4, 1);
    A.set(IndexMask{1} << 1, Scalar(c) * Scalar::variable(0));
    cfg2.fields.emplace("A", A);
    DForm L = evaluate(mx.ast, mx.decls, cfg2);

    DForm F = exterior_derivative(A);
    ConstitutiveTensor vac = ConstitutiveTensor::vacuum({-1, 1, 1, 1});
    DForm oracle = electro_componentwise_lagrangian(vac, F, g);
    CHECK(sub(L, oracle).is_zero());
    // Explicitly: L = -(c^2/2) vol for this configuration.
    DForm expect = scale(Scalar(-c * c / 2), g.volume);
    CHECK(sub(L, expect).is_zero());

    // The electrodynamics model with vacuum chi evaluates to the same value.
    DForm j0(4, 3, Parity::Odd);
    Model ed = electrodynamics_model(vac, j0);
    CHECK(sub(evaluate(ed.ast, ed.decls, cfg2), L).is_zero());

    // Degree-mismatched assignment is rejected.
    FieldConfig bad;
    bad.geom = g;
    bad.fields.emplace("A", dx(4, {0, 1}));
    CHECK_THROWS_AS(evaluate(mx.ast, mx.decls, bad), ConfigError);
}

TEST_CASE("componentwise agreement for random premetric configurations") {
    SplitMix64 rng(505);
    GenBounds b;
    for (int trial = 0; trial < 6; ++trial) {
        ConstitutiveTensor chi = random_chi(rng, 5, false);
        DForm j0(4, 3, Parity::Odd);
        Model ed = electrodynamics_model(chi, j0);
        FieldConfig cfg = generate_config(rng.next(), b, ed, Mode::Dynamical, false);
        DForm L = evaluate(ed.ast, ed.decls, cfg);
        DForm F = exterior_derivative(cfg.fields.at("A"));
        CHECK(sub(L, electro_componentwise_lagrangian(chi, F, cfg.geom)).is_zero());
        if (!L.is_zero()) {
            CHECK(L.degree == 4);
            CHECK(L.parity == Parity::Odd);
        }
    }
}

TEST_CASE("evaluated degree and parity match the typechecker") {
    Model mx = maxwell_model(4, 1);
    SplitMix64 rng(99);
    GenBounds b;
    TypeInfo info = typecheck(mx.ast, mx.decls, 4);
    for (int trial = 0; trial < 4; ++trial) {
        FieldConfig cfg = generate_config(rng.next(), b, mx, Mode::Dynamical, false);
        DForm L = evaluate(mx.ast, mx.decls, cfg);
        if (L.is_zero()) continue;
        CHECK(L.degree == info.degree);
        CHECK(L.parity == info.parity);
    }
}

TEST_CASE("ast printer round trip through the parser") {
    FieldDecls decls = decls_for(1);
    for (const std::string& text :
         {std::string("-1/2 * d(A) ^ star(d(A))"), std::string("A ^ d A"),
          std::string("sum(a; theta[a] ^ star(d theta_[a]))"),
          std::string("3 * A ^ star(A) - 1/7 * d(A) ^ star(d(A))")}) {
        ExprPtr e = parse_lagrangian(text, decls);
        ExprPtr e2 = parse_lagrangian(ast_to_string(e), decls);
        CHECK(ast_to_string(e) == ast_to_string(e2));
    }
}
