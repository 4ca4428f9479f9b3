#include "pforms/noether.hpp"

namespace pforms {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Pure: return "pure";
        case Mode::FixedBackground: return "fixed-background";
        case Mode::Dynamical: return "dynamical";
    }
    return "?";
}

namespace {

const DForm* matter_value(const FieldDecls& decls, const FieldConfig& cfg,
                          const DerivedCurrents& dc) {
    if (!dc.has_matter) return nullptr;
    return &cfg.fields.at(dc.matter);
}

void require_holonomic(const FieldConfig& cfg) {
    for (const auto& th : cfg.geom.coframe)
        if (!exterior_derivative(th).is_zero())
            throw ConfigError("fixed-background mode requires a holonomic coframe (d theta = 0)");
}

} // namespace

NoetherBundle noether_current(const FieldDecls& decls, const FieldConfig& cfg,
                              const DerivedCurrents& dc, const VectorField& xi, Mode mode) {
    const int n = cfg.geom.dim;
    if (xi.dim != n) throw DimensionMismatch("generator dimension");
    if (mode == Mode::FixedBackground) require_holonomic(cfg);

    NoetherBundle b;
    b.mode = mode;
    b.xi = xi;

    const DForm* psi = matter_value(decls, cfg, dc);
    DForm theta_part = DForm::zero(n, n - 1, dc.lag_parity);
    DForm s = neg(interior_product(xi, dc.L));
    DForm q = DForm::zero(n, n - 2, dc.lag_parity);
    DForm rem = DForm::zero(n, n - 1, dc.lag_parity);

    if (psi) {
        DForm dpsi = exterior_derivative(*psi);
        DForm lie_psi = lie_derivative(xi, *psi);
        theta_part = add(theta_part, wedge(lie_psi, dc.pi));
        s = add(s, wedge(interior_product(xi, dpsi), dc.pi));
        s = add(s, wedge(interior_product(xi, *psi), dc.sigma));
        q = add(q, wedge(interior_product(xi, *psi), dc.pi));
        rem = sub(rem, wedge(interior_product(xi, *psi), dc.Emat));
    }
    if (mode == Mode::Dynamical) {
        for (int a = 0; a < n; ++a) {
            const DForm& th = cfg.geom.coframe[static_cast<std::size_t>(a)];
            DForm dth = exterior_derivative(th);
            theta_part = add(theta_part, wedge(lie_derivative(xi, th), dc.Pi[static_cast<std::size_t>(a)]));
            s = add(s, wedge(interior_product(xi, dth), dc.Pi[static_cast<std::size_t>(a)]));
            s = add(s, wedge(interior_product(xi, th), dc.Sigma[static_cast<std::size_t>(a)]));
            q = add(q, wedge(interior_product(xi, th), dc.Pi[static_cast<std::size_t>(a)]));
            rem = sub(rem, wedge(interior_product(xi, th), dc.Egr[static_cast<std::size_t>(a)]));
        }
    }

    b.Theta = add(neg(interior_product(xi, dc.L)), theta_part);
    b.S = s;
    b.Q = q;
    b.remainder = rem;
    return b;
}

DForm decompose_residual(const NoetherBundle& b, const DerivedCurrents& dc) {
    (void)dc;
    DForm r = sub(b.Theta, b.S);
    r = sub(r, exterior_derivative(b.Q));
    r = sub(r, b.remainder);
    return r;
}

CascadeResiduals cascade_residuals(const FieldDecls& decls, const FieldConfig& cfg,
                                   const DerivedCurrents& dc, Mode mode) {
    const int n = cfg.geom.dim;
    if (mode == Mode::FixedBackground) require_holonomic(cfg);
    const DForm* psi = matter_value(decls, cfg, dc);
    DForm dpsi = psi ? exterior_derivative(*psi) : DForm::zero(n, 0);

    CascadeResiduals out;
    for (int a = 0; a < n; ++a) {
        const auto& e_a = cfg.geom.frame[static_cast<std::size_t>(a)];
        DForm s = neg(interior_product(e_a, dc.L));
        if (psi) {
            s = add(s, wedge(interior_product(e_a, dpsi), dc.pi));
            s = add(s, wedge(interior_product(e_a, *psi), dc.sigma));
        }
        if (mode == Mode::Dynamical) {
            for (int bdx = 0; bdx < n; ++bdx) {
                const DForm& th = cfg.geom.coframe[static_cast<std::size_t>(bdx)];
                s = add(s, wedge(interior_product(e_a, exterior_derivative(th)),
                                 dc.Pi[static_cast<std::size_t>(bdx)]));
                s = add(s, wedge(interior_product(e_a, th), dc.Sigma[static_cast<std::size_t>(bdx)]));
            }
        }
        out.r1.push_back(exterior_derivative(s));
        if (mode == Mode::FixedBackground) {
            out.r2.push_back(add(s, dc.Sigma[static_cast<std::size_t>(a)]));
        } else {
            out.r2.push_back(s);
        }
    }
    return out;
}

std::vector<DForm> noether_identity_residual(const FieldDecls& decls, const FieldConfig& cfg,
                                             const DerivedCurrents& dc) {
    const int n = cfg.geom.dim;
    const DForm* psi = matter_value(decls, cfg, dc);
    DForm dpsi = psi ? exterior_derivative(*psi) : DForm::zero(n, 0);
    DForm dsigma = exterior_derivative(dc.sigma);
    mpq_class sgn_p = (dc.p % 2 == 0) ? 1 : -1;  // (-1)^p

    std::vector<DForm> out;
    for (int a = 0; a < n; ++a) {
        const auto& e_a = cfg.geom.frame[static_cast<std::size_t>(a)];
        DForm rhs = DForm::zero(n, n, dc.lag_parity);
        if (psi) {
            rhs = add(rhs, wedge(interior_product(e_a, dpsi), dc.Emat));
            rhs = add(rhs, scale(sgn_p, wedge(interior_product(e_a, *psi), dsigma)));
        }
        for (int bdx = 0; bdx < n; ++bdx) {
            const DForm& th = cfg.geom.coframe[static_cast<std::size_t>(bdx)];
            rhs = add(rhs, wedge(interior_product(e_a, exterior_derivative(th)),
                                 dc.Egr[static_cast<std::size_t>(bdx)]));
        }
        out.push_back(sub(exterior_derivative(dc.Sigma[static_cast<std::size_t>(a)]), rhs));
    }
    return out;
}

DForm conservation_residual(const FieldDecls& decls, const FieldConfig& cfg,
                            const DerivedCurrents& dc, const NoetherBundle& b) {
    const int n = cfg.geom.dim;
    DForm r = exterior_derivative(b.Theta);
    const DForm* psi = matter_value(decls, cfg, dc);
    if (psi) r = add(r, wedge(lie_derivative(b.xi, *psi), dc.Emat));
    if (b.mode == Mode::Dynamical) {
        for (int a = 0; a < n; ++a)
            r = add(r, wedge(lie_derivative(b.xi, cfg.geom.coframe[static_cast<std::size_t>(a)]),
                             dc.Egr[static_cast<std::size_t>(a)]));
    } else {
        // With the coframe held non-dynamical the Lagrangian variation still
        // carries the coframe response pointwise: the exact statement is
        // d Theta + L_xi psi ^ Emat + L_xi theta^a ^ Sigma_a
        //         + L_xi(d theta^a) ^ Pi_a = 0.
        for (int a = 0; a < n; ++a) {
            const DForm& th = cfg.geom.coframe[static_cast<std::size_t>(a)];
            r = add(r, wedge(lie_derivative(b.xi, th), dc.Sigma[static_cast<std::size_t>(a)]));
            r = add(r, wedge(lie_derivative(b.xi, exterior_derivative(th)),
                             dc.Pi[static_cast<std::size_t>(a)]));
        }
    }
    return r;
}

DForm ShiftSpec::shifted_charge(const VectorField& xi, const DForm& q_unshifted) const {
    return add(q_unshifted, interior_product(xi, lambda_value));
}

ShiftSpec apply_total_derivative_shift(const ExprPtr& lagr, const ExprPtr& lambda,
                                       const FieldDecls& decls, const FieldConfig& cfg) {
    const int n = cfg.geom.dim;
    TypeInfo ti = typecheck(lambda, decls, n);
    if (ti.degree != n - 1)
        throw TypeError("shift form must have degree n-1, got " + std::to_string(ti.degree));

    ShiftSpec s;
    s.lambda_ast = lambda;
    s.lambda_value = evaluate(lambda, decls, cfg);
    s.original = variational_derivatives(lagr, decls, cfg);

    try {
        SlotCurrents lam = collect_expression_currents(lambda, decls, cfg);
        s.lam_sigma = lam.d_psi;
        s.lam_pi = lam.d_dpsi;
        s.lam_Sigma = lam.d_theta;
        s.lam_Pi = lam.d_dtheta;
        s.collectible = true;
    } catch (const UnsupportedNode&) {
        s.collectible = false;
    }

    if (s.collectible) {
        try {
            s.shifted = variational_derivatives(make_sum({lagr, make_d(lambda)}), decls, cfg);
        } catch (const UnsupportedNode&) {
            // Lambda's currents exist but d(Lambda) is not collectible
            // (star under d); the charge rule below still applies.
        }
    }
    return s;
}

DForm shift_matter_equivalence_residual(const ShiftSpec& s) {
    if (!s.shifted) throw UnsupportedNode("shifted currents unavailable for this shift form");
    return sub(s.shifted->Emat, s.original.Emat);
}

std::vector<DForm> shift_coframe_equivalence_residual(const ShiftSpec& s) {
    if (!s.shifted) throw UnsupportedNode("shifted currents unavailable for this shift form");
    std::vector<DForm> out;
    for (std::size_t a = 0; a < s.original.Egr.size(); ++a)
        out.push_back(sub(s.shifted->Egr[a], s.original.Egr[a]));
    return out;
}

} // namespace pforms
