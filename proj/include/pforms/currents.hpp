#pragma once

#include "pforms/eval.hpp"

namespace pforms {

// The bundle produced by variational differentiation of a top-degree
// Lagrangian: the matter-sector currents (sigma, pi), the coframe-sector
// currents (Sigma_a, Pi_a), the field-equation forms assembled from them,
// and the boundary potential Omega.
struct DerivedCurrents {
    int n = 0;
    int p = 0;                 // matter field degree (0 when no matter field)
    bool has_matter = false;
    std::string matter;
    Parity lag_parity = Parity::Odd;

    DForm L;                   // evaluated Lagrangian value
    DForm sigma;               // dL/dpsi,      degree n-p
    DForm pi;                  // dL/d(dpsi),   degree n-p-1
    std::vector<DForm> Sigma;  // dL/dtheta^a,  degree n-1
    std::vector<DForm> Pi;     // dL/d(dtheta^a), degree n-2

    DForm Emat;                // sigma + (-1)^{p+1} d pi
    std::vector<DForm> Egr;    // Sigma_a + d Pi_a

    // Pre-symplectic potential at given first-order perturbations.
    DForm omega(const DForm& delta_psi, const std::vector<DForm>& delta_theta) const;
};

// Collects the first-order variation of the Lagrangian into left-factored
// currents by probing each variation slot with constant basis forms; Hodge
// nodes contribute through the coframe-variation formula of the star. The
// slots psi, d(psi), theta^a, d(theta^a) are treated as independent.
DerivedCurrents variational_derivatives(const ExprPtr& expr, const FieldDecls& decls,
                                        const FieldConfig& cfg);

struct EulerLagrange {
    DForm Emat;
    std::vector<DForm> Egr;
};
EulerLagrange euler_lagrange(const DerivedCurrents& dc);

// Independent linearization: evaluates the Lagrangian over the jet ring at
// config + t * (perturbation) — the coframe perturbation enters through the
// jet geometry, and d(psi) varies as d(delta psi) — and returns the
// t-coefficient. Never touches the collection machinery above.
DForm lagrangian_jet_dot(const ExprPtr& expr, const FieldDecls& decls, const FieldConfig& cfg,
                         const std::map<std::string, DForm>& field_dots,
                         const std::vector<DForm>& coframe_dots);

// Solves T_I = dx^I ^ lambda for lambda given the probe results T_I keyed by
// basis mask I; nullopt when no single form represents the map (the wedge
// representation does not exist). `target_dim`/`target_degree` describe
// lambda; `parity` tags the result.
std::optional<DForm> solve_wedge_representation(const std::map<IndexMask, DForm>& probe_results,
                                                int target_dim, int target_degree, Parity parity);

// Left-factored currents of an expression of any degree k: the unique forms
// with  delta(expr) = dpsi ^ d_psi + d(dpsi) ^ d_dpsi + dtheta^a ^ d_theta[a]
// + d(dtheta^a) ^ d_dtheta[a].  Below top degree the factorization may not
// exist (stars block it); UnsupportedNode is thrown in that case.
struct SlotCurrents {
    DForm value;
    int static_degree = 0;       // degree from the typechecker
    Parity static_parity = Parity::Even;
    DForm d_psi, d_dpsi;
    std::vector<DForm> d_theta, d_dtheta;
};
SlotCurrents collect_expression_currents(const ExprPtr& expr, const FieldDecls& decls,
                                         const FieldConfig& cfg);

} // namespace pforms
