#pragma once

#include <optional>

#include "pforms/currents.hpp"

namespace pforms {

// Variation regimes for the diffeomorphism current machinery:
//  Pure            — only the matter field is varied; the geometry entering
//                    through the star is carried along untouched.
//  FixedBackground — the coframe is non-dynamical and holonomic (d theta = 0);
//                    its current Sigma_a is read off but not sourced.
//  Dynamical       — matter and coframe both varied.
enum class Mode { Pure, FixedBackground, Dynamical };

const char* to_string(Mode m);

// Diffeomorphism-generated current data for one vector field. `remainder`
// carries the field-equation-proportional part of Theta - S - dQ explicitly,
// so the decomposition holds exactly off shell.
struct NoetherBundle {
    Mode mode = Mode::Dynamical;
    VectorField xi;
    DForm Theta;      // odd (n-1)-form
    DForm S;          // odd (n-1)-form, algebraically linear in xi
    DForm Q;          // odd (n-2)-form
    DForm remainder;  // equation-form part: Theta = S + dQ + remainder
};

NoetherBundle noether_current(const FieldDecls& decls, const FieldConfig& cfg,
                              const DerivedCurrents& dc, const VectorField& xi, Mode mode);

// Theta - S - dQ - remainder; identically zero for every configuration.
DForm decompose_residual(const NoetherBundle& b, const DerivedCurrents& dc);

// Residual families of the two cascade equations: r2_a multiplies the
// d(xi^a) coefficient, r1_a the xi^a coefficient.
struct CascadeResiduals {
    std::vector<DForm> r1;  // n-forms: d S(e_a)
    std::vector<DForm> r2;  // (n-1)-forms, mode dependent
};
CascadeResiduals cascade_residuals(const FieldDecls& decls, const FieldConfig& cfg,
                                   const DerivedCurrents& dc, Mode mode);

// dSigma_a minus its assembly from the field-equation forms; identically
// zero off shell for every configuration (dynamical mode).
std::vector<DForm> noether_identity_residual(const FieldDecls& decls, const FieldConfig& cfg,
                                             const DerivedCurrents& dc);

// Off-shell conservation residual: d Theta + L_xi psi ^ Emat + L_xi theta^a ^ Egr_a,
// with the coframe terms dropped in Pure mode bookkeeping handled by caller.
DForm conservation_residual(const FieldDecls& decls, const FieldConfig& cfg,
                            const DerivedCurrents& dc, const NoetherBundle& b);

// Total-derivative shift of the Lagrangian by d(Lambda).
struct ShiftSpec {
    ExprPtr lambda_ast;
    DForm lambda_value;  // (n-1)-form at the configuration

    bool collectible = false;  // Lambda admits left-factored currents
    DForm lam_sigma, lam_pi;
    std::vector<DForm> lam_Sigma, lam_Pi;

    DerivedCurrents original;                 // currents of L
    std::optional<DerivedCurrents> shifted;   // currents of L + d(Lambda)

    // Charge shift rule: the shifted Noether charge for generator xi.
    DForm shifted_charge(const VectorField& xi, const DForm& q_unshifted) const;
};

ShiftSpec apply_total_derivative_shift(const ExprPtr& lagr, const ExprPtr& lambda,
                                       const FieldDecls& decls, const FieldConfig& cfg);

// Equivalence of field equations before/after the shift, as exact residuals.
DForm shift_matter_equivalence_residual(const ShiftSpec& s);
std::vector<DForm> shift_coframe_equivalence_residual(const ShiftSpec& s);

} // namespace pforms
