#pragma once

#include <optional>

#include "pforms/chi.hpp"
#include "pforms/noether.hpp"

namespace pforms {

// A built-in system: field declarations, Lagrangian source, and the
// closed-form expected currents used for cross-validation.
struct Model {
    std::string name;
    int n = 4;
    int p = 1;
    std::vector<int> signature;
    FieldDecls decls;
    std::string matter;           // matter field name, empty for none
    std::string lagrangian_text;
    ExprPtr ast;
    std::string lambda_text;      // canonical total-derivative shift, if any
    ExprPtr lambda_ast;
    std::optional<ConstitutiveTensor> chi;
    DForm J;                      // source 3-form fixture (premetric only)
};

// L = -1/2 dA ^ *(dA) for a p-form potential A on an n-chart with
// signature diag(-1, 1, ..., 1).
Model maxwell_model(int n, int p);

// Quadratic coframe Lagrangian on a 4d Lorentzian chart; the canonical
// shift form theta^a ^ *(d theta_a) is carried separately because its total
// derivative admits no pointwise current collection.
Model coframe_gr_model();

// L = -1/2 dA ^ H with H = kappa(F) for a constant constitutive tensor.
// The Lagrangian text carries the kappa-contraction expanded over the odd
// 2-form basis with explicit rational coefficients.
Model electrodynamics_model(const ConstitutiveTensor& chi, const DForm& J);

Model model_by_name(const std::string& name, int n, int p);

// Expected closed forms (cross-validation targets).
// Maxwell stress current: Sigma_a = 1/2 [ (e_a . F) ^ *F + (-1)^p F ^ (e_a . *F) ].
DForm maxwell_expected_sigma(const FrameGeometry& g, const DForm& F, int p, int a);
// Premetric stress current: Sigma_a = 1/2 [ (e_a . F) ^ H - F ^ (e_a . H) ].
DForm electro_expected_sigma(const FrameGeometry& g, const DForm& F, const DForm& H, int a);
// Componentwise value of the premetric Lagrangian: (1/8) F_ab F_cd chi^{abcd} vol.
DForm electro_componentwise_lagrangian(const ConstitutiveTensor& chi, const DForm& F,
                                       const FrameGeometry& g);
// Torsion combinations F^a = C^a - 2 e^a . (theta^m ^ C_m) - theta^a ^ (e_m . C^m).
std::vector<DForm> gr_f_forms(const FrameGeometry& g);
std::vector<DForm> gr_c_forms(const FrameGeometry& g);

// f_a = (e_a . F) ^ J for each frame leg.
std::vector<DForm> lorentz_force(const DForm& F, const DForm& J, const FrameGeometry& g);

// Pointwise frame rotation theta^a -> A^a_b theta^b; requires A^T eta A = eta
// exactly. Matter fields are untouched.
FieldConfig frame_rotate(const FieldConfig& cfg, const Matrix<Scalar>& A);

} // namespace pforms
