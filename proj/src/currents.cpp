#include "pforms/currents.hpp"

#include <functional>

namespace pforms {

DForm DerivedCurrents::omega(const DForm& delta_psi, const std::vector<DForm>& delta_theta) const {
    DForm out = DForm::zero(n, n - 1, lag_parity);
    if (has_matter && !delta_psi.is_zero()) out = add(out, wedge(delta_psi, pi));
    for (int a = 0; a < n && a < static_cast<int>(delta_theta.size()); ++a)
        out = add(out, wedge(delta_theta[static_cast<std::size_t>(a)], Pi[static_cast<std::size_t>(a)]));
    return out;
}

namespace {

bool subtree_has_hodge(const ExprPtr& e) {
    if (e->kind == NodeKind::Hodge) return true;
    for (const auto& k : e->kids)
        if (subtree_has_hodge(k)) return true;
    return false;
}

void check_collectible(const ExprPtr& e) {
    if (e->kind == NodeKind::ExteriorD && subtree_has_hodge(e->kids[0]))
        throw UnsupportedNode(
            "d over a Hodge-bearing subtree has no pointwise current collection; "
            "treat the total-derivative term through the shift machinery instead");
    for (const auto& k : e->kids) check_collectible(k);
}

std::vector<IndexMask> masks_of_size(int n, int k) {
    std::vector<IndexMask> out;
    if (k < 0 || k > n) return out;
    for (IndexMask m = 0; m < (IndexMask{1} << n); ++m)
        if (mask_size(m) == k) out.push_back(m);
    return out;
}

// Single active variation slot for tangent evaluation.
struct Probes {
    const DForm* psi = nullptr;
    const DForm* dpsi = nullptr;
    int leg = -1;
    const DForm* theta = nullptr;
    const DForm* dtheta = nullptr;
};

struct Engine {
    const FieldDecls& decls;
    const FieldConfig& cfg;
    const FieldDecl* matter = nullptr;
    std::map<const Expr*, DForm> base;

    const DForm& base_value(const ExprPtr& e) {
        auto it = base.find(e.get());
        if (it != base.end()) return it->second;
        DForm v = detail::eval_node(e, decls, cfg);
        return base.emplace(e.get(), std::move(v)).first->second;
    }

    bool is_matter_ref(const ExprPtr& e) const {
        return e->kind == NodeKind::FieldRef && matter && e->name == matter->name;
    }
    bool is_coframe_ref(const ExprPtr& e) const {
        if (e->kind != NodeKind::FieldRef) return false;
        const FieldDecl* d = find_decl(decls, e->name);
        return d && d->kind == FieldDecl::Kind::Coframe;
    }

    DForm tangent(const ExprPtr& e, const Probes& pr) {
        const int n = cfg.geom.dim;
        switch (e->kind) {
            case NodeKind::FieldRef: {
                if (is_matter_ref(e)) {
                    if (pr.psi) return *pr.psi;
                    return DForm::zero(n, matter->degree);
                }
                if (is_coframe_ref(e)) {
                    if (pr.theta && pr.leg == e->index) {
                        DForm t = *pr.theta;
                        if (e->lowered && cfg.geom.sig(e->index) < 0) t = neg(t);
                        return t;
                    }
                    return DForm::zero(n, 1);
                }
                return DForm::zero(n, base_value(e).degree);
            }
            case NodeKind::ExteriorD: {
                const ExprPtr& c = e->kids[0];
                if (is_matter_ref(c)) {
                    if (pr.dpsi) return *pr.dpsi;
                    return DForm::zero(n, std::min(matter->degree + 1, n));
                }
                if (is_coframe_ref(c)) {
                    if (pr.dtheta && pr.leg == c->index) {
                        DForm t = *pr.dtheta;
                        if (c->lowered && cfg.geom.sig(c->index) < 0) t = neg(t);
                        return t;
                    }
                    return DForm::zero(n, 2);
                }
                return exterior_derivative(tangent(c, pr));
            }
            case NodeKind::Hodge: {
                const ExprPtr& c = e->kids[0];
                DForm t = hodge_star(cfg.geom, tangent(c, pr));
                if (pr.theta) {
                    // Coframe variation of the star at fixed argument.
                    const DForm& b = base_value(c);
                    const auto& frame_leg = cfg.geom.frame[static_cast<std::size_t>(pr.leg)];
                    DForm direct =
                        wedge(*pr.theta, interior_product(frame_leg, hodge_star(cfg.geom, b)));
                    DForm swallowed =
                        hodge_star(cfg.geom, wedge(*pr.theta, interior_product(frame_leg, b)));
                    t = add(t, sub(direct, swallowed));
                }
                return t;
            }
            case NodeKind::Wedge: {
                const ExprPtr& a = e->kids[0];
                const ExprPtr& b = e->kids[1];
                return add(wedge(tangent(a, pr), base_value(b)),
                           wedge(base_value(a), tangent(b, pr)));
            }
            case NodeKind::ScalarMul: {
                if (e->kids.empty()) return DForm::zero(cfg.geom.dim, 0);
                return scale(e->factor, tangent(e->kids[0], pr));
            }
            case NodeKind::Sum: {
                DForm acc(cfg.geom.dim, 0);
                bool first = true;
                for (const auto& k : e->kids) {
                    DForm t = tangent(k, pr);
                    acc = first ? t : add(acc, t);
                    first = false;
                }
                return acc;
            }
            case NodeKind::Contract:
                throw UnsupportedNode("tangent on unexpanded AST (internal)");
        }
        throw UnsupportedNode("unknown AST node kind");
    }
};

DForm solve_slot(Engine& eng, const ExprPtr& ex, int probe_deg, int target_deg, Parity parity,
                 const std::function<void(Probes&, const DForm&)>& setter, const char* what) {
    const int n = eng.cfg.geom.dim;
    std::map<IndexMask, DForm> results;
    for (IndexMask I : masks_of_size(n, probe_deg)) {
        DForm probe(n, probe_deg, Parity::Even);
        probe.set(I, Scalar::one());
        Probes pr;
        setter(pr, probe);
        results.emplace(I, eng.tangent(ex, pr));
    }
    if (target_deg < 0) {
        for (const auto& [I, T] : results)
            if (!T.is_zero())
                throw UnsupportedNode(std::string("no wedge representation for ") + what);
        return DForm::zero(n, 0, parity);
    }
    auto sol = solve_wedge_representation(results, n, target_deg, parity);
    if (!sol)
        throw UnsupportedNode(std::string("no wedge representation for ") + what +
                              " (stars block the left-factored collection below top degree)");
    return *sol;
}

} // namespace

std::optional<DForm> solve_wedge_representation(const std::map<IndexMask, DForm>& probe_results,
                                                int target_dim, int target_degree, Parity parity) {
    DForm lambda(target_dim, target_degree, parity);
    for (const auto& [probe_mask, T] : probe_results) {
        for (const auto& [m, c] : T.comps) {
            if ((m & probe_mask) != probe_mask) return std::nullopt;
            IndexMask j = m & ~probe_mask;
            if (mask_size(j) != target_degree) return std::nullopt;
            Scalar val = c;
            if (merge_sign(probe_mask, j) < 0) val = -val;
            auto it = lambda.comps.find(j);
            if (it == lambda.comps.end()) {
                lambda.set(j, val);
            } else if (it->second != val) {
                return std::nullopt;
            }
        }
    }
    // Completeness: the candidate must reproduce every probe exactly.
    for (const auto& [probe_mask, T] : probe_results) {
        DForm probe(target_dim, mask_size(probe_mask), Parity::Even);
        probe.set(probe_mask, Scalar::one());
        DForm w = wedge(probe, lambda);
        if (!(w == T || (w.is_zero() && T.is_zero()))) return std::nullopt;
    }
    return lambda;
}

SlotCurrents collect_expression_currents(const ExprPtr& expr, const FieldDecls& decls,
                                         const FieldConfig& cfg) {
    validate_config(decls, cfg);
    const int n = cfg.geom.dim;
    ExprPtr ex = expand_sums(expr, n);
    check_collectible(ex);

    const FieldDecl* matter = nullptr;
    for (const auto& d : decls) {
        if (d.kind != FieldDecl::Kind::Matter) continue;
        if (matter) throw UnsupportedNode("variational collection supports one matter field");
        matter = &d;
    }

    TypeInfo ti = typecheck(ex, decls, n);
    Engine eng{decls, cfg, matter, {}};
    SlotCurrents out;
    out.value = eng.base_value(ex);
    out.static_degree = ti.degree;
    out.static_parity = ti.parity;
    const int k = ti.degree;
    Parity par = ti.parity;

    if (matter) {
        const int p = matter->degree;
        out.d_psi = solve_slot(
            eng, ex, p, k - p, par, [&](Probes& pr, const DForm& f) { pr.psi = &f; },
            "d/d(psi)");
        out.d_dpsi = solve_slot(
            eng, ex, p + 1, k - p - 1, par, [&](Probes& pr, const DForm& f) { pr.dpsi = &f; },
            "d/d(d psi)");
    } else {
        out.d_psi = DForm::zero(n, 0, par);
        out.d_dpsi = DForm::zero(n, 0, par);
    }
    for (int a = 0; a < n; ++a) {
        out.d_theta.push_back(solve_slot(
            eng, ex, 1, k - 1, par,
            [&](Probes& pr, const DForm& f) {
                pr.leg = a;
                pr.theta = &f;
            },
            "d/d(theta)"));
        out.d_dtheta.push_back(solve_slot(
            eng, ex, 2, k - 2, par,
            [&](Probes& pr, const DForm& f) {
                pr.leg = a;
                pr.dtheta = &f;
            },
            "d/d(d theta)"));
    }
    return out;
}

DerivedCurrents variational_derivatives(const ExprPtr& expr, const FieldDecls& decls,
                                        const FieldConfig& cfg) {
    const int n = cfg.geom.dim;
    SlotCurrents sc = collect_expression_currents(expr, decls, cfg);
    if (sc.static_degree != n) {
        // A constant expression (the zero Lagrangian) is allowed; anything
        // else below top degree has no mat-style collection.
        bool all_zero = sc.value.is_zero() && sc.d_psi.is_zero() && sc.d_dpsi.is_zero();
        for (const auto& f : sc.d_theta) all_zero = all_zero && f.is_zero();
        for (const auto& f : sc.d_dtheta) all_zero = all_zero && f.is_zero();
        if (!all_zero)
            throw UnsupportedNode("variational collection requires a top-degree Lagrangian");
    }

    const FieldDecl* matter = nullptr;
    for (const auto& d : decls)
        if (d.kind == FieldDecl::Kind::Matter) matter = &d;

    DerivedCurrents dc;
    dc.n = n;
    dc.has_matter = matter != nullptr;
    dc.matter = matter ? matter->name : "";
    dc.p = matter ? matter->degree : 0;
    dc.lag_parity = sc.static_parity;
    dc.L = sc.value;
    dc.sigma = sc.d_psi;
    dc.pi = sc.d_dpsi;
    dc.Sigma = sc.d_theta;
    dc.Pi = sc.d_dtheta;

    if (matter) {
        mpq_class sign = (dc.p % 2 == 0) ? -1 : 1;  // (-1)^{p+1}
        dc.Emat = add(dc.sigma, scale(sign, exterior_derivative(dc.pi)));
    } else {
        dc.Emat = DForm::zero(n, 0, dc.lag_parity);
    }
    for (int a = 0; a < n; ++a)
        dc.Egr.push_back(add(dc.Sigma[static_cast<std::size_t>(a)],
                             exterior_derivative(dc.Pi[static_cast<std::size_t>(a)])));
    return dc;
}

EulerLagrange euler_lagrange(const DerivedCurrents& dc) { return EulerLagrange{dc.Emat, dc.Egr}; }

DForm lagrangian_jet_dot(const ExprPtr& expr, const FieldDecls& decls, const FieldConfig& cfg,
                         const std::map<std::string, DForm>& field_dots,
                         const std::vector<DForm>& coframe_dots) {
    JetFieldConfig jc = jet_config(cfg, field_dots, coframe_dots);
    JetForm L = evaluate(expr, decls, jc);
    return jet_dot(L);
}

} // namespace pforms
