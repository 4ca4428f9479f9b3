#pragma once

#include <map>

#include "pforms/dsl.hpp"
#include "pforms/geometry.hpp"

namespace pforms {

// A field configuration: the geometry (which carries the coframe) plus a
// value for every declared matter field.
template <class R>
struct FieldConfigT {
    FrameGeometryT<R> geom;
    std::map<std::string, DFormT<R>> fields;
};

using FieldConfig = FieldConfigT<Scalar>;
using JetFieldConfig = FieldConfigT<Jet>;

template <class R>
void validate_config(const FieldDecls& decls, const FieldConfigT<R>& cfg) {
    for (const auto& d : decls) {
        if (d.kind == FieldDecl::Kind::Coframe) continue;
        auto it = cfg.fields.find(d.name);
        if (it == cfg.fields.end())
            throw ConfigError("field '" + d.name + "' has no assigned value");
        if (it->second.dim != cfg.geom.dim)
            throw ConfigError("field '" + d.name + "' has wrong dimension");
        if (!it->second.is_zero() && it->second.degree != d.degree)
            throw ConfigError("field '" + d.name + "' assigned degree " +
                              std::to_string(it->second.degree) + ", declared " +
                              std::to_string(d.degree));
    }
}

namespace detail {

template <class R>
DFormT<R> eval_node(const ExprPtr& e, const FieldDecls& decls, const FieldConfigT<R>& cfg) {
    const int n = cfg.geom.dim;
    switch (e->kind) {
        case NodeKind::FieldRef: {
            const FieldDecl* d = find_decl(decls, e->name);
            if (!d) throw UnknownField("undeclared field '" + e->name + "'");
            if (d->kind == FieldDecl::Kind::Coframe) {
                if (e->index < 0 || e->index >= n)
                    throw TypeError("frame index out of range in evaluation");
                DFormT<R> th = cfg.geom.coframe[static_cast<std::size_t>(e->index)];
                if (e->lowered && cfg.geom.sig(e->index) < 0) th = neg(th);
                return th;
            }
            return cfg.fields.at(e->name);
        }
        case NodeKind::ExteriorD:
            return exterior_derivative(eval_node(e->kids[0], decls, cfg));
        case NodeKind::Hodge:
            return hodge_star(cfg.geom, eval_node(e->kids[0], decls, cfg));
        case NodeKind::Wedge:
            return wedge(eval_node(e->kids[0], decls, cfg), eval_node(e->kids[1], decls, cfg));
        case NodeKind::ScalarMul: {
            if (e->kids.empty())
                return DFormT<R>::scalar(n, ring_from_rational(static_cast<const R*>(nullptr),
                                                               e->factor));
            return scale(e->factor, eval_node(e->kids[0], decls, cfg));
        }
        case NodeKind::Sum: {
            DFormT<R> acc(n, 0);
            bool first = true;
            for (const auto& k : e->kids) {
                DFormT<R> v = eval_node(k, decls, cfg);
                acc = first ? v : add(acc, v);
                first = false;
            }
            return acc;
        }
        case NodeKind::Contract:
            throw UnsupportedNode("evaluation requires expanded AST (internal)");
    }
    throw UnsupportedNode("unknown AST node kind");
}

} // namespace detail

// Evaluates a Lagrangian expression at a configuration. Works over any
// coefficient ring; evaluation over the jet ring is the independent
// linearization oracle.
template <class R>
DFormT<R> evaluate(const ExprPtr& expr, const FieldDecls& decls, const FieldConfigT<R>& cfg) {
    validate_config(decls, cfg);
    ExprPtr ex = expand_sums(expr, cfg.geom.dim);
    return detail::eval_node(ex, decls, cfg);
}

// Lifts a scalar configuration into the jet ring with the given first-order
// perturbations of the matter fields and the coframe.
inline JetFieldConfig jet_config(const FieldConfig& cfg,
                                 const std::map<std::string, DForm>& field_dots,
                                 const std::vector<DForm>& coframe_dots) {
    JetFieldConfig out;
    out.geom = jet_geometry(cfg.geom, coframe_dots);
    for (const auto& [name, value] : cfg.fields) {
        auto it = field_dots.find(name);
        if (it != field_dots.end())
            out.fields.emplace(name, jet_lift(value, it->second));
        else
            out.fields.emplace(name, jet_lift(value));
    }
    return out;
}

} // namespace pforms
