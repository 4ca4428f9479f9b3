#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pforms/dform.hpp"

namespace pforms {

// Field declarations a Lagrangian is written over. The coframe family is a
// single declaration covering all n legs; matter fields are unindexed
// p-forms, declared even (untwisted).
struct FieldDecl {
    enum class Kind { Matter, Coframe };
    std::string name;
    Kind kind = Kind::Matter;
    int degree = 0;
    Parity parity = Parity::Even;
};
using FieldDecls = std::vector<FieldDecl>;

const FieldDecl* find_decl(const FieldDecls& decls, const std::string& name);

enum class NodeKind { FieldRef, ExteriorD, Wedge, Hodge, ScalarMul, Sum, Contract };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Lagrangian AST node. FieldRef covers both matter fields (no index) and
// coframe legs (concrete index or a bound index variable, optionally
// lowered with the signature).
struct Expr {
    NodeKind kind = NodeKind::FieldRef;
    std::string name;           // FieldRef
    int index = -1;             // FieldRef: concrete frame index
    std::string index_var;      // FieldRef: bound index variable
    bool lowered = false;       // FieldRef: lower the frame index with eta
    mpq_class factor = 0;       // ScalarMul; with no child: constant 0-form
    std::vector<ExprPtr> kids;
    std::vector<std::string> bound;  // Contract: index variables summed 0..n-1
    int line = 0, col = 0;
};

ExprPtr make_field(const std::string& name, int line = 0, int col = 0);
ExprPtr make_coframe(const std::string& name, int index, bool lowered = false);
ExprPtr make_d(ExprPtr child);
ExprPtr make_star(ExprPtr child);
ExprPtr make_wedge(ExprPtr a, ExprPtr b);
ExprPtr make_scale(const mpq_class& q, ExprPtr child);
ExprPtr make_constant(const mpq_class& q);
ExprPtr make_sum(std::vector<ExprPtr> kids);
ExprPtr make_contract(std::vector<std::string> bound, ExprPtr body);

// Parses the Lagrangian DSL:
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := rational '*' factor | factor | rational
//   factor  := primary ('^' primary)*
//   primary := 'd' primary | 'd' '(' expr ')' | 'star' '(' expr ')'
//            | 'sum' '(' ids ';' expr ')' | field | '(' expr ')'
//   field   := NAME | NAME '[' INDEX ']' | NAME '_' '[' INDEX ']'
// 'd' and 'star' bind tighter than '^'; '^' is left-associative.
// Field names must be declared; unknown names raise UnknownField.
ExprPtr parse_lagrangian(const std::string& text, const FieldDecls& decls);

// Replaces Contract nodes by explicit sums over 0..n-1 and checks index
// scoping; the result contains only concrete frame indices.
ExprPtr expand_sums(const ExprPtr& e, int n);

struct TypeInfo {
    int degree = 0;
    Parity parity = Parity::Even;
    bool viable = false;  // degree == n and parity odd
    std::vector<std::string> warnings;
};

// Bottom-up degree/parity computation; flags the Lagrangian VIABLE iff it is
// an odd n-form, NONVIABLE (warning only) otherwise.
TypeInfo typecheck(const ExprPtr& expr, const FieldDecls& decls, int n);

std::string ast_to_string(const ExprPtr& e);

} // namespace pforms
