#include "pforms/dsl.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "pforms/errors.hpp"

namespace pforms {

const FieldDecl* find_decl(const FieldDecls& decls, const std::string& name) {
    for (const auto& d : decls)
        if (d.name == name) return &d;
    return nullptr;
}

namespace {
std::shared_ptr<Expr> node(NodeKind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}
} // namespace

ExprPtr make_field(const std::string& name, int line, int col) {
    auto e = node(NodeKind::FieldRef);
    e->name = name;
    e->line = line;
    e->col = col;
    return e;
}
ExprPtr make_coframe(const std::string& name, int index, bool lowered) {
    auto e = node(NodeKind::FieldRef);
    e->name = name;
    e->index = index;
    e->lowered = lowered;
    return e;
}
ExprPtr make_d(ExprPtr child) {
    auto e = node(NodeKind::ExteriorD);
    e->kids.push_back(std::move(child));
    return e;
}
ExprPtr make_star(ExprPtr child) {
    auto e = node(NodeKind::Hodge);
    e->kids.push_back(std::move(child));
    return e;
}
ExprPtr make_wedge(ExprPtr a, ExprPtr b) {
    auto e = node(NodeKind::Wedge);
    e->kids.push_back(std::move(a));
    e->kids.push_back(std::move(b));
    return e;
}
ExprPtr make_scale(const mpq_class& q, ExprPtr child) {
    auto e = node(NodeKind::ScalarMul);
    e->factor = q;
    e->kids.push_back(std::move(child));
    return e;
}
ExprPtr make_constant(const mpq_class& q) {
    auto e = node(NodeKind::ScalarMul);
    e->factor = q;
    return e;
}
ExprPtr make_sum(std::vector<ExprPtr> kids) {
    auto e = node(NodeKind::Sum);
    e->kids = std::move(kids);
    return e;
}
ExprPtr make_contract(std::vector<std::string> bound, ExprPtr body) {
    auto e = node(NodeKind::Contract);
    e->bound = std::move(bound);
    e->kids.push_back(std::move(body));
    return e;
}

namespace {

struct Token {
    enum Type { Ident, Int, Punct, End } type = End;
    std::string text;
    int line = 1, col = 1;
};

struct Lexer {
    std::vector<Token> toks;
    std::size_t at = 0;

    explicit Lexer(const std::string& s) {
        int line = 1, col = 1;
        std::size_t i = 0;
        auto push = [&](Token::Type t, std::string text, int l, int c) {
            toks.push_back(Token{t, std::move(text), l, c});
        };
        while (i < s.size()) {
            char c = s[i];
            if (c == '\n') {
                ++line;
                col = 1;
                ++i;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col;
                ++i;
                continue;
            }
            int l = line, cc = col;
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string id;
                while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                                        s[i] == '_')) {
                    // A trailing '_' before '[' is the lowering marker, not
                    // part of the identifier.
                    if (s[i] == '_' && i + 1 < s.size() && s[i + 1] == '[') break;
                    id.push_back(s[i]);
                    ++i;
                    ++col;
                }
                push(Token::Ident, id, l, cc);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string num;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    num.push_back(s[i]);
                    ++i;
                    ++col;
                }
                push(Token::Int, num, l, cc);
                continue;
            }
            push(Token::Punct, std::string(1, c), l, cc);
            ++i;
            ++col;
        }
        toks.push_back(Token{Token::End, "", line, col});
    }

    const Token& peek(int ahead = 0) const {
        std::size_t k = at + static_cast<std::size_t>(ahead);
        return k < toks.size() ? toks[k] : toks.back();
    }
    Token next() { return toks[std::min(at++, toks.size() - 1)]; }
    bool eat_punct(const std::string& p) {
        if (peek().type == Token::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
};

struct Parser {
    Lexer lex;
    const FieldDecls& decls;

    Parser(const std::string& s, const FieldDecls& d) : lex(s), decls(d) {}

    [[noreturn]] void fail(const std::string& msg, const Token& t) {
        throw ParseError(msg, t.line, t.col);
    }

    mpq_class parse_rational() {
        Token t = lex.next();
        mpz_class num(t.text);
        if (lex.peek().type == Token::Punct && lex.peek().text == "/" &&
            lex.peek(1).type == Token::Int) {
            lex.next();
            Token d = lex.next();
            mpq_class q(num, mpz_class(d.text));
            q.canonicalize();
            return q;
        }
        return mpq_class(num);
    }

    ExprPtr parse_field(const Token& name_tok) {
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::FieldRef;
        e->name = name_tok.text;
        e->line = name_tok.line;
        e->col = name_tok.col;
        bool lowered = false;
        if (lex.peek().type == Token::Punct && lex.peek().text == "_") {
            lowered = true;
            lex.next();
        }
        if (lex.eat_punct("[")) {
            Token idx = lex.next();
            if (idx.type == Token::Int) {
                e->index = std::stoi(idx.text);
            } else if (idx.type == Token::Ident) {
                e->index_var = idx.text;
            } else {
                fail("expected frame index", idx);
            }
            if (!lex.eat_punct("]")) fail("expected ']'", lex.peek());
        } else if (lowered) {
            fail("lowering marker '_' requires an index", name_tok);
        }
        e->lowered = lowered;
        const FieldDecl* d = find_decl(decls, e->name);
        if (!d) throw UnknownField("undeclared field '" + e->name + "' at " +
                                   std::to_string(name_tok.line) + ":" +
                                   std::to_string(name_tok.col));
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = lex.peek();
        if (t.type == Token::Punct && t.text == "(") {
            lex.next();
            ExprPtr e = parse_expr();
            if (!lex.eat_punct(")")) fail("expected ')'", lex.peek());
            return e;
        }
        if (t.type == Token::Ident) {
            if (t.text == "d") {
                Token kw = lex.next();
                if (lex.peek().type == Token::Punct && lex.peek().text == "(") {
                    lex.next();
                    ExprPtr inner = parse_expr();
                    if (!lex.eat_punct(")")) fail("expected ')'", lex.peek());
                    auto e = make_d(inner);
                    const_cast<Expr*>(e.get())->line = kw.line;
                    return e;
                }
                return make_d(parse_primary());
            }
            if (t.text == "star") {
                lex.next();
                if (lex.peek().type == Token::Punct && lex.peek().text == "(") {
                    lex.next();
                    ExprPtr inner = parse_expr();
                    if (!lex.eat_punct(")")) fail("expected ')'", lex.peek());
                    return make_star(inner);
                }
                return make_star(parse_primary());
            }
            if (t.text == "sum") {
                lex.next();
                if (!lex.eat_punct("(")) fail("expected '(' after sum", lex.peek());
                std::vector<std::string> bound;
                while (true) {
                    Token id = lex.next();
                    if (id.type != Token::Ident) fail("expected index variable", id);
                    bound.push_back(id.text);
                    if (lex.eat_punct(",")) continue;
                    break;
                }
                if (!lex.eat_punct(";")) fail("expected ';' in sum", lex.peek());
                ExprPtr body = parse_expr();
                if (!lex.eat_punct(")")) fail("expected ')'", lex.peek());
                return make_contract(std::move(bound), body);
            }
            Token name = lex.next();
            return parse_field(name);
        }
        fail("expected expression", t);
    }

    ExprPtr parse_factor() {
        ExprPtr e = parse_primary();
        while (lex.peek().type == Token::Punct && lex.peek().text == "^") {
            lex.next();
            ExprPtr rhs = parse_primary();
            e = make_wedge(e, rhs);
        }
        return e;
    }

    ExprPtr parse_term(bool negate) {
        if (lex.peek().type == Token::Int) {
            mpq_class q = parse_rational();
            if (negate) q = -q;
            if (lex.eat_punct("*")) {
                return make_scale(q, parse_factor());
            }
            return make_constant(q);
        }
        ExprPtr f = parse_factor();
        return negate ? make_scale(-1, f) : f;
    }

    ExprPtr parse_expr() {
        std::vector<ExprPtr> terms;
        bool neg = lex.eat_punct("-");
        terms.push_back(parse_term(neg));
        while (true) {
            if (lex.eat_punct("+")) {
                terms.push_back(parse_term(false));
            } else if (lex.eat_punct("-")) {
                terms.push_back(parse_term(true));
            } else {
                break;
            }
        }
        if (terms.size() == 1) return terms[0];
        return make_sum(std::move(terms));
    }
};

ExprPtr substitute_index(const ExprPtr& e, const std::string& var, int value) {
    auto r = std::make_shared<Expr>(*e);
    if (e->kind == NodeKind::FieldRef && e->index_var == var) {
        r->index_var.clear();
        r->index = value;
    }
    for (auto& k : r->kids) k = substitute_index(k, var, value);
    return r;
}

void collect_free_indices(const ExprPtr& e, std::set<std::string>& out) {
    if (e->kind == NodeKind::FieldRef && !e->index_var.empty()) out.insert(e->index_var);
    if (e->kind == NodeKind::Contract) {
        std::set<std::string> inner;
        for (const auto& k : e->kids) collect_free_indices(k, inner);
        for (const auto& b : e->bound) inner.erase(b);
        out.insert(inner.begin(), inner.end());
        return;
    }
    for (const auto& k : e->kids) collect_free_indices(k, out);
}

} // namespace

ExprPtr parse_lagrangian(const std::string& text, const FieldDecls& decls) {
    Parser p(text, decls);
    if (p.lex.peek().type == Token::End) throw ParseError("empty Lagrangian", 1, 1);
    ExprPtr e = p.parse_expr();
    if (p.lex.peek().type != Token::End) p.fail("trailing input", p.lex.peek());
    return e;
}

ExprPtr expand_sums(const ExprPtr& e, int n) {
    std::set<std::string> free;
    collect_free_indices(e, free);
    if (!free.empty())
        throw TypeError("unbound frame index '" + *free.begin() + "'");

    struct Walker {
        int n;
        ExprPtr walk(const ExprPtr& x) {
            if (x->kind == NodeKind::Contract) {
                std::vector<ExprPtr> bodies{x->kids[0]};
                for (const auto& var : x->bound) {
                    std::vector<ExprPtr> next;
                    for (const auto& b : bodies)
                        for (int v = 0; v < n; ++v) next.push_back(substitute_index(b, var, v));
                    bodies = std::move(next);
                }
                std::vector<ExprPtr> expanded;
                expanded.reserve(bodies.size());
                for (const auto& b : bodies) expanded.push_back(walk(b));
                if (expanded.size() == 1) return expanded[0];
                return make_sum(std::move(expanded));
            }
            if (x->kids.empty()) return x;
            auto r = std::make_shared<Expr>(*x);
            for (auto& k : r->kids) k = walk(k);
            return r;
        }
    } w{n};
    return w.walk(e);
}

namespace {

struct TypeChecker {
    const FieldDecls& decls;
    int n;
    std::vector<std::string> warnings;

    struct DP {
        int degree;
        Parity parity;
    };

    DP check(const ExprPtr& e, int star_depth) {
        switch (e->kind) {
            case NodeKind::FieldRef: {
                const FieldDecl* d = find_decl(decls, e->name);
                if (!d) throw UnknownField("undeclared field '" + e->name + "'");
                if (d->kind == FieldDecl::Kind::Coframe) {
                    if (e->index < 0 && e->index_var.empty())
                        throw TypeError("coframe field '" + e->name + "' requires a frame index");
                    if (e->index >= n)
                        throw TypeError("frame index " + std::to_string(e->index) +
                                        " out of range");
                    return {1, Parity::Even};
                }
                if (e->index >= 0 || !e->index_var.empty())
                    throw TypeError("matter field '" + e->name + "' does not take an index");
                return {d->degree, d->parity};
            }
            case NodeKind::ExteriorD: {
                DP c = check(e->kids[0], star_depth);
                return {std::min(c.degree + 1, n), c.parity};
            }
            case NodeKind::Hodge: {
                DP c = check(e->kids[0], star_depth + 1);
                return {n - c.degree, c.parity ^ Parity::Odd};
            }
            case NodeKind::Wedge: {
                DP a = check(e->kids[0], star_depth);
                DP b = check(e->kids[1], star_depth);
                int deg = a.degree + b.degree;
                if (deg > n) {
                    if (star_depth > 0)
                        throw TypeError("wedge degree " + std::to_string(deg) +
                                        " overflows inside a Hodge argument");
                    deg = n;  // top-degree saturation: the zero form
                }
                return {deg, a.parity ^ b.parity};
            }
            case NodeKind::ScalarMul: {
                if (e->kids.empty()) return {0, Parity::Even};
                return check(e->kids[0], star_depth);
            }
            case NodeKind::Sum: {
                DP first = check(e->kids[0], star_depth);
                for (std::size_t i = 1; i < e->kids.size(); ++i) {
                    DP k = check(e->kids[i], star_depth);
                    if (k.degree != first.degree)
                        throw TypeError("sum of forms of degree " + std::to_string(first.degree) +
                                        " and " + std::to_string(k.degree));
                    if (k.parity != first.parity)
                        throw TypeError("sum of forms of opposite parity");
                }
                return first;
            }
            case NodeKind::Contract:
                throw TypeError("typecheck requires expanded AST (internal)");
        }
        throw UnsupportedNode("unknown AST node kind");
    }
};

} // namespace

TypeInfo typecheck(const ExprPtr& expr, const FieldDecls& decls, int n) {
    ExprPtr ex = expand_sums(expr, n);
    TypeChecker tc{decls, n, {}};
    auto dp = tc.check(ex, 0);
    TypeInfo info;
    info.degree = dp.degree;
    info.parity = dp.parity;
    info.viable = (dp.degree == n && dp.parity == Parity::Odd);
    if (!info.viable)
        info.warnings.push_back("NONVIABLE: Lagrangian is not an odd top-degree form (degree " +
                                std::to_string(dp.degree) + ", " +
                                std::string(to_string(dp.parity)) + ")");
    info.warnings.insert(info.warnings.end(), tc.warnings.begin(), tc.warnings.end());
    return info;
}

std::string ast_to_string(const ExprPtr& e) {
    std::ostringstream os;
    switch (e->kind) {
        case NodeKind::FieldRef:
            os << e->name;
            if (e->lowered) os << "_";
            if (e->index >= 0)
                os << "[" << e->index << "]";
            else if (!e->index_var.empty())
                os << "[" << e->index_var << "]";
            break;
        case NodeKind::ExteriorD:
            os << "d(" << ast_to_string(e->kids[0]) << ")";
            break;
        case NodeKind::Hodge:
            os << "star(" << ast_to_string(e->kids[0]) << ")";
            break;
        case NodeKind::Wedge:
            os << "(" << ast_to_string(e->kids[0]) << " ^ " << ast_to_string(e->kids[1]) << ")";
            break;
        case NodeKind::ScalarMul:
            if (e->kids.empty()) {
                os << e->factor.get_str();
            } else {
                os << e->factor.get_str() << " * " << ast_to_string(e->kids[0]);
            }
            break;
        case NodeKind::Sum: {
            os << "(";
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                const ExprPtr& k = e->kids[i];
                if (i && k->kind == NodeKind::ScalarMul && k->factor < 0) {
                    auto flipped = std::make_shared<Expr>(*k);
                    flipped->factor = -flipped->factor;
                    os << " - " << ast_to_string(flipped);
                } else {
                    if (i) os << " + ";
                    os << ast_to_string(k);
                }
            }
            os << ")";
            break;
        }
        case NodeKind::Contract: {
            os << "sum(";
            for (std::size_t i = 0; i < e->bound.size(); ++i) {
                if (i) os << ",";
                os << e->bound[i];
            }
            os << "; " << ast_to_string(e->kids[0]) << ")";
            break;
        }
    }
    return os.str();
}

} // namespace pforms
