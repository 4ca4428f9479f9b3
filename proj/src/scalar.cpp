#include "pforms/scalar.hpp"

#include <cctype>
#include <sstream>

#include "pforms/errors.hpp"

namespace pforms {

Scalar::Scalar(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    normalize();
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    if (den_ == Polynomial(1)) return;
    Polynomial g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
    }
    // Make the denominator integer-primitive with positive leading
    // coefficient; the numerator absorbs the rational factor.
    mpq_class c = den_.rational_content();
    if (c != 1) {
        den_ = *den_.divide_exact(Polynomial(c));
        num_ = *num_.divide_exact(Polynomial(c));
    }
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r;
    if (is_polynomial() && o.is_polynomial()) {
        r.num_ = num_ + o.num_;
        return r;
    }
    // Cancel the shared denominator factor before forming the sum, so the
    // final reduction only sees a generically coprime pair.
    Polynomial g = poly_gcd(den_, o.den_);
    if (g.is_constant()) {
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
    } else {
        Polynomial d1 = *den_.divide_exact(g);
        Polynomial d2 = *o.den_.divide_exact(g);
        Polynomial t = num_ * d2 + o.num_ * d1;
        Polynomial h = poly_gcd(t, g);
        if (h.is_constant()) {
            r.num_ = t;
            r.den_ = d1 * o.den_;
        } else {
            r.num_ = *t.divide_exact(h);
            r.den_ = d1 * d2 * *g.divide_exact(h);
        }
    }
    r.normalize();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    if (is_polynomial() && o.is_polynomial()) {
        r.num_ = num_ * o.num_;
        return r;
    }
    // Cross-reduce so each gcd stays at input scale.
    Polynomial g1 = poly_gcd(num_, o.den_);
    Polynomial g2 = poly_gcd(o.num_, den_);
    Polynomial n1 = g1.is_constant() ? num_ : *num_.divide_exact(g1);
    Polynomial d2 = g1.is_constant() ? o.den_ : *o.den_.divide_exact(g1);
    Polynomial n2 = g2.is_constant() ? o.num_ : *o.num_.divide_exact(g2);
    Polynomial d1 = g2.is_constant() ? den_ : *den_.divide_exact(g2);
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    r.normalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw DivisionByZero("scalar division by zero");
    Scalar flipped;
    flipped.num_ = o.den_;
    flipped.den_ = o.num_;
    return *this * flipped;
}

Scalar Scalar::derivative(int var) const {
    Scalar r;
    if (is_polynomial()) {
        r.num_ = num_.derivative(var);
        return r;
    }
    // Quotient rule with the structural den factor cancelled up front.
    Polynomial t = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    Polynomial h = poly_gcd(t, den_);
    if (h.is_constant()) {
        r.num_ = t;
        r.den_ = den_ * den_;
    } else {
        r.num_ = *t.divide_exact(h);
        r.den_ = den_ * *den_.divide_exact(h);
    }
    r.normalize();
    return r;
}

Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op) {
    switch (op) {
        case ScalarOp::Add: return a + b;
        case ScalarOp::Sub: return a - b;
        case ScalarOp::Mul: return a * b;
        case ScalarOp::Div: return a / b;
    }
    throw Error("Internal", "bad scalar op");
}

Scalar partial_derivative(const Scalar& s, int mu, int dim) {
    if (mu < 0 || mu >= dim) throw BadIndex("coordinate index " + std::to_string(mu) + " out of range for dimension " + std::to_string(dim));
    return s.derivative(mu);
}

bool scalar_eq(const Scalar& a, const Scalar& b) { return a == b; }

std::string to_string(const Scalar& s) {
    if (s.is_polynomial()) return to_string(s.num());
    std::ostringstream os;
    os << "(" << to_string(s.num()) << ")/(" << to_string(s.den()) << ")";
    return os.str();
}

namespace {

// Recursive-descent parser for scalar text:
//   expr   := term (('+' | '-') term)*
//   term   := atom (('*' | '/') atom)*
//   atom   := base ('^' INT)?
//   base   := INT | VAR | '(' expr ')' | '-' atom
struct ScalarParser {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit ScalarParser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

    void advance() {
        if (s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            advance();
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    mpz_class parse_int() {
        skip_ws();
        std::string digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            digits.push_back(s[pos]);
            advance();
        }
        if (digits.empty()) fail("expected integer");
        return mpz_class(digits);
    }

    Scalar parse_base() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            advance();
            Scalar e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') {
            advance();
            return -parse_atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Scalar(mpq_class(parse_int()));
        }
        if (c == 'x') {
            advance();
            std::string digits;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                digits.push_back(s[pos]);
                advance();
            }
            if (digits.empty()) fail("expected variable index after 'x'");
            int idx = std::stoi(digits);
            if (idx < 0 || idx >= kMaxVars) fail("variable index out of range");
            return Scalar::variable(idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Scalar parse_atom() {
        Scalar b = parse_base();
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            advance();
            mpz_class e = parse_int();
            if (e < 0 || e > 200) fail("exponent out of range");
            Scalar r = Scalar::one();
            for (mpz_class i = 0; i < e; ++i) r *= b;
            return r;
        }
        return b;
    }

    Scalar parse_term() {
        Scalar r = parse_atom();
        while (true) {
            char c = peek();
            if (c == '*') {
                advance();
                r *= parse_atom();
            } else if (c == '/') {
                advance();
                r /= parse_atom();
            } else {
                return r;
            }
        }
    }

    Scalar parse_expr() {
        Scalar r = parse_term();
        while (true) {
            char c = peek();
            if (c == '+') {
                advance();
                r += parse_term();
            } else if (c == '-') {
                advance();
                r -= parse_term();
            } else {
                return r;
            }
        }
    }
};

} // namespace

Scalar parse_scalar(const std::string& text) {
    ScalarParser p(text);
    Scalar r = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

} // namespace pforms
