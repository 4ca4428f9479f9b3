#pragma once

#include <string>

#include "pforms/polynomial.hpp"

namespace pforms {

// Element of the fraction field of the polynomial ring: the coefficient type
// for all form arithmetic. Canonical representation: numerator and
// denominator share no common factor, the denominator has coprime integer
// coefficients and positive leading coefficient (graded-lex order). All
// arithmetic is exact.
class Scalar {
public:
    Scalar() : num_(), den_(Polynomial(1)) {}
    explicit Scalar(const mpq_class& c) : num_(Polynomial(c)), den_(Polynomial(1)) {}
    explicit Scalar(long c) : Scalar(mpq_class(c)) {}
    explicit Scalar(const Polynomial& p) : num_(p), den_(Polynomial(1)) {}
    Scalar(const Polynomial& num, const Polynomial& den);

    static Scalar variable(int i) { return Scalar(Polynomial::variable(i)); }
    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar from_rational(const mpq_class& q) { return Scalar(q); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_ == Polynomial(1); }
    mpq_class constant_value() const { return num_.constant_value() / den_.constant_value(); }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    // Canonical comparison; equivalent to normalize(a - b) == 0.
    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Cross-multiplied equality, bypassing GCD-based canonicalization. Kept
    // as an independent decision procedure; must agree with operator==.
    bool equals_cross(const Scalar& o) const { return num_ * o.den_ == o.num_ * den_; }

    Scalar derivative(int var) const;

    std::size_t monomial_count() const { return num_.term_count(); }

private:
    Polynomial num_, den_;
    void normalize();
};

inline Scalar operator*(const mpq_class& c, const Scalar& s) { return Scalar(c) * s; }

enum class ScalarOp { Add, Sub, Mul, Div };
Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op);
Scalar partial_derivative(const Scalar& s, int mu, int dim);
bool scalar_eq(const Scalar& a, const Scalar& b);

std::string to_string(const Scalar& s);
// Parses the textual scalar syntax, e.g. "3*x0^2*x1 - 1/2" or
// "(x0 + 1)/(x1^2)". Throws ParseError on malformed input.
Scalar parse_scalar(const std::string& text);

} // namespace pforms
