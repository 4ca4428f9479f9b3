#pragma once

#include "pforms/scalar.hpp"

namespace pforms {

// First-order jet ring Scalar[t]/(t^2): carrier of value and perturbation.
// Evaluating any pipeline over Jet and reading `dot` is the independent
// linearization used to cross-check the variational machinery.
struct Jet {
    Scalar val;
    Scalar dot;

    Jet() = default;
    explicit Jet(const Scalar& v) : val(v) {}
    Jet(const Scalar& v, const Scalar& d) : val(v), dot(d) {}

    static Jet zero() { return Jet(); }
    static Jet one() { return Jet(Scalar::one()); }
    static Jet from_rational(const mpq_class& q) { return Jet(Scalar(q)); }

    bool is_zero() const { return val.is_zero() && dot.is_zero(); }

    Jet operator-() const { return Jet(-val, -dot); }
    Jet operator+(const Jet& o) const { return Jet(val + o.val, dot + o.dot); }
    Jet operator-(const Jet& o) const { return Jet(val - o.val, dot - o.dot); }
    Jet operator*(const Jet& o) const { return Jet(val * o.val, val * o.dot + dot * o.val); }
    Jet operator/(const Jet& o) const {
        // Invertible iff the base value is nonzero: 1/(a+bt) = 1/a - (b/a^2) t.
        if (o.val.is_zero()) throw DivisionByZero("jet with zero base value");
        Scalar inv_v = Scalar::one() / o.val;
        Jet inv(inv_v, -(o.dot * inv_v * inv_v));
        return *this * inv;
    }
    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    bool operator==(const Jet& o) const { return val == o.val && dot == o.dot; }
    bool operator!=(const Jet& o) const { return !(*this == o); }

    Jet derivative(int var) const { return Jet(val.derivative(var), dot.derivative(var)); }
};

// Ring glue used by the templated form/geometry code.
inline Scalar ring_zero(const Scalar*) { return Scalar(); }
inline Scalar ring_one(const Scalar*) { return Scalar::one(); }
inline Scalar ring_from_rational(const Scalar*, const mpq_class& q) { return Scalar(q); }
inline bool ring_is_invertible(const Scalar& s) { return !s.is_zero(); }

inline Jet ring_zero(const Jet*) { return Jet(); }
inline Jet ring_one(const Jet*) { return Jet::one(); }
inline Jet ring_from_rational(const Jet*, const mpq_class& q) { return Jet::from_rational(q); }
inline bool ring_is_invertible(const Jet& j) { return !j.val.is_zero(); }

} // namespace pforms
