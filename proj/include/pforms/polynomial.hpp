#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

#include "pforms/monomial.hpp"

namespace pforms {

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in graded-lex order; zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, mpq_class, GrlexLess>;

    Polynomial() = default;
    explicit Polynomial(const mpq_class& c) {
        if (c != 0) terms_[Monomial::one()] = c;
    }
    explicit Polynomial(long c) : Polynomial(mpq_class(c)) {}

    static Polynomial variable(int i) {
        Polynomial p;
        p.terms_[Monomial::var(i)] = 1;
        return p;
    }
    static Polynomial term(const Monomial& m, const mpq_class& c) {
        Polynomial p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    mpq_class constant_value() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->second;
    }
    std::size_t term_count() const { return terms_.size(); }

    int total_degree() const {
        if (terms_.empty()) return 0;
        return terms_.rbegin()->first.total_degree();
    }
    // Degree in one variable.
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[var]));
        return d;
    }
    // Highest variable index that actually occurs, or -1 for constants.
    int top_variable() const {
        int top = -1;
        for (const auto& [m, c] : terms_)
            for (int i = kMaxVars - 1; i > top; --i)
                if (m.e[i] > 0) top = i;
        return top;
    }

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const mpq_class& leading_coefficient() const { return terms_.rbegin()->second; }

    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Polynomial operator*(const mpq_class& c) const {
        Polynomial r;
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int var) const;

    // Exact quotient if `this` is divisible by `d`, nullopt otherwise.
    std::optional<Polynomial> divide_exact(const Polynomial& d) const;

    // Rational content: c such that (*this)/c has coprime integer
    // coefficients with positive leading coefficient. Zero for the zero
    // polynomial.
    mpq_class rational_content() const;

    void add_term(const Monomial& m, const mpq_class& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    TermMap terms_;
};

// GCD of two polynomials, normalized to integer-primitive form with positive
// leading coefficient (1 for coprime inputs; gcd(0, p) is normalized p).
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

std::string to_string(const Polynomial& p);

} // namespace pforms
