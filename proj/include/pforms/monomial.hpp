#pragma once

#include <array>
#include <cstdint>
#include <numeric>

#include "pforms/errors.hpp"

namespace pforms {

// Hard cap on chart dimension / number of polynomial variables.
inline constexpr int kMaxVars = 8;

// Exponent vector of a power product x0^e0 * x1^e1 * ...  Slots beyond the
// active variable count are zero, so monomials from rings of different
// dimension compare consistently.
struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};

    static Monomial one() { return Monomial{}; }

    static Monomial var(int i, int power = 1) {
        if (i < 0 || i >= kMaxVars) throw BadIndex("variable index " + std::to_string(i));
        Monomial m;
        m.e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(power);
        return m;
    }

    int total_degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }

    bool is_one() const { return total_degree() == 0; }

    bool divides(const Monomial& o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) {
            int s = e[i] + o.e[i];
            if (s > 255) throw BadIndex("monomial exponent overflow");
            r.e[i] = static_cast<std::uint8_t>(s);
        }
        return r;
    }

    // Exact quotient; caller must ensure divisibility.
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i)
            r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
        return r;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Graded lexicographic order with x0 < x1 < ... : compare total degree first;
// on ties the monomial with the larger exponent on the highest-index variable
// where they differ is the larger one.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        for (int i = kMaxVars - 1; i >= 0; --i) {
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
        }
        return false;
    }
};

} // namespace pforms
