#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pforms/jet.hpp"

namespace pforms {

enum class Parity { Even, Odd };

inline Parity operator^(Parity a, Parity b) {
    return (a == b) ? Parity::Even : Parity::Odd;
}
inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// Basis index sets are bitmasks over coordinate indices; the implicit
// ordering inside a mask is strictly increasing.
using IndexMask = std::uint32_t;

inline int mask_size(IndexMask m) { return std::popcount(m); }

// Sign of merging two disjoint increasing index blocks (A then B) into one
// increasing block: parity of the number of transpositions.
inline int merge_sign(IndexMask a, IndexMask b) {
    int inversions = 0;
    IndexMask bb = b;
    while (bb) {
        int bit = std::countr_zero(bb);
        bb &= bb - 1;
        inversions += std::popcount(a >> (bit + 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

// Position sign for removing index `i` from increasing block `m`:
// (-1)^{#indices below i}.
inline int removal_sign(IndexMask m, int i) {
    int below = std::popcount(m & ((IndexMask{1} << i) - 1));
    return (below % 2 == 0) ? 1 : -1;
}

template <class R>
struct VectorFieldT {
    int dim = 0;
    std::vector<R> comps;

    VectorFieldT() = default;
    explicit VectorFieldT(int n) : dim(n), comps(static_cast<std::size_t>(n)) {}

    static VectorFieldT coordinate(int n, int mu) {
        VectorFieldT v(n);
        v.comps[static_cast<std::size_t>(mu)] = ring_one(static_cast<const R*>(nullptr));
        return v;
    }

    bool is_zero() const {
        for (const auto& c : comps)
            if (!c.is_zero()) return false;
        return true;
    }
};

// Graded, parity-tagged differential form in the coordinate basis. Absent
// keys are zero coefficients; stored coefficients are nonzero.
template <class R>
struct DFormT {
    int dim = 0;
    int degree = 0;
    Parity parity = Parity::Even;
    std::map<IndexMask, R> comps;

    DFormT() = default;
    DFormT(int n, int p, Parity par = Parity::Even) : dim(n), degree(p), parity(par) {}

    static DFormT zero(int n, int p, Parity par = Parity::Even) { return DFormT(n, p, par); }

    static DFormT scalar(int n, const R& value, Parity par = Parity::Even) {
        DFormT f(n, 0, par);
        f.set(0, value);
        return f;
    }

    static DFormT coordinate_basis(int n, std::initializer_list<int> idx) {
        DFormT f(n, static_cast<int>(idx.size()));
        IndexMask m = 0;
        for (int i : idx) {
            if (i < 0 || i >= n) throw BadIndex("basis index " + std::to_string(i));
            m |= IndexMask{1} << i;
        }
        if (mask_size(m) != static_cast<int>(idx.size()))
            throw BadIndex("repeated basis index");
        f.set(m, ring_one(static_cast<const R*>(nullptr)));
        return f;
    }

    bool is_zero() const { return comps.empty(); }

    const R& coeff(IndexMask m) const {
        static const R kZero = ring_zero(static_cast<const R*>(nullptr));
        auto it = comps.find(m);
        return it == comps.end() ? kZero : it->second;
    }

    void set(IndexMask m, const R& v) {
        if (v.is_zero())
            comps.erase(m);
        else
            comps[m] = v;
    }

    void add(IndexMask m, const R& v) {
        if (v.is_zero()) return;
        auto it = comps.find(m);
        if (it == comps.end()) {
            comps.emplace(m, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) comps.erase(it);
        }
    }

    std::size_t monomial_count() const;

    bool operator==(const DFormT& o) const {
        if (is_zero() && o.is_zero()) return dim == o.dim;
        return dim == o.dim && degree == o.degree && parity == o.parity && comps == o.comps;
    }
    bool operator!=(const DFormT& o) const { return !(*this == o); }
};

namespace detail {
template <class R>
void check_same_dim(const DFormT<R>& a, const DFormT<R>& b) {
    if (a.dim != b.dim)
        throw DimensionMismatch("form dimensions " + std::to_string(a.dim) + " vs " +
                                std::to_string(b.dim));
}
} // namespace detail

// Sum; zero forms are degree/parity-flexible so generic accumulators never
// need to special-case the empty start.
template <class R>
DFormT<R> add(const DFormT<R>& a, const DFormT<R>& b) {
    detail::check_same_dim(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree != b.degree)
        throw DimensionMismatch("adding forms of degree " + std::to_string(a.degree) + " and " +
                                std::to_string(b.degree));
    if (a.parity != b.parity)
        throw DimensionMismatch("adding forms of opposite parity");
    DFormT<R> r = a;
    for (const auto& [m, c] : b.comps) r.add(m, c);
    return r;
}

template <class R>
DFormT<R> neg(const DFormT<R>& a) {
    DFormT<R> r(a.dim, a.degree, a.parity);
    for (const auto& [m, c] : a.comps) r.comps.emplace(m, -c);
    return r;
}

template <class R>
DFormT<R> sub(const DFormT<R>& a, const DFormT<R>& b) {
    return add(a, neg(b));
}

template <class R>
DFormT<R> scale(const R& s, const DFormT<R>& a) {
    DFormT<R> r(a.dim, a.degree, a.parity);
    for (const auto& [m, c] : a.comps) r.add(m, s * c);
    return r;
}

template <class R>
DFormT<R> scale(const mpq_class& q, const DFormT<R>& a) {
    return scale(ring_from_rational(static_cast<const R*>(nullptr), q), a);
}

// Wedge product: degrees add, parities add mod 2. A degree overflow past the
// chart dimension yields the zero form of clamped degree.
template <class R>
DFormT<R> wedge(const DFormT<R>& a, const DFormT<R>& b) {
    detail::check_same_dim(a, b);
    int deg = a.degree + b.degree;
    Parity par = a.parity ^ b.parity;
    if (deg > a.dim) return DFormT<R>::zero(a.dim, a.dim, par);
    DFormT<R> r(a.dim, deg, par);
    for (const auto& [ma, ca] : a.comps) {
        for (const auto& [mb, cb] : b.comps) {
            if (ma & mb) continue;
            int s = merge_sign(ma, mb);
            R c = ca * cb;
            if (s < 0) c = -c;
            r.add(ma | mb, c);
        }
    }
    return r;
}

// Exterior derivative; d of a top-degree form is the zero top form.
template <class R>
DFormT<R> exterior_derivative(const DFormT<R>& a) {
    if (a.degree >= a.dim) return DFormT<R>::zero(a.dim, a.dim, a.parity);
    DFormT<R> r(a.dim, a.degree + 1, a.parity);
    for (const auto& [m, c] : a.comps) {
        for (int mu = 0; mu < a.dim; ++mu) {
            IndexMask bit = IndexMask{1} << mu;
            if (m & bit) continue;
            R dc = c.derivative(mu);
            if (dc.is_zero()) continue;
            int s = merge_sign(bit, m);
            if (s < 0) dc = -dc;
            r.add(bit | m, dc);
        }
    }
    return r;
}

// Interior product (contraction on the first slot); an anti-derivation of
// degree -1. Contraction of a 0-form is zero.
template <class R>
DFormT<R> interior_product(const VectorFieldT<R>& x, const DFormT<R>& a) {
    if (x.dim != a.dim)
        throw DimensionMismatch("vector field dimension " + std::to_string(x.dim) +
                                " vs form dimension " + std::to_string(a.dim));
    if (a.degree == 0) return DFormT<R>::zero(a.dim, 0, a.parity);
    DFormT<R> r(a.dim, a.degree - 1, a.parity);
    for (const auto& [m, c] : a.comps) {
        IndexMask mm = m;
        while (mm) {
            int i = std::countr_zero(mm);
            mm &= mm - 1;
            const R& xi = x.comps[static_cast<std::size_t>(i)];
            if (xi.is_zero()) continue;
            R c2 = xi * c;
            if (removal_sign(m, i) < 0) c2 = -c2;
            r.add(m & ~(IndexMask{1} << i), c2);
        }
    }
    return r;
}

// Lie derivative along a vector field via the homotopy formula
// L_X = d(X .) + X . d.
template <class R>
DFormT<R> lie_derivative(const VectorFieldT<R>& x, const DFormT<R>& a) {
    DFormT<R> d_ix = exterior_derivative(interior_product(x, a));
    DFormT<R> ix_d = interior_product(x, exterior_derivative(a));
    return add(d_ix, ix_d);
}

template <class R>
std::size_t DFormT<R>::monomial_count() const {
    std::size_t k = 0;
    for (const auto& [m, c] : comps) k += c.monomial_count();
    return k;
}

template <>
inline std::size_t DFormT<Jet>::monomial_count() const {
    std::size_t k = 0;
    for (const auto& [m, c] : comps) k += c.val.monomial_count() + c.dot.monomial_count();
    return k;
}

using DForm = DFormT<Scalar>;
using VectorField = VectorFieldT<Scalar>;
using JetForm = DFormT<Jet>;
using JetVectorField = VectorFieldT<Jet>;

inline std::size_t Scalar_monomial_count(const Scalar& s) { return s.monomial_count(); }

// Splits a jet-valued form into its base and perturbation parts.
inline DForm jet_value(const JetForm& f) {
    DForm r(f.dim, f.degree, f.parity);
    for (const auto& [m, c] : f.comps) r.add(m, c.val);
    return r;
}
inline DForm jet_dot(const JetForm& f) {
    DForm r(f.dim, f.degree, f.parity);
    for (const auto& [m, c] : f.comps) r.add(m, c.dot);
    return r;
}
inline JetForm jet_lift(const DForm& value, const DForm& dot) {
    JetForm r(value.dim, value.degree, value.parity);
    for (const auto& [m, c] : value.comps) r.add(m, Jet(c));
    for (const auto& [m, c] : dot.comps) r.add(m, Jet(Scalar(), c));
    return r;
}
inline JetForm jet_lift(const DForm& value) { return jet_lift(value, DForm::zero(value.dim, value.degree, value.parity)); }

std::string to_string(const DForm& f);
// Parses form text such as "(3*x0) dx0^dx1 + dx2^dx3 !odd".
DForm parse_form(const std::string& text, int dim);

} // namespace pforms
