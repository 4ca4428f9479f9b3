#pragma once

#include <vector>

#include "pforms/dform.hpp"

namespace pforms {

// Orientation convention used throughout: the Levi-Civita symbol with upper
// frame indices satisfies eps^{0 1 ... n-1} = +1; lowered index blocks pick
// up products of signature signs.
struct EpsilonConvention {
    static constexpr const char* description = "eps^{01...(n-1)} = +1";
};

template <class R>
using Matrix = std::vector<std::vector<R>>;

// Gauss-Jordan inverse over a ring with partial division (fields, or jets
// with invertible base). Returns false when singular.
template <class R>
bool matrix_inverse(const Matrix<R>& m, Matrix<R>& inv, R& det) {
    const int n = static_cast<int>(m.size());
    const R zero = ring_zero(static_cast<const R*>(nullptr));
    const R one = ring_one(static_cast<const R*>(nullptr));
    Matrix<R> a = m;
    inv.assign(n, std::vector<R>(n, zero));
    for (int i = 0; i < n; ++i) inv[i][i] = one;
    det = one;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (ring_is_invertible(a[r][col])) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return false;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(inv[pivot], inv[col]);
            det = -det;
        }
        R p = a[col][col];
        det = det * p;
        for (int j = 0; j < n; ++j) {
            a[col][j] = a[col][j] / p;
            inv[col][j] = inv[col][j] / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            R f = a[r][col];
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return true;
}

// Coframe field, dual frame, signature data, volume form and Hodge star on
// an n-dimensional chart. Immutable after construction.
template <class R>
struct FrameGeometryT {
    int dim = 0;
    std::vector<int> signature;       // diagonal of eta, entries +-1
    Matrix<R> coframe_matrix;         // row a: components of coframe 1-form a
    Matrix<R> frame_matrix;           // row a: components of frame vector a
    R det;
    std::vector<DFormT<R>> coframe;   // n coframe 1-forms (even)
    std::vector<VectorFieldT<R>> frame;
    DFormT<R> volume;                 // odd n-form

    int sig(int a) const { return signature[static_cast<std::size_t>(a)]; }
    int sig_det() const {
        int s = 1;
        for (int v : signature) s *= v;
        return s;
    }
};

using FrameGeometry = FrameGeometryT<Scalar>;
using JetFrameGeometry = FrameGeometryT<Jet>;

template <class R>
FrameGeometryT<R> build_geometry(const Matrix<R>& coframe_matrix,
                                 const std::vector<int>& signature) {
    const int n = static_cast<int>(signature.size());
    if (n <= 0 || n > kMaxVars) throw BadShape("dimension out of range");
    if (static_cast<int>(coframe_matrix.size()) != n) throw BadShape("coframe matrix is not n x n");
    for (const auto& row : coframe_matrix)
        if (static_cast<int>(row.size()) != n) throw BadShape("coframe matrix is not n x n");
    for (int s : signature)
        if (s != 1 && s != -1) throw BadShape("signature entries must be +-1");

    FrameGeometryT<R> g;
    g.dim = n;
    g.signature = signature;
    g.coframe_matrix = coframe_matrix;
    Matrix<R> inv;
    if (!matrix_inverse(coframe_matrix, inv, g.det))
        throw SingularCoframe("coframe matrix has vanishing determinant");
    // frame[a][mu] with sum_mu coframe[b][mu] * frame[a][mu] = delta_ab.
    g.frame_matrix.assign(n, std::vector<R>(n, ring_zero(static_cast<const R*>(nullptr))));
    for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu) g.frame_matrix[a][mu] = inv[mu][a];

    for (int a = 0; a < n; ++a) {
        DFormT<R> th(n, 1, Parity::Even);
        for (int mu = 0; mu < n; ++mu) th.add(IndexMask{1} << mu, coframe_matrix[a][mu]);
        g.coframe.push_back(th);
        VectorFieldT<R> e(n);
        e.comps = g.frame_matrix[a];
        g.frame.push_back(e);
    }
    // volume = theta^0 ^ ... ^ theta^{n-1} = det * dx^{0...n-1}, an odd form.
    DFormT<R> vol(n, n, Parity::Odd);
    vol.add((IndexMask{1} << n) - 1, g.det);
    g.volume = vol;
    return g;
}

// Star of a coframe basis monomial: *(theta^I) = sign(I, I^c) *
// (prod_{j in I^c} eta_j) theta^{I^c}.
template <class R>
DFormT<R> hodge_star_basis(const FrameGeometryT<R>& g, IndexMask mask) {
    const int n = g.dim;
    IndexMask full = (IndexMask{1} << n) - 1;
    IndexMask comp = full & ~mask;
    int s = merge_sign(mask, comp);
    for (IndexMask mm = comp; mm;) {
        int j = std::countr_zero(mm);
        mm &= mm - 1;
        s *= g.sig(j);
    }
    DFormT<R> r = DFormT<R>::scalar(n, ring_from_rational(static_cast<const R*>(nullptr), s),
                                    Parity::Even);
    for (IndexMask mm = comp; mm;) {
        int j = std::countr_zero(mm);
        mm &= mm - 1;
        r = wedge(r, g.coframe[static_cast<std::size_t>(j)]);
    }
    return r;
}

// Coefficients of `a` in the coframe basis, keyed by index mask.
template <class R>
std::map<IndexMask, R> coframe_coefficients(const FrameGeometryT<R>& g, const DFormT<R>& a) {
    std::map<IndexMask, R> out;
    const int n = g.dim;
    std::vector<IndexMask> masks;
    for (IndexMask m = 0; m < (IndexMask{1} << n); ++m)
        if (mask_size(m) == a.degree) masks.push_back(m);
    for (IndexMask m : masks) {
        DFormT<R> cur = a;
        IndexMask mm = m;
        while (mm && !cur.is_zero()) {
            int i = std::countr_zero(mm);
            mm &= mm - 1;
            cur = interior_product(g.frame[static_cast<std::size_t>(i)], cur);
        }
        if (!cur.is_zero()) out.emplace(m, cur.coeff(0));
    }
    return out;
}

// Hodge star determined by the coframe and signature; flips parity.
template <class R>
DFormT<R> hodge_star(const FrameGeometryT<R>& g, const DFormT<R>& a) {
    if (a.dim != g.dim) throw DimensionMismatch("form/geometry dimension mismatch");
    Parity out_par = a.parity ^ Parity::Odd;
    DFormT<R> r = DFormT<R>::zero(g.dim, g.dim - a.degree, out_par);
    for (const auto& [m, c] : coframe_coefficients(g, a)) {
        DFormT<R> sb = hodge_star_basis(g, m);
        r = add(r, scale(c, sb));
    }
    r.parity = out_par;
    return r;
}

// First-order change of the star under a coframe perturbation, at fixed
// argument: (delta* - *delta) a = dtheta_a ^ (e_a . *a) - *(dtheta_a ^ (e_a . a)).
template <class R>
DFormT<R> hodge_variation(const FrameGeometryT<R>& g,
                          const std::vector<DFormT<R>>& delta_coframe, const DFormT<R>& a) {
    if (a.dim != g.dim) throw DimensionMismatch("form/geometry dimension mismatch");
    if (static_cast<int>(delta_coframe.size()) != g.dim)
        throw DimensionMismatch("coframe variation needs one 1-form per leg");
    DFormT<R> star_a = hodge_star(g, a);
    DFormT<R> direct = DFormT<R>::zero(g.dim, star_a.degree, star_a.parity);
    DFormT<R> starred_arg = DFormT<R>::zero(g.dim, a.degree, a.parity);
    for (int leg = 0; leg < g.dim; ++leg) {
        const DFormT<R>& dth = delta_coframe[static_cast<std::size_t>(leg)];
        if (dth.is_zero()) continue;
        if (dth.dim != g.dim || dth.degree != 1)
            throw DimensionMismatch("coframe variation entries must be 1-forms");
        direct = add(direct, wedge(dth, interior_product(g.frame[static_cast<std::size_t>(leg)], star_a)));
        starred_arg = add(starred_arg,
                          wedge(dth, interior_product(g.frame[static_cast<std::size_t>(leg)], a)));
    }
    return sub(direct, hodge_star(g, starred_arg));
}

// Lifts a scalar geometry into the jet ring with a given coframe
// perturbation; the jet star over this geometry is the independent oracle
// for all coframe-variation machinery.
inline JetFrameGeometry jet_geometry(const FrameGeometry& g, const std::vector<DForm>& delta_coframe) {
    const int n = g.dim;
    Matrix<Jet> m(static_cast<std::size_t>(n), std::vector<Jet>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu) {
            Scalar dot;
            if (!delta_coframe.empty()) dot = delta_coframe[static_cast<std::size_t>(a)].coeff(IndexMask{1} << mu);
            m[a][mu] = Jet(g.coframe_matrix[a][mu], dot);
        }
    return build_geometry(m, g.signature);
}

} // namespace pforms
