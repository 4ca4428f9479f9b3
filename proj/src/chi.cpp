#include "pforms/chi.hpp"

#include <algorithm>

namespace pforms {

namespace {

int eps_symbol(int a, int b, int c, int d) {
    int idx[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (idx[i] == idx[j]) return 0;
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (idx[i] > idx[j]) {
                std::swap(idx[i], idx[j]);
                sign = -sign;
            }
    return sign;
}

} // namespace

ConstitutiveTensor::ConstitutiveTensor() {
    for (auto& x : comps_)
        for (auto& y : x)
            for (auto& z : y)
                for (auto& w : z) w = 0;
}

void ConstitutiveTensor::set(int a, int b, int c, int d, const mpq_class& v) {
    if (a == b || c == d) {
        if (v != 0) throw BadTensor("repeated pair index requires a zero component");
        return;
    }
    comps_[a][b][c][d] = v;
    comps_[b][a][c][d] = -v;
    comps_[a][b][d][c] = -v;
    comps_[b][a][d][c] = v;
}

ConstitutiveTensor ConstitutiveTensor::from_components(
    const std::array<std::array<std::array<std::array<mpq_class, 4>, 4>, 4>, 4>& c) {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) {
                    if (c[a][b][x][y] != -c[b][a][x][y] || c[a][b][x][y] != -c[a][b][y][x])
                        throw BadTensor("components violate pair antisymmetry");
                }
    ConstitutiveTensor t;
    t.comps_ = c;
    return t;
}

ConstitutiveTensor ConstitutiveTensor::from_block(
    const std::array<std::array<mpq_class, 6>, 6>& m) {
    ConstitutiveTensor t;
    for (int i = 0; i < kPairs; ++i)
        for (int j = 0; j < kPairs; ++j) {
            auto [a, b] = kPairOrder[static_cast<std::size_t>(i)];
            auto [c, d] = kPairOrder[static_cast<std::size_t>(j)];
            t.set(a, b, c, d, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    return t;
}

std::array<std::array<mpq_class, 6>, 6> ConstitutiveTensor::block() const {
    std::array<std::array<mpq_class, 6>, 6> m;
    for (int i = 0; i < kPairs; ++i)
        for (int j = 0; j < kPairs; ++j) {
            auto [a, b] = kPairOrder[static_cast<std::size_t>(i)];
            auto [c, d] = kPairOrder[static_cast<std::size_t>(j)];
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = at(a, b, c, d);
        }
    return m;
}

ConstitutiveTensor ConstitutiveTensor::vacuum(const std::vector<int>& signature) {
    if (signature.size() != 4) throw BadShape("vacuum chi needs a 4d signature");
    ConstitutiveTensor t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    mpq_class v = 0;
                    if (a == c && b == d) v += signature[a] * signature[b];
                    if (a == d && b == c) v -= signature[a] * signature[b];
                    t.comps_[a][b][c][d] = v;
                }
    return t;
}

ConstitutiveTensor ConstitutiveTensor::axion(const mpq_class& alpha) {
    ConstitutiveTensor t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) t.comps_[a][b][c][d] = alpha * eps_symbol(a, b, c, d);
    return t;
}

ConstitutiveTensor ConstitutiveTensor::operator+(const ConstitutiveTensor& o) const {
    ConstitutiveTensor t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    t.comps_[a][b][c][d] = comps_[a][b][c][d] + o.comps_[a][b][c][d];
    return t;
}
ConstitutiveTensor ConstitutiveTensor::operator-(const ConstitutiveTensor& o) const {
    ConstitutiveTensor t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    t.comps_[a][b][c][d] = comps_[a][b][c][d] - o.comps_[a][b][c][d];
    return t;
}
ConstitutiveTensor ConstitutiveTensor::operator*(const mpq_class& s) const {
    ConstitutiveTensor t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) t.comps_[a][b][c][d] = comps_[a][b][c][d] * s;
    return t;
}

bool ConstitutiveTensor::is_zero() const {
    for (const auto& x : comps_)
        for (const auto& y : x)
            for (const auto& z : y)
                for (const auto& w : z)
                    if (w != 0) return false;
    return true;
}

ConstitutiveTensor ConstitutiveTensor::pair_symmetric() const {
    ConstitutiveTensor t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    t.comps_[a][b][c][d] =
                        (comps_[a][b][c][d] + comps_[c][d][a][b]) / 2;
    return t;
}

ChiDecomposition chi_decompose(const ConstitutiveTensor& chi) {
    ChiDecomposition out;
    // Axion: full antisymmetrization over the four indices.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int idx[4] = {a, b, c, d};
                    mpq_class acc = 0;
                    int perm[4] = {0, 1, 2, 3};
                    do {
                        int sgn = eps_symbol(perm[0], perm[1], perm[2], perm[3]);
                        acc += sgn * chi.at(idx[perm[0]], idx[perm[1]], idx[perm[2]],
                                            idx[perm[3]]);
                    } while (std::next_permutation(perm, perm + 4));
                    out.axion.set_raw(a, b, c, d, acc / 24);
                }
    // Skewon: pair-antisymmetric part.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    out.skewon.set_raw(a, b, c, d,
                                       (chi.at(a, b, c, d) - chi.at(c, d, a, b)) / 2);
    out.principal = chi - out.skewon - out.axion;
    return out;
}

namespace {

// Exact rank of a 36x36 rational matrix by Gaussian elimination.
int rank_of(std::vector<std::vector<mpq_class>> m) {
    int rank = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[pivot], m[rank]);
        mpq_class p = m[rank][c];
        for (int j = 0; j < cols; ++j) m[rank][j] /= p;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            mpq_class f = m[r][c];
            for (int j = 0; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace

std::array<int, 3> chi_projector_ranks() {
    // Basis of the 36-dimensional pair-antisymmetric space: unit 6x6 blocks.
    std::vector<std::vector<mpq_class>> P1(36, std::vector<mpq_class>(36, 0)),
        P2 = P1, P3 = P1;
    for (int col = 0; col < 36; ++col) {
        std::array<std::array<mpq_class, 6>, 6> unit{};
        unit[static_cast<std::size_t>(col / 6)][static_cast<std::size_t>(col % 6)] = 1;
        ChiDecomposition d = chi_decompose(ConstitutiveTensor::from_block(unit));
        auto b1 = d.principal.block(), b2 = d.skewon.block(), b3 = d.axion.block();
        for (int row = 0; row < 36; ++row) {
            P1[row][col] = b1[static_cast<std::size_t>(row / 6)][static_cast<std::size_t>(row % 6)];
            P2[row][col] = b2[static_cast<std::size_t>(row / 6)][static_cast<std::size_t>(row % 6)];
            P3[row][col] = b3[static_cast<std::size_t>(row / 6)][static_cast<std::size_t>(row % 6)];
        }
    }
    return {rank_of(P1), rank_of(P2), rank_of(P3)};
}

DForm constitutive_map(const ConstitutiveTensor& chi, const DForm& F, const FrameGeometry& g) {
    if (g.dim != 4) throw DimensionMismatch("constitutive map lives on a 4d chart");
    if (F.dim != 4) throw DimensionMismatch("field strength must be 4d");
    // Frame components F_{ab} of the even 2-form F.
    auto fc = coframe_coefficients(g, F);
    // eps_{mn} = e_m . e_n . vol (odd 2-forms).
    DForm H = DForm::zero(4, 2, Parity::Odd);
    for (int m = 0; m < 4; ++m) {
        for (int nn = m + 1; nn < 4; ++nn) {
            Scalar h;  // H^{mn} = (1/2) chi^{mnab} F_{ab} = sum_{a<b} chi^{mnab} F_{ab}
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    const mpq_class& x = chi.at(m, nn, a, b);
                    if (x == 0) continue;
                    IndexMask mask = (IndexMask{1} << a) | (IndexMask{1} << b);
                    auto it = fc.find(mask);
                    if (it == fc.end()) continue;
                    h += Scalar(x) * it->second;
                }
            if (h.is_zero()) continue;
            DForm eps_mn = interior_product(
                g.frame[static_cast<std::size_t>(m)],
                interior_product(g.frame[static_cast<std::size_t>(nn)], g.volume));
            // e_m . (e_n . vol): contraction order matters for the sign.
            H = add(H, scale(h, eps_mn));
        }
    }
    return H;
}

} // namespace pforms
