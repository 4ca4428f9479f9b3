#pragma once

#include <array>

#include "pforms/geometry.hpp"

namespace pforms {

// Linear constitutive tensor on a 4-dimensional chart: chi^{abcd} with
// chi^{abcd} = -chi^{bacd} = -chi^{abdc}. The 36 independent components are
// also addressable as a 6x6 block over antisymmetric index pairs in the
// order 01, 02, 03, 23, 31, 12.
class ConstitutiveTensor {
public:
    static constexpr int kDim = 4;
    static constexpr int kPairs = 6;
    // Row/column pair order for the 6x6 block form.
    static constexpr std::array<std::array<int, 2>, kPairs> kPairOrder = {
        {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

    ConstitutiveTensor();

    static ConstitutiveTensor from_components(
        const std::array<std::array<std::array<std::array<mpq_class, 4>, 4>, 4>, 4>& c);
    static ConstitutiveTensor from_block(const std::array<std::array<mpq_class, 6>, 6>& m);

    // chi^{abcd} = eta^{ac} eta^{bd} - eta^{ad} eta^{bc}: the Maxwell vacuum.
    static ConstitutiveTensor vacuum(const std::vector<int>& signature);
    // chi^{abcd} = alpha * eps^{abcd}: the totally antisymmetric (axion) part.
    static ConstitutiveTensor axion(const mpq_class& alpha);

    const mpq_class& at(int a, int b, int c, int d) const {
        return comps_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                     [static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
    }
    // Writes one component together with its three antisymmetry images.
    void set(int a, int b, int c, int d, const mpq_class& v);
    // Writes exactly one entry; caller maintains antisymmetry.
    void set_raw(int a, int b, int c, int d, const mpq_class& v) {
        comps_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
              [static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] = v;
    }

    std::array<std::array<mpq_class, 6>, 6> block() const;

    ConstitutiveTensor operator+(const ConstitutiveTensor& o) const;
    ConstitutiveTensor operator-(const ConstitutiveTensor& o) const;
    ConstitutiveTensor operator*(const mpq_class& s) const;
    bool operator==(const ConstitutiveTensor& o) const { return comps_ == o.comps_; }

    bool is_zero() const;
    // Pair-swap symmetric part (chi + chi^T)/2 in the pair sense: the part
    // that actually enters the Lagrangian.
    ConstitutiveTensor pair_symmetric() const;

private:
    std::array<std::array<std::array<std::array<mpq_class, 4>, 4>, 4>, 4> comps_;
};

struct ChiDecomposition {
    ConstitutiveTensor principal;  // (1)
    ConstitutiveTensor skewon;     // (2)
    ConstitutiveTensor axion;      // (3)
};

// Irreducible decomposition: axion = full antisymmetrization, skewon =
// pair-antisymmetric part, principal = remainder. Pieces sum to the input
// and each projector is idempotent.
ChiDecomposition chi_decompose(const ConstitutiveTensor& chi);

// Ranks of the three projectors on the 36-dimensional space of
// pair-antisymmetric tensors.
std::array<int, 3> chi_projector_ranks();

// Excitation from field strength: H^{mn} = (1/2) chi^{mnab} F_{ab},
// assembled on the odd 2-form basis eps_{mn} = e_m . e_n . vol. F is an
// even 2-form; the result is odd.
DForm constitutive_map(const ConstitutiveTensor& chi, const DForm& F, const FrameGeometry& g);

} // namespace pforms
