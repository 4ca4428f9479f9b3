#pragma once

#include "pforms/generate.hpp"

// Shared helpers for the unit and acceptance suites.
namespace pforms::testing {

inline Scalar S(const std::string& text) { return parse_scalar(text); }
inline DForm form(const std::string& text, int n) { return parse_form(text, n); }

inline FrameGeometry flat_geometry(int n, std::vector<int> sig = {}) {
    if (sig.empty()) {
        sig.assign(static_cast<std::size_t>(n), 1);
        sig[0] = -1;
    }
    Matrix<Scalar> id(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar::one();
    return build_geometry(id, sig);
}

inline FrameGeometry euclidean_geometry(int n) {
    return flat_geometry(n, std::vector<int>(static_cast<std::size_t>(n), 1));
}

// Unit-determinant polynomial coframe geometry drawn from the generator.
inline FrameGeometry random_geometry(SplitMix64& rng, int n, std::vector<int> sig = {},
                                     GenBounds b = {}) {
    if (sig.empty()) {
        sig.assign(static_cast<std::size_t>(n), 1);
        sig[0] = -1;
    }
    return build_geometry(random_unimodular_coframe(rng, n, b), sig);
}

} // namespace pforms::testing
