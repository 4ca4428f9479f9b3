#pragma once

#include <cstdint>

#include "pforms/models.hpp"

namespace pforms {

// Deterministic 64-bit generator (splitmix64). The report contract promises
// byte-identical output per seed, so the algorithm is pinned here and never
// swapped for a platform RNG.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t case_seed(std::uint64_t suite_seed, int case_index) {
    SplitMix64 mix(suite_seed ^ (0xabcd1234ull + static_cast<std::uint64_t>(case_index) * 0x9e3779b9ull));
    return mix.next();
}

struct GenBounds {
    int poly_degree = 2;   // max total degree of generated polynomial coefficients
    long coeff_bound = 9;  // integer coefficients drawn from [-bound, bound]
    int terms = 3;         // monomials per generated polynomial
};

Polynomial random_polynomial(SplitMix64& rng, int n, const GenBounds& b);
Scalar random_scalar(SplitMix64& rng, int n, const GenBounds& b);
DForm random_form(SplitMix64& rng, int n, int degree, Parity parity, const GenBounds& b);
VectorField random_vector_field(SplitMix64& rng, int n, const GenBounds& b);
// Constant-coefficient vector field.
VectorField random_constant_vector_field(SplitMix64& rng, int n, const GenBounds& b);

// Unit-determinant coframe: identity plus a strictly upper-triangular
// polynomial block, so the inverse frame stays polynomial.
Matrix<Scalar> random_unimodular_coframe(SplitMix64& rng, int n, const GenBounds& b);

// Random pair-antisymmetric constitutive tensor; `symmetric` restricts to
// the pair-symmetric (skewon-free) subspace.
ConstitutiveTensor random_chi(SplitMix64& rng, long coeff_bound, bool symmetric);

// Deterministic field configuration for a model in a given mode.
// Dynamical/pure modes draw a unimodular polynomial coframe; the
// fixed-background mode pins the flat holonomic coframe. on_shell selects
// the model's closed-form fixture (constant field strength / flat coframe).
FieldConfig generate_config(std::uint64_t seed, const GenBounds& b, const Model& model,
                            Mode mode, bool on_shell = false);

// Matter perturbation and coframe perturbations for jet checks.
std::map<std::string, DForm> random_field_dots(SplitMix64& rng, const Model& model,
                                               const GenBounds& b);
std::vector<DForm> random_coframe_dots(SplitMix64& rng, int n, const GenBounds& b);

} // namespace pforms
