#include "pforms/generate.hpp"

namespace pforms {

Polynomial random_polynomial(SplitMix64& rng, int n, const GenBounds& b) {
    Polynomial p;
    int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(b.terms)));
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(b.poly_degree + 1)));
        for (int d = 0; d < deg; ++d) {
            int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            m.e[static_cast<std::size_t>(v)] =
                static_cast<std::uint8_t>(m.e[static_cast<std::size_t>(v)] + 1);
        }
        long c = rng.range(-b.coeff_bound, b.coeff_bound);
        p.add_term(m, mpq_class(c));
    }
    return p;
}

Scalar random_scalar(SplitMix64& rng, int n, const GenBounds& b) {
    return Scalar(random_polynomial(rng, n, b));
}

DForm random_form(SplitMix64& rng, int n, int degree, Parity parity, const GenBounds& b) {
    DForm f(n, degree, parity);
    for (IndexMask m = 0; m < (IndexMask{1} << n); ++m) {
        if (mask_size(m) != degree) continue;
        // Keep forms sparse-ish: each component present with probability 3/4.
        if (rng.below(4) == 0) continue;
        f.add(m, random_scalar(rng, n, b));
    }
    return f;
}

VectorField random_vector_field(SplitMix64& rng, int n, const GenBounds& b) {
    VectorField v(n);
    for (int i = 0; i < n; ++i) v.comps[static_cast<std::size_t>(i)] = random_scalar(rng, n, b);
    return v;
}

VectorField random_constant_vector_field(SplitMix64& rng, int n, const GenBounds& b) {
    VectorField v(n);
    for (int i = 0; i < n; ++i)
        v.comps[static_cast<std::size_t>(i)] = Scalar(mpq_class(rng.range(-b.coeff_bound, b.coeff_bound)));
    return v;
}

Matrix<Scalar> random_unimodular_coframe(SplitMix64& rng, int n, const GenBounds& b) {
    Matrix<Scalar> m(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
        m[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = Scalar::one();
        for (int mu = a + 1; mu < n; ++mu)
            m[static_cast<std::size_t>(a)][static_cast<std::size_t>(mu)] =
                random_scalar(rng, n, b);
    }
    return m;
}

ConstitutiveTensor random_chi(SplitMix64& rng, long coeff_bound, bool symmetric) {
    std::array<std::array<mpq_class, 6>, 6> blk{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) blk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            mpq_class(rng.range(-coeff_bound, coeff_bound));
    if (symmetric) {
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) {
                mpq_class s = (blk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                               blk[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) / 2;
                blk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
                blk[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = s;
            }
    }
    return ConstitutiveTensor::from_block(blk);
}

namespace {

// Potential with constant field strength: A = sum_{mu<nu} F_{mu nu} x^mu dx^nu,
// so dA is the requested constant 2-block form.
DForm potential_with_constant_strength(SplitMix64& rng, int n, int p, long coeff_bound) {
    DForm A(n, p, Parity::Even);
    for (IndexMask m = 0; m < (IndexMask{1} << n); ++m) {
        if (mask_size(m) != p + 1) continue;
        long c = rng.range(-coeff_bound, coeff_bound);
        if (c == 0) continue;
        int mu = std::countr_zero(m);  // lowest index of the block
        IndexMask rest = m & ~(IndexMask{1} << mu);
        // x^mu dx^rest pulls back to F = c dx^mu ^ dx^rest with sign +1
        // since mu is the lowest index of the block.
        Scalar coeff = Scalar(mpq_class(c)) * Scalar::variable(mu);
        A.add(rest, coeff);
    }
    return A;
}

} // namespace

FieldConfig generate_config(std::uint64_t seed, const GenBounds& b, const Model& model,
                            Mode mode, bool on_shell) {
    SplitMix64 rng(seed);
    const int n = model.n;
    FieldConfig cfg;
    bool flat = on_shell || mode == Mode::FixedBackground;
    if (flat || model.name == "coframe-gr") {
        // GR's flat fixture and the holonomic modes pin theta^a = dx^a.
        if (model.name == "coframe-gr" && !on_shell && mode == Mode::Dynamical) {
            cfg.geom = build_geometry(random_unimodular_coframe(rng, n, b), model.signature);
        } else {
            Matrix<Scalar> id(static_cast<std::size_t>(n),
                              std::vector<Scalar>(static_cast<std::size_t>(n)));
            for (int i = 0; i < n; ++i)
                id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar::one();
            cfg.geom = build_geometry(id, model.signature);
        }
    } else {
        cfg.geom = build_geometry(random_unimodular_coframe(rng, n, b), model.signature);
    }

    if (!model.matter.empty()) {
        const FieldDecl* d = find_decl(model.decls, model.matter);
        DForm value;
        if (on_shell) {
            value = potential_with_constant_strength(rng, n, d->degree, b.coeff_bound);
        } else {
            value = random_form(rng, n, d->degree, d->parity, b);
        }
        cfg.fields.emplace(model.matter, value);
    }
    return cfg;
}

std::map<std::string, DForm> random_field_dots(SplitMix64& rng, const Model& model,
                                               const GenBounds& b) {
    std::map<std::string, DForm> out;
    if (!model.matter.empty()) {
        const FieldDecl* d = find_decl(model.decls, model.matter);
        out.emplace(model.matter, random_form(rng, model.n, d->degree, d->parity, b));
    }
    return out;
}

std::vector<DForm> random_coframe_dots(SplitMix64& rng, int n, const GenBounds& b) {
    std::vector<DForm> out;
    for (int a = 0; a < n; ++a) out.push_back(random_form(rng, n, 1, Parity::Even, b));
    return out;
}

} // namespace pforms
