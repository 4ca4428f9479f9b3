#include "pforms/models.hpp"

#include <sstream>

namespace pforms {

namespace {

FieldDecls maxwell_decls(int p) {
    return {FieldDecl{"A", FieldDecl::Kind::Matter, p, Parity::Even},
            FieldDecl{"theta", FieldDecl::Kind::Coframe, 1, Parity::Even}};
}

std::vector<int> lorentz_signature(int n) {
    std::vector<int> s(static_cast<std::size_t>(n), 1);
    s[0] = -1;
    return s;
}

} // namespace

Model maxwell_model(int n, int p) {
    if (n < 1 || n > kMaxVars) throw BadShape("dimension out of range");
    if (p < 0 || p > n - 1) throw BadDegree("maxwell degree must satisfy 0 <= p <= n-1");
    Model m;
    m.name = "maxwell";
    m.n = n;
    m.p = p;
    m.signature = lorentz_signature(n);
    m.decls = maxwell_decls(p);
    m.matter = "A";
    m.lagrangian_text = "-1/2 * d(A) ^ star(d(A))";
    m.ast = parse_lagrangian(m.lagrangian_text, m.decls);
    return m;
}

Model coframe_gr_model() {
    Model m;
    m.name = "coframe-gr";
    m.n = 4;
    m.p = 0;
    m.signature = lorentz_signature(4);
    m.decls = {FieldDecl{"theta", FieldDecl::Kind::Coframe, 1, Parity::Even}};
    m.matter = "";
    m.lagrangian_text =
        "1/2 * sum(a,b; (d theta_[a] ^ theta[b]) ^ star(d theta_[b] ^ theta[a]))"
        " - sum(a,b; (d theta_[a] ^ theta[a]) ^ star(d theta_[b] ^ theta[b]))";
    m.ast = parse_lagrangian(m.lagrangian_text, m.decls);
    m.lambda_text = "sum(a; theta[a] ^ star(d theta_[a]))";
    m.lambda_ast = parse_lagrangian(m.lambda_text, m.decls);
    return m;
}

Model electrodynamics_model(const ConstitutiveTensor& chi, const DForm& J) {
    Model m;
    m.name = "premetric-ed";
    m.n = 4;
    m.p = 1;
    m.signature = lorentz_signature(4);
    m.decls = maxwell_decls(1);
    m.matter = "A";
    m.chi = chi;
    m.J = J;
    if (!J.is_zero()) {
        if (J.dim != 4 || J.degree != 3 || J.parity != Parity::Odd)
            throw BadShape("source must be an odd 3-form on the 4d chart");
        if (!exterior_derivative(J).is_zero())
            throw ConfigError("source fixture violates charge conservation (dJ != 0)");
    }

    // L = -1/2 F ^ kappa(F) expanded over increasing index pairs:
    //   L = sum_{(mn),(ab)} 1/2 chi^{mnab} * star(F ^ eps_{ab}) * (F ^ eps_{mn})
    // with eps_{ab} = -sgn(a,b,c,d) theta^c ^ theta^d for the complementary
    // increasing pair (c,d).
    auto complement_pair = [](int a, int b) {
        std::array<int, 2> out{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != a && i != b) out[static_cast<std::size_t>(k++)] = i;
        return out;
    };
    auto perm_sign = [](int a, int b, int c, int d) {
        int idx[4] = {a, b, c, d};
        int sign = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (idx[i] > idx[j]) {
                    std::swap(idx[i], idx[j]);
                    sign = -sign;
                }
        return sign;
    };

    std::ostringstream text;
    bool first = true;
    for (int mm = 0; mm < 4; ++mm)
        for (int nn = mm + 1; nn < 4; ++nn)
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    mpq_class x = chi.at(mm, nn, a, b);
                    if (x == 0) continue;
                    auto cab = complement_pair(a, b);
                    auto cmn = complement_pair(mm, nn);
                    int s_ab = -perm_sign(a, b, cab[0], cab[1]);
                    int s_mn = -perm_sign(mm, nn, cmn[0], cmn[1]);
                    mpq_class q = x * s_ab * s_mn / 2;
                    if (q == 0) continue;
                    std::string qs = q.get_str();
                    if (!first) {
                        if (qs[0] == '-') {
                            text << " - ";
                            qs = qs.substr(1);
                        } else {
                            text << " + ";
                        }
                    } else if (qs[0] == '-') {
                        text << "-";
                        qs = qs.substr(1);
                    }
                    first = false;
                    text << qs << " * star(d(A) ^ theta[" << cab[0] << "] ^ theta[" << cab[1]
                         << "]) ^ d(A) ^ theta[" << cmn[0] << "] ^ theta[" << cmn[1] << "]";
                }
    if (first) text << "0";
    m.lagrangian_text = text.str();
    m.ast = parse_lagrangian(m.lagrangian_text, m.decls);
    return m;
}

Model model_by_name(const std::string& name, int n, int p) {
    if (name == "maxwell") return maxwell_model(n, p);
    if (name == "coframe-gr") return coframe_gr_model();
    if (name == "premetric-ed") {
        DForm j0(4, 3, Parity::Odd);
        return electrodynamics_model(ConstitutiveTensor::vacuum(lorentz_signature(4)), j0);
    }
    throw UnknownModel("no built-in model named '" + name + "'");
}

DForm maxwell_expected_sigma(const FrameGeometry& g, const DForm& F, int p, int a) {
    const auto& e_a = g.frame[static_cast<std::size_t>(a)];
    DForm sF = hodge_star(g, F);
    DForm t1 = wedge(interior_product(e_a, F), sF);
    DForm t2 = wedge(F, interior_product(e_a, sF));
    mpq_class half(1, 2);
    if (p % 2 == 0) return scale(half, add(t1, t2));
    return scale(half, sub(t1, t2));
}

DForm electro_expected_sigma(const FrameGeometry& g, const DForm& F, const DForm& H, int a) {
    const auto& e_a = g.frame[static_cast<std::size_t>(a)];
    DForm t1 = wedge(interior_product(e_a, F), H);
    DForm t2 = wedge(F, interior_product(e_a, H));
    return scale(mpq_class(1, 2), sub(t1, t2));
}

DForm electro_componentwise_lagrangian(const ConstitutiveTensor& chi, const DForm& F,
                                       const FrameGeometry& g) {
    auto fc = coframe_coefficients(g, F);
    auto comp = [&](int a, int b) -> Scalar {
        if (a == b) return Scalar();
        IndexMask m = (IndexMask{1} << a) | (IndexMask{1} << b);
        auto it = fc.find(m);
        if (it == fc.end()) return Scalar();
        return a < b ? it->second : -it->second;
    };
    Scalar acc;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    const mpq_class& x = chi.at(a, b, c, d);
                    if (x == 0) continue;
                    acc += Scalar(x) * comp(a, b) * comp(c, d);
                }
    acc = Scalar(mpq_class(1, 8)) * acc;
    return scale(acc, g.volume);
}

std::vector<DForm> gr_c_forms(const FrameGeometry& g) {
    std::vector<DForm> out;
    for (const auto& th : g.coframe) out.push_back(exterior_derivative(th));
    return out;
}

std::vector<DForm> gr_f_forms(const FrameGeometry& g) {
    const int n = g.dim;
    auto C = gr_c_forms(g);
    // theta^m ^ C_m and e_m . C^m with indices moved by the diagonal eta.
    DForm thC = DForm::zero(n, 3, Parity::Even);
    DForm eC = DForm::zero(n, 1, Parity::Even);
    for (int mm = 0; mm < n; ++mm) {
        mpq_class s(g.sig(mm));
        thC = add(thC, scale(s, wedge(g.coframe[static_cast<std::size_t>(mm)],
                                      C[static_cast<std::size_t>(mm)])));
        eC = add(eC, interior_product(g.frame[static_cast<std::size_t>(mm)],
                                      C[static_cast<std::size_t>(mm)]));
    }
    std::vector<DForm> out;
    for (int a = 0; a < n; ++a) {
        // e^a = eta^{aa} e_a.
        DForm t = C[static_cast<std::size_t>(a)];
        DForm mid = interior_product(g.frame[static_cast<std::size_t>(a)], thC);
        t = sub(t, scale(mpq_class(2 * g.sig(a)), mid));
        t = sub(t, wedge(g.coframe[static_cast<std::size_t>(a)], eC));
        out.push_back(t);
    }
    return out;
}

std::vector<DForm> lorentz_force(const DForm& F, const DForm& J, const FrameGeometry& g) {
    if (g.dim != 4) throw DimensionMismatch("Lorentz force lives on the 4d chart");
    std::vector<DForm> out;
    for (int a = 0; a < 4; ++a)
        out.push_back(wedge(interior_product(g.frame[static_cast<std::size_t>(a)], F), J));
    return out;
}

FieldConfig frame_rotate(const FieldConfig& cfg, const Matrix<Scalar>& A) {
    const int n = cfg.geom.dim;
    if (static_cast<int>(A.size()) != n) throw BadShape("rotation matrix is not n x n");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n) throw BadShape("rotation matrix is not n x n");
    // Exact pseudo-orthogonality: A^T eta A = eta.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar acc;
            for (int k = 0; k < n; ++k)
                acc += A[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                       Scalar(cfg.geom.sig(k)) *
                       A[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            Scalar want = (i == j) ? Scalar(cfg.geom.sig(i)) : Scalar();
            if (acc != want) throw NotOrthochronous("A^T eta A != eta");
        }
    Matrix<Scalar> rotated(static_cast<std::size_t>(n),
                           std::vector<Scalar>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu) {
            Scalar acc;
            for (int b = 0; b < n; ++b)
                acc += A[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
                       cfg.geom.coframe_matrix[static_cast<std::size_t>(b)]
                                              [static_cast<std::size_t>(mu)];
            rotated[static_cast<std::size_t>(a)][static_cast<std::size_t>(mu)] = acc;
        }
    FieldConfig out;
    out.geom = build_geometry(rotated, cfg.geom.signature);
    out.fields = cfg.fields;
    return out;
}

} // namespace pforms
