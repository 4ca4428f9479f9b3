#include "pforms/polynomial.hpp"

#include <sstream>

namespace pforms {

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= kMaxVars) throw BadIndex("derivative variable " + std::to_string(var));
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        int e = m.e[var];
        if (e == 0) continue;
        Monomial q = m;
        q.e[var] = static_cast<std::uint8_t>(e - 1);
        r.add_term(q, c * e);
    }
    return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
    if (d.is_zero()) return std::nullopt;
    Polynomial rem = *this;
    Polynomial quot;
    const Monomial& dlm = d.leading_monomial();
    const mpq_class& dlc = d.leading_coefficient();
    while (!rem.is_zero()) {
        const Monomial& rlm = rem.leading_monomial();
        if (!dlm.divides(rlm)) return std::nullopt;
        Monomial qm = rlm / dlm;
        mpq_class qc = rem.leading_coefficient() / dlc;
        quot.add_term(qm, qc);
        rem -= d * Polynomial::term(qm, qc);
    }
    return quot;
}

mpq_class Polynomial::rational_content() const {
    if (is_zero()) return 0;
    // gcd of numerators over lcm of denominators, sign taken from the
    // leading coefficient.
    mpz_class gnum = 0, lden = 1;
    for (const auto& [m, c] : terms_) {
        mpz_class num = c.get_num(), den = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), gnum.get_mpz_t(), num.get_mpz_t());
        gnum = g;
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), lden.get_mpz_t(), den.get_mpz_t());
        lden = l;
    }
    mpq_class content(gnum, lden);
    content.canonicalize();
    if (leading_coefficient() < 0) content = -content;
    return content;
}

namespace {

// Everything below treats polynomials as univariate in `var` with polynomial
// coefficients in the lower variables (primitive PRS).

std::map<int, Polynomial> coeffs_in(const Polynomial& p, int var) {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial q = m;
        int e = q.e[var];
        q.e[var] = 0;
        out[e].add_term(q, c);
    }
    return out;
}

Polynomial from_coeffs(const std::map<int, Polynomial>& cs, int var) {
    Polynomial r;
    for (const auto& [e, coeff] : cs) {
        Polynomial xk = Polynomial::term(Monomial::var(var, e), 1);
        r += coeff * xk;
    }
    return r;
}

// Content w.r.t. `var`: gcd of the polynomial coefficients.
Polynomial content_in(const Polynomial& p, int var) {
    Polynomial g;
    for (const auto& [e, coeff] : coeffs_in(p, var)) g = poly_gcd(g, coeff);
    return g;
}

// Pseudo-remainder of a by b in variable `var`.
Polynomial pseudo_rem(Polynomial a, const Polynomial& b, int var) {
    int db = b.degree_in(var);
    auto bc = coeffs_in(b, var);
    Polynomial blc = bc.rbegin()->second;
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        auto ac = coeffs_in(a, var);
        Polynomial alc = ac.rbegin()->second;
        Polynomial shift = Polynomial::term(Monomial::var(var, da - db), 1);
        a = a * blc - b * (alc * shift);
    }
    return a;
}

Polynomial normalize_primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    mpq_class c = p.rational_content();
    return *p.divide_exact(Polynomial(c));
}

// Common monomial factor (minimum exponent per variable across all terms).
Monomial monomial_content(const Polynomial& p) {
    Monomial m;
    bool first = true;
    for (const auto& [mon, c] : p.terms()) {
        if (first) {
            m = mon;
            first = false;
            continue;
        }
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], mon.e[i]);
        if (m.is_one()) break;
    }
    return m;
}

// Univariate image of p in `var` at an integer point for the remaining
// variables; returns coefficients by degree. `lc_survives` reports whether
// the leading coefficient in `var` stayed nonzero (the soundness condition
// for degree bounds drawn from the image).
std::map<int, mpq_class> univariate_image(const Polynomial& p, int var,
                                          const std::array<long, kMaxVars>& point,
                                          bool& lc_survives) {
    std::map<int, mpq_class> img;
    for (const auto& [m, c] : p.terms()) {
        mpq_class v = c;
        for (int i = 0; i < kMaxVars; ++i) {
            if (i == var) continue;
            for (int k = 0; k < m.e[i]; ++k) v *= point[static_cast<std::size_t>(i)];
        }
        img[m.e[var]] += v;
    }
    for (auto it = img.begin(); it != img.end();) {
        if (it->second == 0)
            it = img.erase(it);
        else
            ++it;
    }
    int d = p.degree_in(var);
    lc_survives = img.count(d) > 0;
    return img;
}

int univariate_gcd_degree(std::map<int, mpq_class> a, std::map<int, mpq_class> b) {
    auto deg = [](const std::map<int, mpq_class>& u) { return u.empty() ? -1 : u.rbegin()->first; };
    while (!b.empty()) {
        // a mod b by monic reduction.
        mpq_class lead = b.rbegin()->second;
        int db = deg(b);
        while (!a.empty() && deg(a) >= db) {
            mpq_class f = a.rbegin()->second / lead;
            int shift = deg(a) - db;
            for (const auto& [e, c] : b) {
                auto it = a.find(e + shift);
                mpq_class nv = (it == a.end() ? mpq_class(0) : it->second) - f * c;
                if (nv == 0) {
                    if (it != a.end()) a.erase(it);
                } else {
                    a[e + shift] = nv;
                }
            }
        }
        std::swap(a, b);
    }
    return deg(a);
}

// Sound fast path: if for every shared variable the univariate image gcd has
// degree zero (with surviving leading coefficients), the true gcd has degree
// zero in every variable, hence is constant.
bool probably_coprime_certified(const Polynomial& a, const Polynomial& b) {
    static const long kPoints[][kMaxVars] = {
        {3, 5, 7, 11, 13, 17, 19, 23},   {5, 3, 11, 7, 17, 13, 23, 19},
        {7, 11, 3, 13, 5, 19, 17, 29},   {11, 13, 17, 3, 7, 5, 29, 31},
        {13, 7, 5, 17, 11, 3, 31, 37},   {17, 19, 13, 5, 3, 11, 37, 41},
    };
    for (int var = 0; var < kMaxVars; ++var) {
        if (a.degree_in(var) == 0 && b.degree_in(var) == 0) continue;
        if (a.degree_in(var) == 0 || b.degree_in(var) == 0) continue;  // gcd free of var
        bool settled = false;
        for (const auto& pt_raw : kPoints) {
            std::array<long, kMaxVars> pt;
            for (int i = 0; i < kMaxVars; ++i) pt[static_cast<std::size_t>(i)] = pt_raw[i];
            bool la = false, lb = false;
            auto ia = univariate_image(a, var, pt, la);
            auto ib = univariate_image(b, var, pt, lb);
            if (!la || !lb) continue;  // unlucky point; try the next one
            if (univariate_gcd_degree(std::move(ia), std::move(ib)) == 0) {
                settled = true;
                break;
            }
            return false;  // image gcd nontrivial: no certificate either way
        }
        if (!settled) return false;
    }
    return true;
}

} // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    if (a.is_constant() || b.is_constant()) return Polynomial(1);

    // Shared monomial factor comes out first.
    Monomial ma = monomial_content(a), mb = monomial_content(b);
    Monomial shared;
    for (int i = 0; i < kMaxVars; ++i) shared.e[i] = std::min(ma.e[i], mb.e[i]);
    if (!shared.is_one()) {
        Polynomial sa = *a.divide_exact(Polynomial::term(ma, 1));
        Polynomial sb = *b.divide_exact(Polynomial::term(mb, 1));
        return poly_gcd(sa, sb) * Polynomial::term(shared, 1);
    }

    if (probably_coprime_certified(a, b)) return Polynomial(1);

    // Trial division catches shared literal factors cheaply.
    Polynomial pa = normalize_primitive(a), pb = normalize_primitive(b);
    if (pa.divide_exact(pb)) return pb;
    if (pb.divide_exact(pa)) return pa;

    int var = std::max(pa.top_variable(), pb.top_variable());
    Polynomial ca = content_in(pa, var), cb = content_in(pb, var);
    Polynomial g = poly_gcd(ca, cb);

    pa = *pa.divide_exact(ca);
    pb = *pb.divide_exact(cb);
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);

    while (!pb.is_zero()) {
        Polynomial r = pseudo_rem(pa, pb, var);
        pa = pb;
        if (r.is_zero()) {
            pb = Polynomial();
        } else {
            Polynomial cr = content_in(r, var);
            pb = *r.divide_exact(cr);
        }
    }
    return normalize_primitive(g * pa);
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print highest-order terms first.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        mpq_class a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool printed_coeff = false;
        if (a != 1 || m.is_one()) {
            os << a.get_str();
            printed_coeff = true;
        }
        bool first_var = true;
        for (int i = 0; i < kMaxVars; ++i) {
            if (m.e[i] == 0) continue;
            if (printed_coeff || !first_var) os << "*";
            os << "x" << i;
            if (m.e[i] > 1) os << "^" << static_cast<int>(m.e[i]);
            first_var = false;
        }
    }
    return os.str();
}

} // namespace pforms
