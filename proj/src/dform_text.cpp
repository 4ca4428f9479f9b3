#include <cctype>
#include <sstream>

#include "pforms/dform.hpp"

namespace pforms {

std::string to_string(const DForm& f) {
    std::ostringstream os;
    if (f.is_zero()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [m, c] : f.comps) {
            if (!first) os << " + ";
            first = false;
            bool coeff_is_one = c.is_one();
            if (!coeff_is_one || m == 0) os << "(" << to_string(c) << ")";
            if (m != 0) {
                if (!coeff_is_one) os << " ";
                IndexMask mm = m;
                bool first_idx = true;
                while (mm) {
                    int i = std::countr_zero(mm);
                    mm &= mm - 1;
                    if (!first_idx) os << "^";
                    first_idx = false;
                    os << "dx" << i;
                }
            }
        }
    }
    if (f.parity == Parity::Odd) os << " !odd";
    return os.str();
}

namespace {

struct FormParser {
    const std::string& s;
    int dim;
    std::size_t pos = 0;
    int line = 1, col = 1;

    FormParser(const std::string& text, int n) : s(text), dim(n) {}

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

    void advance() {
        if (s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
    }
    bool try_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            for (std::size_t i = 0; i < w.size(); ++i) advance();
            return true;
        }
        return false;
    }

    // One summand: optional (scalar) coefficient, then optional dxI^dxJ chain.
    void parse_term(DForm& out, bool negate) {
        skip_ws();
        Scalar coeff = Scalar::one();
        bool have_any = false;
        if (pos < s.size() && s[pos] == '(') {
            // Find the matching ')' and hand the inside to the scalar parser.
            int depth = 0;
            std::size_t start = pos;
            std::size_t i = pos;
            for (; i < s.size(); ++i) {
                if (s[i] == '(') ++depth;
                if (s[i] == ')') {
                    --depth;
                    if (depth == 0) break;
                }
            }
            if (i >= s.size()) fail("unbalanced '('");
            coeff = parse_scalar(s.substr(start + 1, i - start - 1));
            while (pos <= i) advance();
            have_any = true;
        }
        IndexMask mask = 0;
        int count = 0;
        int sign = 1;
        while (true) {
            skip_ws();
            if (s.compare(pos, 2, "dx") != 0) break;
            advance();
            advance();
            std::string digits;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                digits.push_back(s[pos]);
                advance();
            }
            if (digits.empty()) fail("expected index after 'dx'");
            int idx = std::stoi(digits);
            if (idx < 0 || idx >= dim) fail("basis index out of range");
            IndexMask bit = IndexMask{1} << idx;
            if (mask & bit) {
                // Repeated index: the whole term vanishes, but keep parsing.
                sign = 0;
            } else {
                sign *= merge_sign(mask, bit);
                mask |= bit;
            }
            ++count;
            have_any = true;
            skip_ws();
            if (pos < s.size() && s[pos] == '^') {
                advance();
                continue;
            }
            break;
        }
        if (!have_any) fail("expected term");
        if (out.comps.empty() && out.degree == 0 && count > 0) out.degree = count;
        if (count != out.degree && !(sign == 0))
            fail("mixed degrees in form literal");
        if (sign == 0) return;
        Scalar c = coeff;
        if (negate) c = -c;
        if (sign < 0) c = -c;
        out.add(mask, c);
    }
};

} // namespace

DForm parse_form(const std::string& text, int dim) {
    std::string body = text;
    Parity par = Parity::Even;
    auto bang = body.find("!odd");
    if (bang != std::string::npos) {
        par = Parity::Odd;
        body = body.substr(0, bang);
    } else {
        auto be = body.find("!even");
        if (be != std::string::npos) body = body.substr(0, be);
    }
    FormParser p(body, dim);
    p.skip_ws();
    DForm out(dim, 0, par);
    if (p.pos >= body.size()) throw ParseError("empty form literal", 1, 1);
    if (body[p.pos] == '0') {
        p.advance();
        p.skip_ws();
        if (p.pos >= body.size()) return out;
        p.fail("unexpected input after zero form");
    }
    bool negate = false;
    if (p.pos < body.size() && body[p.pos] == '-') {
        negate = true;
        p.advance();
    }
    p.parse_term(out, negate);
    while (true) {
        p.skip_ws();
        if (p.pos >= body.size()) break;
        char c = body[p.pos];
        if (c == '+') {
            p.advance();
            p.parse_term(out, false);
        } else if (c == '-') {
            p.advance();
            p.parse_term(out, true);
        } else {
            p.fail("expected '+' or '-'");
        }
    }
    return out;
}

} // namespace pforms
