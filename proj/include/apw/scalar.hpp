#pragma once

#include "apw/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace apw {

/// A monomial in declared irrational symbols; the empty monomial is the
/// rational unit "1".  Kept sorted so equal monomials compare equal.
using TagMonomial = std::vector<std::string>;

inline std::string monomial_key(const TagMonomial& m) {
    if (m.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) out += "*";
        out += m[i];
    }
    return out;
}

inline TagMonomial parse_monomial(const std::string& key) {
    if (key == "1") return {};
    TagMonomial m;
    std::string cur;
    for (char ch : key) {
        if (ch == '*') {
            if (!cur.empty()) m.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) m.push_back(cur);
    std::sort(m.begin(), m.end());
    return m;
}

/// Exact scalar in the rational vector space spanned by monomials in declared
/// irrational tags.  Declared tags (e.g. "alpha") are Q-linearly independent
/// irrationals; products of tags are carried formally, so a value that reduces
/// to zero here is zero for every real interpretation of the tags.  Decidable
/// predicates (rationality, rational independence) are restricted to values of
/// tag degree at most one, where the declared independence settles them.
class ScalarK {
public:
    ScalarK() = default;
    ScalarK(const Rational& r) { set({}, r); }  // NOLINT(google-explicit-constructor)
    ScalarK(long long n) { set({}, Rational(n)); }  // NOLINT(google-explicit-constructor)
    ScalarK(int n) { set({}, Rational(n)); }  // NOLINT(google-explicit-constructor)

    static ScalarK tag(const std::string& symbol, const Rational& coeff = Rational(1)) {
        if (symbol.empty() || symbol == "1")
            throw std::invalid_argument("tag symbol must name an irrational");
        ScalarK s;
        s.set({symbol}, coeff);
        return s;
    }

    const std::map<TagMonomial, Rational>& coeffs() const { return coeffs_; }

    Rational coeff(const TagMonomial& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    Rational rational_part() const { return coeff({}); }

    bool is_zero() const { return coeffs_.empty(); }

    /// Largest monomial length with a nonzero coefficient (0 for rationals).
    size_t degree() const {
        size_t d = 0;
        for (const auto& [m, c] : coeffs_) d = std::max(d, m.size());
        return d;
    }

    /// Exact rationality test.  Only meaningful on the declared-tag fragment
    /// (degree <= 1): there a value is rational iff every tag coefficient
    /// vanishes.  Composite monomials (e.g. alpha*alpha) carry no declared
    /// relations, so rationality is undecidable for them.
    bool is_rational() const {
        if (coeffs_.empty()) return true;
        bool tagged = false;
        for (const auto& [m, c] : coeffs_) {
            if (m.size() >= 2)
                throw std::domain_error(
                    "is_rational: value has composite tag '" + monomial_key(m) +
                    "' outside the declared-tag fragment");
            if (m.size() == 1) tagged = true;
        }
        return !tagged;
    }

    std::set<std::string> symbols() const {
        std::set<std::string> out;
        for (const auto& [m, c] : coeffs_)
            for (const auto& s : m) out.insert(s);
        return out;
    }

    ScalarK operator-() const {
        ScalarK out;
        for (const auto& [m, c] : coeffs_) out.coeffs_.emplace(m, -c);
        return out;
    }

    ScalarK& operator+=(const ScalarK& o) {
        for (const auto& [m, c] : o.coeffs_) set(m, coeff(m) + c);
        return *this;
    }
    ScalarK& operator-=(const ScalarK& o) {
        for (const auto& [m, c] : o.coeffs_) set(m, coeff(m) - c);
        return *this;
    }

    friend ScalarK operator+(ScalarK a, const ScalarK& b) { return a += b; }
    friend ScalarK operator-(ScalarK a, const ScalarK& b) { return a -= b; }

    friend ScalarK operator*(const ScalarK& a, const ScalarK& b) {
        ScalarK out;
        for (const auto& [ma, ca] : a.coeffs_)
            for (const auto& [mb, cb] : b.coeffs_) {
                TagMonomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                out.set(m, out.coeff(m) + ca * cb);
            }
        return out;
    }

    /// Division by a nonzero rational.
    ScalarK operator/(const Rational& r) const {
        if (r == 0) throw std::invalid_argument("division by zero");
        ScalarK out;
        for (const auto& [m, c] : coeffs_) out.coeffs_.emplace(m, c / r);
        return out;
    }

    friend bool operator==(const ScalarK& a, const ScalarK& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const ScalarK& a, const ScalarK& b) { return !(a == b); }
    friend bool operator<(const ScalarK& a, const ScalarK& b) { return a.coeffs_ < b.coeffs_; }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : coeffs_) {
            std::string term = to_string(rat_abs(c));
            if (!m.empty()) {
                if (term == "1")
                    term = monomial_key(m);
                else
                    term += "*" + monomial_key(m);
            }
            if (first) {
                out += (c < 0 ? "-" : "") + term;
                first = false;
            } else {
                out += (c < 0 ? " - " : " + ") + term;
            }
        }
        return out;
    }

private:
    void set(const TagMonomial& m, const Rational& c) {
        if (c == 0)
            coeffs_.erase(m);
        else
            coeffs_[m] = c;
    }

    std::map<TagMonomial, Rational> coeffs_;  // monomial -> nonzero coefficient
};

inline ScalarK operator*(const Rational& r, const ScalarK& s) { return ScalarK(r) * s; }
inline ScalarK operator*(const ScalarK& s, const Rational& r) { return s * ScalarK(r); }

/// Numeric valuation for tags, used only when handing exact data to the
/// floating-point flow simulator.  Declared defaults are quadratic
/// irrationals; unknown symbols get fractional parts of square roots of
/// successive primes.
class TagValuation {
public:
    TagValuation() {
        values_["alpha"] = 0.6180339887498949;   // golden conjugate
        values_["beta"] = 0.41421356237309515;   // sqrt(2) - 1
        values_["gamma"] = 0.7320508075688772;   // sqrt(3) - 1
        values_["exc"] = 1.0 / 1024.0;           // symbolic exceptional area
    }
    void set(const std::string& sym, double v) { values_[sym] = v; }
    double value(const std::string& sym) const {
        auto it = values_.find(sym);
        if (it != values_.end()) return it->second;
        // deterministic fallback: fractional part of sqrt of a prime-ish seed
        double h = 2.0;
        for (char c : sym) h += static_cast<double>(c) * 1.37;
        double r = std::sqrt(h);
        return r - std::floor(r);
    }

private:
    std::map<std::string, double> values_;
};

inline double to_double(const ScalarK& s, const TagValuation& val = TagValuation()) {
    double out = 0.0;
    for (const auto& [m, c] : s.coeffs()) {
        double t = to_double(c);
        for (const auto& sym : m) t *= val.value(sym);
        out += t;
    }
    return out;
}

/// Parses "3/2", "-0.25", "alpha", "2*alpha" or "alpha*beta" style atoms
/// joined by '+'/'-'.
inline ScalarK parse_scalar(const std::string& text) {
    ScalarK out;
    std::string term;
    std::vector<std::pair<char, std::string>> terms;
    char sign = '+';
    for (size_t i = 0; i <= text.size(); ++i) {
        char ch = i < text.size() ? text[i] : '\0';
        if (ch == ' ') continue;
        bool is_sign = (ch == '+' || ch == '-') && !term.empty() &&
                       term.back() != '/' && term.back() != '*' && term.back() != 'e';
        if (ch == '\0' || is_sign) {
            if (!term.empty()) terms.emplace_back(sign, term);
            term.clear();
            sign = ch;
        } else if ((ch == '+' || ch == '-') && term.empty()) {
            sign = (sign == ch) ? '+' : ((sign == '-' || ch == '-') ? '-' : '+');
        } else {
            term += ch;
        }
    }
    for (auto& [sg, t] : terms) {
        // split factors on '*': rational factors multiply, symbols build the monomial
        Rational coeff(1);
        TagMonomial mono;
        std::string factor;
        auto flush = [&]() {
            if (factor.empty()) return;
            if ((factor[0] >= '0' && factor[0] <= '9') || factor[0] == '.')
                coeff *= parse_rational(factor);
            else
                mono.push_back(factor);
            factor.clear();
        };
        for (char ch : t) {
            if (ch == '*') {
                flush();
            } else {
                factor += ch;
            }
        }
        flush();
        std::sort(mono.begin(), mono.end());
        if (sg == '-') coeff = -coeff;
        ScalarK piece = mono.empty() ? ScalarK(coeff) : ScalarK(0);
        if (!mono.empty()) {
            piece = ScalarK(coeff);
            for (const auto& sym : mono) piece = piece * ScalarK::tag(sym);
        }
        out += piece;
    }
    return out;
}

}  // namespace apw
