#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apw {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat(long long n, long long d = 1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(Int(n), Int(d));
}

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Renders as "p/q", or just "p" for integers.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p", "p/q" and plain decimal strings such as "-0.25".
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            Int n(text.substr(0, slash));
            Int d(text.substr(slash + 1));
            if (d == 0) throw std::invalid_argument("zero denominator");
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(Int(text));
        std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
        if (head.empty() || head == "-" || head == "+") head += "0";
        Int scale = 1;
        for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Int whole(head);
        Int frac = tail.empty() ? Int(0) : Int(tail);
        bool neg = !text.empty() && text[0] == '-';
        Rational out = Rational(whole) + (neg ? Rational(-frac, scale) : Rational(frac, scale));
        return out;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
}

}  // namespace apw
