#pragma once

// Independent oracles used by the unit and acceptance suites.  Everything
// here recomputes expected values by a route disjoint from the library code
// it checks: direct enumeration, closed-form decompositions, or brute force.

#include "apw/matrix.hpp"
#include "apw/rational.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace apworacle {

/// Smallest t >= 1 with t*c integral for every component (the fiber
/// contributes rate 1), by direct search.  Returns 0 when none is found.
inline long long direct_period_search(const std::vector<apw::Rational>& c, long long tmax) {
    for (long long t = 1; t <= tmax; ++t) {
        bool closes = true;
        for (const auto& ci : c)
            if (apw::denominator(apw::Rational(t) * ci) != 1) closes = false;
        if (closes) return t;
    }
    return 0;
}

/// min over 1 <= q <= qmax of the distance from q*theta to the nearest
/// integer; direct enumeration (the continued-fraction best approximations
/// are a subset of the q's, so this bounds every near-return of the line
/// flow (theta, 1)).
inline double min_multiple_distance(double theta, long long qmax) {
    double best = 1.0;
    for (long long q = 1; q <= qmax; ++q) {
        double x = theta * static_cast<double>(q);
        double d = std::abs(x - std::round(x));
        best = std::min(best, d);
    }
    return best;
}

/// Continued-fraction expansion of a double, partial quotients to the given
/// depth; stops early when the tail collapses numerically.
inline std::vector<long long> continued_fraction(double x, int depth) {
    std::vector<long long> out;
    for (int i = 0; i < depth; ++i) {
        double fl = std::floor(x);
        out.push_back(static_cast<long long>(fl));
        double frac = x - fl;
        if (frac < 1e-12) break;
        x = 1.0 / frac;
        if (x > 1e15) break;
    }
    return out;
}

/// Torus points with every coordinate denominator <= qmax, as numerators over
/// lcm(1..qmax); supports exact iteration of integer-affine maps in int64.
class FareyGrid {
public:
    explicit FareyGrid(long long qmax) : qmax_(qmax), l_(1) {
        for (long long q = 2; q <= qmax; ++q) l_ = std::lcm(l_, q);
        for (long long k = 0; k < l_; ++k)
            if (l_ / std::gcd(k == 0 ? l_ : k, l_) <= qmax) values_.push_back(k);
    }
    long long denominator_lcm() const { return l_; }
    const std::vector<long long>& numerators() const { return values_; }

private:
    long long qmax_, l_;
    std::vector<long long> values_;
};

/// True iff some grid point x with coordinate denominators <= qmax satisfies
/// f^n(x) = x for the map x -> A x + b mod 1.  b must have denominators
/// dividing lcm(1..qmax).
inline bool brute_force_periodic_point(const apw::IntMatrix& a,
                                       const std::vector<apw::Rational>& b, int n,
                                       const FareyGrid& grid) {
    if (a.rows() != 2 || b.size() != 2) throw std::invalid_argument("2-torus oracle only");
    long long l = grid.denominator_lcm();
    long long a00 = a.at(0, 0).convert_to<long long>();
    long long a01 = a.at(0, 1).convert_to<long long>();
    long long a10 = a.at(1, 0).convert_to<long long>();
    long long a11 = a.at(1, 1).convert_to<long long>();
    std::vector<long long> bl(2);
    for (int i = 0; i < 2; ++i) {
        apw::Rational scaled = apw::Rational(l) * b[i];
        if (apw::denominator(scaled) != 1)
            throw std::invalid_argument("translation denominator exceeds the grid");
        long long v = apw::numerator(scaled).convert_to<long long>() % l;
        bl[i] = (v + l) % l;
    }
    auto mod = [l](long long x) { return ((x % l) + l) % l; };
    for (long long k0 : grid.numerators()) {
        for (long long k1 : grid.numerators()) {
            long long x0 = k0, x1 = k1;
            for (int it = 0; it < n; ++it) {
                long long y0 = mod(a00 * x0 + a01 * x1 + bl[0]);
                long long y1 = mod(a10 * x0 + a11 * x1 + bl[1]);
                x0 = y0;
                x1 = y1;
            }
            if (x0 == k0 && x1 == k1) return true;
        }
    }
    return false;
}

}  // namespace apworacle
