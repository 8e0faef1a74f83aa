#include "apw/affine.hpp"

#include <stdexcept>

namespace apw {

namespace {

Rational floor_rat(const Rational& r) {
    Int n = numerator(r), d = denominator(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return Rational(q);
}

// reduce the rational part of each coordinate mod 1
std::vector<ScalarK> mod1(std::vector<ScalarK> v) {
    for (auto& x : v) {
        Rational r = x.rational_part();
        x -= ScalarK(floor_rat(r));
    }
    return v;
}

bool is_integral(const ScalarK& x) {
    if (!x.symbols().empty()) return false;
    return denominator(x.rational_part()) == 1;
}

Int mod_positive(Int a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

Int mod_inverse(const Int& a, const Int& m) {
    // extended Euclid; gcd(a, m) = 1 assumed
    Int old_r = mod_positive(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    return mod_positive(old_s, m);
}

// Among y = (w + z)/d over integer z, pick z minimizing the denominator of
// the rational part: the achievable minimum is q times the part of d whose
// primes divide q, where q is the reduced denominator of w.
ScalarK minimal_denominator_solution(const ScalarK& w, const Int& d) {
    Rational a_over_q = w.rational_part();
    Int q = denominator(a_over_q), a = numerator(a_over_q);
    Int coprime_part = d < 0 ? Int(-d) : d;
    while (true) {
        Int g = gcd(coprime_part, q);
        if (g == 1) break;
        coprime_part /= g;
    }
    Int z = 0;
    if (coprime_part > 1) z = mod_positive(-a * mod_inverse(q, coprime_part), coprime_part);
    ScalarK shifted = w + ScalarK(Rational(z));
    return shifted / Rational(d);
}

}  // namespace

void AffineTorusMap::validate() const {
    if (!a.is_square()) throw std::invalid_argument("affine map matrix must be square");
    if (b.size() != a.rows()) throw std::invalid_argument("translation length mismatch");
    Int d = a.det();
    if (d != 1 && d != -1) throw std::invalid_argument("matrix must lie in GL(m,Z)");
    for (const auto& x : b)
        if (x.degree() > 1)
            throw std::invalid_argument("translation must stay in the declared-tag fragment");
}

std::vector<ScalarK> apply_affine(const AffineTorusMap& map, const std::vector<ScalarK>& x) {
    size_t m = map.a.rows();
    if (x.size() != m) throw std::invalid_argument("point dimension mismatch");
    std::vector<ScalarK> out(m);
    for (size_t i = 0; i < m; ++i) {
        ScalarK acc = map.b[i];
        for (size_t j = 0; j < m; ++j) acc += ScalarK(Rational(map.a.at(i, j))) * x[j];
        out[i] = acc;
    }
    return mod1(out);
}

std::vector<PeriodicPointResult> affine_periodic_points(const AffineTorusMap& map, int max_n) {
    map.validate();
    if (max_n < 1) throw std::invalid_argument("max_n must be at least 1");
    size_t m = map.a.rows();
    std::vector<PeriodicPointResult> results;

    IntMatrix an = IntMatrix::identity(m);         // A^n
    std::vector<ScalarK> drift(m, ScalarK(0));     // sum_{j<n} A^j b
    for (int n = 1; n <= max_n; ++n) {
        // drift += A^{n-1} b
        for (size_t i = 0; i < m; ++i) {
            ScalarK acc(0);
            for (size_t j = 0; j < m; ++j) acc += ScalarK(Rational(an.at(i, j))) * map.b[j];
            drift[i] += acc;
        }
        an = an * map.a;

        IntMatrix mn = an - IntMatrix::identity(m);
        auto snf = smith_normal_form(mn);

        // solve D y = U v (mod U Z^m), v = -drift
        std::vector<ScalarK> v(m);
        for (size_t i = 0; i < m; ++i) v[i] = -drift[i];
        std::vector<ScalarK> w(m, ScalarK(0));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) w[i] += ScalarK(Rational(snf.u.at(i, j))) * v[j];

        PeriodicPointResult res;
        res.n = n;
        bool solvable = true;
        std::vector<ScalarK> y(m, ScalarK(0));
        for (size_t i = 0; i < m && solvable; ++i) {
            Int di = snf.d.at(i, i);
            if (di == 0) {
                // the equation row reads 0 = w_i + integer
                if (!is_integral(w[i])) solvable = false;
            } else {
                y[i] = minimal_denominator_solution(w[i], di);
            }
        }
        if (solvable) {
            std::vector<ScalarK> x(m, ScalarK(0));
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j)
                    x[i] += ScalarK(Rational(snf.v.at(i, j))) * y[j];
            res.witness = mod1(x);
            // verify: applying the map n times returns to the witness
            std::vector<ScalarK> z = res.witness;
            for (int it = 0; it < n; ++it) z = apply_affine(map, z);
            for (size_t i = 0; i < m; ++i)
                if (z[i] != res.witness[i])
                    throw std::logic_error("periodic-point witness failed verification");
            res.exists = true;
        }
        results.push_back(std::move(res));
    }
    return results;
}

Subspace mapping_torus_invariant(const IntMatrix& psi) {
    if (!psi.is_square()) throw std::invalid_argument("psi must be square");
    Int d = psi.det();
    if (d != 1 && d != -1) throw std::invalid_argument("psi must lie in GL(m,Z)");
    IntMatrix diff = IntMatrix::identity(psi.rows()) - psi.transpose();
    return kernel(diff);
}

bool is_sp_sl(const IntMatrix& psi) {
    if (!psi.is_square()) throw std::invalid_argument("psi must be square");
    size_t m = psi.rows();
    if (m % 2 != 0) throw std::invalid_argument("symplectic matrices have even dimension");
    if (psi.det() != 1) return false;
    IntMatrix j(m, m);
    for (size_t i = 0; i + 1 < m; i += 2) {
        j.at(i, i + 1) = 1;
        j.at(i + 1, i) = -1;
    }
    return psi.transpose() * j * psi == j;
}

}  // namespace apw
