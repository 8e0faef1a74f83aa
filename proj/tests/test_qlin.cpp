#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "apw/linalg.hpp"
#include "apw/matrix.hpp"
#include "apw/scalar.hpp"
#include "apw/subspace.hpp"
#include "test_util.hpp"

using namespace apw;
using apwtest::rand_int;
using apwtest::rand_int_matrix;
using apwtest::rand_rational;
using apwtest::rand_rational_matrix;

namespace {

const ScalarK kAlpha = ScalarK::tag("alpha");

Subspace span2(std::vector<RatVec> rows) { return Subspace::span(2, std::move(rows)); }

// Brute-force search for a nonzero integer relation sum a_i x_i = 0 with
// |a_i| <= bound.  Complete for rationals with numerator and denominator <= 7
// when bound = 50.
bool has_integer_relation(const std::vector<Rational>& xs, long long bound) {
    size_t n = xs.size();
    std::vector<long long> a(n, -bound);
    while (true) {
        bool nonzero = false;
        for (auto c : a) nonzero |= (c != 0);
        if (nonzero) {
            Rational s(0);
            for (size_t i = 0; i < n; ++i) s += Rational(a[i]) * xs[i];
            if (s == 0) return true;
        }
        size_t pos = 0;
        while (pos < n && a[pos] == bound) a[pos++] = -bound;
        if (pos == n) return false;
        ++a[pos];
    }
}

}  // namespace

TEST_CASE("scalar arithmetic and rationality") {
    ScalarK x = ScalarK(rat(1, 2)) + kAlpha;
    CHECK(x.coeff({"alpha"}) == 1);
    CHECK(x.rational_part() == rat(1, 2));
    CHECK_FALSE(x.is_rational());
    CHECK(ScalarK(rat(7, 3)).is_rational());
    CHECK((x - x).is_zero());
    CHECK((x * ScalarK(2)).coeff({"alpha"}) == 2);

    // formal product leaves the declared fragment
    ScalarK sq = kAlpha * kAlpha;
    CHECK(sq.degree() == 2);
    CHECK_THROWS_AS((void)sq.is_rational(), std::domain_error);

    CHECK(parse_scalar("3/2 - 1/2*alpha").coeff({"alpha"}) == rat(-1, 2));
    CHECK(parse_scalar("alpha").coeff({"alpha"}) == 1);
    CHECK(parse_scalar("-0.25").rational_part() == rat(-1, 4));
}

TEST_CASE("rank: invertible antisymmetric, fat row, symbolic tag") {
    QMatrix j2{{0, 1}, {-1, 0}};
    CHECK(rank(j2) == 2);
    QMatrix row{{1, 1}};
    CHECK(rank(row) == 1);

    QMatrix tagged(2, 2);
    tagged.at(0, 0) = ScalarK(1);
    tagged.at(0, 1) = kAlpha;
    tagged.at(1, 0) = ScalarK(2);
    tagged.at(1, 1) = ScalarK(2) * kAlpha;
    CHECK(rank(tagged) == 1);
}

TEST_CASE("kernel: fat row, zero matrix, shear transpose") {
    CHECK(kernel(QMatrix{{1, 1}}) == span2({{rat(1), rat(-1)}}));
    CHECK(kernel(QMatrix::zero(2, 2)) == Subspace::full(2));
    CHECK(kernel(QMatrix{{0, 0}, {-1, 0}}) == span2({{rat(0), rat(1)}}));
    CHECK_THROWS(kernel(QMatrix{{kAlpha, ScalarK(1)}}));
}

TEST_CASE("intersect: containment, transverse lines, two full planes") {
    Subspace u = span2({{rat(1), rat(2)}});
    CHECK(intersect(Subspace::full(2), u) == u);
    CHECK(intersect(span2({{rat(1), rat(0)}}), span2({{rat(0), rat(1)}})) == Subspace::zero(2));
    Subspace a = span2({{rat(1), rat(1)}, {rat(1), rat(0)}});
    Subspace b = span2({{rat(1), rat(1)}, {rat(0), rat(1)}});
    CHECK(a == Subspace::full(2));
    CHECK(intersect(a, b) == Subspace::full(2));
    CHECK(intersect(a, b).contains(RatVec{rat(1), rat(1)}));
    CHECK_THROWS(intersect(Subspace::full(2), Subspace::full(3)));
}

TEST_CASE("smith normal form: pinned examples") {
    SUBCASE("diag(2,3) -> diag(1,6)") {
        auto snf = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
        CHECK(snf.d.at(0, 0) == 1);
        CHECK(snf.d.at(1, 1) == 6);
        CHECK(snf.u * IntMatrix{{2, 0}, {0, 3}} * snf.v == snf.d);
        CHECK((snf.u.det() == 1 || snf.u.det() == -1));
        CHECK((snf.v.det() == 1 || snf.v.det() == -1));
    }
    SUBCASE("zero matrix fixed") {
        auto snf = smith_normal_form(IntMatrix(2, 3));
        CHECK(snf.d == IntMatrix(2, 3));
        CHECK(snf.u == IntMatrix::identity(2));
        CHECK(snf.v == IntMatrix::identity(3));
    }
    SUBCASE("1x1 unit") {
        auto snf = smith_normal_form(IntMatrix{{1}});
        CHECK(snf.d == IntMatrix{{1}});
    }
}

TEST_CASE("smith normal form: random round trips") {
    for (int trial = 0; trial < 60; ++trial) {
        size_t r = static_cast<size_t>(rand_int(1, 4));
        size_t c = static_cast<size_t>(rand_int(1, 4));
        IntMatrix a = rand_int_matrix(r, c);
        auto snf = smith_normal_form(a);
        CHECK(snf.u * a * snf.v == snf.d);
        Int du = snf.u.det(), dv = snf.v.det();
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        auto divs = snf.divisors();
        for (size_t i = 0; i + 1 < divs.size(); ++i) {
            if (divs[i] == 0) CHECK(divs[i + 1] == 0);
            if (divs[i] != 0 && divs[i + 1] != 0) CHECK(divs[i + 1] % divs[i] == 0);
            CHECK(divs[i] >= 0);
        }
        // off-diagonal entries vanish
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                if (i != j) CHECK(snf.d.at(i, j) == 0);
    }
}

TEST_CASE("rank-nullity on random rational matrices") {
    for (int trial = 0; trial < 80; ++trial) {
        size_t r = static_cast<size_t>(rand_int(1, 5));
        size_t c = static_cast<size_t>(rand_int(1, 5));
        QMatrix m = rand_rational_matrix(r, c);
        CHECK(rank(m) + kernel(m).dim() == c);
    }
}

TEST_CASE("rationally_independent: declared tag, pure rationals, dependent tags") {
    CHECK(rationally_independent({ScalarK(1), kAlpha}));
    CHECK_FALSE(rationally_independent({ScalarK(rat(1, 2)), ScalarK(rat(3, 4))}));
    CHECK_FALSE(rationally_independent({kAlpha, ScalarK(2) * kAlpha}));
    CHECK(rationally_independent({}));
    CHECK(rationally_independent({kAlpha}));
    CHECK_FALSE(rationally_independent({ScalarK(0)}));
}

TEST_CASE("independence agrees with bounded integer-relation search") {
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = static_cast<size_t>(rand_int(1, 3));
        std::vector<Rational> xs;
        std::vector<ScalarK> sk;
        for (size_t i = 0; i < n; ++i) {
            Rational x = rand_rational(7, 7);
            xs.push_back(x);
            sk.emplace_back(x);
        }
        bool dependent = has_integer_relation(xs, 50);
        CHECK(rationally_independent(sk) == !dependent);
        for (const auto& s : sk) CHECK(s.is_rational());
    }
}

TEST_CASE("solve carries tags through a rational system") {
    QMatrix a{{2, 1}, {1, 1}};
    std::vector<ScalarK> b{ScalarK(1) + kAlpha, kAlpha};
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    auto back = a.apply(*x);
    CHECK(back[0] == b[0]);
    CHECK(back[1] == b[1]);
    CHECK_FALSE(solve(QMatrix{{1, 1}, {2, 2}}, {ScalarK(1), ScalarK(1)}).has_value());
}
