#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "apw/affine.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace apw;
using apwtest::rand_int;
using apwtest::rand_sl2;

namespace {

const ScalarK kAlpha = ScalarK::tag("alpha");

Subspace span2(std::vector<RatVec> rows) { return Subspace::span(2, std::move(rows)); }

}  // namespace

TEST_CASE("irrational shear drift has no periodic points") {
    AffineTorusMap map{IntMatrix{{1, 0}, {1, 1}}, {kAlpha, ScalarK(0)}};
    auto results = affine_periodic_points(map, 10);
    REQUIRE(results.size() == 10);
    for (const auto& r : results) CHECK_FALSE(r.exists);
}

TEST_CASE("identity map fixes everything") {
    AffineTorusMap map{IntMatrix::identity(2), {ScalarK(0), ScalarK(0)}};
    for (const auto& r : affine_periodic_points(map, 5)) {
        CHECK(r.exists);
        for (const auto& w : r.witness) CHECK(w.is_zero());
    }
}

TEST_CASE("rational shear drift: periodic points exactly at multiples of three") {
    AffineTorusMap map{IntMatrix{{1, 0}, {1, 1}}, {ScalarK(rat(1, 3)), ScalarK(0)}};
    auto results = affine_periodic_points(map, 9);
    apworacle::FareyGrid grid(9);
    for (const auto& r : results) {
        CHECK(r.exists == (r.n % 3 == 0));
        bool brute = apworacle::brute_force_periodic_point(
            map.a, {rat(1, 3), rat(0)}, r.n, grid);
        CHECK(r.exists == brute);
    }
}

TEST_CASE("anosov map with irrational drift still has fixed points") {
    // A - I invertible: every drift is absorbed, witnesses can carry tags
    AffineTorusMap map{IntMatrix{{2, 1}, {1, 1}}, {kAlpha, ScalarK(0)}};
    auto results = affine_periodic_points(map, 3);
    for (const auto& r : results) CHECK(r.exists);
    bool tagged = false;
    for (const auto& w : results[0].witness) tagged = tagged || !w.symbols().empty();
    CHECK(tagged);
}

TEST_CASE("exact decision agrees with the Farey-grid brute force") {
    apworacle::FareyGrid grid(12);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix a = apwtest::rand_sl2_tame_torsion(6);
        long long q = apwtest::rand_int(0, 2) + 1;
        std::vector<Rational> b = {
            Rational(rand_int(-2, 2), q),
            Rational(rand_int(-2, 2), q),
        };
        AffineTorusMap map{a, {ScalarK(b[0]), ScalarK(b[1])}};
        auto results = affine_periodic_points(map, 6);
        for (const auto& r : results) {
            bool brute = apworacle::brute_force_periodic_point(a, b, r.n, grid);
            CHECK(r.exists == brute);
            if (r.exists)
                for (const auto& w : r.witness)
                    CHECK(denominator(w.rational_part()) <= 12);
            ++checked;
        }
    }
    CHECK(checked == 240);
}

TEST_CASE("validation rejects non-unimodular matrices") {
    AffineTorusMap map{IntMatrix{{2, 0}, {0, 1}}, {ScalarK(0), ScalarK(0)}};
    CHECK_THROWS_AS(affine_periodic_points(map, 3), std::invalid_argument);
    AffineTorusMap shear{IntMatrix{{1, 0}, {1, 1}}, {ScalarK(0), ScalarK(0)}};
    CHECK_THROWS_AS(affine_periodic_points(shear, 0), std::invalid_argument);
}

TEST_CASE("mapping torus invariants: identity, shear, anosov") {
    CHECK(mapping_torus_invariant(IntMatrix::identity(2)) == Subspace::full(2));
    CHECK(mapping_torus_invariant(IntMatrix{{1, 1}, {0, 1}}) == span2({{rat(0), rat(1)}}));
    CHECK(mapping_torus_invariant(IntMatrix{{2, 1}, {1, 1}}) == Subspace::zero(2));
    CHECK(mapping_torus_invariant(IntMatrix{{2, 1}, {1, 1}}).dim() == 0);
}

TEST_CASE("invariant subspace is nontrivial exactly when 1 is an eigenvalue") {
    for (int trial = 0; trial < 60; ++trial) {
        IntMatrix psi = rand_sl2();
        Int char_at_one = (IntMatrix::identity(2) - psi).det();
        bool has_eigenvalue_one = (char_at_one == 0);
        CHECK((mapping_torus_invariant(psi).dim() > 0) == has_eigenvalue_one);
    }
}

TEST_CASE("is_sp_sl: shear, identity, stretch, non-symplectic unimodular") {
    CHECK(is_sp_sl(IntMatrix{{1, 1}, {0, 1}}));
    CHECK(is_sp_sl(IntMatrix::identity(2)));
    CHECK(is_sp_sl(IntMatrix::identity(4)));
    CHECK_FALSE(is_sp_sl(IntMatrix{{2, 0}, {0, 1}}));
    CHECK_THROWS_AS(is_sp_sl(IntMatrix::identity(3)), std::invalid_argument);

    IntMatrix shear4 = IntMatrix::identity(4);
    shear4.at(0, 2) = 1;  // pairs e2 with e1+e3 but breaks omega(e2, e1+e3) = 0
    CHECK(shear4.det() == 1);
    CHECK_FALSE(is_sp_sl(shear4));

    // SL(2,Z) = Sp(2,Z): every random unimodular 2x2 with det 1 passes
    for (int trial = 0; trial < 20; ++trial) CHECK(is_sp_sl(rand_sl2()));
}
