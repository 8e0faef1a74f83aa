#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "apw/flow.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace apw;
using apwtest::rand_int;

namespace {

FlowPoint origin2() {
    FlowPoint p;
    p.base = {0.0, 0.0};
    return p;
}

}  // namespace

TEST_CASE("rational direction closes with the lcm period") {
    SimParams params;
    params.horizon = 20.0;
    auto report = simulate_direction({0.5, 1.0 / 3.0}, 0, origin2(), params);
    CHECK(report.closed);
    long long exact = apworacle::direct_period_search({rat(1, 2), rat(1, 3)}, 20);
    CHECK(exact == 6);
    CHECK(report.period == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("pure fiber rotation closes with period one") {
    SimParams params;
    params.horizon = 3.0;
    auto report = simulate_direction({0.0, 0.0}, 0, origin2(), params);
    CHECK(report.closed);
    CHECK(report.period == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("golden direction: no return at default tolerance, Fibonacci near-returns") {
    const double g = 1.6180339887498949;
    SimParams params;
    params.horizon = 1000.0;
    auto report = simulate_direction({g, 1.0}, 0, origin2(), params);
    CHECK_FALSE(report.closed);

    // Independent bound: near-returns happen at t ~ q with distance ~ <q g>,
    // minimized over the horizon at the largest Fibonacci index.
    double oracle = apworacle::min_multiple_distance(g, 1000);
    CHECK(oracle == doctest::Approx(std::pow(0.6180339887498949, 16)).epsilon(1e-6));
    CHECK(report.min_return_distance <= oracle * 1.0001);
    CHECK(report.min_return_distance >= oracle * 0.65);  // off-integer dips shave a factor
    CHECK(report.min_return_distance > 2e-4);

    // The same run at tau = 1e-3 detects the q = 610 Fibonacci near-return
    // (distance ~ 7.3e-4), so that tolerance is too coarse for this horizon.
    SimParams coarse = params;
    coarse.tau = 1e-3;
    auto coarse_report = simulate_direction({g, 1.0}, 0, origin2(), coarse);
    CHECK(coarse_report.closed);
    CHECK(coarse_report.period == doctest::Approx(610.0).epsilon(1e-5));
}

TEST_CASE("continued fraction of the golden ratio is all ones") {
    // depth 40 requested; double precision sustains ~35 quotients before the
    // tail collapses, so check the stable prefix
    auto cf = apworacle::continued_fraction(1.6180339887498949, 40);
    REQUIRE(cf.size() >= 30);
    for (size_t i = 0; i < 30; ++i) CHECK(cf[i] == 1);

    // a float that is secretly rational shows a huge partial quotient early
    auto flat = apworacle::continued_fraction(0.5, 40);
    REQUIRE(!flat.empty());
    CHECK(flat.size() <= 2);
}

TEST_CASE("parameter validation") {
    SimParams bad;
    bad.horizon = 1.0;
    bad.step = 2.0;
    CHECK_THROWS_AS(simulate_direction({0.5}, 0, FlowPoint{{0.0}, 0.0, 0.0}, bad),
                    std::invalid_argument);
}

TEST_CASE("holonomy bookkeeping matches the Euler number") {
    // reducing x2 by one shifts the fiber by k * x1: here -3 * 0.25 = -0.75
    FlowPoint p;
    p.base = {0.25, 1.5};
    p.fiber = 0.0;
    FlowPoint q = reduce_point(p, -3);
    CHECK(q.base[1] == doctest::Approx(0.5));
    CHECK(q.fiber == doctest::Approx(0.25));  // -0.75 wrapped into [0,1)

    // x1 reduction carries no correction in this gauge
    FlowPoint r;
    r.base = {2.25, 0.5};
    r.fiber = 0.125;
    FlowPoint rq = reduce_point(r, -3);
    CHECK(rq.base[0] == doctest::Approx(0.25));
    CHECK(rq.fiber == doctest::Approx(0.125));
}

TEST_CASE("flow descends to the quotient for nontrivial bundles") {
    // integrating with and without lattice reduction must agree up to a deck
    // transformation: the slice field is deck-equivariant
    for (long long k : {-1ll, 2ll}) {
        SimParams reduced;
        reduced.horizon = 7.0;
        reduced.record = true;
        reduced.record_stride = 1;
        SimParams unreduced = reduced;
        unreduced.reduce = false;

        std::vector<double> c = {1.0 / 3.0, 0.5};
        FlowPoint start;
        start.base = {0.1, 0.2};
        start.fiber = 0.3;

        Trajectory t1, t2;
        simulate_direction(c, k, start, reduced, &t1);
        simulate_direction(c, k, start, unreduced, &t2);
        REQUIRE(t1.rows.size() == t2.rows.size());

        FlowPoint a, b;
        a.base = {t1.rows.back()[0], t1.rows.back()[1]};
        a.fiber = t1.rows.back()[2];
        b.base = {t2.rows.back()[0], t2.rows.back()[1]};
        b.fiber = t2.rows.back()[2];
        FlowPoint b_reduced = reduce_point(b, k);
        CHECK(quotient_distance(a, b_reduced, k) < 1e-9);
    }
}

TEST_CASE("fiber circles close on the nontrivial bundle") {
    SimParams params;
    params.horizon = 3.0;
    auto report = simulate_direction({0.0, 0.0}, -1, origin2(), params);
    CHECK(report.closed);
    CHECK(report.period == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("simulate_flow: stationary slices and collar check") {
    QMatrix j2{{0, 1}, {-1, 0}};
    CollarFamily fam = make_collar_family(j2, QMatrix::zero(2, 2),
                                          {ScalarK(1), ScalarK::tag("alpha")}, 0);
    BumpSpec f{fam.eps};
    SimParams params;
    params.horizon = 10.0;

    NilPoint plateau({rat(0), rat(0)}, rat(0), rat(0));
    auto rep = simulate_flow(fam, ScalarK(rat(1, 3)), plateau, f, params);
    CHECK(rep.stationary);

    NilPoint outside({rat(0), rat(0)}, rat(0), rat(3, 4));
    CHECK_THROWS_AS(simulate_flow(fam, ScalarK(0), outside, f, params), std::invalid_argument);

    // on a shoulder slice the flow runs; tagged direction never returns
    NilPoint shoulder({rat(0), rat(0)}, rat(0), rat(3, 8));
    auto moving = simulate_flow(fam, ScalarK(rat(1, 3)), shoulder, f, params);
    CHECK_FALSE(moving.stationary);
    CHECK_FALSE(moving.closed);
}

TEST_CASE("trajectory CSV round trip and schema checks") {
    Trajectory traj;
    traj.m = 2;
    traj.times = {0.0, 0.5};
    traj.rows = {{0.0, 0.0, 0.0, 0.1}, {0.25, 0.5, 0.5, 0.1}};

    std::ostringstream out;
    write_trajectory_csv(out, traj);
    CHECK(out.str().substr(0, 16) == "t,x1,x2,fiber,s\n");

    std::string path = "traj_roundtrip_test.csv";
    write_trajectory_csv(path, traj);
    Trajectory back = read_trajectory_csv(path);
    CHECK(back.m == 2);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[1][0] == doctest::Approx(0.25));
    std::remove(path.c_str());

    std::string bad = "traj_bad_test.csv";
    {
        std::ofstream f(bad);
        f << "a,b,c\n1,2,3\n";
    }
    CHECK_THROWS(read_trajectory_csv(bad));
    std::remove(bad.c_str());

    std::string empty = "traj_empty_test.csv";
    {
        std::ofstream f(empty);
        f << "t,x1,x2,fiber,s\n";
    }
    CHECK_THROWS(read_trajectory_csv(empty));
    std::remove(empty.c_str());
}
