#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "apw/json_io.hpp"
#include "apw/sumops.hpp"
#include "apw/svgplot.hpp"
#include "apw/flow.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using namespace apw;

namespace {

#ifndef APW_CLI_PATH
#define APW_CLI_PATH "apw"
#endif

int run_cli(const std::string& args) {
    std::string cmd = std::string(APW_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

Summand block(const std::string& name, long long e, long long sigma, long long self_int) {
    Summand s;
    s.name = name;
    s.euler_char = e;
    s.signature = sigma;
    s.b1 = 0;
    s.simply_connected = true;
    MarkedTorus t;
    t.label = "T";
    t.self_int = self_int;
    t.area = ScalarK(2);
    t.complement_simply_connected = true;
    s.tori.push_back(t);
    return s;
}

SumSpec valid_spec() {
    SumSpec spec;
    spec.left = block("L", 12, -8, 0);
    spec.right = block("R", 12, -8, 0);
    spec.left_torus = "T";
    spec.right_torus = "T";
    return spec;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("scalar and summand JSON round trips preserve verdicts") {
    ScalarK x = ScalarK(rat(3, 2)) + ScalarK::tag("alpha", rat(-1, 2));
    Json jx = scalar_to_json(x);
    CHECK(jx["1"] == "3/2");
    CHECK(jx["alpha"] == "-1/2");
    CHECK(scalar_from_json(jx, "$") == x);

    SumSpec spec = valid_spec();
    SumResult result = symplectic_sum(spec);
    Json spec_json = sum_spec_to_json(spec);
    SumSpec back = sum_spec_from_json(spec_json);
    CHECK(back == spec);
    SumResult again = symplectic_sum(back);
    CHECK(verdict_to_json(again.verdict) == verdict_to_json(result.verdict));
    CHECK(sum_result_to_json(again) == sum_result_to_json(result));
}

TEST_CASE("schema errors carry field paths") {
    Json bad{{"left", Json{{"name", "L"}}}};
    try {
        (void)sum_spec_from_json(bad);
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.field_path == "$.left.euler_char");
    }
}

TEST_CASE("validate_spec_text diagnostics") {
    SumSpec spec = valid_spec();
    CHECK(validate_spec_text(sum_spec_to_json(spec).dump()).empty());

    SumSpec bad = spec;
    bad.left.find_torus("T")->self_int = 1;
    bad.right.find_torus("T")->self_int = 1;
    auto diag = validate_spec_text(sum_spec_to_json(bad).dump());
    REQUIRE(diag.size() == 1);
    CHECK(diag[0].find("opposite self-intersection") != std::string::npos);

    Json fam = collar_family_to_json(make_collar_family(QMatrix{{0, 1}, {-1, 0}},
                                                        QMatrix::zero(2, 2),
                                                        {ScalarK(1), ScalarK(0)}, 0));
    fam["B"][0][0] = "1";  // break antisymmetry
    auto fam_diag = validate_spec_text(fam.dump());
    REQUIRE(fam_diag.size() == 1);
    CHECK(fam_diag[0].find("antisymmetric") != std::string::npos);

    CHECK_FALSE(validate_spec_text("{ not json").empty());
}

TEST_CASE("cli exit codes: 0 success, 1 input error, 2 criterion not met") {
    TempFile spec_file("cli_spec_test.json");
    write_file(spec_file.path, sum_spec_to_json(valid_spec()).dump());

    SUBCASE("successes") {
        CHECK(run_cli("geography --chi 5 --c 30") == 0);
        CHECK(run_cli("catalog --name E2") == 0);
        CHECK(run_cli("sum --input " + spec_file.path) == 0);
        CHECK(run_cli("validate --input " + spec_file.path) == 0);
        CHECK(run_cli("periodic-points --a \"1,0;1,1\" --b \"alpha,0\" --max-n 3") == 0);
        CHECK(run_cli("collar-check --family zehnder4") == 0);
        CHECK(run_cli("verdict --k 0 --image \"1,0;0,1\"") == 0);
    }
    SUBCASE("input errors") {
        CHECK(run_cli("catalog --name no-such-entry") == 1);
        CHECK(run_cli("sum --input does_not_exist.json") == 1);
        TempFile junk("cli_junk_test.json");
        write_file(junk.path, "{ not json");
        CHECK(run_cli("sum --input " + junk.path) == 1);
        TempFile mismatch("cli_mismatch_test.json");
        SumSpec bad = valid_spec();
        bad.right.find_torus("T")->area = ScalarK(7);
        write_file(mismatch.path, sum_spec_to_json(bad).dump());
        CHECK(run_cli("sum --input " + mismatch.path) == 1);
        CHECK(run_cli("validate --input " + mismatch.path) == 1);
        CHECK(run_cli("plot --csv does_not_exist.csv --svg out.svg") == 1);
    }
    SUBCASE("criterion not met") {
        CHECK(run_cli("catalog --name KT-anosov") == 2);
        CHECK(run_cli("catalog --name E1") == 2);
        CHECK(run_cli("verdict --k 0 --image \"\"") == 2);
        TempFile fam("cli_fam_test.json");
        Json j = collar_family_to_json(make_collar_family(
            QMatrix{{0, 1}, {-1, 0}}, QMatrix::zero(2, 2), {ScalarK(0), ScalarK(0)}, 0));
        write_file(fam.path, j.dump());
        CHECK(run_cli("collar-check --input " + fam.path) == 2);
    }
}

TEST_CASE("cli reports are deterministic and round-trippable") {
    TempFile spec_file("cli_det_spec.json");
    write_file(spec_file.path, sum_spec_to_json(valid_spec()).dump());
    TempFile report1("cli_det_report1.json");
    TempFile report2("cli_det_report2.json");
    REQUIRE(run_cli("sum --input " + spec_file.path + " --report " + report1.path) == 0);

    // re-validate the embedded spec and rerun: identical verdict and report
    Json first = load_json_file(report1.path);
    SumSpec embedded = sum_spec_from_json(first.at("spec"));
    TempFile spec_file2("cli_det_spec2.json");
    write_file(spec_file2.path, sum_spec_to_json(embedded).dump());
    REQUIRE(run_cli("sum --input " + spec_file2.path + " --report " + report2.path) == 0);
    CHECK(load_json_file(report2.path) == first);
}

TEST_CASE("cli flow-sim writes csv, svg and report") {
    TempFile csv("cli_flow_test.csv");
    TempFile svg("cli_flow_test.svg");
    TempFile rep("cli_flow_test.json");
    REQUIRE(run_cli("flow-sim --family zehnder4 --u 1/2 --horizon 10 --csv " + csv.path +
                    " --svg " + svg.path + " --report " + rep.path) == 0);
    Json report = load_json_file(rep.path);
    CHECK(report.at("closed").is_boolean());
    std::ifstream csv_in(csv.path);
    std::string header;
    std::getline(csv_in, header);
    CHECK(header == "t,x1,x2,fiber,s");
    std::ifstream svg_in(svg.path);
    std::string svg_text((std::istreambuf_iterator<char>(svg_in)),
                         std::istreambuf_iterator<char>());
    CHECK(svg_text.find("<svg") != std::string::npos);
    CHECK(svg_text.find("polyline") != std::string::npos);

    // stationary start reports the dedicated tag
    TempFile rep2("cli_flow_stationary.json");
    REQUIRE(run_cli("flow-sim --family zehnder4 --u 1/2 --s0 0 --horizon 5 --report " +
                    rep2.path) == 0);
    CHECK(load_json_file(rep2.path).at("closed") == "stationary");
}

TEST_CASE("closed orbits get the svg annotation") {
    // rational direction with period 6 from the heisenberg-free torus family
    Trajectory traj;
    SimParams params;
    params.horizon = 10.0;
    params.record = true;
    params.record_stride = 10;
    FlowPoint x0;
    x0.base = {0.0, 0.0};
    auto report = simulate_direction({0.5, 1.0 / 3.0}, 0, x0, params, &traj);
    CHECK(report.closed);
    TempFile svg("cli_closed_test.svg");
    plot_trajectory(traj, svg.path, 1e-3);
    std::ifstream in(svg.path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("closed orbit") != std::string::npos);
}

TEST_CASE("dense trajectories carry no closure annotation; empty csv errors") {
    Trajectory traj;
    SimParams params;
    params.horizon = 50.0;
    params.record = true;
    params.record_stride = 25;
    FlowPoint x0;
    x0.base = {0.0, 0.0};
    simulate_direction({1.6180339887498949, 1.0}, 0, x0, params, &traj);
    TempFile svg("cli_dense_test.svg");
    plot_trajectory(traj, svg.path);
    std::ifstream in(svg.path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("closed orbit") == std::string::npos);
    CHECK(text.find("circle") != std::string::npos);  // wrap marks present

    TempFile empty("cli_empty_test.csv");
    write_file(empty.path, "t,x1,x2,fiber,s\n");
    TempFile out("cli_empty_test.svg");
    CHECK(run_cli("plot --csv " + empty.path + " --svg " + out.path) == 1);
}

TEST_CASE("pinned long-horizon run: near-golden parameter never returns") {
    TempFile csv("cli_pinned_traj.csv");
    TempFile rep("cli_pinned_rep.json");
    REQUIRE(run_cli("flow-sim --family zehnder4 --u 0.61803398 --horizon 1000 --csv " + csv.path +
                    " --report " + rep.path) == 0);
    Json report = load_json_file(rep.path);
    CHECK(report.at("closed") == false);
    std::ifstream in(csv.path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x1,x2,fiber,s");
}
