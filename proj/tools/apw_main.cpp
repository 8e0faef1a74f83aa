// apw: workbench for aperiodicity verdicts on symplectic sums, exact collar
// dynamics, flow simulation, and geography coverage.
//
// Exit codes: 0 success, 1 input error, 2 criterion not met (soft failure
// with a diagnostic report).

#include "CLI11.hpp"

#include "apw/catalog.hpp"
#include "apw/json_io.hpp"
#include "apw/svgplot.hpp"

#include <functional>
#include <iostream>
#include <map>

namespace {

using namespace apw;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNotMet = 2;

IntMatrix parse_int_matrix(const std::string& text) {
    std::vector<std::vector<long long>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<long long> r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) r.push_back(std::stoll(cell));
        rows.push_back(r);
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix literal");
    IntMatrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged matrix literal");
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Int(rows[i][j]);
    }
    return m;
}

std::vector<ScalarK> parse_scalar_vector(const std::string& text) {
    std::vector<ScalarK> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(parse_scalar(cell));
    return out;
}

Subspace parse_subspace(const std::string& text, size_t ambient) {
    std::vector<RatVec> rows;
    if (!text.empty()) {
        std::stringstream ss(text);
        std::string row;
        while (std::getline(ss, row, ';')) {
            RatVec r;
            std::stringstream rs(row);
            std::string cell;
            while (std::getline(rs, cell, ',')) r.push_back(parse_rational(cell));
            rows.push_back(r);
        }
    }
    return Subspace::span(ambient, rows);
}

void emit(const Json& report, const std::string& out_path) {
    if (out_path.empty())
        std::cout << report.dump(2) << "\n";
    else
        write_json_file(out_path, report);
}

CollarFamily family_by_name(const std::string& name) {
    if (name == "zehnder4") return zehnder_torus(2).family;
    if (name == "zehnder6") return zehnder_torus(3).family;
    if (name == "heisenberg") {
        QMatrix j2{{0, 1}, {-1, 0}};
        return make_collar_family(j2, QMatrix::zero(2, 2), {ScalarK(1), ScalarK::tag("alpha")},
                                  -1);
    }
    throw std::invalid_argument("unknown family '" + name +
                                "' (known: zehnder4, zehnder6, heisenberg)");
}

struct CatalogOutcome {
    Json report;
    bool met = false;
};

Json summand_entry(const Summand& s, bool* met) {
    Verdict v;
    if (s.aperiodic) {
        v.kind = Verdict::Kind::Aperiodic;
        v.cert = s.aperiodic;
    }
    *met = v.aperiodic();
    return Json{{"schema", kSchemaVersion},
                {"name", s.name},
                {"manifold", summand_to_json(s)},
                {"verdict", verdict_to_json(v)}};
}

const std::map<std::string, std::function<CatalogOutcome()>>& catalog_registry() {
    static const KnotData trefoil{"trefoil", true, 1, true};
    static const std::map<std::string, std::function<CatalogOutcome()>> registry = {
        {"T4",
         [] {
             auto fv = zehnder_torus(2);
             CatalogOutcome o;
             o.met = fv.verdict.aperiodic();
             o.report = Json{{"schema", kSchemaVersion},
                             {"name", "T4"},
                             {"family", collar_family_to_json(fv.family)},
                             {"image", subspace_to_json(fv.image)},
                             {"verdict", verdict_to_json(fv.verdict)}};
             return o;
         }},
        {"zehnder6",
         [] {
             auto fv = zehnder_torus(3);
             CatalogOutcome o;
             o.met = fv.verdict.aperiodic();
             o.report = Json{{"schema", kSchemaVersion},
                             {"name", "zehnder6"},
                             {"family", collar_family_to_json(fv.family)},
                             {"image", subspace_to_json(fv.image)},
                             {"verdict", verdict_to_json(fv.verdict)}};
             return o;
         }},
        {"KT",
         [] {
             auto kt = kodaira_thurston(IntMatrix{{1, 1}, {0, 1}});
             CatalogOutcome o;
             o.met = kt.verdict.aperiodic();
             o.report = Json{{"schema", kSchemaVersion},
                             {"name", "KT"},
                             {"manifold", summand_to_json(kt.manifold)},
                             {"image", subspace_to_json(kt.image)},
                             {"verdict", verdict_to_json(kt.verdict)}};
             return o;
         }},
        {"KT-anosov",
         [] {
             auto kt = kodaira_thurston(IntMatrix{{2, 1}, {1, 1}});
             CatalogOutcome o;
             o.met = kt.verdict.aperiodic();
             o.report = Json{{"schema", kSchemaVersion},
                             {"name", "KT-anosov"},
                             {"manifold", summand_to_json(kt.manifold)},
                             {"image", subspace_to_json(kt.image)},
                             {"verdict", verdict_to_json(kt.verdict)}};
             return o;
         }},
        {"E1",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(elliptic_e(1), &o.met);
             return o;
         }},
        {"E2",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(elliptic_e(2), &o.met);
             return o;
         }},
        {"K3",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(elliptic_e(2), &o.met);
             o.report["name"] = "K3";
             return o;
         }},
        {"E3",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(elliptic_e(3), &o.met);
             return o;
         }},
        {"E4",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(elliptic_e(4), &o.met);
             return o;
         }},
        {"E2_2_3",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(log_transform(elliptic_e(2), 2, 3), &o.met);
             return o;
         }},
        {"E2-trefoil",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(knot_surgery(2, trefoil), &o.met);
             return o;
         }},
        {"E3-trefoil",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(knot_surgery(3, trefoil), &o.met);
             return o;
         }},
        {"E2xS2",
         [] {
             CatalogOutcome o;
             o.report = summand_entry(product_stabilize(elliptic_e(2), {"S2", 2, 2}), &o.met);
             return o;
         }},
        {"E3xCP2",
         [] {
             SumResult r = elliptic_cp2_nontrivial_neck();
             CatalogOutcome o;
             o.met = r.verdict.aperiodic();
             o.report = sum_result_to_json(r);
             o.report["name"] = "E3xCP2";
             return o;
         }},
        {"XG-trivial",
         [] {
             GroupPresentation p;
             p.generators = 1;
             p.relators = {{{1, 1}}};
             GompfResult r = gompf_manifold(p);
             CatalogOutcome o;
             o.met = r.verdict.aperiodic();
             o.report = Json{{"schema", kSchemaVersion},
                             {"name", "XG-trivial"},
                             {"manifold", summand_to_json(r.manifold)},
                             {"h1", Json{{"rank", r.h1.rank}, {"torsion", Json::array()}}},
                             {"verdict", verdict_to_json(r.verdict)}};
             for (const auto& t : r.h1.torsion)
                 o.report["h1"]["torsion"].push_back(t.convert_to<long long>());
             return o;
         }},
        {"XG-Z2",
         [] {
             GroupPresentation p;
             p.generators = 1;
             p.relators = {{{1, 2}}};
             GompfResult r = gompf_manifold(p);
             CatalogOutcome o;
             o.met = r.verdict.aperiodic();
             o.report = Json{{"schema", kSchemaVersion},
                             {"name", "XG-Z2"},
                             {"manifold", summand_to_json(r.manifold)},
                             {"h1", Json{{"rank", r.h1.rank}, {"torsion", Json::array()}}},
                             {"verdict", verdict_to_json(r.verdict)}};
             for (const auto& t : r.h1.torsion)
                 o.report["h1"]["torsion"].push_back(t.convert_to<long long>());
             return o;
         }},
    };
    return registry;
}

int run_catalog(const std::string& name, const std::string& out_path, bool list) {
    if (list) {
        for (const auto& [key, fn] : catalog_registry()) std::cout << key << "\n";
        return kOk;
    }
    auto it = catalog_registry().find(name);
    if (it == catalog_registry().end()) {
        std::cerr << "unknown catalog name '" << name << "' (try --list)\n";
        return kInputError;
    }
    CatalogOutcome o = it->second();
    emit(o.report, out_path);
    return o.met ? kOk : kNotMet;
}

int run_sum(const std::string& input, const std::string& out_path, bool away_from_neck) {
    SumSpec spec = sum_spec_from_json(load_json_file(input));
    SumResult result = away_from_neck ? sum_away_from_neck(spec) : symplectic_sum(spec);
    emit(sum_result_to_json(result), out_path);
    return kOk;
}

int run_verdict(const std::string& input, long long k, const std::string& image_text,
                const std::string& out_path) {
    Verdict v;
    Json report{{"schema", kSchemaVersion}};
    if (!input.empty()) {
        SumSpec spec = sum_spec_from_json(load_json_file(input));
        SumResult result = symplectic_sum(spec);
        v = result.verdict;
        report["neck_euler_k"] = result.neck_euler_k;
        report["image"] = subspace_to_json(result.image);
    } else {
        Subspace image = parse_subspace(image_text, 2);
        v = aperiodicity_verdict(k, image);
        report["neck_euler_k"] = k;
        report["image"] = subspace_to_json(image);
    }
    report["verdict"] = verdict_to_json(v);
    emit(report, out_path);
    return v.aperiodic() ? kOk : kNotMet;
}

int run_flow_sim(const std::string& family_name, const std::string& input, const std::string& u,
                 const std::string& s0, const std::string& x0_text, double horizon, double step,
                 double tau, const std::string& csv, const std::string& svg,
                 const std::string& out_path) {
    CollarFamily fam =
        input.empty() ? family_by_name(family_name) : collar_family_from_json(load_json_file(input));
    fam.validate();

    Rational s = s0.empty() ? Rational(3) * fam.eps / 4 : parse_rational(s0);
    std::vector<Rational> base(fam.m, Rational(0));
    if (!x0_text.empty()) {
        auto parts = parse_scalar_vector(x0_text);
        if (parts.size() != static_cast<size_t>(fam.m))
            throw std::invalid_argument("x0 must list one coordinate per base dimension");
        for (size_t i = 0; i < parts.size(); ++i) base[i] = parts[i].rational_part();
    }
    NilPoint start(base, Rational(0), s);

    SimParams params;
    params.horizon = horizon;
    params.step = step;
    params.tau = tau;
    params.record = !csv.empty() || !svg.empty();

    BumpSpec bump{fam.eps};
    Trajectory traj;
    DetectionReport report = simulate_flow(fam, parse_scalar(u), start, bump, params,
                                           params.record ? &traj : nullptr);
    if (!csv.empty()) write_trajectory_csv(csv, traj);
    if (!svg.empty()) plot_trajectory(traj, svg, tau);

    Json j = detection_report_to_json(report);
    j["family"] = input.empty() ? family_name : input;
    j["u"] = u;
    emit(j, out_path);
    return kOk;
}

int run_periodic_points(const std::string& a_text, const std::string& b_text, int max_n,
                        const std::string& out_path) {
    AffineTorusMap map{parse_int_matrix(a_text), parse_scalar_vector(b_text)};
    auto results = affine_periodic_points(map, max_n);
    Json rows = Json::array();
    for (const auto& r : results) {
        Json row{{"n", r.n}, {"exists", r.exists}};
        if (r.exists) {
            Json w = Json::array();
            for (const auto& x : r.witness) w.push_back(scalar_to_json(x));
            row["witness"] = w;
        }
        rows.push_back(row);
        std::cout << "n=" << r.n << ": " << (r.exists ? "periodic points exist" : "none") << "\n";
    }
    Json report{{"schema", kSchemaVersion}, {"results", rows}};
    if (!out_path.empty()) write_json_file(out_path, report);
    return kOk;
}

int run_geography(long long chi, long long c, bool single, long long chi_min, long long chi_max,
                  const std::string& csv_path) {
    auto status_text = [](const GeographyResult& res) {
        switch (res.status) {
            case GeographyStatus::Covered:
                return "Covered(" + res.range_label + ")";
            case GeographyStatus::NotCovered:
                return std::string("NotCovered");
            default:
                return std::string("OutOfRegion");
        }
    };
    if (single) {
        GeographyResult res = geography_covered({chi, c});
        std::cout << status_text(res) << "\n";
        return kOk;
    }
    auto rows = geography_enumerate(chi_min, chi_max);
    size_t covered = 0, not_covered = 0;
    std::ofstream csv;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw std::runtime_error("cannot write '" + csv_path + "'");
        csv << "chi,c,status,witness\n";
    }
    for (const auto& [pt, res] : rows) {
        if (res.covered())
            ++covered;
        else if (res.status == GeographyStatus::NotCovered)
            ++not_covered;
        if (csv.is_open())
            csv << pt.chi << "," << pt.c << "," << status_text(res) << "," << res.range_label
                << "\n";
    }
    std::cout << "strip points: " << rows.size() << ", covered: " << covered
              << ", not covered: " << not_covered << "\n";
    return kOk;
}

int run_collar_check(const std::string& family_name, const std::string& input,
                     const std::string& out_path) {
    CollarFamily fam =
        input.empty() ? family_by_name(family_name) : collar_family_from_json(load_json_file(input));
    fam.validate();
    ParamReport rep = aperiodic_params(fam);
    Json j = param_report_to_json(rep);

    // spot-check the defining identity of the induced field on a sample slice
    BumpSpec bump{fam.eps};
    NilPoint pt(std::vector<Rational>(fam.m, Rational(1, 7)), Rational(0), Rational(3) * fam.eps / 4);
    ScalarK u = rep.samples.empty() ? ScalarK(0) : rep.samples.front().u;
    bool residual_zero = true;
    for (const auto& r : hamiltonian_residual(fam, u, bump, pt))
        residual_zero = residual_zero && r.is_zero();
    j["hamiltonian_identity"] = residual_zero;

    emit(j, out_path);
    if (!residual_zero) return kInputError;
    return rep.met ? kOk : kNotMet;
}

int run_validate(const std::string& input) {
    std::ifstream in(input);
    if (!in) {
        std::cerr << "cannot read '" << input << "'\n";
        return kInputError;
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto diagnostics = validate_spec_text(text);
    if (diagnostics.empty()) {
        std::cout << "OK\n";
        return kOk;
    }
    for (const auto& d : diagnostics) std::cout << "violation: " << d << "\n";
    return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aperiodicity workbench"};
    app.require_subcommand(1);

    // sum
    std::string sum_input, sum_report;
    bool sum_away = false;
    auto* sum_cmd = app.add_subcommand("sum", "perform a symplectic sum from a JSON spec");
    sum_cmd->add_option("--input", sum_input, "sum spec JSON")->required();
    sum_cmd->add_option("--report", sum_report, "write the result report here");
    sum_cmd->add_flag("--away-from-neck", sum_away, "inherit the left summand's verdict");

    // verdict
    std::string verdict_input, verdict_image, verdict_report;
    long long verdict_k = 0;
    auto* verdict_cmd = app.add_subcommand("verdict", "aperiodicity verdict for a sum or image");
    verdict_cmd->add_option("--input", verdict_input, "sum spec JSON");
    verdict_cmd->add_option("--k", verdict_k, "neck Euler number");
    verdict_cmd->add_option("--image", verdict_image, "image basis rows, e.g. \"1,0;0,1\"");
    verdict_cmd->add_option("--report", verdict_report, "write the verdict report here");

    // flow-sim
    std::string fs_family = "zehnder4", fs_input, fs_u = "1/3", fs_s0, fs_x0, fs_csv, fs_svg,
                fs_report;
    double fs_horizon = 100.0, fs_step = 1e-3, fs_tau = 1e-6;
    auto* fs_cmd = app.add_subcommand("flow-sim", "integrate the collar slice flow");
    fs_cmd->add_option("--family", fs_family, "named family: zehnder4, zehnder6, heisenberg");
    fs_cmd->add_option("--input", fs_input, "collar family JSON");
    fs_cmd->add_option("--u", fs_u, "perturbation parameter (exact scalar literal)");
    fs_cmd->add_option("--s0", fs_s0, "collar coordinate of the start point (rational)");
    fs_cmd->add_option("--x0", fs_x0, "base start coordinates, comma separated");
    fs_cmd->add_option("--horizon", fs_horizon, "integration time");
    fs_cmd->add_option("--step", fs_step, "integration step");
    fs_cmd->add_option("--tau", fs_tau, "return detection tolerance");
    fs_cmd->add_option("--csv", fs_csv, "write the trajectory CSV here");
    fs_cmd->add_option("--svg", fs_svg, "plot the trajectory here");
    fs_cmd->add_option("--report", fs_report, "write the detection report here");

    // periodic-points
    std::string pp_a, pp_b = "0,0", pp_report;
    int pp_max_n = 10;
    auto* pp_cmd = app.add_subcommand("periodic-points", "periodic points of an affine torus map");
    pp_cmd->add_option("--a", pp_a, "integer matrix rows, e.g. \"1,0;1,1\"")->required();
    pp_cmd->add_option("--b", pp_b, "translation, e.g. \"alpha,0\"");
    pp_cmd->add_option("--max-n", pp_max_n, "check periods up to this bound");
    pp_cmd->add_option("--report", pp_report, "write the report here");

    // geography
    long long geo_chi = 0, geo_c = 0, geo_chi_min = 1, geo_chi_max = 10;
    std::string geo_csv;
    auto* geo_cmd = app.add_subcommand("geography", "coverage of the characteristic-number strip");
    auto* geo_chi_opt = geo_cmd->add_option("--chi", geo_chi, "chi coordinate");
    auto* geo_c_opt = geo_cmd->add_option("--c", geo_c, "c coordinate");
    geo_cmd->add_option("--chi-min", geo_chi_min, "enumeration lower bound");
    geo_cmd->add_option("--chi-max", geo_chi_max, "enumeration upper bound");
    geo_cmd->add_option("--csv", geo_csv, "write enumeration CSV here");

    // catalog
    std::string cat_name, cat_report;
    bool cat_list = false;
    auto* cat_cmd = app.add_subcommand("catalog", "named example constructions");
    cat_cmd->add_option("--name", cat_name, "entry name");
    cat_cmd->add_option("--report", cat_report, "write the report here");
    cat_cmd->add_flag("--list", cat_list, "list the known names");

    // collar-check
    std::string cc_family = "zehnder4", cc_input, cc_report;
    auto* cc_cmd = app.add_subcommand("collar-check", "perturbation criterion for a collar family");
    cc_cmd->add_option("--family", cc_family, "named family");
    cc_cmd->add_option("--input", cc_input, "collar family JSON");
    cc_cmd->add_option("--report", cc_report, "write the report here");

    // validate
    std::string val_input;
    auto* val_cmd = app.add_subcommand("validate", "schema and invariant check of a spec file");
    val_cmd->add_option("--input", val_input, "spec JSON")->required();

    // plot
    std::string plot_csv, plot_svg;
    double plot_tau = 1e-6;
    auto* plot_cmd = app.add_subcommand("plot", "SVG projection of a trajectory CSV");
    plot_cmd->add_option("--csv", plot_csv, "trajectory CSV")->required();
    plot_cmd->add_option("--svg", plot_svg, "output SVG")->required();
    plot_cmd->add_option("--tau", plot_tau, "closure annotation tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sum_cmd->parsed()) return run_sum(sum_input, sum_report, sum_away);
        if (verdict_cmd->parsed())
            return run_verdict(verdict_input, verdict_k, verdict_image, verdict_report);
        if (fs_cmd->parsed())
            return run_flow_sim(fs_family, fs_input, fs_u, fs_s0, fs_x0, fs_horizon, fs_step,
                                fs_tau, fs_csv, fs_svg, fs_report);
        if (pp_cmd->parsed()) return run_periodic_points(pp_a, pp_b, pp_max_n, pp_report);
        if (geo_cmd->parsed()) {
            bool single = geo_chi_opt->count() > 0 && geo_c_opt->count() > 0;
            return run_geography(geo_chi, geo_c, single, geo_chi_min, geo_chi_max, geo_csv);
        }
        if (cat_cmd->parsed()) return run_catalog(cat_name, cat_report, cat_list);
        if (cc_cmd->parsed()) return run_collar_check(cc_family, cc_input, cc_report);
        if (val_cmd->parsed()) return run_validate(val_input);
        if (plot_cmd->parsed()) {
            plot_trajectory_csv(plot_csv, plot_svg, plot_tau);
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
