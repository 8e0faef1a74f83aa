#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apw/catalog.hpp"
#include "apw/flow.hpp"
#include "apw/json_io.hpp"
#include "apw/sumops.hpp"

namespace py = pybind11;
using namespace apw;

namespace {

QMatrix matrix_from_strings(const std::vector<std::vector<std::string>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    QMatrix m(r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
        for (size_t j = 0; j < c; ++j) m.at(i, j) = parse_scalar(rows[i][j]);
    }
    return m;
}

IntMatrix int_matrix_from_lists(const std::vector<std::vector<long long>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    IntMatrix m(r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
        for (size_t j = 0; j < c; ++j) m.at(i, j) = Int(rows[i][j]);
    }
    return m;
}

std::vector<std::vector<long long>> int_matrix_to_lists(const IntMatrix& m) {
    std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).convert_to<long long>();
    return out;
}

std::vector<std::vector<std::string>> subspace_to_lists(const Subspace& s) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : s.basis()) {
        std::vector<std::string> r;
        for (const auto& x : row) r.push_back(to_string(x));
        out.push_back(r);
    }
    return out;
}

std::vector<ScalarK> scalars_from_strings(const std::vector<std::string>& xs) {
    std::vector<ScalarK> out;
    for (const auto& x : xs) out.push_back(parse_scalar(x));
    return out;
}

std::vector<std::string> scalars_to_strings(const std::vector<ScalarK>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

}  // namespace

PYBIND11_MODULE(_apw, m) {
    m.doc() = "exact linear algebra, collar dynamics and sum verdicts";

    m.def("rank", [](const std::vector<std::vector<std::string>>& rows) {
        return rank(matrix_from_strings(rows));
    });

    m.def("kernel", [](const std::vector<std::vector<std::string>>& rows) {
        return subspace_to_lists(kernel(matrix_from_strings(rows)));
    });

    m.def("rationally_independent", [](const std::vector<std::string>& xs) {
        return rationally_independent(scalars_from_strings(xs));
    });

    m.def("smith_normal_form", [](const std::vector<std::vector<long long>>& rows) {
        auto snf = smith_normal_form(int_matrix_from_lists(rows));
        py::dict out;
        out["u"] = int_matrix_to_lists(snf.u);
        out["d"] = int_matrix_to_lists(snf.d);
        out["v"] = int_matrix_to_lists(snf.v);
        return out;
    });

    m.def("kernel_direction",
          [](const std::vector<std::vector<std::string>>& b,
             const std::vector<std::vector<std::string>>& beta,
             const std::vector<std::string>& phi, long long euler_k, const std::string& u,
             const std::string& s) {
              CollarFamily fam = make_collar_family(matrix_from_strings(b),
                                                    matrix_from_strings(beta),
                                                    scalars_from_strings(phi), euler_k);
              return scalars_to_strings(kernel_direction(fam, parse_scalar(u), parse_scalar(s)));
          },
          py::arg("b"), py::arg("beta"), py::arg("phi"), py::arg("euler_k") = 0,
          py::arg("u") = "0", py::arg("s") = "0");

    m.def("classify_orbit", [](const std::vector<std::string>& c, long long euler_k) {
        OrbitVerdict v = classify_orbit(scalars_from_strings(c), euler_k);
        py::dict out;
        switch (v.kind) {
            case OrbitVerdict::Kind::Closed:
                out["kind"] = "closed";
                break;
            case OrbitVerdict::Kind::NonClosed:
                out["kind"] = "non-closed";
                break;
            default:
                out["kind"] = "undetermined";
        }
        if (v.period) out["period"] = to_string(*v.period);
        out["certificate"] = v.certificate;
        return out;
    });

    m.def("simulate_direction",
          [](const std::vector<double>& c, long long euler_k, double horizon, double step,
             double tau) {
              SimParams params;
              params.horizon = horizon;
              params.step = step;
              params.tau = tau;
              FlowPoint x0;
              x0.base.assign(c.size(), 0.0);
              DetectionReport r = simulate_direction(c, euler_k, x0, params);
              py::dict out;
              out["closed"] = r.closed;
              out["stationary"] = r.stationary;
              out["period"] = r.period;
              out["min_return_distance"] = r.min_return_distance;
              return out;
          },
          py::arg("c"), py::arg("euler_k") = 0, py::arg("horizon") = 100.0,
          py::arg("step") = 1e-3, py::arg("tau") = 1e-6);

    m.def("affine_periodic_points",
          [](const std::vector<std::vector<long long>>& a, const std::vector<std::string>& b,
             int max_n) {
              AffineTorusMap map{int_matrix_from_lists(a), scalars_from_strings(b)};
              py::list out;
              for (const auto& r : affine_periodic_points(map, max_n)) {
                  py::dict row;
                  row["n"] = r.n;
                  row["exists"] = r.exists;
                  if (r.exists) row["witness"] = scalars_to_strings(r.witness);
                  out.append(row);
              }
              return out;
          });

    m.def("mapping_torus_invariant", [](const std::vector<std::vector<long long>>& psi) {
        return subspace_to_lists(mapping_torus_invariant(int_matrix_from_lists(psi)));
    });

    m.def("is_sp_sl", [](const std::vector<std::vector<long long>>& psi) {
        return is_sp_sl(int_matrix_from_lists(psi));
    });

    m.def("geography_covered", [](long long chi, long long c) {
        GeographyResult res = geography_covered({chi, c});
        switch (res.status) {
            case GeographyStatus::Covered:
                return "Covered(" + res.range_label + ")";
            case GeographyStatus::NotCovered:
                return std::string("NotCovered");
            default:
                return std::string("OutOfRegion");
        }
    });

    m.def("catalog_entries", [] {
        // mirrors the CLI registry at the report level
        return std::vector<std::string>{"T4",    "zehnder6", "KT",         "KT-anosov", "E1",
                                        "E2",    "E3",       "E4",         "K3",        "E2_2_3",
                                        "E2-trefoil", "E3-trefoil", "E2xS2", "E3xCP2",
                                        "XG-trivial", "XG-Z2"};
    });

    m.def("elliptic_profile", [](int n) {
        Summand s = elliptic_e(n);
        py::dict out;
        out["name"] = s.name;
        out["euler_char"] = s.euler_char;
        out["signature"] = *s.signature;
        out["aperiodic"] = s.aperiodic.has_value();
        if (auto bp = s.b_plus()) out["b_plus"] = *bp;
        return out;
    });

    m.def("sum_from_json", [](const std::string& spec_json) {
        SumSpec spec = sum_spec_from_json(Json::parse(spec_json));
        return sum_result_to_json(symplectic_sum(spec)).dump();
    });

    m.def("validate_spec", [](const std::string& text) { return validate_spec_text(text); });
}
