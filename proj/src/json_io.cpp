#include "apw/json_io.hpp"

#include <fstream>

namespace apw {

namespace {

const Json& require_field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
    return *it;
}

long long require_int(const Json& j, const std::string& key, const std::string& path) {
    const Json& f = require_field(j, key, path);
    if (!f.is_number_integer()) throw SchemaError(path + "." + key, "expected an integer");
    return f.get<long long>();
}

std::string require_string(const Json& j, const std::string& key, const std::string& path) {
    const Json& f = require_field(j, key, path);
    if (!f.is_string()) throw SchemaError(path + "." + key, "expected a string");
    return f.get<std::string>();
}

bool optional_bool(const Json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<bool>();
}

void check_schema(const Json& j, const std::string& path) {
    if (!j.contains("schema")) return;  // tolerated on input
    if (j.at("schema").get<int>() != kSchemaVersion)
        throw SchemaError(path + ".schema", "unsupported schema version");
}

std::string uset_to_string(USet u) {
    return u == USet::AllNonzeroU ? "all-nonzero-u" : "all-but-countably-many";
}

USet uset_from_string(const std::string& s, const std::string& path) {
    if (s == "all-nonzero-u") return USet::AllNonzeroU;
    if (s == "all-but-countably-many") return USet::AllButCountablyMany;
    throw SchemaError(path, "unknown parameter-set tag '" + s + "'");
}

Json int_matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t jx = 0; jx < m.cols(); ++jx) row.push_back(m.at(i, jx).convert_to<long long>());
        rows.push_back(row);
    }
    return rows;
}

IntMatrix int_matrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of integer rows");
    size_t rows = j.size();
    size_t cols = rows ? j.at(0).size() : 0;
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j.at(i).is_array() || j.at(i).size() != cols)
            throw SchemaError(path + "[" + std::to_string(i) + "]", "ragged integer matrix");
        for (size_t c = 0; c < cols; ++c)
            m.at(i, c) = Int(j.at(i).at(c).get<long long>());
    }
    return m;
}

QMatrix scalar_matrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
    size_t rows = j.size();
    size_t cols = rows ? j.at(0).size() : 0;
    QMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j.at(i).is_array() || j.at(i).size() != cols)
            throw SchemaError(path + "[" + std::to_string(i) + "]", "ragged matrix");
        for (size_t c = 0; c < cols; ++c) {
            const Json& cell = j.at(i).at(c);
            std::string where = path + "[" + std::to_string(i) + "][" + std::to_string(c) + "]";
            m.at(i, c) = scalar_from_json(cell, where);
        }
    }
    return m;
}

Json scalar_matrix_to_json(const QMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(i, c)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

Json scalar_to_json(const ScalarK& s) {
    Json out = Json::object();
    for (const auto& [mono, coeff] : s.coeffs()) out[monomial_key(mono)] = to_string(coeff);
    if (out.empty()) out["1"] = "0";
    return out;
}

ScalarK scalar_from_json(const Json& j, const std::string& path) {
    try {
        if (j.is_string()) return parse_scalar(j.get<std::string>());
        if (j.is_number_integer()) return ScalarK(Rational(j.get<long long>()));
        if (j.is_object()) {
            ScalarK out(0);
            for (auto it = j.begin(); it != j.end(); ++it) {
                Rational coeff = parse_rational(it.value().get<std::string>());
                TagMonomial mono = parse_monomial(it.key());
                ScalarK piece(coeff);
                for (const auto& sym : mono) piece = piece * ScalarK::tag(sym);
                out += piece;
            }
            return out;
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(path, "expected a scalar (string, integer, or tag map)");
}

Json subspace_to_json(const Subspace& s) {
    Json basis = Json::array();
    for (const auto& row : s.basis()) {
        Json jrow = Json::array();
        for (const auto& x : row) jrow.push_back(to_string(x));
        basis.push_back(jrow);
    }
    return Json{{"ambient", s.ambient()}, {"dim", s.dim()}, {"basis", basis}};
}

namespace {

Json torus_to_json(const MarkedTorus& t) {
    Json j{{"label", t.label},
           {"self_int", t.self_int},
           {"area", scalar_to_json(t.area)},
           {"pi1_image_rank", t.pi1_image_rank},
           {"homologically_nontrivial", t.homologically_nontrivial},
           {"complement_simply_connected", t.complement_simply_connected},
           {"pi1_image_normally_generates", t.pi1_image_normally_generates}};
    switch (t.h1_map.kind) {
        case H1Map::Kind::Zero:
            j["h1_map"] = "zero";
            break;
        case H1Map::Kind::Unknown:
            j["h1_map"] = "unknown";
            break;
        case H1Map::Kind::Known:
            j["h1_map"] = int_matrix_to_json(t.h1_map.map);
            break;
    }
    return j;
}

MarkedTorus torus_from_json(const Json& j, const std::string& path) {
    MarkedTorus t;
    t.label = require_string(j, "label", path);
    t.self_int = require_int(j, "self_int", path);
    t.area = scalar_from_json(require_field(j, "area", path), path + ".area");
    if (j.contains("pi1_image_rank")) t.pi1_image_rank = j.at("pi1_image_rank").get<int>();
    t.homologically_nontrivial = optional_bool(j, "homologically_nontrivial", true);
    t.complement_simply_connected = optional_bool(j, "complement_simply_connected", false);
    t.pi1_image_normally_generates = optional_bool(j, "pi1_image_normally_generates", false);
    if (j.contains("h1_map")) {
        const Json& h = j.at("h1_map");
        if (h.is_string()) {
            std::string kind = h.get<std::string>();
            if (kind == "zero")
                t.h1_map = H1Map::zero();
            else if (kind == "unknown")
                t.h1_map = H1Map::unknown();
            else
                throw SchemaError(path + ".h1_map", "expected \"zero\", \"unknown\" or a matrix");
        } else {
            t.h1_map = H1Map::known(int_matrix_from_json(h, path + ".h1_map"));
        }
    }
    return t;
}

Json cert_to_json(const AperiodicCert& c) {
    Json phi = Json::array();
    for (const auto& x : c.phi) phi.push_back(scalar_to_json(x));
    return Json{{"branch", c.branch},
                {"phi", phi},
                {"u_set", uset_to_string(c.u_set)},
                {"disjoint_tori", c.disjoint_tori},
                {"derivation", c.derivation}};
}

AperiodicCert cert_from_json(const Json& j, const std::string& path) {
    AperiodicCert c;
    c.branch = require_string(j, "branch", path);
    if (j.contains("phi"))
        for (size_t i = 0; i < j.at("phi").size(); ++i)
            c.phi.push_back(scalar_from_json(j.at("phi").at(i),
                                             path + ".phi[" + std::to_string(i) + "]"));
    if (j.contains("u_set"))
        c.u_set = uset_from_string(j.at("u_set").get<std::string>(), path + ".u_set");
    if (j.contains("disjoint_tori"))
        c.disjoint_tori = j.at("disjoint_tori").get<std::vector<std::string>>();
    if (j.contains("derivation"))
        c.derivation = j.at("derivation").get<std::vector<std::string>>();
    return c;
}

}  // namespace

Json summand_to_json(const Summand& s) {
    Json j{{"schema", kSchemaVersion},
           {"name", s.name},
           {"euler_char", s.euler_char},
           {"dim", s.dim},
           {"exceptional_count", s.exceptional_count}};
    if (s.signature) j["signature"] = *s.signature;
    if (s.b1) j["b1"] = *s.b1;
    if (s.simply_connected) j["simply_connected"] = *s.simply_connected;
    if (s.minimal) j["minimal"] = *s.minimal;
    Json tori = Json::array();
    for (const auto& t : s.tori) tori.push_back(torus_to_json(t));
    j["tori"] = tori;
    if (s.aperiodic) j["aperiodic"] = cert_to_json(*s.aperiodic);
    if (auto bp = s.b_plus()) j["b_plus"] = *bp;
    if (auto c = s.c()) j["c"] = *c;
    if (auto chi = s.chi_h(); chi && denominator(*chi) == 1)
        j["chi_h"] = numerator(*chi).convert_to<long long>();
    return j;
}

Summand summand_from_json(const Json& j, const std::string& path) {
    check_schema(j, path);
    Summand s;
    s.name = require_string(j, "name", path);
    s.euler_char = require_int(j, "euler_char", path);
    if (j.contains("dim")) s.dim = j.at("dim").get<int>();
    if (j.contains("signature")) s.signature = j.at("signature").get<long long>();
    if (j.contains("b1")) s.b1 = j.at("b1").get<long long>();
    if (j.contains("simply_connected")) s.simply_connected = j.at("simply_connected").get<bool>();
    if (j.contains("minimal")) s.minimal = j.at("minimal").get<bool>();
    if (j.contains("exceptional_count")) s.exceptional_count = j.at("exceptional_count").get<int>();
    if (j.contains("tori")) {
        const Json& tori = j.at("tori");
        if (!tori.is_array()) throw SchemaError(path + ".tori", "expected an array");
        for (size_t i = 0; i < tori.size(); ++i)
            s.tori.push_back(torus_from_json(tori.at(i),
                                             path + ".tori[" + std::to_string(i) + "]"));
    }
    if (j.contains("aperiodic") && !j.at("aperiodic").is_null())
        s.aperiodic = cert_from_json(j.at("aperiodic"), path + ".aperiodic");
    return s;
}

Json sum_spec_to_json(const SumSpec& spec) {
    return Json{{"schema", kSchemaVersion},
                {"left", summand_to_json(spec.left)},
                {"right", summand_to_json(spec.right)},
                {"left_torus", spec.left_torus},
                {"right_torus", spec.right_torus},
                {"case_i_attested", spec.case_i_attested},
                {"phi_class", spec.phi_class},
                {"same_ambient", spec.same_ambient}};
}

SumSpec sum_spec_from_json(const Json& j, const std::string& path) {
    check_schema(j, path);
    SumSpec spec;
    spec.left = summand_from_json(require_field(j, "left", path), path + ".left");
    spec.right = summand_from_json(require_field(j, "right", path), path + ".right");
    spec.left_torus = require_string(j, "left_torus", path);
    spec.right_torus = require_string(j, "right_torus", path);
    spec.case_i_attested = optional_bool(j, "case_i_attested", false);
    if (j.contains("phi_class")) spec.phi_class = j.at("phi_class").get<std::string>();
    spec.same_ambient = optional_bool(j, "same_ambient", false);
    return spec;
}

Json verdict_to_json(const Verdict& v) {
    Json j{{"kind", v.aperiodic() ? "aperiodic" : "unknown"}};
    if (v.cert) {
        j["branch"] = v.cert->branch;
        Json phi = Json::array();
        for (const auto& x : v.cert->phi) phi.push_back(scalar_to_json(x));
        j["phi"] = phi;
        j["u_set"] = uset_to_string(v.cert->u_set);
        j["derivation"] = v.cert->derivation;
        j["disjoint_tori"] = v.cert->disjoint_tori;
    }
    return j;
}

Json sum_result_to_json(const SumResult& r) {
    Json j{{"schema", kSchemaVersion},
           {"manifold", summand_to_json(r.manifold)},
           {"neck_euler_k", r.neck_euler_k},
           {"image", subspace_to_json(r.image)},
           {"verdict", verdict_to_json(r.verdict)}};
    if (r.provenance) j["spec"] = sum_spec_to_json(*r.provenance);
    return j;
}

Json collar_family_to_json(const CollarFamily& fam) {
    Json phi = Json::array();
    for (const auto& x : fam.phi) phi.push_back(scalar_to_json(x));
    return Json{{"schema", kSchemaVersion},
                {"m", fam.m},
                {"B", scalar_matrix_to_json(fam.B)},
                {"beta", scalar_matrix_to_json(fam.beta)},
                {"gamma", scalar_matrix_to_json(fam.gamma)},
                {"phi", phi},
                {"euler_k", fam.euler_k},
                {"eps", to_string(fam.eps)},
                {"delta", to_string(fam.delta)}};
}

CollarFamily collar_family_from_json(const Json& j, const std::string& path) {
    check_schema(j, path);
    CollarFamily fam;
    fam.m = static_cast<int>(require_int(j, "m", path));
    fam.B = scalar_matrix_from_json(require_field(j, "B", path), path + ".B");
    fam.beta = scalar_matrix_from_json(require_field(j, "beta", path), path + ".beta");
    fam.euler_k = j.contains("euler_k") ? j.at("euler_k").get<long long>() : 0;
    if (j.contains("gamma")) {
        fam.gamma = scalar_matrix_from_json(j.at("gamma"), path + ".gamma");
    } else {
        fam.gamma = QMatrix::zero(fam.m, fam.m);
        if (fam.euler_k != 0 && fam.m == 2) {
            fam.gamma.at(0, 1) = ScalarK(Rational(-fam.euler_k));
            fam.gamma.at(1, 0) = ScalarK(Rational(fam.euler_k));
        }
    }
    const Json& phi = require_field(j, "phi", path);
    for (size_t i = 0; i < phi.size(); ++i)
        fam.phi.push_back(scalar_from_json(phi.at(i), path + ".phi[" + std::to_string(i) + "]"));
    if (j.contains("eps")) fam.eps = parse_rational(j.at("eps").get<std::string>());
    if (j.contains("delta"))
        fam.delta = parse_rational(j.at("delta").get<std::string>());
    else if (fam.B.is_rational() && fam.beta.is_rational() && fam.gamma.is_rational())
        fam.delta = default_delta(fam.B, fam.beta, fam.gamma);
    return fam;
}

Json detection_report_to_json(const DetectionReport& r) {
    Json j;
    if (r.stationary)
        j["closed"] = "stationary";
    else
        j["closed"] = r.closed;
    if (r.closed) j["period"] = r.period;
    if (!r.stationary) j["min_return_distance"] = r.min_return_distance;
    j["tau"] = r.tau;
    j["horizon"] = r.horizon;
    j["step"] = r.step;
    return j;
}

Json param_report_to_json(const ParamReport& r) {
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        Json row{{"u", scalar_to_json(s.u)}, {"s", scalar_to_json(s.s)}};
        switch (s.verdict.kind) {
            case OrbitVerdict::Kind::Closed:
                row["verdict"] = "closed";
                row["period"] = to_string(*s.verdict.period);
                break;
            case OrbitVerdict::Kind::NonClosed:
                row["verdict"] = "non-closed";
                break;
            case OrbitVerdict::Kind::Undetermined:
                row["verdict"] = "undetermined";
                break;
        }
        row["certificate"] = s.verdict.certificate;
        samples.push_back(row);
    }
    Json j{{"schema", kSchemaVersion},
           {"criterion_met", r.met},
           {"branch", r.branch},
           {"u_set", uset_to_string(r.u_set)},
           {"delta", to_string(r.delta)},
           {"samples", samples}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

std::vector<std::string> validate_spec_text(const std::string& text) {
    std::vector<std::string> diagnostics;
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        diagnostics.push_back(std::string("not valid JSON: ") + e.what());
        return diagnostics;
    }
    try {
        if (j.contains("left") && j.contains("right")) {
            SumSpec spec = sum_spec_from_json(j);
            spec.validate();
            const MarkedTorus& tl = spec.left.torus(spec.left_torus);
            const MarkedTorus& tr = spec.right.torus(spec.right_torus);
            if (tl.area != tr.area)
                diagnostics.push_back("$.: tori must have equal area; rescale one summand first");
        } else if (j.contains("B")) {
            CollarFamily fam = collar_family_from_json(j);
            fam.validate();
        } else {
            Summand s = summand_from_json(j);
            s.validate();
        }
    } catch (const SchemaError& e) {
        diagnostics.push_back(e.what());
    } catch (const std::exception& e) {
        diagnostics.push_back(std::string("$.: ") + e.what());
    }
    return diagnostics;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("$", std::string("not valid JSON: ") + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace apw
