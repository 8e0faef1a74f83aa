#pragma once

#include "apw/catalog.hpp"
#include "apw/flow.hpp"
#include "apw/sumops.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace apw {

using Json = nlohmann::json;

/// Schema violation with the JSON path of the offending field.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), field_path(path) {}
    std::string field_path;
};

constexpr int kSchemaVersion = 1;

Json scalar_to_json(const ScalarK& s);
ScalarK scalar_from_json(const Json& j, const std::string& path);

Json subspace_to_json(const Subspace& s);

Json summand_to_json(const Summand& s);
Summand summand_from_json(const Json& j, const std::string& path = "$");

Json sum_spec_to_json(const SumSpec& spec);
SumSpec sum_spec_from_json(const Json& j, const std::string& path = "$");

Json verdict_to_json(const Verdict& v);
Json sum_result_to_json(const SumResult& r);

Json collar_family_to_json(const CollarFamily& fam);
CollarFamily collar_family_from_json(const Json& j, const std::string& path = "$");

Json detection_report_to_json(const DetectionReport& r);
Json param_report_to_json(const ParamReport& r);

/// Parses a spec file (summand, sum spec, or collar family — discriminated by
/// its fields) and lists violated invariants.  Empty list means valid.
std::vector<std::string> validate_spec_text(const std::string& text);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace apw
