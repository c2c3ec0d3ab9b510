#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qcm/axiom_report.hpp"
#include "qcm/best_approx.hpp"
#include "qcm/chebyshev.hpp"
#include "qcm/qcm_space.hpp"
#include "qcm/witness.hpp"

namespace qcm::io {

using Json = nlohmann::ordered_json;

struct FileQueries {
    std::vector<std::string> targets;
    std::vector<std::string> candidates;
    std::optional<Direction> direction;
};

/// One instance per file:
///   space     {"dimension": n, "rows": [["p/q", ...], ...], "interior"?: [...]}
///   points    ["a", ...] or [{"label": "a", "coordinate"?: "p/q"}, ...]
///   metric    {"kind": "table", "entries": [[from, to, [...]], ...]}
///             | {"kind": "example3"} | {"kind": "example4", "alpha": "p/q"}
///   queries?  {"targets": [...], "candidates": [...], "direction"?: "forward"}
///   embedding? {"label": ["p/q", ...], ...}
/// Rational literals are always JSON strings. Generated metrics live in Q^2
/// with the orthant cone, so `space` may be omitted for them.
struct InstanceFile {
    QcmInstance instance;
    std::optional<FileQueries> queries;
    std::optional<Embedding> embedding;
};

/// Throws ParseError naming the line/column (syntax) or field path
/// (schema and semantic content) of the first problem.
InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance(const std::filesystem::path& path);

Json instance_to_json(const InstanceFile& file);

Json rational_to_json(const Rational& r);
Json vec_to_json(const Vec& v);
Json vec_or_null(const std::optional<Vec>& v);

Json to_json(const AxiomReport& report);
Json to_json(const ApproximationResult& result);
Json to_json(const WitnessVerdict& verdict);
Json to_json(const ChebyshevReport& report);

/// {"q", "direction", "f": [[label, [...]], ...], "members"?: [...]}
Json witness_to_json(const WitnessTable& witness, const QcmInstance& instance,
                     const std::optional<std::vector<std::string>>& members = std::nullopt);

struct WitnessFile {
    WitnessTable witness;
    std::optional<std::vector<std::string>> members;
};

/// Every ground-set point must appear exactly once in "f".
WitnessFile parse_witness(std::string_view text, const QcmInstance& instance);

}  // namespace qcm::io
