#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcm/best_approx.hpp"
#include "qcm/qcm_space.hpp"
#include "qcm/witness.hpp"

namespace qcm {

struct QueryFamily {
    std::vector<std::string> queries;
    std::vector<std::string> candidates;
    Direction direction = Direction::forward;
};

/// Linear structure on the ground set, required by the pseudo check.
using Embedding = std::map<std::string, Vec>;

/// Finite-scale semantics:
///  - Chebyshev fails at q when the best set is not a singleton; a best set
///    with two or more members yields (q, h1, h2), an empty one is recorded
///    with no members.
///  - quasi fails at q exactly when the best set is empty (any finite
///    nonempty set is sequentially compact).
///  - pseudo always holds on finite sets; the span rank of each embedded
///    best set is recorded as evidence.
struct ChebyshevViolation {
    std::string q;
    std::vector<std::string> members;  // h1, h2 (label order) or empty
};

struct QuasiViolation {
    std::string q;
    std::string reason;
};

struct CensusEntry {
    std::string q;
    std::size_t cardinality = 0;
    std::optional<std::size_t> rank;
};

struct ChebyshevReport {
    Direction direction = Direction::forward;
    std::vector<std::string> candidates;  // sorted H
    bool chebyshev = true;
    std::vector<ChebyshevViolation> chebyshev_violations;
    bool quasi = true;
    std::vector<QuasiViolation> quasi_violations;
    std::optional<bool> pseudo;  // set when an embedding was supplied
    std::vector<CensusEntry> census;  // by query label
};

inline constexpr const char* kQuasiSemantics =
    "quasi-Chebyshev on a finite ground set fails exactly when a best approximation set is empty";

struct ClassifyOptions {
    const Embedding* embedding = nullptr;
    bool require_pseudo = false;
    unsigned jobs = 1;
};

/// Throws SemanticError for unknown labels, an empty family, or a pseudo
/// check requested without an embedding (or with points missing from it).
ChebyshevReport classify(const QcmInstance& instance, const QueryFamily& family, const ClassifyOptions& options = {});

struct TheoremForm {
    std::string q;
    std::string h1;
    std::string h2;
    WitnessTable witness;
};

/// Packages every two-member Chebyshev violation with its canonical witness.
/// Empty when the report says Chebyshev holds; throws SemanticError when the
/// only violations are empty best sets.
std::vector<TheoremForm> counterexample_to_theorem_form(const ChebyshevReport& report, const QcmInstance& instance);

}  // namespace qcm
