#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qcm/vec.hpp"

namespace qcm {

/// Outcome of checking one axiom. A failed outcome carries the offending
/// points (labels, empty for cone axioms) and values so it can be replayed.
struct AxiomOutcome {
    std::string axiom;
    std::size_t checks = 0;
    bool passed = true;
    std::vector<std::string> points;
    std::vector<Vec> values;
    std::string note;
};

struct AxiomReport {
    std::vector<AxiomOutcome> axioms;

    bool passed() const {
        return std::all_of(axioms.begin(), axioms.end(), [](const AxiomOutcome& a) { return a.passed; });
    }

    const AxiomOutcome* find(const std::string& name) const {
        for (const auto& a : axioms) {
            if (a.axiom == name) return &a;
        }
        return nullptr;
    }

    std::size_t total_checks() const {
        std::size_t n = 0;
        for (const auto& a : axioms) n += a.checks;
        return n;
    }
};

}  // namespace qcm
