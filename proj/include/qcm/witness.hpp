#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcm/best_approx.hpp"
#include "qcm/qcm_space.hpp"
#include "qcm/vec.hpp"

namespace qcm {

/// A function f: Q -> B tabulated over the whole ground set, together with
/// the target point and direction it is meant to certify.
class WitnessTable {
public:
    /// `values` is indexed like instance.labels(). Throws InputError on a
    /// size or dimension mismatch, SemanticError for an unknown q.
    WitnessTable(const QcmInstance& instance, std::string q, Direction direction, std::vector<Vec> values);

    const std::string& q() const { return q_; }
    Direction direction() const { return direction_; }
    const Vec& operator()(PointIndex x) const { return values_[x]; }
    const std::vector<Vec>& values() const { return values_; }

private:
    std::string q_;
    Direction direction_;
    std::vector<Vec> values_;
};

/// Witness conditions, in the order they are checked.
enum class WitnessCondition {
    anchor_equality,      // f(h) = D(h)
    shift_not_in_cone,    // f(h') - f(h) in P for all h' in H
    gap_not_in_cone,      // D(h') - f(h') in P for all h' in H
};

std::string_view to_string(WitnessCondition c);

/// D(x) denotes d(q,x) forward and d(x,q) backward.
struct WitnessVerdict {
    bool holds = true;
    std::optional<WitnessCondition> failed_condition;
    /// Point at which the failing condition was observed, and the value
    /// that violated it (f(h), the shift, or the gap).
    std::optional<std::pair<std::string, Vec>> counterexample;
    /// Member of M whose conditions failed (set verdicts only).
    std::optional<std::string> member;
};

/// f(x) = d(q,x) forward, f(x) = d(x,q) backward.
WitnessTable canonical_witness(const QcmInstance& instance, const std::string& q, Direction direction);

/// Checks f(h) = D(h), f(h') >= f(h) and D(h') >= f(h') for all h' in H.
/// Throws SemanticError for unknown labels or h not in H.
WitnessVerdict verify_witness_for_element(const QcmInstance& instance, const WitnessTable& witness,
                                          const std::vector<std::string>& H, const std::string& h);

/// The element conditions for every m in M under one shared f, visited in
/// label order; stops at the first failure. A passing verdict also confirms
/// that the anchors D(m) coincide across M. Empty M holds vacuously.
/// Throws SemanticError when M is not a subset of H.
WitnessVerdict verify_witness_for_set(const QcmInstance& instance, const WitnessTable& witness,
                                      const std::vector<std::string>& H, const std::vector<std::string>& M);

struct WitnessPool {
    std::uint64_t seed = 0;
    /// Extra random shrink factors in (0,1) drawn from `seed`, on top of
    /// the fixed factors 1/2 and 3/4.
    std::size_t random_factors = 2;
};

struct WitnessCertificate {
    WitnessTable witness;
    std::vector<std::string> members;  // sorted, at least two
};

/// Tries the canonical witness, then shrunken variants
///   f(x) = c + t (D(x) - c)   for x in H with D(x) >= c,
///   f(x) = D(x)               elsewhere,
/// for each distinct candidate anchor value c and factor t. For each witness
/// the set M of elements it certifies is collected; the first witness whose M
/// has two or more members and verifies as a set is returned.
std::optional<WitnessCertificate> search_counterexample_witness(const QcmInstance& instance, const std::string& q,
                                                                const std::vector<std::string>& H,
                                                                Direction direction, const WitnessPool& pool = {});

}  // namespace qcm
