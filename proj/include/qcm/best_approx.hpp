#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcm/cone.hpp"
#include "qcm/qcm_space.hpp"
#include "qcm/vec.hpp"

namespace qcm {

/// forward measures d(q, h); backward measures d(h, q).
enum class Direction { forward, backward };

std::string_view to_string(Direction d);
/// Throws InputError for anything but "forward" / "backward".
Direction parse_direction(std::string_view text);

/// Distance between target q and candidate h in the given direction.
inline const Vec& directed_distance(const QcmInstance& instance, PointIndex q, PointIndex h, Direction dir) {
    return dir == Direction::forward ? instance.distance(q, h) : instance.distance(h, q);
}

struct Query {
    std::string q;
    std::vector<std::string> candidates;
    Direction direction = Direction::forward;
};

/// How "partial" the order was over a set of values: every unordered pair is
/// either equal, strictly comparable or incomparable.
struct DominanceStats {
    std::size_t pairs = 0;
    std::size_t equal = 0;
    std::size_t comparable = 0;  // strictly ordered one way
    std::size_t incomparable = 0;
    friend bool operator==(const DominanceStats&, const DominanceStats&) = default;
};

struct ApproximationResult {
    std::vector<std::string> best;  // sorted labels, possibly empty
    std::optional<Vec> common_distance;
    std::vector<std::string> minimal_front;  // sorted labels
    DominanceStats stats;
};

/// Forward: {h in H : d(q,h) <= d(q,h') for all h' in H}; backward mirrors
/// the arguments. An empty result means no least distance exists.
/// Throws SemanticError for unknown labels or an empty candidate set.
ApproximationResult best_approximation_set(const QcmInstance& instance, const Query& query);

/// Index-level variant used by the witness and classification code. `H`
/// must be nonempty and duplicate-free; the result lists indices in the
/// order they appear in `H`.
std::vector<PointIndex> best_indices(const QcmInstance& instance, PointIndex q, std::span<const PointIndex> H,
                                     Direction dir);

struct LabeledValue {
    std::string id;
    Vec value;
};

/// Ids whose value has nothing strictly below it. Exhaustive all-pairs scan
/// under an arbitrary polyhedral cone. Output sorted.
std::vector<std::string> minimal_front_naive(std::span<const LabeledValue> values, const OrderedSpace& space);

/// Same scan, also tallying the pair relations.
std::vector<std::string> minimal_front_naive(std::span<const LabeledValue> values, const OrderedSpace& space,
                                             DominanceStats& stats);

struct FrontResult {
    std::vector<std::string> ids;  // sorted
    bool fell_back_to_naive = false;
};

/// Kung-style divide and conquer over the lexicographically sorted values,
/// for the componentwise order of the nonnegative orthant: O(n log n) in
/// Q^2, O(n log^2 n) in Q^3. Other cones fall back to the naive scan and set
/// `fell_back_to_naive`.
FrontResult minimal_front_dnc(std::span<const LabeledValue> values, const OrderedSpace& space);

/// True iff the backward best set under `instance` equals the forward best
/// set under transpose(instance).
bool duality_check(const QcmInstance& instance, const std::string& q, const std::vector<std::string>& candidates);

}  // namespace qcm
