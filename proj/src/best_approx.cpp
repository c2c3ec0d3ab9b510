#include "qcm/best_approx.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "qcm/error.hpp"

namespace qcm {

namespace {

using Projection = std::vector<Rational>;

struct Relation {
    bool le = true;  // a <= b
    bool ge = true;  // b <= a
};

Relation relate(const Projection& a, const Projection& b) {
    Relation rel;
    for (std::size_t k = 0; k < a.size() && (rel.le || rel.ge); ++k) {
        const auto c = a[k] <=> b[k];
        if (c > 0) rel.le = false;
        if (c < 0) rel.ge = false;
    }
    return rel;
}

bool leq_projected(const Projection& a, const Projection& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
    }
    return true;
}

std::vector<std::string> sorted(std::vector<std::string> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
}

// --- divide and conquer over unique, lexicographically sorted points -------

class KungMinima {
public:
    KungMinima(const std::vector<const Vec*>& points, std::size_t dim) : pts_(points), dim_(dim) {}

    std::vector<std::size_t> run() { return solve(0, pts_.size()); }

private:
    const Vec& at(std::size_t i) const { return *pts_[i]; }

    std::vector<std::size_t> solve(std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) return {lo};
        const std::size_t mid = lo + (hi - lo) / 2;
        std::vector<std::size_t> left = solve(lo, mid);
        std::vector<std::size_t> right = solve(mid, hi);
        // Every point of the left half precedes every right point
        // lexicographically, so only left points can dominate right ones.
        std::vector<std::size_t> keep = survivors(left, right);
        left.insert(left.end(), keep.begin(), keep.end());
        return left;
    }

    std::vector<std::size_t> survivors(const std::vector<std::size_t>& left, const std::vector<std::size_t>& right) {
        std::vector<std::size_t> out;
        if (dim_ == 1) return out;
        if (dim_ == 2) {
            const Rational* min_y = &at(left.front())[1];
            for (auto l : left) {
                if (at(l)[1] < *min_y) min_y = &at(l)[1];
            }
            for (auto r : right) {
                if (at(r)[1] < *min_y) out.push_back(r);
            }
            return out;
        }
        if (dim_ == 3) return survivors_3d(left, right);
        for (auto r : right) {
            const bool dominated = std::any_of(left.begin(), left.end(), [&](std::size_t l) {
                for (std::size_t k = 1; k < dim_; ++k) {
                    if (at(l)[k] > at(r)[k]) return false;
                }
                return true;
            });
            if (!dominated) out.push_back(r);
        }
        return out;
    }

    // r survives iff no left point has y <= r.y and z <= r.z: sweep both
    // halves by y, tracking the smallest z seen among admitted left points.
    std::vector<std::size_t> survivors_3d(std::vector<std::size_t> left, std::vector<std::size_t> right) {
        const auto by_yz = [&](std::size_t a, std::size_t b) {
            if (at(a)[1] != at(b)[1]) return at(a)[1] < at(b)[1];
            return at(a)[2] < at(b)[2];
        };
        std::sort(left.begin(), left.end(), by_yz);
        std::vector<std::size_t> order = right;
        std::sort(order.begin(), order.end(), by_yz);

        std::vector<char> alive(pts_.size(), 0);
        const Rational* min_z = nullptr;
        std::size_t li = 0;
        for (auto r : order) {
            while (li < left.size() && at(left[li])[1] <= at(r)[1]) {
                const Rational& z = at(left[li])[2];
                if (!min_z || z < *min_z) min_z = &z;
                ++li;
            }
            if (!min_z || at(r)[2] < *min_z) alive[r] = 1;
        }
        std::vector<std::size_t> out;
        for (auto r : right) {
            if (alive[r]) out.push_back(r);
        }
        return out;
    }

    const std::vector<const Vec*>& pts_;
    std::size_t dim_;
};

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

Direction parse_direction(std::string_view text) {
    if (text == "forward") return Direction::forward;
    if (text == "backward") return Direction::backward;
    throw InputError("direction must be 'forward' or 'backward', got '" + std::string(text) + "'");
}

std::vector<PointIndex> best_indices(const QcmInstance& instance, PointIndex q, std::span<const PointIndex> H,
                                     Direction dir) {
    const auto& cone = instance.space().cone();
    std::vector<Projection> proj;
    proj.reserve(H.size());
    for (auto h : H) proj.push_back(cone.project(directed_distance(instance, q, h, dir)));

    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < H.size() && !first; ++i) {
        const bool least = std::all_of(proj.begin(), proj.end(), [&](const Projection& p) {
            return leq_projected(proj[i], p);
        });
        if (least) first = i;
    }
    std::vector<PointIndex> best;
    if (!first) return best;
    // A pointed cone makes the least value unique, so the remaining members
    // are exactly the candidates at that same distance.
    const Vec& least = directed_distance(instance, q, H[*first], dir);
    for (std::size_t i = 0; i < H.size(); ++i) {
        if (i == *first || directed_distance(instance, q, H[i], dir) == least) best.push_back(H[i]);
    }
    return best;
}

ApproximationResult best_approximation_set(const QcmInstance& instance, const Query& query) {
    const PointIndex q = instance.index_of(query.q);
    if (query.candidates.empty()) throw SemanticError("candidate set H is empty");
    std::vector<PointIndex> H;
    std::unordered_set<PointIndex> seen;
    for (const auto& label : query.candidates) {
        const PointIndex h = instance.index_of(label);
        if (seen.insert(h).second) H.push_back(h);
    }

    ApproximationResult result;
    const auto best = best_indices(instance, q, H, query.direction);
    for (auto h : best) result.best.push_back(instance.label(h));
    std::sort(result.best.begin(), result.best.end());
    if (!best.empty()) result.common_distance = directed_distance(instance, q, best.front(), query.direction);

    std::vector<LabeledValue> values;
    values.reserve(H.size());
    for (auto h : H) values.push_back({instance.label(h), directed_distance(instance, q, h, query.direction)});
    result.minimal_front = minimal_front_naive(values, instance.space(), result.stats);
    return result;
}

std::vector<std::string> minimal_front_naive(std::span<const LabeledValue> values, const OrderedSpace& space) {
    DominanceStats ignored;
    return minimal_front_naive(values, space, ignored);
}

std::vector<std::string> minimal_front_naive(std::span<const LabeledValue> values, const OrderedSpace& space,
                                             DominanceStats& stats) {
    const auto& cone = space.cone();
    std::vector<Projection> proj;
    proj.reserve(values.size());
    for (const auto& v : values) proj.push_back(cone.project(v.value));

    stats = {};
    std::vector<char> dominated(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            const Relation rel = relate(proj[i], proj[j]);
            ++stats.pairs;
            if (rel.le && rel.ge) {
                ++stats.equal;
            } else if (rel.le) {
                ++stats.comparable;
                dominated[j] = 1;
            } else if (rel.ge) {
                ++stats.comparable;
                dominated[i] = 1;
            } else {
                ++stats.incomparable;
            }
        }
    }
    std::vector<std::string> front;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!dominated[i]) front.push_back(values[i].id);
    }
    return sorted(std::move(front));
}

FrontResult minimal_front_dnc(std::span<const LabeledValue> values, const OrderedSpace& space) {
    if (!space.cone().is_nonnegative_orthant()) return {minimal_front_naive(values, space), true};
    for (const auto& v : values) {
        if (v.value.size() != space.dimension()) throw InputError("value dimension does not match the space");
    }
    if (values.empty()) return {};

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(values[a].value, values[b].value); });

    // Equal values never dominate each other: collapse them to one
    // representative and expand afterwards.
    std::vector<const Vec*> unique;
    std::vector<std::size_t> group_start;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || values[order[k]].value != values[order[k - 1]].value) {
            unique.push_back(&values[order[k]].value);
            group_start.push_back(k);
        }
    }
    group_start.push_back(order.size());

    FrontResult out;
    for (auto u : KungMinima(unique, space.dimension()).run()) {
        for (std::size_t k = group_start[u]; k < group_start[u + 1]; ++k) out.ids.push_back(values[order[k]].id);
    }
    out.ids = sorted(std::move(out.ids));
    return out;
}

bool duality_check(const QcmInstance& instance, const std::string& q, const std::vector<std::string>& candidates) {
    const auto backward = best_approximation_set(instance, {q, candidates, Direction::backward});
    const auto forward = best_approximation_set(transpose(instance), {q, candidates, Direction::forward});
    return backward.best == forward.best;
}

}  // namespace qcm
