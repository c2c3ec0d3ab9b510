#include "qcm/witness.hpp"

#include <algorithm>
#include <random>

#include "qcm/error.hpp"

namespace qcm {

namespace {

std::vector<PointIndex> resolve_sorted(const QcmInstance& instance, std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<PointIndex> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(instance.index_of(l));
    return out;
}

WitnessVerdict failure(WitnessCondition c, std::string at, Vec value) {
    WitnessVerdict v;
    v.holds = false;
    v.failed_condition = c;
    v.counterexample = std::make_pair(std::move(at), std::move(value));
    return v;
}

// H must already be label-sorted.
WitnessVerdict check_element(const QcmInstance& instance, const WitnessTable& f, PointIndex q,
                             const std::vector<PointIndex>& H, PointIndex h) {
    const auto& cone = instance.space().cone();
    const Direction dir = f.direction();
    if (f(h) != directed_distance(instance, q, h, dir)) {
        return failure(WitnessCondition::anchor_equality, instance.label(h), f(h));
    }
    for (auto other : H) {
        Vec shift = f(other) - f(h);
        if (!cone.contains(shift)) return failure(WitnessCondition::shift_not_in_cone, instance.label(other), shift);
    }
    for (auto other : H) {
        Vec gap = directed_distance(instance, q, other, dir) - f(other);
        if (!cone.contains(gap)) return failure(WitnessCondition::gap_not_in_cone, instance.label(other), gap);
    }
    return {};
}

}  // namespace

WitnessTable::WitnessTable(const QcmInstance& instance, std::string q, Direction direction, std::vector<Vec> values)
    : q_(std::move(q)), direction_(direction), values_(std::move(values)) {
    instance.index_of(q_);
    if (values_.size() != instance.size()) {
        throw InputError("witness has " + std::to_string(values_.size()) + " values for " +
                         std::to_string(instance.size()) + " points");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].size() != instance.space().dimension()) {
            throw InputError("witness value at '" + instance.label(i) + "' has the wrong dimension");
        }
    }
}

std::string_view to_string(WitnessCondition c) {
    switch (c) {
        case WitnessCondition::anchor_equality: return "anchor-equality";
        case WitnessCondition::shift_not_in_cone: return "f-shift-not-in-cone";
        case WitnessCondition::gap_not_in_cone: return "d-gap-not-in-cone";
    }
    return "unknown";
}

WitnessTable canonical_witness(const QcmInstance& instance, const std::string& q, Direction direction) {
    const PointIndex qi = instance.index_of(q);
    std::vector<Vec> values;
    values.reserve(instance.size());
    for (PointIndex x = 0; x < instance.size(); ++x) values.push_back(directed_distance(instance, qi, x, direction));
    return WitnessTable(instance, q, direction, std::move(values));
}

WitnessVerdict verify_witness_for_element(const QcmInstance& instance, const WitnessTable& witness,
                                          const std::vector<std::string>& H, const std::string& h) {
    const PointIndex q = instance.index_of(witness.q());
    const auto hs = resolve_sorted(instance, H);
    const PointIndex hi = instance.index_of(h);
    if (std::find(hs.begin(), hs.end(), hi) == hs.end()) {
        throw SemanticError("point '" + h + "' is not in the candidate set");
    }
    return check_element(instance, witness, q, hs, hi);
}

WitnessVerdict verify_witness_for_set(const QcmInstance& instance, const WitnessTable& witness,
                                      const std::vector<std::string>& H, const std::vector<std::string>& M) {
    const PointIndex q = instance.index_of(witness.q());
    const auto hs = resolve_sorted(instance, H);
    const auto ms = resolve_sorted(instance, M);
    for (auto m : ms) {
        if (std::find(hs.begin(), hs.end(), m) == hs.end()) {
            throw SemanticError("M is not a subset of H: '" + instance.label(m) + "' is not a candidate");
        }
    }
    for (auto m : ms) {
        WitnessVerdict v = check_element(instance, witness, q, hs, m);
        if (!v.holds) {
            v.member = instance.label(m);
            return v;
        }
    }
    // Mutual shifts in a pointed cone force one common anchor; a mismatch
    // here would mean the space is not pointed.
    for (auto m : ms) {
        if (witness(m) != witness(ms.front())) {
            WitnessVerdict v = failure(WitnessCondition::anchor_equality, instance.label(m), witness(m));
            v.member = instance.label(m);
            return v;
        }
    }
    return {};
}

std::optional<WitnessCertificate> search_counterexample_witness(const QcmInstance& instance, const std::string& q,
                                                                const std::vector<std::string>& H,
                                                                Direction direction, const WitnessPool& pool) {
    const PointIndex qi = instance.index_of(q);
    const auto hs = resolve_sorted(instance, H);
    if (hs.empty()) throw SemanticError("candidate set H is empty");
    const auto& cone = instance.space().cone();

    auto try_witness = [&](WitnessTable f) -> std::optional<WitnessCertificate> {
        std::vector<std::string> members;
        for (auto h : hs) {
            if (check_element(instance, f, qi, hs, h).holds) members.push_back(instance.label(h));
        }
        if (members.size() < 2) return std::nullopt;
        if (!verify_witness_for_set(instance, f, H, members).holds) return std::nullopt;
        return WitnessCertificate{std::move(f), std::move(members)};
    };

    const WitnessTable canonical = canonical_witness(instance, q, direction);
    if (auto found = try_witness(canonical)) return found;

    std::vector<Rational> factors{Rational(1, 2), Rational(3, 4)};
    std::mt19937_64 rng(pool.seed);
    for (std::size_t i = 0; i < pool.random_factors; ++i) {
        const auto den = static_cast<std::int64_t>(rng() % 15) + 2;
        const auto num = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den - 1)) + 1;
        factors.emplace_back(num, den);
    }

    std::vector<Vec> anchors;
    for (auto h : hs) {
        const Vec& d = directed_distance(instance, qi, h, direction);
        if (std::find(anchors.begin(), anchors.end(), d) == anchors.end()) anchors.push_back(d);
    }
    for (const auto& c : anchors) {
        for (const auto& t : factors) {
            std::vector<Vec> values = canonical.values();
            for (auto h : hs) {
                const Vec excess = canonical(h) - c;
                if (cone.contains(excess)) values[h] = c + t * excess;
            }
            if (auto found = try_witness(WitnessTable(instance, q, direction, std::move(values)))) return found;
        }
    }
    return std::nullopt;
}

}  // namespace qcm
