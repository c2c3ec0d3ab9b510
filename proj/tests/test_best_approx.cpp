#include <doctest.h>

#include <random>

#include "qcm/best_approx.hpp"
#include "qcm/error.hpp"
#include "support/oracles.hpp"

using namespace qcm;
using testing::grid_labels;
using testing::grid_points;

namespace {

QcmInstance example4_with_query(const Rational& beta, const Rational& alpha = 1) {
    auto pts = grid_points(0, 2, Rational(1, 4));
    bool present = false;
    for (const auto& p : pts) present = present || p.second == beta;
    if (!present) pts.emplace_back(beta.str(), beta);
    return build_example4(pts, alpha);
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("alpha metric regimes over H = [0,2] step 1/4") {
    const auto H = grid_labels(0, 2, Rational(1, 4));

    const auto far = best_approximation_set(example4_with_query(5), {"5", H, Direction::forward});
    CHECK(far.best == std::vector<std::string>{"2"});
    CHECK(far.common_distance == Vec{3, 3});

    const auto inside = best_approximation_set(example4_with_query(Rational(3, 2)), {"3/2", H, Direction::forward});
    CHECK(inside.best == std::vector<std::string>{"3/2"});
    CHECK(inside.common_distance == Vec{0, 0});

    const auto below = best_approximation_set(example4_with_query(-3), {"-3", H, Direction::forward});
    CHECK(below.best == sorted(H));
    CHECK(below.common_distance == Vec{1, 1});
    CHECK(below.stats.equal == below.stats.pairs);
}

TEST_CASE("direction metric: a target above every negative candidate is equidistant to all") {
    auto pts = grid_points(-5, Rational(-1, 4), Rational(1, 4));
    pts.emplace_back("4", 4);
    const auto inst = build_example3(pts);
    const auto H = grid_labels(-5, Rational(-1, 4), Rational(1, 4));
    const auto r = best_approximation_set(inst, {"4", H, Direction::forward});
    CHECK(r.best == sorted(H));
    CHECK(r.common_distance == Vec{1, 0});
}

TEST_CASE("incomparable distances leave the best set empty") {
    const auto space = OrderedSpace::orthant(2);
    // d(q,h1) = (1,0), d(q,h2) = (0,1).
    const std::vector<std::string> labels{"q", "h1", "h2"};
    std::vector<Vec> table(9, Vec{1, 1});
    for (int i = 0; i < 3; ++i) table[i * 3 + i] = Vec{0, 0};
    table[0 * 3 + 1] = Vec{1, 0};
    table[0 * 3 + 2] = Vec{0, 1};
    const auto inst = QcmInstance::from_table(space, labels, table);
    const auto r = best_approximation_set(inst, {"q", {"h1", "h2"}, Direction::forward});
    CHECK(r.best.empty());
    CHECK_FALSE(r.common_distance.has_value());
    CHECK(r.minimal_front == std::vector<std::string>{"h1", "h2"});
    CHECK(r.stats.incomparable == 1);
}

TEST_CASE("a target inside H is its own best approximation") {
    const auto inst = testing::random_qcm_instance(11, 6);
    const auto r = best_approximation_set(inst, {"p2", {"p0", "p2", "p4"}, Direction::forward});
    CHECK(r.best == std::vector<std::string>{"p2"});
    CHECK(r.common_distance == Vec::zero(3));
}

TEST_CASE("query validation") {
    const auto inst = testing::random_qcm_instance(1, 4);
    CHECK_THROWS_AS((best_approximation_set(inst, {"nope", {"p0"}, Direction::forward})), SemanticError);
    CHECK_THROWS_AS((best_approximation_set(inst, {"p0", {"p1", "nope"}, Direction::forward})), SemanticError);
    CHECK_THROWS_AS((best_approximation_set(inst, {"p0", {}, Direction::forward})), SemanticError);
    CHECK(parse_direction("backward") == Direction::backward);
    CHECK_THROWS_AS(parse_direction("sideways"), InputError);
}

TEST_CASE("best sets match the definition oracle and keep their invariants") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto inst = testing::random_qcm_instance(seed, 2 + seed % 7);
        for (int trial = 0; trial < 4; ++trial) {
            const auto H = testing::random_subset(rng, inst.labels(), 6);
            const auto& q = inst.labels()[rng() % inst.size()];
            for (auto dir : {Direction::forward, Direction::backward}) {
                const auto r = best_approximation_set(inst, {q, H, dir});
                CHECK(r.best == testing::oracle_best(inst, q, H, dir));
                CHECK(std::includes(r.minimal_front.begin(), r.minimal_front.end(), r.best.begin(), r.best.end()));
                CHECK(std::includes(H.begin(), H.end(), r.minimal_front.begin(), r.minimal_front.end()));
                if (!r.best.empty()) {
                    // A least element exists, so the whole front sits at it.
                    for (const auto& h : r.minimal_front) {
                        const Vec d = dir == Direction::forward ? inst.distance(q, h) : inst.distance(h, q);
                        CHECK(d == *r.common_distance);
                    }
                }
                CHECK(r.stats.pairs == H.size() * (H.size() - 1) / 2);
                CHECK(r.stats.equal + r.stats.comparable + r.stats.incomparable == r.stats.pairs);
            }
        }
    }
}

TEST_CASE("monotone restriction of the candidate set") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const auto inst = testing::random_qcm_instance(seed, 7);
        const auto H = testing::random_subset(rng, inst.labels(), 6);
        const auto& q = inst.labels()[rng() % inst.size()];
        const auto full = best_approximation_set(inst, {q, H, Direction::forward}).best;
        const auto sub = testing::random_subset(rng, H, H.size());
        std::vector<std::string> kept;
        std::set_intersection(full.begin(), full.end(), sub.begin(), sub.end(), std::back_inserter(kept));
        if (kept.empty()) continue;
        const auto restricted = best_approximation_set(inst, {q, sub, Direction::forward}).best;
        CHECK(std::includes(restricted.begin(), restricted.end(), kept.begin(), kept.end()));
    }
}

TEST_CASE("scaling the metric by a positive rational leaves results unchanged") {
    std::mt19937_64 rng(8);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = testing::random_qcm_instance(seed, 6);
        const Rational c(static_cast<std::int64_t>(rng() % 9) + 1, static_cast<std::int64_t>(rng() % 4) + 1);
        std::vector<Vec> scaled;
        for (std::size_t r = 0; r < inst.size(); ++r) {
            for (std::size_t s = 0; s < inst.size(); ++s) scaled.push_back(c * inst.distance(r, s));
        }
        const auto other = QcmInstance::from_table(inst.space(), inst.labels(), scaled);
        const auto H = testing::random_subset(rng, inst.labels(), 6);
        const auto& q = inst.labels()[rng() % inst.size()];
        const auto a = best_approximation_set(inst, {q, H, Direction::forward});
        const auto b = best_approximation_set(other, {q, H, Direction::forward});
        CHECK(a.best == b.best);
        CHECK(a.minimal_front == b.minimal_front);
    }
}

TEST_CASE("minimal fronts: small cases") {
    const auto space = OrderedSpace::orthant(2);
    const std::vector<LabeledValue> values{{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}};
    CHECK(minimal_front_naive(values, space) == std::vector<std::string>{"a", "b"});
    CHECK(minimal_front_dnc(values, space).ids == std::vector<std::string>{"a", "b"});
    CHECK_FALSE(minimal_front_dnc(values, space).fell_back_to_naive);

    const std::vector<LabeledValue> single{{"x", {3, 4}}};
    CHECK(minimal_front_naive(single, space) == std::vector<std::string>{"x"});
    CHECK(minimal_front_dnc(single, space).ids == std::vector<std::string>{"x"});

    const std::vector<LabeledValue> ties{{"a", {1, 1}}, {"b", {1, 1}}, {"c", {2, 0}}, {"d", {2, 1}}};
    CHECK(minimal_front_dnc(ties, space).ids == std::vector<std::string>{"a", "b", "c"});
    CHECK(minimal_front_naive(ties, space) == std::vector<std::string>{"a", "b", "c"});
    CHECK(minimal_front_dnc(std::vector<LabeledValue>{}, space).ids.empty());
}

TEST_CASE("divide and conquer agrees with the naive scan and the oracle") {
    for (std::size_t dim : {1u, 2u, 3u, 4u}) {
        const auto space = OrderedSpace::orthant(dim);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const std::size_t count = 1 + seed * 7 % 200;
            const auto values = testing::random_values(seed * 31 + dim, count, dim, seed % 2 ? 5 : 50);
            const auto naive = minimal_front_naive(values, space);
            CAPTURE(dim);
            CAPTURE(seed);
            CHECK(minimal_front_dnc(values, space).ids == naive);
            CHECK(naive == testing::oracle_minimal(values));
        }
    }
}

TEST_CASE("non-orthant cones fall back to the naive scan") {
    const OrderedSpace wedge(PolyhedralCone::create(2, {Vec{1, -1}, Vec{0, 1}}));
    const auto values = testing::random_values(3, 60, 2, 10);
    const auto r = minimal_front_dnc(values, wedge);
    CHECK(r.fell_back_to_naive);
    CHECK(r.ids == minimal_front_naive(values, wedge));
}

TEST_CASE("forward and backward results mirror through transpose") {
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto inst = testing::random_qcm_instance(seed, 2 + seed % 7);
        const auto H = testing::random_subset(rng, inst.labels(), 6);
        for (const auto& q : inst.labels()) CHECK(duality_check(inst, q, H));
    }
    const auto H = grid_labels(0, 2, Rational(1, 4));
    for (const auto& beta : {Rational(-3), Rational(3, 2), Rational(5)}) {
        CHECK(duality_check(example4_with_query(beta), beta.str(), H));
    }
}

TEST_CASE("a symmetric table has equal forward and backward sets") {
    const auto inst = testing::random_qcm_instance(4, 6);
    std::vector<Vec> sym;
    for (std::size_t r = 0; r < inst.size(); ++r) {
        for (std::size_t s = 0; s < inst.size(); ++s) sym.push_back(inst.distance(r, s) + inst.distance(s, r));
    }
    const auto s = QcmInstance::from_table(inst.space(), inst.labels(), sym);
    for (const auto& q : s.labels()) {
        CHECK(best_approximation_set(s, {q, s.labels(), Direction::forward}).best ==
              best_approximation_set(s, {q, s.labels(), Direction::backward}).best);
    }
}
