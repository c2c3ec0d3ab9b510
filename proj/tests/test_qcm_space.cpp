#include <doctest.h>

#include "qcm/error.hpp"
#include "qcm/qcm_space.hpp"
#include "support/oracles.hpp"

using namespace qcm;
using testing::grid_points;

TEST_CASE("direction metric values") {
    const auto inst = build_example3({{"1", 1}, {"2", 2}});
    CHECK(inst.distance("2", "1") == Vec{1, 0});
    CHECK(inst.distance("1", "1") == Vec{0, 0});
    CHECK(inst.distance("1", "2") == Vec{0, 1});
    CHECK(std::holds_alternative<DirectionMetric>(inst.provenance()));
}

TEST_CASE("alpha metric values") {
    const auto inst = build_example4({{"1", 1}, {"3", 3}}, 1);
    CHECK(inst.distance("3", "1") == Vec{2, 2});
    CHECK(inst.distance("1", "3") == Vec{1, 1});
    const auto half = build_example4({{"x", Rational(7, 3)}}, Rational(1, 2));
    CHECK(half.distance("x", "x") == Vec{0, 0});
    CHECK(alpha_metric(5, 2, 3) == Vec{3, 9});
    CHECK(alpha_metric(2, 5, 3) == Vec{3, 1});
}

TEST_CASE("builders reject bad input") {
    CHECK_THROWS_AS((build_example4({{"a", 1}}, 0)), InputError);
    CHECK_THROWS_AS((build_example4({{"a", 1}}, Rational(-1, 2))), InputError);
    CHECK_THROWS_AS((build_example3({{"a", 1}, {"a", 2}})), InputError);
    CHECK_THROWS_AS((build_example3({{"a", 1}, {"b", 1}})), InputError);
    CHECK_THROWS_AS((build_example3({})), InputError);
    const auto inst = build_example3({{"a", 1}});
    CHECK_THROWS_AS(inst.index_of("zz"), SemanticError);
}

TEST_CASE("explicit tables validate shape") {
    const auto space = OrderedSpace::orthant(2);
    CHECK_THROWS_AS((QcmInstance::from_table(space, {"a", "b"}, {Vec{0, 0}})), InputError);
    CHECK_THROWS_AS((QcmInstance::from_table(space, {"a"}, {Vec{0, 0, 0}})), InputError);
    CHECK_THROWS_AS((QcmInstance::from_table(space, {"a", "a"}, std::vector<Vec>(4, Vec{0, 0}))), InputError);
}

TEST_CASE("direction metric over a 21-point grid is a quasi-cone metric") {
    const auto inst = build_example3(grid_points(-5, 5, Rational(1, 2)));
    REQUIRE(inst.size() == 21);
    const auto report = verify_axioms(inst);
    CHECK(report.passed());
    CHECK(report.find("QCM3")->checks == 9261);
    CHECK(testing::oracle_is_qcm(inst));
}

TEST_CASE("alpha metric with alpha = 1/2 passes, matching the enumeration oracle") {
    const auto inst = build_example4(grid_points(-2, 3, Rational(1, 2)), Rational(1, 2));
    CHECK(testing::oracle_is_qcm(inst));
    CHECK(verify_axioms(inst).passed());
}

TEST_CASE("alpha metric passes for a spread of alphas and grids") {
    for (const auto& alpha : {Rational(1, 7), Rational(1, 2), Rational(1), Rational(5, 2), Rational(13)}) {
        const auto inst = build_example4(grid_points(-2, 2, Rational(1, 3)), alpha);
        CAPTURE(alpha.str());
        CHECK(verify_axioms(inst).passed());
    }
}

TEST_CASE("zero distance between distinct points violates QCM2") {
    const auto space = OrderedSpace::orthant(2);
    const auto inst = QcmInstance::from_table(space, {"a", "b"}, {Vec{0, 0}, Vec{0, 0}, Vec{1, 1}, Vec{0, 0}});
    const auto report = verify_axioms(inst);
    const auto* qcm2 = report.find("QCM2");
    REQUIRE_FALSE(qcm2->passed);
    CHECK(qcm2->points == std::vector<std::string>{"a", "b"});
    CHECK(report.find("QCM1")->passed);
}

TEST_CASE("negative and triangle-breaking entries are reported with their points") {
    const auto space = OrderedSpace::orthant(1);
    // d(a,c) = 5 > d(a,b) + d(b,c) = 2.
    const std::vector<Vec> table{{0}, {1}, {5}, {1}, {0}, {1}, {1}, {1}, {0}};
    const auto report = verify_axioms(QcmInstance::from_table(space, {"a", "b", "c"}, table));
    const auto* qcm3 = report.find("QCM3");
    REQUIRE_FALSE(qcm3->passed);
    CHECK(qcm3->points == std::vector<std::string>{"a", "b", "c"});
    CHECK(qcm3->values.front() == Vec{5});

    const std::vector<Vec> negative{{0}, {-1}, {1}, {0}};
    CHECK_FALSE(verify_axioms(QcmInstance::from_table(space, {"a", "b"}, negative)).find("QCM1")->passed);
}

TEST_CASE("parallel verification matches the sequential report") {
    const std::vector<Vec> table{{0}, {1}, {5}, {1}, {0}, {1}, {1}, {1}, {0}};
    const auto bad = QcmInstance::from_table(OrderedSpace::orthant(1), {"a", "b", "c"}, table);
    const auto good = build_example4(grid_points(-3, 3, Rational(1, 4)), 3);
    for (unsigned jobs : {2u, 3u, 8u}) {
        const auto a = verify_axioms(bad, jobs);
        CHECK(a.find("QCM3")->points == verify_axioms(bad).find("QCM3")->points);
        CHECK(a.total_checks() == verify_axioms(bad).total_checks());
        CHECK(verify_axioms(good, jobs).passed());
    }
}

TEST_CASE("transpose is an involution that swaps direction metric entries") {
    const auto inst = build_example3(grid_points(0, 4, 1));
    const auto t = transpose(inst);
    CHECK(std::holds_alternative<ExplicitTable>(t.provenance()));
    CHECK_FALSE(t.coordinates().has_value());
    CHECK(t.distance("3", "1") == Vec{0, 1});
    CHECK(t.distance("1", "3") == Vec{1, 0});
    CHECK(table_equal(transpose(t), inst));
    CHECK_FALSE(table_equal(t, inst));
}

TEST_CASE("transpose preserves axiom status") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = testing::random_qcm_instance(seed, 6);
        CHECK(verify_axioms(inst).passed() == verify_axioms(transpose(inst)).passed());
        CHECK(verify_axioms(inst).passed());
    }
    const std::vector<Vec> table{{0}, {1}, {5}, {1}, {0}, {1}, {1}, {1}, {0}};
    const auto bad = QcmInstance::from_table(OrderedSpace::orthant(1), {"a", "b", "c"}, table);
    CHECK_FALSE(verify_axioms(transpose(bad)).passed());
}
