#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "qcm/axiom_report.hpp"
#include "qcm/cone.hpp"
#include "qcm/rational.hpp"
#include "qcm/vec.hpp"

namespace qcm {

/// Points are identified by unique string labels; internally by position.
using PointIndex = std::size_t;

struct ExplicitTable {};
/// d(r,s) = (0,0) if r = s, (1,0) if r > s, (0,1) if r < s.
struct DirectionMetric {};
/// d(r,s) = (r-s, alpha(r-s)) if r >= s, (alpha, 1) if r < s.
struct AlphaMetric {
    Rational alpha;
};

using Provenance = std::variant<ExplicitTable, DirectionMetric, AlphaMetric>;

/// Finite quasi-cone metric instance: labeled points with a dense distance
/// table d(from, to) valued in the ordered space.
class QcmInstance {
public:
    /// `table` is row-major, table[from * n + to]. Throws InputError on
    /// duplicate or empty point lists, wrong table size or wrong entry
    /// dimension.
    static QcmInstance from_table(OrderedSpace space, std::vector<std::string> labels, std::vector<Vec> table);

    const OrderedSpace& space() const { return space_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(PointIndex i) const { return labels_.at(i); }

    /// Throws SemanticError for an unknown label.
    PointIndex index_of(std::string_view label) const;
    bool contains(std::string_view label) const;

    const Vec& distance(PointIndex from, PointIndex to) const { return table_[from * labels_.size() + to]; }
    const Vec& distance(std::string_view from, std::string_view to) const {
        return distance(index_of(from), index_of(to));
    }

    const Provenance& provenance() const { return provenance_; }
    /// Real-line coordinate of each point for the closed-form metrics.
    const std::optional<std::vector<Rational>>& coordinates() const { return coordinates_; }

    friend bool table_equal(const QcmInstance& a, const QcmInstance& b);

private:
    friend QcmInstance build_generated(const std::vector<std::pair<std::string, Rational>>&, Provenance);
    friend QcmInstance transpose(const QcmInstance&);

    QcmInstance(OrderedSpace space) : space_(std::move(space)) {}

    OrderedSpace space_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, PointIndex> index_;
    std::vector<Vec> table_;
    Provenance provenance_ = ExplicitTable{};
    std::optional<std::vector<Rational>> coordinates_;
};

Vec direction_metric(const Rational& r, const Rational& s);
/// Throws InputError unless alpha > 0.
Vec alpha_metric(const Rational& r, const Rational& s, const Rational& alpha);

/// Points are (label, coordinate); labels and coordinates must be distinct.
/// Space is Q^2 with the nonnegative orthant.
QcmInstance build_example3(const std::vector<std::pair<std::string, Rational>>& points);
QcmInstance build_example4(const std::vector<std::pair<std::string, Rational>>& points, const Rational& alpha);

/// Exhaustive QCM1 (all ordered pairs), QCM2 (all ordered pairs, both
/// directions of the iff) and QCM3 (all ordered triples). With jobs > 1 the
/// triple space is split by first index across threads; the reported
/// counterexample is the lexicographically first one regardless of jobs.
AxiomReport verify_axioms(const QcmInstance& instance, unsigned jobs = 1);

/// Instance with d'(x,y) = d(y,x); provenance becomes an explicit table.
QcmInstance transpose(const QcmInstance& instance);

bool table_equal(const QcmInstance& a, const QcmInstance& b);

}  // namespace qcm
