#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcm/axiom_report.hpp"
#include "qcm/rational.hpp"
#include "qcm/vec.hpp"

namespace qcm {

/// Polyhedral cone {x in Q^n : a.x >= 0 for every row a}.
///
/// Closedness holds by construction (finite intersection of closed
/// halfspaces). Pointedness and solidity are properties of the rows and are
/// computed once at construction. A cone is solid when some x satisfies
/// a.x > 0 for every row; construction searches for such an x among
/// nonnegative combinations of the rows, or accepts one from the caller.
class PolyhedralCone {
public:
    /// Throws InputError for an empty row list, a zero row, a row of the
    /// wrong length, or an interior witness that is not strictly interior.
    static PolyhedralCone create(std::size_t dimension, std::vector<Vec> rows,
                                 std::optional<Vec> interior_witness = std::nullopt);

    /// Nonnegative orthant of Q^n (identity rows).
    static PolyhedralCone orthant(std::size_t dimension);

    std::size_t dimension() const { return dimension_; }
    std::span<const Vec> rows() const { return rows_; }

    bool contains(const Vec& x) const;

    /// Requires a solid cone; throws InputError otherwise.
    bool interior_contains(const Vec& x) const;

    bool is_pointed() const { return row_rank_ == dimension_; }
    std::size_t row_rank() const { return row_rank_; }
    bool is_solid() const { return interior_witness_.has_value(); }
    const std::optional<Vec>& interior_witness() const { return interior_witness_; }

    /// True when the cone is, as a set, the nonnegative orthant: every row
    /// is nonnegative and every unit vector appears as a positive multiple of
    /// some row.
    bool is_nonnegative_orthant() const { return orthant_; }

    /// Row images (a_1.x, ..., a_m.x). Comparing projections componentwise
    /// decides the cone order: s <= r iff project(s) <= project(r).
    std::vector<Rational> project(const Vec& x) const;

private:
    PolyhedralCone() = default;
    void require_dim(const Vec& x) const;

    std::size_t dimension_ = 0;
    std::vector<Vec> rows_;
    std::size_t row_rank_ = 0;
    std::optional<Vec> interior_witness_;
    bool orthant_ = false;
};

/// One sampled instance of axiom C2: a*x + b*y must lie in the cone.
struct ConeSample {
    Vec x;
    Vec y;
    Rational a;
    Rational b;
};

struct ConeSampling {
    std::uint64_t seed = 0;
    std::size_t count = 100;
};

/// Generates `count` C2 samples whose x and y are cone members.
std::vector<ConeSample> generate_cone_samples(const PolyhedralCone& cone, const ConeSampling& sampling);

/// Checks C1 (nontriviality: a nonzero member is exhibited), C2 over the
/// given samples and C3 exactly (row rank n). Never throws on failure; the
/// report carries counterexamples.
AxiomReport check_cone_axioms(const PolyhedralCone& cone, std::span<const ConeSample> samples);
AxiomReport check_cone_axioms(const PolyhedralCone& cone, const ConeSampling& sampling = {});

/// The pair (Q^n, P) with the order s <= r iff r - s in P. Construction
/// rejects cones that fail C1 or C3.
class OrderedSpace {
public:
    explicit OrderedSpace(PolyhedralCone cone);

    static OrderedSpace orthant(std::size_t dimension) { return OrderedSpace(PolyhedralCone::orthant(dimension)); }

    std::size_t dimension() const { return cone_.dimension(); }
    const PolyhedralCone& cone() const { return cone_; }

private:
    PolyhedralCone cone_;
};

bool cone_contains(const PolyhedralCone& cone, const Vec& x);
bool interior_contains(const PolyhedralCone& cone, const Vec& x);

/// s <= r
bool leq(const OrderedSpace& space, const Vec& s, const Vec& r);
/// s <= r and s != r
bool lt(const OrderedSpace& space, const Vec& s, const Vec& r);
/// r - s in int(P)
bool ll(const OrderedSpace& space, const Vec& s, const Vec& r);

}  // namespace qcm
