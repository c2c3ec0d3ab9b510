#include "qcm/cone.hpp"

#include <algorithm>
#include <random>

#include "qcm/error.hpp"
#include "qcm/linalg.hpp"

namespace qcm {

namespace {

bool strictly_interior(std::span<const Vec> rows, const Vec& x) {
    return std::all_of(rows.begin(), rows.end(), [&](const Vec& a) { return dot(a, x).sign() > 0; });
}

Vec sum_of(std::span<const Vec> rows, std::size_t n) {
    Vec s = Vec::zero(n);
    for (const auto& a : rows) s += a;
    return s;
}

std::optional<Vec> search_interior(std::span<const Vec> rows, std::size_t n) {
    const Vec base = sum_of(rows, n);
    std::vector<Vec> candidates{base};
    for (const auto& a : rows) candidates.push_back(a);
    for (std::int64_t k : {1, 2, 4, 8}) {
        for (const auto& a : rows) candidates.push_back(base + Rational(k) * a);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::int64_t k : {1, -1}) candidates.push_back(base + Rational(k, 2) * Vec::unit(n, j));
    }
    for (const auto& c : candidates) {
        if (strictly_interior(rows, c)) return c;
    }
    return std::nullopt;
}

bool is_positive_multiple_of_unit(const Vec& a, std::size_t axis) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == axis ? a[j].sign() <= 0 : !a[j].is_zero()) return false;
    }
    return true;
}

class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    // Small rationals n/d with |n| <= 9, 1 <= d <= 4; plain modular draws
    // keep the stream identical across standard libraries.
    Rational signed_small() {
        const auto num = static_cast<std::int64_t>(engine_() % 19) - 9;
        const auto den = static_cast<std::int64_t>(engine_() % 4) + 1;
        return Rational(num, den);
    }

    Rational nonnegative_small() {
        const auto num = static_cast<std::int64_t>(engine_() % 11);
        const auto den = static_cast<std::int64_t>(engine_() % 2) + 1;
        return Rational(num, den);
    }

    Vec vector(std::size_t n) {
        std::vector<Rational> c;
        c.reserve(n);
        for (std::size_t i = 0; i < n; ++i) c.push_back(signed_small());
        return Vec(std::move(c));
    }

private:
    std::mt19937_64 engine_;
};

Vec draw_member(const PolyhedralCone& cone, SampleRng& rng) {
    const std::size_t n = cone.dimension();
    if (const auto& w = cone.interior_witness()) {
        // Shift a random vector along the interior direction until every
        // constraint holds.
        Vec v = rng.vector(n);
        Rational lambda = 0;
        for (const auto& a : cone.rows()) {
            const Rational av = dot(a, v);
            if (av.sign() < 0) lambda = std::max(lambda, -av / dot(a, *w));
        }
        return v + lambda * *w;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec v = rng.vector(n);
        if (cone.contains(v)) return v;
    }
    return Vec::zero(n);
}

std::optional<Vec> find_nonzero_member(const PolyhedralCone& cone) {
    if (cone.interior_witness()) return cone.interior_witness();
    const std::size_t n = cone.dimension();
    std::vector<Vec> candidates;
    for (const auto& a : cone.rows()) candidates.push_back(a);
    candidates.push_back(sum_of(cone.rows(), n));
    for (std::size_t j = 0; j < n; ++j) {
        candidates.push_back(Vec::unit(n, j));
        candidates.push_back(-Vec::unit(n, j));
    }
    for (const auto& v : nullspace_basis(cone.rows(), n)) candidates.push_back(v);
    for (const auto& c : candidates) {
        if (!c.is_zero() && cone.contains(c)) return c;
    }
    SampleRng rng(0x5eedULL);
    for (int attempt = 0; attempt < 256; ++attempt) {
        Vec v = rng.vector(n);
        if (!v.is_zero() && cone.contains(v)) return v;
    }
    return std::nullopt;
}

}  // namespace

PolyhedralCone PolyhedralCone::create(std::size_t dimension, std::vector<Vec> rows,
                                      std::optional<Vec> interior_witness) {
    if (dimension == 0) throw InputError("cone dimension must be positive");
    if (rows.empty()) throw InputError("cone needs at least one constraint row");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dimension) {
            throw InputError("cone row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()) +
                             ", expected " + std::to_string(dimension));
        }
        if (rows[i].is_zero()) throw InputError("cone row " + std::to_string(i) + " is the zero vector");
    }

    PolyhedralCone cone;
    cone.dimension_ = dimension;
    cone.rows_ = std::move(rows);
    cone.row_rank_ = rank(cone.rows_);

    if (interior_witness) {
        if (interior_witness->size() != dimension || !strictly_interior(cone.rows_, *interior_witness)) {
            throw InputError("supplied interior witness " + interior_witness->str() + " is not strictly interior");
        }
        cone.interior_witness_ = std::move(interior_witness);
    } else {
        cone.interior_witness_ = search_interior(cone.rows_, dimension);
    }

    const bool rows_nonnegative = std::all_of(cone.rows_.begin(), cone.rows_.end(), [](const Vec& a) {
        return std::all_of(a.begin(), a.end(), [](const Rational& r) { return r.sign() >= 0; });
    });
    bool has_every_axis = true;
    for (std::size_t j = 0; j < dimension && has_every_axis; ++j) {
        has_every_axis = std::any_of(cone.rows_.begin(), cone.rows_.end(),
                                     [&](const Vec& a) { return is_positive_multiple_of_unit(a, j); });
    }
    cone.orthant_ = rows_nonnegative && has_every_axis;
    return cone;
}

PolyhedralCone PolyhedralCone::orthant(std::size_t dimension) {
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < dimension; ++j) rows.push_back(Vec::unit(dimension, j));
    return create(dimension, std::move(rows));
}

void PolyhedralCone::require_dim(const Vec& x) const {
    if (x.size() != dimension_) {
        throw InputError("dimension mismatch: vector of length " + std::to_string(x.size()) + " against cone in Q^" +
                         std::to_string(dimension_));
    }
}

bool PolyhedralCone::contains(const Vec& x) const {
    require_dim(x);
    return std::all_of(rows_.begin(), rows_.end(), [&](const Vec& a) { return dot(a, x).sign() >= 0; });
}

bool PolyhedralCone::interior_contains(const Vec& x) const {
    require_dim(x);
    if (!is_solid()) throw InputError("interior membership requested on a cone with no known interior point");
    return strictly_interior(rows_, x);
}

std::vector<Rational> PolyhedralCone::project(const Vec& x) const {
    require_dim(x);
    std::vector<Rational> out;
    out.reserve(rows_.size());
    for (const auto& a : rows_) out.push_back(dot(a, x));
    return out;
}

std::vector<ConeSample> generate_cone_samples(const PolyhedralCone& cone, const ConeSampling& sampling) {
    SampleRng rng(sampling.seed);
    std::vector<ConeSample> out;
    out.reserve(sampling.count);
    for (std::size_t i = 0; i < sampling.count; ++i) {
        Vec x = draw_member(cone, rng);
        Vec y = draw_member(cone, rng);
        Rational a = rng.nonnegative_small();
        Rational b = rng.nonnegative_small();
        out.push_back({std::move(x), std::move(y), std::move(a), std::move(b)});
    }
    return out;
}

AxiomReport check_cone_axioms(const PolyhedralCone& cone, std::span<const ConeSample> samples) {
    AxiomReport report;

    AxiomOutcome c1;
    c1.axiom = "C1";
    c1.checks = 1;
    if (auto member = find_nonzero_member(cone)) {
        c1.values = {*member};
        c1.note = "nonzero member exhibited; closed as a finite intersection of closed halfspaces";
    } else {
        c1.passed = false;
        c1.note = "no nonzero member found; cone may be {0}";
    }
    report.axioms.push_back(std::move(c1));

    AxiomOutcome c2;
    c2.axiom = "C2";
    for (const auto& s : samples) {
        ++c2.checks;
        if (!cone.contains(s.x) || !cone.contains(s.y) || s.a.sign() < 0 || s.b.sign() < 0) {
            c2.passed = false;
            c2.values = {s.x, s.y, Vec{s.a, s.b}};
            c2.note = "sample is not a pair of members with nonnegative scalars";
            break;
        }
        Vec combo = s.a * s.x + s.b * s.y;
        if (!cone.contains(combo)) {
            c2.passed = false;
            c2.values = {s.x, s.y, Vec{s.a, s.b}, combo};
            c2.note = "a*x + b*y left the cone";
            break;
        }
    }
    report.axioms.push_back(std::move(c2));

    AxiomOutcome c3;
    c3.axiom = "C3";
    c3.checks = 1;
    const auto kernel = nullspace_basis(cone.rows(), cone.dimension());
    if (!kernel.empty()) {
        c3.passed = false;
        c3.values = {kernel.front(), -kernel.front()};
        c3.note = "row rank " + std::to_string(cone.row_rank()) + " < " + std::to_string(cone.dimension()) +
                  "; x and -x are both members";
    } else {
        c3.note = "row rank equals dimension";
    }
    report.axioms.push_back(std::move(c3));
    return report;
}

AxiomReport check_cone_axioms(const PolyhedralCone& cone, const ConeSampling& sampling) {
    const auto samples = generate_cone_samples(cone, sampling);
    return check_cone_axioms(cone, samples);
}

OrderedSpace::OrderedSpace(PolyhedralCone cone) : cone_(std::move(cone)) {
    if (!cone_.is_pointed()) {
        throw InputError("cone is not pointed (row rank " + std::to_string(cone_.row_rank()) + " < " +
                         std::to_string(cone_.dimension()) + ")");
    }
    if (!find_nonzero_member(cone_)) throw InputError("cone has no nonzero member");
}

bool cone_contains(const PolyhedralCone& cone, const Vec& x) { return cone.contains(x); }

bool interior_contains(const PolyhedralCone& cone, const Vec& x) { return cone.interior_contains(x); }

bool leq(const OrderedSpace& space, const Vec& s, const Vec& r) { return space.cone().contains(r - s); }

bool lt(const OrderedSpace& space, const Vec& s, const Vec& r) { return leq(space, s, r) && s != r; }

bool ll(const OrderedSpace& space, const Vec& s, const Vec& r) { return space.cone().interior_contains(r - s); }

}  // namespace qcm
