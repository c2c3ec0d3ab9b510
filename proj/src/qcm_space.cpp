#include "qcm/qcm_space.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "qcm/error.hpp"

namespace qcm {

namespace {

void index_labels(const std::vector<std::string>& labels, std::unordered_map<std::string, PointIndex>& index) {
    if (labels.empty()) throw InputError("instance needs at least one point");
    index.clear();
    for (PointIndex i = 0; i < labels.size(); ++i) {
        if (!index.emplace(labels[i], i).second) throw InputError("duplicate point label '" + labels[i] + "'");
    }
}

struct Failure {
    std::size_t r = 0, s = 0, t = 0;
    bool found = false;
};

// Exhaustive triangle-inequality scan over first indices [begin, end).
// Works on projected distances so each check is a componentwise compare.
struct TriangleScan {
    std::size_t checks = 0;
    Failure first;
};

TriangleScan scan_triangles(const std::vector<std::vector<Rational>>& proj, std::size_t n, std::size_t begin,
                            std::size_t end) {
    TriangleScan out;
    std::vector<Rational> sum;
    for (std::size_t r = begin; r < end; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            const auto& rs = proj[r * n + s];
            for (std::size_t t = 0; t < n; ++t) {
                ++out.checks;
                if (out.first.found) continue;
                const auto& rt = proj[r * n + t];
                const auto& st = proj[s * n + t];
                for (std::size_t k = 0; k < rt.size(); ++k) {
                    if (rt[k] > rs[k] + st[k]) {
                        out.first = {r, s, t, true};
                        break;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

QcmInstance QcmInstance::from_table(OrderedSpace space, std::vector<std::string> labels, std::vector<Vec> table) {
    QcmInstance inst(std::move(space));
    index_labels(labels, inst.index_);
    const std::size_t n = labels.size();
    if (table.size() != n * n) {
        throw InputError("distance table has " + std::to_string(table.size()) + " entries, expected " +
                         std::to_string(n * n));
    }
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (table[k].size() != inst.space_.dimension()) {
            throw InputError("distance d(" + labels[k / n] + ", " + labels[k % n] + ") has dimension " +
                             std::to_string(table[k].size()) + ", expected " +
                             std::to_string(inst.space_.dimension()));
        }
    }
    inst.labels_ = std::move(labels);
    inst.table_ = std::move(table);
    return inst;
}

PointIndex QcmInstance::index_of(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    if (it == index_.end()) throw SemanticError("unknown point label '" + std::string(label) + "'");
    return it->second;
}

bool QcmInstance::contains(std::string_view label) const { return index_.contains(std::string(label)); }

Vec direction_metric(const Rational& r, const Rational& s) {
    if (r == s) return Vec{0, 0};
    return r > s ? Vec{1, 0} : Vec{0, 1};
}

Vec alpha_metric(const Rational& r, const Rational& s, const Rational& alpha) {
    if (alpha.sign() <= 0) throw InputError("alpha must be positive, got " + alpha.str());
    if (r >= s) {
        const Rational gap = r - s;
        return Vec{gap, alpha * gap};
    }
    return Vec{alpha, 1};
}

QcmInstance build_generated(const std::vector<std::pair<std::string, Rational>>& points, Provenance provenance) {
    QcmInstance inst(OrderedSpace::orthant(2));
    for (const auto& [label, coord] : points) inst.labels_.push_back(label);
    index_labels(inst.labels_, inst.index_);

    std::vector<Rational> coords;
    for (const auto& p : points) coords.push_back(p.second);
    std::set<Rational> seen(coords.begin(), coords.end());
    if (seen.size() != coords.size()) throw InputError("generated metrics need distinct point coordinates");

    const std::size_t n = points.size();
    inst.table_.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            if (const auto* a = std::get_if<AlphaMetric>(&provenance)) {
                inst.table_.push_back(alpha_metric(coords[r], coords[s], a->alpha));
            } else {
                inst.table_.push_back(direction_metric(coords[r], coords[s]));
            }
        }
    }
    inst.provenance_ = std::move(provenance);
    inst.coordinates_ = std::move(coords);
    return inst;
}

QcmInstance build_example3(const std::vector<std::pair<std::string, Rational>>& points) {
    return build_generated(points, DirectionMetric{});
}

QcmInstance build_example4(const std::vector<std::pair<std::string, Rational>>& points, const Rational& alpha) {
    if (alpha.sign() <= 0) throw InputError("alpha must be positive, got " + alpha.str());
    return build_generated(points, AlphaMetric{alpha});
}

AxiomReport verify_axioms(const QcmInstance& instance, unsigned jobs) {
    const std::size_t n = instance.size();
    const auto& cone = instance.space().cone();

    std::vector<std::vector<Rational>> proj;
    proj.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) proj.push_back(cone.project(instance.distance(r, s)));
    }

    AxiomReport report;

    AxiomOutcome qcm1;
    qcm1.axiom = "QCM1";
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            ++qcm1.checks;
            if (!qcm1.passed) continue;
            const auto& p = proj[r * n + s];
            if (std::any_of(p.begin(), p.end(), [](const Rational& x) { return x.sign() < 0; })) {
                qcm1.passed = false;
                qcm1.points = {instance.label(r), instance.label(s)};
                qcm1.values = {instance.distance(r, s)};
                qcm1.note = "d(r,s) is not in the cone";
            }
        }
    }
    report.axioms.push_back(std::move(qcm1));

    AxiomOutcome qcm2;
    qcm2.axiom = "QCM2";
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            ++qcm2.checks;
            if (!qcm2.passed) continue;
            const bool zero = instance.distance(r, s).is_zero();
            if (zero != (r == s)) {
                qcm2.passed = false;
                qcm2.points = {instance.label(r), instance.label(s)};
                qcm2.values = {instance.distance(r, s)};
                qcm2.note = r == s ? "d(r,r) is not zero" : "d(r,s) is zero for distinct points";
            }
        }
    }
    report.axioms.push_back(std::move(qcm2));

    AxiomOutcome qcm3;
    qcm3.axiom = "QCM3";
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    std::vector<TriangleScan> parts(workers);
    if (workers == 1) {
        parts[0] = scan_triangles(proj, n, 0, n);
    } else {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end] { parts[w] = scan_triangles(proj, n, begin, end); });
        }
    }
    for (const auto& part : parts) {
        qcm3.checks += part.checks;
        if (qcm3.passed && part.first.found) {
            const auto [r, s, t, found] = part.first;
            qcm3.passed = false;
            qcm3.points = {instance.label(r), instance.label(s), instance.label(t)};
            qcm3.values = {instance.distance(r, t), instance.distance(r, s), instance.distance(s, t)};
            qcm3.note = "d(r,t) is not <= d(r,s) + d(s,t)";
        }
    }
    report.axioms.push_back(std::move(qcm3));
    return report;
}

QcmInstance transpose(const QcmInstance& instance) {
    QcmInstance out(instance.space_);
    out.labels_ = instance.labels_;
    out.index_ = instance.index_;
    const std::size_t n = instance.size();
    out.table_.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) out.table_.push_back(instance.distance(y, x));
    }
    return out;
}

bool table_equal(const QcmInstance& a, const QcmInstance& b) {
    return a.space_.dimension() == b.space_.dimension() && a.labels_ == b.labels_ && a.table_ == b.table_;
}

}  // namespace qcm
