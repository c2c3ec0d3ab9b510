#include "qcm/chebyshev.hpp"

#include <algorithm>
#include <thread>

#include "qcm/error.hpp"
#include "qcm/linalg.hpp"

namespace qcm {

namespace {

struct QueryOutcome {
    std::vector<std::string> best;  // sorted
    std::optional<std::size_t> rank;
};

QueryOutcome evaluate(const QcmInstance& instance, const std::string& q, const std::vector<PointIndex>& H,
                      Direction dir, const Embedding* embedding) {
    QueryOutcome out;
    for (auto h : best_indices(instance, instance.index_of(q), H, dir)) out.best.push_back(instance.label(h));
    std::sort(out.best.begin(), out.best.end());
    if (embedding) {
        std::vector<Vec> rows;
        for (const auto& label : out.best) rows.push_back(embedding->at(label));
        out.rank = rank(rows);
    }
    return out;
}

}  // namespace

ChebyshevReport classify(const QcmInstance& instance, const QueryFamily& family, const ClassifyOptions& options) {
    if (family.queries.empty()) throw SemanticError("query family is empty");
    if (family.candidates.empty()) throw SemanticError("candidate set H is empty");
    if (options.require_pseudo && !options.embedding) {
        throw SemanticError("pseudo-Chebyshev check needs an embedding of the points into a vector space");
    }

    ChebyshevReport report;
    report.direction = family.direction;
    report.candidates = family.candidates;
    std::sort(report.candidates.begin(), report.candidates.end());
    report.candidates.erase(std::unique(report.candidates.begin(), report.candidates.end()), report.candidates.end());

    std::vector<PointIndex> H;
    for (const auto& label : report.candidates) H.push_back(instance.index_of(label));

    std::vector<std::string> queries = family.queries;
    std::sort(queries.begin(), queries.end());
    queries.erase(std::unique(queries.begin(), queries.end()), queries.end());
    for (const auto& q : queries) instance.index_of(q);

    if (options.embedding) {
        std::optional<std::size_t> dim;
        for (const auto& label : report.candidates) {
            const auto it = options.embedding->find(label);
            if (it == options.embedding->end()) throw SemanticError("embedding has no vector for '" + label + "'");
            if (dim && *dim != it->second.size()) throw SemanticError("embedding vectors differ in length");
            dim = it->second.size();
        }
    }

    std::vector<QueryOutcome> outcomes(queries.size());
    const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, queries.size());
    {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t i = w; i < queries.size(); i += workers) {
                    outcomes[i] = evaluate(instance, queries[i], H, family.direction, options.embedding);
                }
            });
        }
    }

    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto& best = outcomes[i].best;
        report.census.push_back({queries[i], best.size(), outcomes[i].rank});
        if (best.size() != 1) {
            report.chebyshev = false;
            ChebyshevViolation v{queries[i], {}};
            if (best.size() >= 2) v.members = {best[0], best[1]};
            report.chebyshev_violations.push_back(std::move(v));
        }
        if (best.empty()) {
            report.quasi = false;
            report.quasi_violations.push_back({queries[i], "best approximation set is empty"});
        }
    }
    if (options.embedding) report.pseudo = true;
    return report;
}

std::vector<TheoremForm> counterexample_to_theorem_form(const ChebyshevReport& report, const QcmInstance& instance) {
    std::vector<TheoremForm> out;
    if (report.chebyshev) return out;
    for (const auto& v : report.chebyshev_violations) {
        if (v.members.size() < 2) continue;
        out.push_back({v.q, v.members[0], v.members[1], canonical_witness(instance, v.q, report.direction)});
    }
    if (out.empty()) {
        throw SemanticError("no two-member counterexample: every Chebyshev violation is an empty best set");
    }
    return out;
}

}  // namespace qcm
