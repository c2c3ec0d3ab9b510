#include "qcm/linalg.hpp"

#include <utility>

#include "qcm/error.hpp"

namespace qcm {

namespace {

struct Echelon {
    std::vector<std::vector<mpq_class>> rows;  // reduced row echelon form
    std::vector<std::size_t> pivots;           // pivot column per nonzero row
};

Echelon reduce(std::span<const Vec> input, std::size_t n) {
    Echelon e;
    for (const auto& v : input) {
        if (v.size() != n) throw InputError("matrix rows of unequal length");
        std::vector<mpq_class> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = v[j].raw();
        e.rows.push_back(std::move(row));
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < e.rows.size(); ++col) {
        std::size_t pivot = r;
        while (pivot < e.rows.size() && e.rows[pivot][col] == 0) ++pivot;
        if (pivot == e.rows.size()) continue;
        std::swap(e.rows[r], e.rows[pivot]);
        const mpq_class lead = e.rows[r][col];
        for (auto& x : e.rows[r]) x /= lead;
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            if (i == r || e.rows[i][col] == 0) continue;
            const mpq_class factor = e.rows[i][col];
            for (std::size_t j = col; j < n; ++j) e.rows[i][j] -= factor * e.rows[r][j];
        }
        e.pivots.push_back(col);
        ++r;
    }
    e.rows.resize(r);
    return e;
}

}  // namespace

std::size_t rank(std::span<const Vec> rows) {
    if (rows.empty()) return 0;
    return reduce(rows, rows.front().size()).pivots.size();
}

std::vector<Vec> nullspace_basis(std::span<const Vec> rows, std::size_t n) {
    const Echelon e = reduce(rows, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;

    std::vector<Vec> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v = Vec::zero(n);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = Rational(mpq_class(-e.rows[i][free]));
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qcm
