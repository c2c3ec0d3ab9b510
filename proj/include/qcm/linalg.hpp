#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcm/vec.hpp"

namespace qcm {

/// Rank of the matrix whose rows are `rows`, by exact Gaussian elimination.
/// All rows must share one length.
std::size_t rank(std::span<const Vec> rows);

/// Basis of {x in Q^n : a.x = 0 for every row a}. Empty when the rows have
/// rank n.
std::vector<Vec> nullspace_basis(std::span<const Vec> rows, std::size_t n);

}  // namespace qcm
