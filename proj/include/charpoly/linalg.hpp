#pragma once
#include <vector>

#include "charpoly/scaled.hpp"

namespace charpoly {

using ScaledMatrix = std::vector<std::vector<ScaledComplex>>;

// Determinant of a matrix of scaled entries.  Per-row and per-column
// log-magnitudes are factored out first, then LU with partial pivoting runs
// on plain complex doubles, so conditioning stays visible and nothing
// overflows.
ScaledComplex det_scaled(ScaledMatrix m);

// Plain determinant for small well-scaled matrices (identity checks etc).
cplx det_plain(std::vector<std::vector<cplx>> m);

// Vandermonde prod_{i<j} (x_j - x_i) in scaled form; 1 for size <= 1.
ScaledComplex vandermonde(const std::vector<cplx>& xs);

}  // namespace charpoly
