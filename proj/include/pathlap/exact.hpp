#pragma once

#include <utility>
#include <vector>

#include "pathlap/base.hpp"

namespace pathlap {

// A sparse column: (row index, value) pairs sorted by row, values nonzero.
using SparseCol = std::vector<std::pair<int, Rational>>;

struct SparseKernelResult {
  // Kernel basis of the matrix whose columns were supplied, one vector per
  // free column, in increasing free-column order. Each vector is sparse over
  // the column indices of the input, scaled to primitive integers with a
  // positive leading (lowest-index) entry. A free column's own entry is its
  // only nonzero among all free columns, so the basis is the reduced
  // column-echelon kernel basis and does not depend on elimination choices.
  std::vector<int> free_columns;
  std::vector<SparseCol> kernel;
};

// Exact kernel of a sparse rational matrix given column-wise. Left-looking
// column elimination over Q; a full-column-rank certificate is first sought
// modulo a large prime, which settles the (frequent) trivial-kernel case
// without any rational arithmetic.
SparseKernelResult sparse_kernel(const std::vector<SparseCol>& cols);

// Rank by rational row elimination. Takes a copy on purpose.
int rank_exact(RatMatrix m);

// Solve a * x = rhs for square nonsingular a. Throws std::invalid_argument if
// a is singular or shapes disagree.
RatMatrix solve_exact(RatMatrix a, RatMatrix rhs);

// Matrix product that skips zero entries of a; worthwhile because rational
// multiplications by zero are not free.
RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b);

bool is_zero_matrix(const RatMatrix& m);

}  // namespace pathlap
