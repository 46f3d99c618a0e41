#pragma once

#include <cstdint>
#include <vector>

namespace nlci {

/// Dense square matrix of exact 64-bit integers.
struct IntMatrix {
  int n = 0;
  std::vector<std::int64_t> entries;  // row-major

  static IntMatrix zero(int n);
  static IntMatrix identity(int n);

  std::int64_t at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
};

/// Tridiagonal matrix with 2 on the diagonal and 1 on both off-diagonals;
/// det = size + 1. Throws for size < 1.
IntMatrix build_tridiag(int size);

/// The n x n alternating-first-column matrix: row k (1-based) carries
/// 2(-1)^k in column 1, +1 in column k-1 and -1 in column k+1 (the trailing
/// -1 folds onto column n in the last row, and the +1 of row 2 folds onto
/// the first column, giving 3). Base case [[-2,-1],[3,-1]]; det = (2n+1)(-1)^n.
/// Throws for n < 2.
IntMatrix build_alternating(int n);

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
/// All intermediate products are overflow-checked; OverflowError on overflow.
std::int64_t exact_det(IntMatrix m);

}  // namespace nlci
