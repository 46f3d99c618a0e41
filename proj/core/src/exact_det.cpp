#include "nlci/exact_det.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "nlci/errors.hpp"

namespace nlci {
namespace {

using Wide = __int128;

Wide checked_mul(Wide a, Wide b) {
  Wide out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("exact_det: product overflow");
  return out;
}

Wide checked_sub(Wide a, Wide b) {
  Wide out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("exact_det: difference overflow");
  return out;
}

}  // namespace

IntMatrix IntMatrix::zero(int n) {
  if (n < 1) throw std::invalid_argument("IntMatrix: dimension must be >= 1");
  return IntMatrix{n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0)};
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m = zero(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix build_tridiag(int size) {
  if (size < 1) throw std::invalid_argument("build_tridiag: size must be >= 1");
  IntMatrix m = IntMatrix::zero(size);
  for (int i = 0; i < size; ++i) {
    m.at(i, i) = 2;
    if (i + 1 < size) {
      m.at(i, i + 1) = 1;
      m.at(i + 1, i) = 1;
    }
  }
  return m;
}

IntMatrix build_alternating(int n) {
  if (n < 2) throw std::invalid_argument("build_alternating: n must be >= 2");
  IntMatrix m = IntMatrix::zero(n);
  for (int k = 1; k <= n; ++k) {
    m.at(k - 1, 0) += (k % 2 == 0) ? 2 : -2;      // 2(-1)^k
    if (k >= 2) m.at(k - 1, k - 2) += 1;          // column k-1
    const int minus_col = (k < n) ? k : n - 1;    // column k+1, folded on the last row
    m.at(k - 1, minus_col) += -1;
  }
  return m;
}

std::int64_t exact_det(IntMatrix m) {
  const int n = m.n;
  if (n < 1) throw std::invalid_argument("exact_det: empty matrix");
  std::vector<Wide> a(m.entries.begin(), m.entries.end());
  auto at = [&a, n](int i, int j) -> Wide& { return a[static_cast<std::size_t>(i) * n + j]; };

  int sign = 1;
  Wide prev_pivot = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i) {
        if (at(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;  // zero column: singular
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    const Wide pivot = at(k, k);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        // fraction-free update: division by the previous pivot is exact
        at(i, j) = checked_sub(checked_mul(at(i, j), pivot), checked_mul(at(i, k), at(k, j))) /
                   prev_pivot;
      }
      at(i, k) = 0;
    }
    prev_pivot = pivot;
  }

  const Wide det = sign > 0 ? at(n - 1, n - 1) : -at(n - 1, n - 1);
  if (det > Wide(INT64_MAX) || det < Wide(INT64_MIN)) {
    throw OverflowError("exact_det: determinant exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(det);
}

}  // namespace nlci
