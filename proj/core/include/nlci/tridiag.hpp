#pragma once

#include <span>
#include <vector>

namespace nlci {

/// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
};

/// Solve (T - sigma I) x = b by non-pivoting LU with tiny-pivot substitution,
/// usable for shifts near (but not at) eigenvalues, as in inverse iteration.
std::vector<double> solve_shifted(const SymTridiag& t, double sigma, std::span<const double> b);

/// Solve (T - sigma I + rho v v^T) x = b via Sherman-Morrison with two
/// shifted tridiagonal solves.
std::vector<double> solve_shifted_rank_one(const SymTridiag& t, double sigma, double rho,
                                           std::span<const double> v, std::span<const double> b);

/// Thomas solve for a constant-coefficient system (d on the diagonal, e on
/// both off-diagonals), in place. Requires |d| > 2|e| (IMEX diffusion steps).
void solve_constant_tridiag(double d, double e, std::span<double> rhs);

/// Number of eigenvalues of T strictly below sigma (Sturm pivot count).
int count_below(const SymTridiag& t, double sigma);

/// Number of eigenvalues of T + rho v v^T strictly below sigma.
///
/// Works on the bordered matrix M = [[T - sigma I, v], [v^T, -1/rho]]:
/// its Schur complement with respect to the scalar block is T - sigma I
/// + rho v v^T, so by the Haynsworth inertia identity
///   neg(T - sigma + rho v v^T) = neg(M) - neg(-1/rho).
/// Symmetric elimination of M in natural order keeps the usual Sturm pivots
/// for the tridiagonal part and costs O(n) for the border column.
int count_below(const SymTridiag& t, double rho, std::span<const double> v, double sigma);

/// Gershgorin-style enclosure [lo, hi] of the spectrum of T + rho v v^T.
std::pair<double, double> spectrum_bounds(const SymTridiag& t, double rho,
                                          std::span<const double> v);

}  // namespace nlci
