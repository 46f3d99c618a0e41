#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlci/equilibria.hpp"
#include "nlci/grid.hpp"
#include "nlci/model.hpp"
#include "nlci/tridiag.hpp"

namespace nlci {

/// Data (p, c, eps) of the nonlocal operator
///   L u = u'' + p(x) u + eps c(x) int_0^L c(s) u(s) ds.
struct OperatorSpec {
  GridFunction potential;         // p
  GridFunction coupling_profile;  // c(x)
  double epsilon = 0.0;
};

/// Linearization at an equilibrium: p = lambda f'(phi)/a(c), c(x) = f(phi),
/// eps = -2 lambda^2 a'(c) / a(c)^3 (nonpositive for non-decreasing a).
OperatorSpec linearization(const Equilibrium& eq, const ModelConfig& cfg);

/// Discrete form A = T + diag(p) + (eps h) c c^T with T the second-difference
/// matrix. Uniform trapezoid weights make the rank-one block exactly
/// symmetric, so A is symmetric entrywise by construction.
class AssembledOperator {
 public:
  AssembledOperator(SymTridiag tridiag, double rho, std::vector<double> profile, Grid grid);

  int size() const { return tridiag_.size(); }
  const Grid& grid() const { return grid_; }
  const SymTridiag& tridiagonal() const { return tridiag_; }
  double rank_one_weight() const { return rho_; }  // eps * h
  std::span<const double> rank_one_profile() const { return profile_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  double entry(int i, int j) const;
  std::vector<double> dense() const;  // row-major; intended for small sizes

 private:
  SymTridiag tridiag_;
  double rho_;
  std::vector<double> profile_;
  Grid grid_;
};

AssembledOperator assemble(const OperatorSpec& spec, const Grid& grid);

struct Spectrum {
  std::vector<double> eigenvalues;          // decreasing order
  std::vector<GridFunction> eigenvectors;   // L2-normalized, sign-fixed
  std::vector<double> residuals;            // ||A v - mu v||_L2 per pair
  std::vector<bool> simple;                 // gap-based simplicity flag
};

/// Top `count` eigenpairs (all when count < 0). Eigenvalues by bisection on
/// the rank-one-aware Sturm count, eigenvectors by inverse iteration with
/// Sherman-Morrison solves; every kept pair meets the residual contract
/// 1e-8 (1+|mu|) or NonConvergenceError is thrown.
Spectrum eigenpairs(const AssembledOperator& op, int count = -1);

/// Eigenvalues without vectors (scans, certificates).
std::vector<double> eigenvalues_only(const AssembledOperator& op, int count);

enum class StabilityKind { Stable, Unstable, Margin };

struct StabilityReport {
  std::string id;
  StabilityKind kind = StabilityKind::Margin;
  int morse_index = 0;      // #{mu_i > tol}
  double spectral_gap = 0;  // min |mu_i|
  double leading = 0;       // mu_1
};

std::string to_string(StabilityKind k);

/// Classify an equilibrium from the eigenvalue signs of its linearization:
/// Stable when mu_1 < -tol, Margin when some |mu_i| <= tol, else Unstable
/// with the Morse index.
StabilityReport classify(const Equilibrium& eq, const ModelConfig& cfg,
                         double hyperbolicity_tol = 1e-4);

struct EpsilonScan {
  std::vector<double> epsilons;
  std::vector<std::vector<double>> rows;           // top-K eigenvalues per eps
  std::vector<std::vector<bool>> near_unperturbed; // close to some gamma_k(0)
  double max_monotonicity_violation = 0.0;         // positive = violated
};

/// Sorted top-K eigenvalues of the operator for each coupling value; each
/// sorted eigenvalue must be weakly increasing in eps.
EpsilonScan epsilon_scan(const OperatorSpec& spec, std::span<const double> eps_list, int track);

/// int f(phi) u_k for the k-th (1-based) eigenvector of the unperturbed
/// operator; vanishes for the parity combinations protected by symmetry.
double orthogonality_check(const Equilibrium& eq, const ModelConfig& cfg, const Spectrum& base,
                           int k);

/// Same, scaled by ||f(phi)||_L2 ||u_k||_L2.
double orthogonality_scaled(const Equilibrium& eq, const ModelConfig& cfg, const Spectrum& base,
                            int k);

/// Solution of w'' + (lambda f'(phi)/a(c)) w = 0, w(0)=0, w'(0)=1, with the
/// Wronskian diagnostics against v = phi'.
struct VariationalDiagnostics {
  std::vector<double> w;              // nodal values
  std::vector<double> w_prime;        // nodal derivative values
  double wronskian_reference = 0.0;   // phi'(0)
  double max_relative_deviation = 0;  // of the Wronskian along the interval
  double min_point = 0.0;             // first interior minimum of phi (even mode)
  double w_at_min_point = 0.0;
  bool has_zero_before_half = false;  // first zero of w before pi/2 (odd mode)
  double first_zero = 0.0;
};

VariationalDiagnostics variational_solution(const Equilibrium& eq, const ModelConfig& cfg);

/// Operator restricted to [0, pi/divisor] (divisor a power of two dividing
/// the mode): p and c restricted, epsilon multiplied by the divisor.
OperatorSpec restricted_linearization(const Equilibrium& eq, int divisor, const ModelConfig& cfg);

struct GapCertificate {
  std::vector<int> grid_sizes;
  std::vector<double> gaps;  // min |mu| per grid
  bool converged = false;    // successive change < 10% and positive limit
  double limit = 0.0;
};

/// Spectral gap under grid refinement; the equilibrium is re-solved on each
/// grid. Passes when the gaps settle to a limit above 1e-3.
GapCertificate hyperbolicity_certificate(const Equilibrium& eq, const ModelConfig& cfg,
                                         std::span<const int> grid_sizes);

}  // namespace nlci
