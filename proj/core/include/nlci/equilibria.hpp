#pragma once

#include <vector>

#include "nlci/grid.hpp"
#include "nlci/model.hpp"

namespace nlci {

/// Outcome of one shooting integration of phi'' = -mu f(phi), phi(0)=0,
/// phi'(0)=s over [0, pi].
struct ShotResult {
  GridFunction profile;  // IVP solution resampled at the grid nodes
  double end_value;      // phi(pi) as integrated
  int zero_count;        // zeros in [0, pi]; x=0 always, x=pi when |end|<=1e-9|s|
  double slope;          // s
  double max_abs;        // amplitude over [0, pi]
};

/// Classical RK4 with fixed step h/4, resampled to the grid. Throws
/// DivergenceError if |phi| exceeds 10 u* mid-integration.
ShotResult shoot(const NonlinearitySpec& f, double mu, double s, const Grid& grid);

/// Positive-slope profile with exactly mode+1 zeros and phi(pi) = 0, found by
/// bisection on the initial slope (the first zero of the IVP solution is an
/// increasing function of s, so the target "first zero at pi/mode" brackets).
/// Throws NoSuchModeError when mu <= mode^2, NonConvergenceError after 200
/// bisection steps.
GridFunction solve_mode(const NonlinearitySpec& f, double mu, int mode, const Grid& grid);

/// Solution of a(||phi'||^2) phi'' + lambda f(phi) = 0 with Dirichlet values,
/// as a discrete nodal equation.
struct Equilibrium {
  int mode = 0;       // number of zeros in [0,pi] minus one; 0 is the zero function
  int sign = 0;       // sign of phi'(0); 0 for the zero equilibrium
  GridFunction phi;
  double c = 0.0;     // ||phi'||^2 at the fixed point
  double mu = 0.0;    // lambda / a(c)
  double residual = 0.0;  // sup |a(c) D2 phi + lambda f(phi)|
};

Equilibrium zero_equilibrium(const ModelConfig& cfg, const Grid& grid);

/// Outer bisection on c = ||phi'||^2 for G(c) = ||solve_mode(lambda/a(c))'||^2 - c
/// (non-increasing when a is non-decreasing), then Newton on the discrete
/// nonlocal system so the nodal equilibrium equation holds to solver precision.
/// The negative branch is the exact negation of the positive one.
/// Throws NoSuchModeError when lambda <= a(0) mode^2.
Equilibrium solve_equilibrium(const ModelConfig& cfg, int mode, int sign, const Grid& grid);

/// All 2N+1 equilibria, N = max{ j : a(0) j^2 < lambda }: the zero solution
/// first, then (+,-) pairs by increasing mode.
std::vector<Equilibrium> enumerate_equilibria(const ModelConfig& cfg, const Grid& grid);

/// Largest existing mode index (0 when the zero solution is the only one).
int max_mode(const ModelConfig& cfg);

/// Evaluate the outer fixed-point map G(c); exposed for the scan oracle and
/// the monotonicity property. Returns -(1+c) when the mode is absent at c.
double outer_map(const ModelConfig& cfg, int mode, double c, const Grid& grid);

}  // namespace nlci
