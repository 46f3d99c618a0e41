#include "nlci/equilibria.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nlci/errors.hpp"
#include "nlci/tridiag.hpp"

namespace nlci {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct State {
  double phi;
  double dphi;
};

State rk4_step(const NonlinearitySpec& f, double mu, State y, double dt) {
  auto acc = [&f, mu](double phi) { return -mu * f.value(phi); };
  const double k1p = y.dphi, k1v = acc(y.phi);
  const double k2p = y.dphi + 0.5 * dt * k1v, k2v = acc(y.phi + 0.5 * dt * k1p);
  const double k3p = y.dphi + 0.5 * dt * k2v, k3v = acc(y.phi + 0.5 * dt * k2p);
  const double k4p = y.dphi + dt * k3v, k4v = acc(y.phi + dt * k3p);
  return {y.phi + dt * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0,
          y.dphi + dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0};
}

/// First x > 0 with phi(x) = 0, located to machine precision by bisection on
/// a partial RK4 step; +inf when there is no zero before x_cap (including
/// escape beyond the dissipative range).
double first_positive_zero(const NonlinearitySpec& f, double mu, double s, double dt,
                           double x_cap) {
  const double escape = 10.0 * f.dissipativity_witness;
  State y{0.0, s};
  double x = 0.0;
  while (x < x_cap) {
    const State y_next = rk4_step(f, mu, y, dt);
    if (std::abs(y_next.phi) > escape) return kInf;
    if ((y.phi > 0.0 && y_next.phi <= 0.0) || (y.phi < 0.0 && y_next.phi >= 0.0) ||
        (x > 0.0 && y.phi == 0.0)) {
      if (y.phi == 0.0) return x;
      double lo = 0.0, hi = dt;
      for (int it = 0; it < 64 && hi - lo > 1e-18 * dt; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double phim = rk4_step(f, mu, y, mid).phi;
        if ((y.phi > 0.0) == (phim > 0.0) && phim != 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return x + 0.5 * (lo + hi);
    }
    y = y_next;
    x += dt;
  }
  return kInf;
}

/// Amplitude of the IVP solution over [0, x_cap], early-stopped once it
/// exceeds the given cap.
double amplitude_before(const NonlinearitySpec& f, double mu, double s, double dt, double x_cap,
                        double amp_cap) {
  State y{0.0, s};
  double amp = 0.0;
  for (double x = 0.0; x < x_cap; x += dt) {
    y = rk4_step(f, mu, y, dt);
    amp = std::max(amp, std::abs(y.phi));
    if (amp > amp_cap) return amp;
  }
  return amp;
}

double diffusion_at_zero(const ModelConfig& cfg) { return cfg.diffusion.value(0.0); }

/// Newton polish of the discrete nonlocal equation
///   R(phi) = a(r(phi)) D2 phi + lambda f(phi) = 0,  r(phi) = ||phi'||^2,
/// with the tridiagonal-plus-rank-one Jacobian solved by Sherman-Morrison.
GridFunction polish_discrete(const ModelConfig& cfg, const GridFunction& start) {
  const Grid& grid = start.grid();
  const int n = grid.size();
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const auto& f = cfg.nonlinearity;

  std::vector<double> phi(start.values().begin(), start.values().end());
  auto second_diff = [&](const std::vector<double>& u, std::vector<double>& out) {
    for (int i = 0; i < n; ++i) {
      const double left = (i > 0) ? u[static_cast<std::size_t>(i - 1)] : 0.0;
      const double right = (i < n - 1) ? u[static_cast<std::size_t>(i + 1)] : 0.0;
      out[static_cast<std::size_t>(i)] =
          (left - 2.0 * u[static_cast<std::size_t>(i)] + right) * inv_h2;
    }
  };

  std::vector<double> d2(static_cast<std::size_t>(n));
  std::vector<double> residual(static_cast<std::size_t>(n));
  double best = kInf;
  for (int iter = 0; iter < 16; ++iter) {
    const double r = detail::h1_seminorm_sq(phi, h);
    const double a = cfg.diffusion.value(r);
    second_diff(phi, d2);
    double fscale = 0.0, rnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double fv = f.value(phi[static_cast<std::size_t>(i)]);
      residual[static_cast<std::size_t>(i)] = a * d2[static_cast<std::size_t>(i)] +
                                              cfg.lambda * fv;
      fscale = std::max(fscale, std::abs(fv));
      rnorm = std::max(rnorm, std::abs(residual[static_cast<std::size_t>(i)]));
    }
    if (rnorm <= 1e-12 * cfg.lambda * std::max(fscale, 1e-30)) break;
    if (rnorm > 4.0 * best && iter > 3) {
      throw NonConvergenceError("discrete equilibrium polish diverged");
    }
    best = std::min(best, rnorm);

    SymTridiag jac;
    jac.diag.resize(static_cast<std::size_t>(n));
    jac.off.assign(static_cast<std::size_t>(n - 1), a * inv_h2);
    for (int i = 0; i < n; ++i) {
      jac.diag[static_cast<std::size_t>(i)] =
          -2.0 * a * inv_h2 + cfg.lambda * f.derivative(phi[static_cast<std::size_t>(i)]);
    }
    const double rho = -2.0 * h * cfg.diffusion.derivative(r);
    for (double& v : residual) v = -v;
    std::vector<double> delta = solve_shifted_rank_one(jac, 0.0, rho, d2, residual);
    for (int i = 0; i < n; ++i) phi[static_cast<std::size_t>(i)] += delta[static_cast<std::size_t>(i)];
  }
  return GridFunction(grid, std::move(phi));
}

}  // namespace

ShotResult shoot(const NonlinearitySpec& f, double mu, double s, const Grid& grid) {
  if (!(mu > 0.0)) throw std::invalid_argument("shoot: mu must be positive");
  const int n = grid.size();
  const double h = grid.spacing();
  const double dt = 0.25 * h;
  const double escape = 10.0 * f.dissipativity_witness;

  std::vector<double> nodal(static_cast<std::size_t>(n));
  State y{0.0, s};
  double max_abs = 0.0;
  int zero_count = 1;  // x = 0
  int prev_sign = 0;
  bool in_zero_run = false;
  const double tie_tol = 1e-13 * std::max(std::abs(s), 1e-30);

  const int steps = 4 * (n + 1);
  for (int k = 1; k <= steps; ++k) {
    y = rk4_step(f, mu, y, dt);
    if (std::abs(y.phi) > escape) {
      throw DivergenceError("shoot: |phi| exceeded 10 u* at x = " + std::to_string(k * dt));
    }
    max_abs = std::max(max_abs, std::abs(y.phi));
    if (k % 4 == 0 && k / 4 <= n) nodal[static_cast<std::size_t>(k / 4 - 1)] = y.phi;
    if (k < steps) {  // interior sample: strict sign changes, ties once
      const int sgn = (y.phi > tie_tol) ? 1 : (y.phi < -tie_tol ? -1 : 0);
      if (sgn == 0) {
        if (!in_zero_run) {
          ++zero_count;
          in_zero_run = true;
        }
      } else {
        if (!in_zero_run && prev_sign != 0 && sgn != prev_sign) ++zero_count;
        prev_sign = sgn;
        in_zero_run = false;
      }
    }
  }
  const double end_value = y.phi;
  if (std::abs(end_value) <= 1e-9 * std::max(std::abs(s), 1e-30)) ++zero_count;
  return ShotResult{GridFunction(grid, std::move(nodal)), end_value, zero_count, s, max_abs};
}

GridFunction solve_mode(const NonlinearitySpec& f, double mu, int mode, const Grid& grid) {
  if (mode < 1) throw std::invalid_argument("solve_mode: mode must be >= 1");
  if (!(mu > static_cast<double>(mode) * mode)) {
    throw NoSuchModeError("solve_mode: mu = " + std::to_string(mu) +
                          " is at or below the existence threshold " +
                          std::to_string(static_cast<double>(mode) * mode));
  }
  const double h = grid.spacing();
  const double dt = 0.25 * h;
  const double target = kPi / mode;
  const double x_cap = target + 8.0 * dt + 0.25 * target;
  const double u_star = f.dissipativity_witness;

  // Upper bracket: first doubled slope whose amplitude exceeds u* before the
  // target (such a trajectory escapes and has no zero there).
  double s_hi = 1e-3 * u_star * mu;
  int doublings = 0;
  while (amplitude_before(f, mu, s_hi, dt, target, u_star) <= u_star) {
    s_hi *= 2.0;
    if (++doublings > 60) throw NonConvergenceError("solve_mode: no upper slope bracket");
  }
  double s_lo = 1e-9 * s_hi;
  if (!(first_positive_zero(f, mu, s_lo, dt, x_cap) < target)) {
    throw NonConvergenceError("solve_mode: lower slope bracket invalid");
  }

  int iters = 0;
  while (s_hi - s_lo > 5e-13 * s_hi) {
    if (++iters > 200) throw NonConvergenceError("solve_mode: slope bisection cap reached");
    const double s_mid = 0.5 * (s_lo + s_hi);
    const double x1 = first_positive_zero(f, mu, s_mid, dt, x_cap);
    if (x1 < target) {
      s_lo = s_mid;
    } else {
      s_hi = s_mid;
    }
  }
  const double s = 0.5 * (s_lo + s_hi);
  return shoot(f, mu, s, grid).profile;
}

Equilibrium zero_equilibrium(const ModelConfig& cfg, const Grid& grid) {
  return Equilibrium{0, 0, GridFunction::zero(grid), 0.0, cfg.lambda / diffusion_at_zero(cfg),
                     0.0};
}

double outer_map(const ModelConfig& cfg, int mode, double c, const Grid& grid) {
  const double mu = cfg.lambda / cfg.diffusion.value(c);
  if (!(mu > static_cast<double>(mode) * mode)) return -(1.0 + c);
  try {
    return h1_seminorm_sq(solve_mode(cfg.nonlinearity, mu, mode, grid)) - c;
  } catch (const NoSuchModeError&) {
    return -(1.0 + c);
  }
}

Equilibrium solve_equilibrium(const ModelConfig& cfg, int mode, int sign, const Grid& grid) {
  if (mode < 1) throw std::invalid_argument("solve_equilibrium: mode must be >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("solve_equilibrium: sign must be +-1");
  const double a0 = diffusion_at_zero(cfg);
  if (!(cfg.lambda > a0 * mode * mode)) {
    throw NoSuchModeError("solve_equilibrium: lambda <= a(0) mode^2");
  }

  // Bracket: G(0) > 0; expand from the a-priori energy bound until G < 0.
  const double u_star = cfg.nonlinearity.dissipativity_witness;
  double c_hi = (cfg.lambda / cfg.diffusion.lower) * u_star * u_star * kPi;
  int doublings = 0;
  while (outer_map(cfg, mode, c_hi, grid) > 0.0) {
    c_hi *= 2.0;
    if (++doublings > 20) throw NonConvergenceError("solve_equilibrium: no outer bracket");
  }

  double c_lo = 0.0, c_mid = 0.0, g_mid = kInf;
  int iters = 0;
  for (;;) {
    if (++iters > 200) throw NonConvergenceError("solve_equilibrium: outer bisection cap");
    c_mid = 0.5 * (c_lo + c_hi);
    g_mid = outer_map(cfg, mode, c_mid, grid);
    if (std::abs(g_mid) <= 1e-8 * (1.0 + c_mid)) break;
    if (g_mid > 0.0) {
      c_lo = c_mid;
    } else {
      c_hi = c_mid;
    }
  }

  GridFunction phi = solve_mode(cfg.nonlinearity, cfg.lambda / cfg.diffusion.value(c_mid), mode, grid);
  phi = polish_discrete(cfg, phi);

  const double c = h1_seminorm_sq(phi);
  const double a = cfg.diffusion.value(c);
  const GridFunction d2 = second_difference(phi);
  double rnorm = 0.0;
  for (int i = 0; i < phi.size(); ++i) {
    rnorm = std::max(rnorm, std::abs(a * d2[i] + cfg.lambda * cfg.nonlinearity.value(phi[i])));
  }
  return Equilibrium{mode, sign, (sign > 0) ? phi : -phi, c, cfg.lambda / a, rnorm};
}

std::vector<Equilibrium> enumerate_equilibria(const ModelConfig& cfg, const Grid& grid) {
  std::vector<Equilibrium> out;
  out.push_back(zero_equilibrium(cfg, grid));
  for (int j = 1; j <= max_mode(cfg); ++j) {
    Equilibrium plus = solve_equilibrium(cfg, j, +1, grid);
    Equilibrium minus = plus;
    minus.sign = -1;
    minus.phi = -plus.phi;
    out.push_back(std::move(plus));
    out.push_back(std::move(minus));
  }
  return out;
}

int max_mode(const ModelConfig& cfg) {
  const double a0 = diffusion_at_zero(cfg);
  int j = static_cast<int>(std::floor(std::sqrt(cfg.lambda / a0))) + 1;
  while (j > 0 && !(a0 * j * j < cfg.lambda)) --j;
  return j;
}

}  // namespace nlci
