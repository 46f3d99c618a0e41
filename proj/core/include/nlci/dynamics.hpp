#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlci/equilibria.hpp"
#include "nlci/grid.hpp"
#include "nlci/model.hpp"

namespace nlci {

enum class Formulation { Quasilinear, Semilinear };

std::string to_string(Formulation f);

/// Sampled flow with the Lyapunov value per snapshot. Gradient structure of
/// the problem makes the Lyapunov column non-increasing (within 1e-8 a step).
struct Trajectory {
  Formulation formulation = Formulation::Quasilinear;
  std::vector<double> times;  // t (quasilinear) or tau (semilinear)
  std::vector<GridFunction> states;
  std::vector<double> lyapunov_values;
};

struct IntegrationOptions {
  double dt = 0.0;  // 0: min(1e-3, h)
  int stride = 0;   // snapshot every `stride` steps; 0: about 2000 snapshots
};

/// Method of lines for w_tau = w_xx + lambda f(w)/a(||w_x||^2): implicit
/// (tridiagonal) diffusion, explicit reaction and nonlocal scalar.
Trajectory integrate_semilinear(const GridFunction& u0, const ModelConfig& cfg, double tau_end,
                                IntegrationOptions opts = {});

/// Same splitting for u_t = a(||u_x||^2) u_xx + lambda f(u), with the
/// diffusion coefficient frozen per step (linearly implicit).
Trajectory integrate_quasilinear(const GridFunction& u0, const ModelConfig& cfg, double t_end,
                                 IntegrationOptions opts = {});

/// The correspondence t = int_0^tau a(||w_x||^2)^{-1} d theta between the
/// two formulations, by cumulative trapezoid over the recorded samples.
struct TimeChangeMap {
  std::vector<double> tau_samples;
  std::vector<double> t_samples;

  double t_of_tau(double tau) const;
};

TimeChangeMap time_change_map(const Trajectory& traj, const ModelConfig& cfg);

/// Fit of ||state - target||_{H1} ~ K ||u0 - target|| e^{-beta t} over the
/// trailing window.
struct DecayEstimate {
  double amplitude = 0.0;  // K
  double rate = 0.0;       // beta
  double window_start = 0.0;
  double window_end = 0.0;
  double residual = 0.0;  // RMS of the fit in log space
};

/// Requires final distance < 1e-6 * initial distance (NonConvergingError
/// otherwise). fit_window is the trailing fraction of samples above the
/// 1e-10 noise floor used for the least-squares line.
DecayEstimate decay_rate(const Trajectory& traj, const GridFunction& target,
                         double fit_window = 0.5);

struct ProbeOptions {
  double t_max = 0.0;            // 0: 200/m
  double dt = 0.0;               // 0: min(1e-3, h)
  double settle_distance = 1e-5; // H1 distance sustained ...
  int settle_steps = 100;        // ... for this many consecutive steps
  double escape_distance = 0.1;  // neighborhood radius for the escape time
  int stride = 0;
};

struct ProbeReport {
  int target_mode = 0;
  int target_sign = 0;
  std::optional<double> escape_time;  // absent if the probe never left
  double settle_time = 0.0;
  Trajectory trajectory;
};

/// Flow from eq.phi + delta * direction until it settles at one of the
/// enumerated equilibria (the omega-limit must be an equilibrium, by the
/// gradient structure). Throws UnresolvedProbeError at t_max.
/// `targets` may share a precomputed enumeration; empty means enumerate here.
ProbeReport unstable_probe(const Equilibrium& eq, const GridFunction& direction, double delta,
                           const ModelConfig& cfg, std::span<const Equilibrium> targets = {},
                           ProbeOptions opts = {});

}  // namespace nlci
