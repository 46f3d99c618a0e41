#include "nlci/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlci/errors.hpp"
#include "nlci/tridiag.hpp"

namespace nlci {
namespace {

double default_dt(const Grid& grid, double requested) {
  if (requested > 0.0) return requested;
  return std::min(1e-3, grid.spacing());
}

int default_stride(long long steps, int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1LL, steps / 2000));
}

Trajectory integrate(const GridFunction& u0, const ModelConfig& cfg, double end_time,
                     IntegrationOptions opts, Formulation form) {
  if (!(end_time > 0.0)) throw std::invalid_argument("integrate: end time must be positive");
  const Grid& grid = u0.grid();
  const int n = grid.size();
  const double h = grid.spacing();
  const double dt = default_dt(grid, opts.dt);
  const long long steps = static_cast<long long>(std::ceil(end_time / dt - 1e-12));
  const int stride = default_stride(steps, opts.stride);
  const double guard = 10.0 * cfg.nonlinearity.dissipativity_witness;
  const double inv_h2 = 1.0 / (h * h);

  std::vector<double> u(u0.values().begin(), u0.values().end());

  Trajectory traj;
  traj.formulation = form;
  auto snapshot = [&](long long step) {
    GridFunction state(grid, u);
    traj.times.push_back(static_cast<double>(step) * dt);
    traj.lyapunov_values.push_back(lyapunov(state, cfg));
    traj.states.push_back(std::move(state));
  };
  snapshot(0);

  for (long long m = 1; m <= steps; ++m) {
    const double r = detail::h1_seminorm_sq(u, h);
    const double a = cfg.diffusion.value(r);
    // explicit reaction, implicit diffusion
    if (form == Formulation::Semilinear) {
      const double coef = cfg.lambda / a;
      for (int i = 0; i < n; ++i) {
        u[static_cast<std::size_t>(i)] +=
            dt * coef * cfg.nonlinearity.value(u[static_cast<std::size_t>(i)]);
      }
      solve_constant_tridiag(1.0 + 2.0 * dt * inv_h2, -dt * inv_h2, u);
    } else {
      for (int i = 0; i < n; ++i) {
        u[static_cast<std::size_t>(i)] +=
            dt * cfg.lambda * cfg.nonlinearity.value(u[static_cast<std::size_t>(i)]);
      }
      solve_constant_tridiag(1.0 + 2.0 * dt * a * inv_h2, -dt * a * inv_h2, u);
    }
    if (detail::sup_abs(u) > guard) {
      throw DivergenceError("integrate: state left the dissipative range (bad dt?)");
    }
    if (m % stride == 0 || m == steps) snapshot(m);
  }
  return traj;
}

}  // namespace

std::string to_string(Formulation f) {
  return f == Formulation::Quasilinear ? "quasilinear" : "semilinear";
}

Trajectory integrate_semilinear(const GridFunction& u0, const ModelConfig& cfg, double tau_end,
                                IntegrationOptions opts) {
  return integrate(u0, cfg, tau_end, opts, Formulation::Semilinear);
}

Trajectory integrate_quasilinear(const GridFunction& u0, const ModelConfig& cfg, double t_end,
                                 IntegrationOptions opts) {
  return integrate(u0, cfg, t_end, opts, Formulation::Quasilinear);
}

double TimeChangeMap::t_of_tau(double tau) const {
  if (tau_samples.empty()) throw std::invalid_argument("TimeChangeMap: empty");
  if (tau <= tau_samples.front()) return t_samples.front();
  if (tau >= tau_samples.back()) return t_samples.back();
  const auto it = std::upper_bound(tau_samples.begin(), tau_samples.end(), tau);
  const std::size_t j = static_cast<std::size_t>(it - tau_samples.begin());
  const double w = (tau - tau_samples[j - 1]) / (tau_samples[j] - tau_samples[j - 1]);
  return t_samples[j - 1] + w * (t_samples[j] - t_samples[j - 1]);
}

TimeChangeMap time_change_map(const Trajectory& traj, const ModelConfig& cfg) {
  if (traj.formulation != Formulation::Semilinear) {
    throw std::invalid_argument("time_change_map: semilinear trajectory required");
  }
  TimeChangeMap map;
  map.tau_samples = traj.times;
  map.t_samples.resize(traj.times.size());
  double t = 0.0;
  double prev_g = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double g = 1.0 / cfg.diffusion.value(h1_seminorm_sq(traj.states[k]));
    if (k > 0) t += 0.5 * (g + prev_g) * (traj.times[k] - traj.times[k - 1]);
    map.t_samples[k] = t;
    prev_g = g;
  }
  return map;
}

DecayEstimate decay_rate(const Trajectory& traj, const GridFunction& target, double fit_window) {
  if (traj.states.size() < 4) throw std::invalid_argument("decay_rate: too few samples");
  if (!(fit_window > 0.0 && fit_window <= 1.0)) {
    throw std::invalid_argument("decay_rate: window fraction out of range");
  }
  std::vector<double> dist(traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    dist[k] = h1_distance(traj.states[k], target);
  }
  const double d0 = dist.front();
  if (!(dist.back() < 1e-6 * d0)) {
    throw NonConvergingError("decay_rate: trajectory did not converge to the target");
  }

  constexpr double kNoiseFloor = 1e-10;
  std::size_t last = 0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist[k] > kNoiseFloor) last = k;
  }
  const std::size_t count_above = last + 1;
  std::size_t first = static_cast<std::size_t>(
      std::floor(static_cast<double>(count_above) * (1.0 - fit_window)));
  if (count_above - first < 4) first = (count_above >= 4) ? count_above - 4 : 0;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t k = first; k <= last; ++k) {
    if (dist[k] <= kNoiseFloor) continue;
    const double x = traj.times[k];
    const double y = std::log(dist[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 4) throw NonConvergingError("decay_rate: not enough samples above the noise floor");
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  const double slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / static_cast<double>(m);

  double rss = 0.0;
  for (std::size_t k = first; k <= last; ++k) {
    if (dist[k] <= kNoiseFloor) continue;
    const double e = std::log(dist[k]) - (intercept + slope * traj.times[k]);
    rss += e * e;
  }

  DecayEstimate est;
  est.rate = -slope;
  est.amplitude = std::exp(intercept) / d0;
  est.window_start = traj.times[first];
  est.window_end = traj.times[last];
  est.residual = std::sqrt(rss / static_cast<double>(m));
  return est;
}

ProbeReport unstable_probe(const Equilibrium& eq, const GridFunction& direction, double delta,
                           const ModelConfig& cfg, std::span<const Equilibrium> targets,
                           ProbeOptions opts) {
  if (!(delta > 0.0 && delta <= 1e-2)) {
    throw std::invalid_argument("unstable_probe: delta must lie in (0, 1e-2]");
  }
  const Grid& grid = eq.phi.grid();
  std::vector<Equilibrium> own_targets;
  if (targets.empty()) {
    own_targets = enumerate_equilibria(cfg, grid);
    targets = own_targets;
  }

  const int n = grid.size();
  const double h = grid.spacing();
  const double dt = default_dt(grid, opts.dt);
  const double t_max = (opts.t_max > 0.0) ? opts.t_max : 200.0 / cfg.diffusion.lower;
  const long long max_steps = static_cast<long long>(std::ceil(t_max / dt));
  const int stride = default_stride(max_steps, opts.stride);
  const double guard = 10.0 * cfg.nonlinearity.dissipativity_witness;
  const double inv_h2 = 1.0 / (h * h);

  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = eq.phi[i] + delta * direction[i];

  auto h1_dist_to = [&](const Equilibrium& target) {
    double prev = 0.0, s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = u[static_cast<std::size_t>(i)] - target.phi[i];
      s += (d - prev) * (d - prev);
      prev = d;
    }
    s += prev * prev;
    return std::sqrt(s / h);
  };

  ProbeReport report;
  report.trajectory.formulation = Formulation::Quasilinear;
  auto snapshot = [&](double t) {
    GridFunction state(grid, u);
    report.trajectory.times.push_back(t);
    report.trajectory.lyapunov_values.push_back(lyapunov(state, cfg));
    report.trajectory.states.push_back(std::move(state));
  };
  snapshot(0.0);

  std::optional<double> escape_time;
  int settle_count = 0;
  std::size_t settle_target = 0;

  for (long long m = 1; m <= max_steps; ++m) {
    const double r = detail::h1_seminorm_sq(u, h);
    const double a = cfg.diffusion.value(r);
    for (int i = 0; i < n; ++i) {
      u[static_cast<std::size_t>(i)] +=
          dt * cfg.lambda * cfg.nonlinearity.value(u[static_cast<std::size_t>(i)]);
    }
    solve_constant_tridiag(1.0 + 2.0 * dt * a * inv_h2, -dt * a * inv_h2, u);
    if (detail::sup_abs(u) > guard) {
      throw DivergenceError("unstable_probe: state left the dissipative range");
    }
    const double t = static_cast<double>(m) * dt;
    if (m % stride == 0) snapshot(t);

    if (!escape_time.has_value() && h1_dist_to(eq) > opts.escape_distance) escape_time = t;

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const double d = h1_dist_to(targets[j]);
      if (d < best) {
        best = d;
        best_idx = j;
      }
    }
    if (best < opts.settle_distance) {
      if (settle_count == 0 || best_idx == settle_target) {
        settle_target = best_idx;
        ++settle_count;
      } else {
        settle_target = best_idx;
        settle_count = 1;
      }
      if (settle_count >= opts.settle_steps) {
        if (report.trajectory.times.back() != t) snapshot(t);
        report.target_mode = targets[settle_target].mode;
        report.target_sign = targets[settle_target].sign;
        report.escape_time = escape_time;
        report.settle_time = t;
        return report;
      }
    } else {
      settle_count = 0;
    }
  }
  throw UnresolvedProbeError("unstable_probe: no settlement before t_max");
}

}  // namespace nlci
