#include <doctest.h>

#include <cmath>
#include <random>

#include "nlci/dynamics.hpp"
#include "nlci/equilibria.hpp"
#include "nlci/errors.hpp"
#include "nlci/grid.hpp"
#include "nlci/model.hpp"
#include "nlci/spectral.hpp"

using namespace nlci;

namespace {

ModelConfig saturating(double lambda) {
  return ModelConfig(DiffusionSpec::saturating(), NonlinearitySpec::cubic(), lambda);
}

ModelConfig constant_a(double lambda) {
  return ModelConfig(DiffusionSpec::constant(), NonlinearitySpec::cubic(), lambda);
}

GridFunction random_state(const Grid& g, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-amp, amp);
  std::vector<double> a(4);
  for (double& v : a) v = coef(rng);
  return GridFunction::sample(g, [&a](double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::sin((k + 1) * x);
    return s;
  });
}

void check_lyapunov_descent(const Trajectory& traj, double tol = 1e-8) {
  for (std::size_t k = 1; k < traj.lyapunov_values.size(); ++k) {
    CHECK(traj.lyapunov_values[k] <= traj.lyapunov_values[k - 1] + tol);
  }
}

}  // namespace

TEST_CASE("integrate: the zero state stays zero") {
  const Grid g = build_grid(127);
  const ModelConfig cfg = saturating(6.0);
  const Trajectory traj = integrate_semilinear(GridFunction::zero(g), cfg, 1.0);
  for (const auto& s : traj.states) CHECK(sup_norm(s) == 0.0);
}

TEST_CASE("integrate: equilibria are fixed points of both schemes") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi1 = solve_equilibrium(cfg, 1, +1, g);

  const Trajectory semi = integrate_semilinear(phi1.phi, cfg, 10.0);
  double worst = 0.0;
  for (const auto& s : semi.states) worst = std::max(worst, sup_norm(s - phi1.phi));
  CHECK(worst <= 1e-6);

  const Trajectory quasi = integrate_quasilinear(phi1.phi, cfg, 10.0);
  worst = 0.0;
  for (const auto& s : quasi.states) worst = std::max(worst, sup_norm(s - phi1.phi));
  CHECK(worst <= 1e-6);
}

TEST_CASE("integrate: subcritical lambda decays to zero monotonically in V") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(0.5);
  const GridFunction u0 = random_state(g, 11, 0.1);
  const Trajectory traj = integrate_semilinear(u0, cfg, 30.0);
  check_lyapunov_descent(traj);
  CHECK(std::sqrt(h1_seminorm_sq(traj.states.back())) <
        1e-5 * std::sqrt(h1_seminorm_sq(u0)));
}

TEST_CASE("integrate: constant a makes the two formulations coincide") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = constant_a(4.0);
  const GridFunction u0 = random_state(g, 5, 0.2);
  IntegrationOptions opts;
  opts.dt = 1e-3;
  opts.stride = 100;
  const Trajectory semi = integrate_semilinear(u0, cfg, 2.0, opts);
  const Trajectory quasi = integrate_quasilinear(u0, cfg, 2.0, opts);
  REQUIRE(semi.times.size() == quasi.times.size());
  for (std::size_t k = 0; k < semi.states.size(); ++k) {
    CHECK(sup_norm(semi.states[k] - quasi.states[k]) <= 1e-12);
  }
}

TEST_CASE("integrate: odd symmetry of the flow is exact") {
  const Grid g = build_grid(127);
  const ModelConfig cfg = saturating(6.0);
  const GridFunction u0 = random_state(g, 23, 0.3);
  IntegrationOptions opts;
  opts.dt = 1e-3;
  opts.stride = 50;
  const Trajectory plus = integrate_quasilinear(u0, cfg, 0.5, opts);
  const Trajectory minus = integrate_quasilinear(-u0, cfg, 0.5, opts);
  REQUIRE(plus.states.size() == minus.states.size());
  for (std::size_t k = 0; k < plus.states.size(); ++k) {
    for (int i = 0; i < plus.states[k].size(); ++i) {
      CHECK(minus.states[k][i] == -plus.states[k][i]);
    }
  }
}

TEST_CASE("integrate: states remain inside the dissipative bound") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(12.0);
  const GridFunction u0 = random_state(g, 31, 0.4);
  const double bound = std::max(sup_norm(u0), cfg.nonlinearity.dissipativity_witness) + 0.1;
  const Trajectory traj = integrate_quasilinear(u0, cfg, 20.0);
  for (const auto& s : traj.states) CHECK(sup_norm(s) <= bound);
  check_lyapunov_descent(traj);
}

TEST_CASE("time_change_map: identity for constant a, bounds in general") {
  const Grid g = build_grid(127);
  SUBCASE("constant a: t equals tau") {
    const ModelConfig cfg = constant_a(2.0);
    const Trajectory traj = integrate_semilinear(random_state(g, 3, 0.2), cfg, 1.0);
    const TimeChangeMap map = time_change_map(traj, cfg);
    for (std::size_t k = 0; k < map.tau_samples.size(); ++k) {
      CHECK(map.t_samples[k] == doctest::Approx(map.tau_samples[k]).epsilon(1e-12));
    }
  }
  SUBCASE("saturating a: tau/M <= t <= tau/m, strictly increasing") {
    const ModelConfig cfg = saturating(6.0);
    const Trajectory traj = integrate_semilinear(random_state(g, 3, 0.3), cfg, 2.0);
    const TimeChangeMap map = time_change_map(traj, cfg);
    for (std::size_t k = 1; k < map.tau_samples.size(); ++k) {
      CHECK(map.t_samples[k] > map.t_samples[k - 1]);
      const double tau = map.tau_samples[k];
      CHECK(map.t_samples[k] >= tau / cfg.diffusion.upper - 1e-12);
      CHECK(map.t_samples[k] <= tau / cfg.diffusion.lower + 1e-12);
    }
  }
  SUBCASE("quasilinear input is rejected") {
    const ModelConfig cfg = constant_a(2.0);
    const Trajectory traj = integrate_quasilinear(random_state(g, 3, 0.2), cfg, 0.5);
    CHECK_THROWS_AS(time_change_map(traj, cfg), std::invalid_argument);
  }
}

TEST_CASE("paired integration: aligned formulations agree at first order") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(6.0);
  const GridFunction u0 = random_state(g, 41, 0.25);

  auto sup_gap = [&](double dt) {
    IntegrationOptions sopts;
    sopts.dt = dt;
    sopts.stride = std::max(1, static_cast<int>(std::llround(5e-3 / dt)));
    const Trajectory semi = integrate_semilinear(u0, cfg, 1.0, sopts);
    const TimeChangeMap map = time_change_map(semi, cfg);
    IntegrationOptions qopts;
    qopts.dt = dt;
    qopts.stride = std::max(1, static_cast<int>(std::llround(1e-3 / dt)));
    const Trajectory quasi =
        integrate_quasilinear(u0, cfg, map.t_samples.back() + 10 * dt, qopts);

    double worst = 0.0;
    for (std::size_t k = 0; k < map.tau_samples.size(); ++k) {
      const double t = map.t_samples[k];
      std::size_t j = 1;
      while (j + 1 < quasi.times.size() && quasi.times[j] < t) ++j;
      const double w =
          (t - quasi.times[j - 1]) / (quasi.times[j] - quasi.times[j - 1]);
      for (int i = 0; i < g.size(); ++i) {
        const double interp = (1.0 - w) * quasi.states[j - 1][i] + w * quasi.states[j][i];
        worst = std::max(worst, std::abs(interp - semi.states[k][i]));
      }
    }
    return worst;
  };

  const double coarse = sup_gap(2e-4);
  const double fine = sup_gap(1e-4);
  CHECK(coarse <= 1e-3);
  CHECK(fine <= 0.75 * coarse);
}

TEST_CASE("decay_rate: subcritical decay matches the principal eigenvalue") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(0.5);
  const GridFunction u0 = random_state(g, 7, 0.05);
  IntegrationOptions opts;
  opts.dt = 1e-3;
  const Trajectory traj = integrate_semilinear(u0, cfg, 40.0, opts);
  const DecayEstimate est = decay_rate(traj, GridFunction::zero(g));
  CHECK(est.rate == doctest::Approx(0.5).epsilon(0.15));
  CHECK(est.amplitude > 0.0);
}

TEST_CASE("decay_rate: rejects non-converging trajectories") {
  const Grid g = build_grid(127);
  const ModelConfig cfg = saturating(6.0);
  const Trajectory traj = integrate_semilinear(random_state(g, 9, 0.2), cfg, 0.5);
  CHECK_THROWS_AS(decay_rate(traj, GridFunction::zero(g)), NonConvergingError);
}

TEST_CASE("unstable_probe: the zero equilibrium hands the flow to +-phi_1") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(6.0);
  const auto eqs = enumerate_equilibria(cfg, g);
  const Equilibrium& zero = eqs[0];

  const GridFunction sine = GridFunction::sample(g, [](double x) { return std::sin(x); });
  const double norm = std::sqrt(h1_seminorm_sq(sine));
  const GridFunction dir = (1.0 / norm) * sine;

  const ProbeReport up = unstable_probe(zero, dir, 1e-3, cfg, eqs);
  CHECK(up.target_mode == 1);
  CHECK(up.target_sign == +1);
  CHECK(up.escape_time.has_value());

  const ProbeReport down = unstable_probe(zero, -dir, 1e-3, cfg, eqs);
  CHECK(down.target_mode == 1);
  CHECK(down.target_sign == -1);
}

TEST_CASE("unstable_probe: a stable equilibrium reabsorbs the perturbation") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(6.0);
  const auto eqs = enumerate_equilibria(cfg, g);
  const Equilibrium& phi1 = eqs[1];
  REQUIRE(phi1.mode == 1);

  const GridFunction sine = GridFunction::sample(g, [](double x) { return std::sin(2 * x); });
  const GridFunction dir = (1.0 / std::sqrt(h1_seminorm_sq(sine))) * sine;
  const ProbeReport rep = unstable_probe(phi1, dir, 1e-3, cfg, eqs);
  CHECK(rep.target_mode == 1);
  CHECK(rep.target_sign == +1);
  CHECK_FALSE(rep.escape_time.has_value());
}

TEST_CASE("unstable_probe: phi_2 connects to two distinct targets, stable under dt halving") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(6.0);
  const auto eqs = enumerate_equilibria(cfg, g);
  const Equilibrium& phi2 = eqs[3];
  REQUIRE(phi2.mode == 2);

  const Spectrum spec = eigenpairs(assemble(linearization(phi2, cfg), g), 1);
  const GridFunction lead =
      (1.0 / std::sqrt(h1_seminorm_sq(spec.eigenvectors[0]))) * spec.eigenvectors[0];

  ProbeOptions opts;
  const ProbeReport plus = unstable_probe(phi2, lead, 1e-3, cfg, eqs, opts);
  const ProbeReport minus = unstable_probe(phi2, -lead, 1e-3, cfg, eqs, opts);
  CHECK((plus.target_mode != minus.target_mode || plus.target_sign != minus.target_sign));

  ProbeOptions half = opts;
  half.dt = 0.5e-3;
  const ProbeReport plus_half = unstable_probe(phi2, lead, 1e-3, cfg, eqs, half);
  CHECK(plus_half.target_mode == plus.target_mode);
  CHECK(plus_half.target_sign == plus.target_sign);

  check_lyapunov_descent(plus.trajectory);
  check_lyapunov_descent(minus.trajectory);
}

TEST_CASE("unstable_probe: delta outside (0, 1e-2] is rejected") {
  const Grid g = build_grid(127);
  const ModelConfig cfg = saturating(6.0);
  const auto eqs = enumerate_equilibria(cfg, g);
  const GridFunction dir = GridFunction::sample(g, [](double x) { return std::sin(x); });
  CHECK_THROWS_AS(unstable_probe(eqs[0], dir, 0.0, cfg, eqs), std::invalid_argument);
  CHECK_THROWS_AS(unstable_probe(eqs[0], dir, 0.1, cfg, eqs), std::invalid_argument);
}
