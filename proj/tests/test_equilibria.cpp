#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nlci/equilibria.hpp"
#include "nlci/errors.hpp"
#include "nlci/grid.hpp"
#include "nlci/model.hpp"

using namespace nlci;

namespace {

ModelConfig saturating(double lambda) {
  return ModelConfig(DiffusionSpec::saturating(), NonlinearitySpec::cubic(), lambda);
}

ModelConfig constant_a(double lambda) {
  return ModelConfig(DiffusionSpec::constant(), NonlinearitySpec::cubic(), lambda);
}

int count_zeros(const GridFunction& phi) {
  int zeros = 2;  // both endpoints (equilibria vanish there)
  int prev = 0;
  for (int i = 0; i < phi.size(); ++i) {
    const double v = phi[i];
    const int s = (v > 1e-12) ? 1 : (v < -1e-12 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++zeros;
    prev = s;
  }
  return zeros;
}

}  // namespace

TEST_CASE("shoot: zero slope gives the zero profile") {
  const Grid g = build_grid(255);
  const ShotResult shot = shoot(NonlinearitySpec::cubic(), 1.0, 0.0, g);
  CHECK(sup_norm(shot.profile) == 0.0);
  CHECK(shot.end_value == 0.0);
}

TEST_CASE("shoot: just above threshold the profile is sine-like with 2 zeros") {
  const Grid g = build_grid(511);
  const ShotResult shot = shoot(NonlinearitySpec::cubic(), 1.1, 1e-4, g);
  CHECK(shot.zero_count == 2);
  CHECK(shot.max_abs < 1e-3);  // near-linear regime
}

TEST_CASE("shoot: rejects nonpositive mu and guards divergence") {
  const Grid g = build_grid(127);
  CHECK_THROWS_AS(shoot(NonlinearitySpec::cubic(), -1.0, 0.1, g), std::invalid_argument);
  // slope far above the separatrix escapes towards +inf
  CHECK_THROWS_AS(shoot(NonlinearitySpec::cubic(), 1.0, 50.0, g), DivergenceError);
}

TEST_CASE("solve_mode: below the bifurcation threshold there is no mode") {
  const Grid g = build_grid(255);
  CHECK_THROWS_AS(solve_mode(NonlinearitySpec::cubic(), 0.5, 1, g), NoSuchModeError);
  CHECK_THROWS_AS(solve_mode(NonlinearitySpec::cubic(), 4.0, 2, g), NoSuchModeError);
}

TEST_CASE("solve_mode: mu=4 mode-2 profile ends at zero with 3 zeros") {
  const Grid g = build_grid(1023);
  const GridFunction phi = solve_mode(NonlinearitySpec::cubic(), 4.0, 2, g);
  CHECK(count_zeros(phi) == 3);

  // re-shoot with the recovered slope: the end value vanishes and keeps
  // vanishing under step halving (grid refinement)
  const double slope = (8.0 * phi[0] - phi[1]) / (6.0 * g.spacing());
  const ShotResult coarse = shoot(NonlinearitySpec::cubic(), 4.0, slope, g);
  CHECK(std::abs(coarse.end_value) <= 1e-9 * std::abs(slope));
  CHECK(coarse.zero_count == 3);
  const ShotResult fine = shoot(NonlinearitySpec::cubic(), 4.0, slope, build_grid(2047));
  CHECK(std::abs(fine.end_value) <= std::abs(coarse.end_value) + 1e-13);
}

TEST_CASE("solve_mode: scaling symmetry between modes") {
  const Grid g = build_grid(1023);
  const GridFunction phi2 = solve_mode(NonlinearitySpec::cubic(), 4.0, 2, g);
  const GridFunction phi1 = solve_mode(NonlinearitySpec::cubic(), 1.0, 1, g);
  // phi2(x) = phi1(2x) on [0, pi/2]: node i of phi2 maps to node 2i+1 of phi1
  double worst = 0.0;
  for (int i = 0; 2 * i + 1 < g.size() && g.node(i) <= kPi / 2; ++i) {
    worst = std::max(worst, std::abs(phi2[i] - phi1[2 * i + 1]));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("solve_mode: amplitude below the first zero of f, seminorm against fine oracle") {
  const Grid g = build_grid(1023);
  const GridFunction phi = solve_mode(NonlinearitySpec::cubic(), 2.0, 1, g);
  CHECK(sup_norm(phi) > 0.0);
  CHECK(sup_norm(phi) < 1.0);
  const double c = h1_seminorm_sq(phi);
  CHECK(c > 0.0);
  const GridFunction fine = solve_mode(NonlinearitySpec::cubic(), 2.0, 1, build_grid(8191));
  CHECK(c == doctest::Approx(h1_seminorm_sq(fine)).epsilon(1e-6));
}

TEST_CASE("solve_equilibrium: constant a degenerates the outer loop") {
  const Grid g = build_grid(511);
  const ModelConfig cfg = constant_a(2.0);
  const Equilibrium eq = solve_equilibrium(cfg, 1, +1, g);
  const GridFunction direct = solve_mode(NonlinearitySpec::cubic(), 2.0, 1, g);
  CHECK(sup_norm(eq.phi - direct) < 2e-5);  // Newton polish shifts O(h^2)
  CHECK(eq.c == doctest::Approx(h1_seminorm_sq(eq.phi)).epsilon(1e-12));
  CHECK(eq.mu == doctest::Approx(2.0));
}

TEST_CASE("solve_equilibrium: existence window is open on the left") {
  const Grid g = build_grid(255);
  CHECK_THROWS_AS(solve_equilibrium(constant_a(1.0), 1, +1, g), NoSuchModeError);
  CHECK_THROWS_AS(solve_equilibrium(constant_a(4.0), 2, +1, g), NoSuchModeError);
  CHECK_THROWS_AS(solve_equilibrium(saturating(9.0), 3, +1, g), NoSuchModeError);
}

TEST_CASE("solve_equilibrium: fixed point reproduced by a brute-force scan of G") {
  const Grid g = build_grid(127);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium eq = solve_equilibrium(cfg, 1, +1, g);

  // scan G over a 10^4-point c-grid and locate its sign change
  const double u_star = cfg.nonlinearity.dissipativity_witness;
  const double c_hi = (cfg.lambda / cfg.diffusion.lower) * u_star * u_star * kPi;
  const int points = 10000;
  double c_star = -1.0;
  double prev_g = outer_map(cfg, 1, 0.0, g);
  for (int i = 1; i < points; ++i) {
    const double c = c_hi * i / (points - 1);
    const double g_val = outer_map(cfg, 1, c, g);
    if (prev_g > 0.0 && g_val <= 0.0) {
      c_star = c - 0.5 * c_hi / (points - 1);
      break;
    }
    prev_g = g_val;
  }
  REQUIRE(c_star > 0.0);
  CHECK(std::abs(eq.c - c_star) <= 6e-3 * (1.0 + c_star));
}

TEST_CASE("enumerate_equilibria: counts follow the bifurcation windows") {
  const Grid g = build_grid(255);
  CHECK(enumerate_equilibria(saturating(0.5), g).size() == 1);
  CHECK(enumerate_equilibria(constant_a(5.0), g).size() == 5);
  CHECK(enumerate_equilibria(saturating(10.0), g).size() == 7);
}

TEST_CASE("enumerate_equilibria: the zero equilibrium leads the list") {
  const Grid g = build_grid(255);
  const auto eqs = enumerate_equilibria(saturating(2.0), g);
  REQUIRE(eqs.size() == 3);
  CHECK(eqs[0].mode == 0);
  CHECK(sup_norm(eqs[0].phi) == 0.0);
  CHECK(eqs[0].mu == doctest::Approx(2.0));
}

TEST_CASE("every returned equilibrium satisfies the type invariants") {
  const Grid g = build_grid(511);
  const ModelConfig cfg = saturating(6.0);
  const auto eqs = enumerate_equilibria(cfg, g);
  REQUIRE(eqs.size() == 5);
  for (const auto& eq : eqs) {
    if (eq.mode == 0) continue;
    double f_max = 0.0;
    for (int i = 0; i < eq.phi.size(); ++i) {
      f_max = std::max(f_max, std::abs(cfg.nonlinearity.value(eq.phi[i])));
    }
    CHECK(eq.residual <= 1e-6 * cfg.lambda * f_max);
    CHECK(std::abs(h1_seminorm_sq(eq.phi) - eq.c) <= 1e-8 * (1.0 + eq.c));
    CHECK(count_zeros(eq.phi) == eq.mode + 1);
    // first-arch positivity
    for (int i = 0; i < eq.phi.size() && g.node(i) < kPi / eq.mode - g.spacing(); ++i) {
      CHECK(eq.sign * eq.phi[i] > 0.0);
    }
    // reflection symmetry phi(pi - x) = (-1)^(mode-1) phi(x)
    const double parity = (eq.mode % 2 == 1) ? 1.0 : -1.0;
    double worst = 0.0;
    const int n = eq.phi.size();
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(eq.phi[n - 1 - i] - parity * eq.phi[i]));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("negative-branch profiles are exact negations") {
  const Grid g = build_grid(255);
  const auto eqs = enumerate_equilibria(saturating(6.0), g);
  for (std::size_t i = 1; i + 1 < eqs.size(); i += 2) {
    const auto plus = eqs[i].phi.values();
    const auto minus = eqs[i + 1].phi.values();
    REQUIRE(plus.size() == minus.size());
    for (std::size_t k = 0; k < plus.size(); ++k) {
      CHECK(minus[k] == -plus[k]);
    }
  }
}

TEST_CASE("outer map G is non-increasing in c for non-decreasing a") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(6.0);
  double prev = outer_map(cfg, 1, 0.0, g);
  for (int i = 1; i <= 12; ++i) {
    const double c = 0.5 * i;
    const double g_val = outer_map(cfg, 1, c, g);
    CHECK(g_val <= prev + 1e-9);
    prev = g_val;
  }
}

TEST_CASE("translation structure: one arch oddly reflected reproduces the next") {
  const Grid g = build_grid(767);  // 768 divisible by 3
  const ModelConfig cfg = saturating(10.0);
  const Equilibrium eq = solve_equilibrium(cfg, 3, +1, g);
  // phi(2pi/3 - x) = -phi(x) on [0, 2pi/3]: nodes 0..511 reflect about 256
  const int third = 256;  // node index of pi/3 is third-1 in 0-based values
  double worst = 0.0;
  for (int i = 0; i < 2 * third - 1; ++i) {
    const int reflected = 2 * third - 2 - i;  // x_i + x_reflected = 2pi/3
    worst = std::max(worst, std::abs(eq.phi[reflected] + eq.phi[i]));
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("max_mode thresholds are strict") {
  CHECK(max_mode(constant_a(1.0)) == 0);
  CHECK(max_mode(constant_a(1.0001)) == 1);
  CHECK(max_mode(constant_a(4.0)) == 1);
  CHECK(max_mode(constant_a(5.0)) == 2);
  CHECK(max_mode(saturating(10.0)) == 3);
  CHECK(max_mode(saturating(16.0)) == 3);
}
