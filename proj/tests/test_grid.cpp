#include <doctest.h>

#include <cmath>
#include <random>

#include "nlci/grid.hpp"

using namespace nlci;

namespace {

GridFunction random_function(const Grid& grid, std::mt19937_64& rng, double amp = 1.0) {
  std::uniform_real_distribution<double> d(-amp, amp);
  std::vector<double> v(static_cast<std::size_t>(grid.size()));
  for (double& x : v) x = d(rng);
  return GridFunction(grid, std::move(v));
}

}  // namespace

TEST_CASE("build_grid pins the mesh width to pi/(n+1)") {
  const Grid g = build_grid(3);
  CHECK(g.spacing() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(g.node(0) == doctest::Approx(kPi / 4));
  CHECK(g.node(1) == doctest::Approx(kPi / 2));
  CHECK(g.node(2) == doctest::Approx(3 * kPi / 4));
  CHECK(std::abs(g.spacing() * (g.size() + 1) - kPi) < 1e-15);

  const Grid big = build_grid(1023);
  CHECK(big.spacing() == doctest::Approx(kPi / 1024).epsilon(1e-15));
  CHECK(std::abs(big.spacing() * 1024 - kPi) < 1e-14);

  CHECK_THROWS_AS(build_grid(2), std::invalid_argument);
}

TEST_CASE("grid nodes are strictly increasing interior points") {
  const Grid g = build_grid(17);
  for (int i = 0; i < g.size(); ++i) {
    CHECK(g.node(i) > 0.0);
    CHECK(g.node(i) < kPi);
    if (i > 0) CHECK(g.node(i) > g.node(i - 1));
  }
}

TEST_CASE("GridFunction rejects wrong sizes and non-finite values") {
  const Grid g = build_grid(5);
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(4, 0.0)), std::invalid_argument);
  std::vector<double> bad(5, 0.0);
  bad[2] = std::nan("");
  CHECK_THROWS_AS(GridFunction(g, bad), std::invalid_argument);
}

TEST_CASE("integral: trapezoid with zero boundary") {
  const Grid g = build_grid(1023);
  CHECK(integral(GridFunction::zero(g)) == 0.0);

  const auto sine = GridFunction::sample(g, [](double x) { return std::sin(x); });
  CHECK(integral(sine) == doctest::Approx(2.0).epsilon(1e-5));

  const auto sine_sq = GridFunction::sample(g, [](double x) {
    const double s = std::sin(x);
    return s * s;
  });
  CHECK(integral(sine_sq) == doctest::Approx(kPi / 2).epsilon(1e-5));
}

TEST_CASE("integral is linear") {
  std::mt19937_64 rng(42);
  const Grid g = build_grid(257);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    const GridFunction g1 = random_function(g, rng);
    const GridFunction g2 = random_function(g, rng);
    const double alpha = coef(rng), beta = coef(rng);
    const GridFunction combo = alpha * g1 + beta * g2;
    const double lhs = integral(combo);
    const double rhs = alpha * integral(g1) + beta * integral(g2);
    CHECK(std::abs(lhs - rhs) <=
          1e-12 * (std::abs(alpha) * l2_norm(g1) + std::abs(beta) * l2_norm(g2)));
  }
}

TEST_CASE("h1_seminorm_sq: forward-difference energy") {
  const Grid g = build_grid(1023);
  CHECK(h1_seminorm_sq(GridFunction::zero(g)) == 0.0);

  const auto sine = GridFunction::sample(g, [](double x) { return std::sin(x); });
  CHECK(h1_seminorm_sq(sine) == doctest::Approx(kPi / 2).epsilon(1e-4));

  const auto sine2 = GridFunction::sample(g, [](double x) { return std::sin(2 * x); });
  CHECK(h1_seminorm_sq(sine2) == doctest::Approx(2 * kPi).epsilon(1e-4));
}

TEST_CASE("h1_seminorm_sq error shrinks 4x when n doubles") {
  auto err = [](int n) {
    const Grid g = build_grid(n);
    const auto u = GridFunction::sample(g, [](double x) { return std::sin(3 * x); });
    return std::abs(h1_seminorm_sq(u) - 4.5 * kPi);
  };
  const double ratio = err(511) / err(1023);
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}

TEST_CASE("second_difference: Laplacian eigenfunctions") {
  const Grid g = build_grid(1023);
  CHECK(sup_norm(second_difference(GridFunction::zero(g))) == 0.0);

  const auto sine = GridFunction::sample(g, [](double x) { return std::sin(x); });
  const GridFunction dd = second_difference(sine);
  double worst = 0.0;
  for (int i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(dd[i] + std::sin(g.node(i))));
  CHECK(worst < 1e-5);

  const int k = 5;
  const auto sine_k = GridFunction::sample(g, [&](double x) { return std::sin(k * x); });
  const GridFunction ddk = second_difference(sine_k);
  double worst_rel = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    worst_rel = std::max(worst_rel, std::abs(ddk[i] + k * k * std::sin(k * g.node(i))));
  }
  CHECK(worst_rel / (k * k) < 1e-3);
}

TEST_CASE("summation by parts: the second difference is self-adjoint") {
  std::mt19937_64 rng(7);
  const Grid g = build_grid(301);
  for (int trial = 0; trial < 25; ++trial) {
    const GridFunction u = random_function(g, rng);
    const GridFunction v = random_function(g, rng);
    const double lhs = l2_inner(second_difference(u), v);
    const double rhs = l2_inner(u, second_difference(v));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * l2_norm(u) * l2_norm(v));
  }
}

TEST_CASE("h1_distance matches the seminorm of the difference") {
  std::mt19937_64 rng(11);
  const Grid g = build_grid(65);
  const GridFunction a = random_function(g, rng);
  const GridFunction b = random_function(g, rng);
  CHECK(h1_distance(a, b) == doctest::Approx(std::sqrt(h1_seminorm_sq(a - b))).epsilon(1e-12));
}
