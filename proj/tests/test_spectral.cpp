#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "nlci/equilibria.hpp"
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

Eigen::MatrixXd dense_eigen(const AssembledOperator& op) {
  const int n = op.size();
  const std::vector<double> d = op.dense();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = d[static_cast<std::size_t>(i) * n + j];
  }
  return m;
}

OperatorSpec plain_laplacian_spec(const Grid& g) {
  return OperatorSpec{GridFunction::zero(g), GridFunction::zero(g), 0.0};
}

}  // namespace

TEST_CASE("assemble: discrete Laplacian spectrum") {
  const Grid g = build_grid(1023);
  const AssembledOperator op = assemble(plain_laplacian_spec(g), g);
  const std::vector<double> vals = eigenvalues_only(op, 3);
  CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(vals[1] == doctest::Approx(-4.0).epsilon(1e-4));
  CHECK(vals[2] == doctest::Approx(-9.0).epsilon(1e-4));
}

TEST_CASE("assemble: constant potential shifts the spectrum") {
  const Grid g = build_grid(511);
  const double p = 2.5;
  OperatorSpec spec{GridFunction::sample(g, [&](double) { return p; }), GridFunction::zero(g),
                    0.0};
  const std::vector<double> vals = eigenvalues_only(assemble(spec, g), 3);
  for (int k = 1; k <= 3; ++k) {
    CHECK(vals[static_cast<std::size_t>(k - 1)] ==
          doctest::Approx(-k * k + p).epsilon(1e-4));
  }
}

TEST_CASE("assemble: epsilon = 0 leaves the matrix tridiagonal") {
  const Grid g = build_grid(63);
  OperatorSpec spec{GridFunction::sample(g, [](double x) { return std::cos(x); }),
                    GridFunction::sample(g, [](double x) { return std::sin(x); }), 0.0};
  const AssembledOperator op = assemble(spec, g);
  CHECK(op.rank_one_weight() == 0.0);
  CHECK(op.entry(0, 5) == 0.0);
  CHECK(op.entry(10, 30) == 0.0);
}

TEST_CASE("assemble: exact entrywise symmetry, coupling difference has rank one") {
  const Grid g = build_grid(60);
  const auto p = GridFunction::sample(g, [](double x) { return std::cos(2 * x); });
  const auto c = GridFunction::sample(g, [](double x) { return std::sin(x) + 0.3; });
  const AssembledOperator a0 = assemble(OperatorSpec{p, c, 0.0}, g);
  const AssembledOperator a1 = assemble(OperatorSpec{p, c, -1.7}, g);

  for (int i = 0; i < a1.size(); ++i) {
    for (int j = 0; j < a1.size(); ++j) {
      CHECK(a1.entry(i, j) == a1.entry(j, i));  // exact, not approximate
    }
  }

  const Eigen::MatrixXd diff = dense_eigen(a1) - dense_eigen(a0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
  CHECK(svd.singularValues()(1) <= 1e-10 * svd.singularValues()(0));
}

TEST_CASE("linearization at the zero equilibrium") {
  const Grid g = build_grid(255);
  SUBCASE("lambda=2, constant a: spectrum {1, -2, -7}") {
    const ModelConfig cfg = constant_a(2.0);
    const OperatorSpec spec = linearization(zero_equilibrium(cfg, g), cfg);
    CHECK(spec.potential[0] == doctest::Approx(2.0));
    CHECK(sup_norm(spec.coupling_profile) == 0.0);
    CHECK(spec.epsilon == 0.0);  // a' = 0
    const std::vector<double> vals = eigenvalues_only(assemble(spec, g), 3);
    CHECK(vals[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(vals[1] == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(vals[2] == doctest::Approx(-7.0).epsilon(1e-4));
  }
  SUBCASE("saturating a: nonlocal term vanishes through f(0) = 0") {
    const ModelConfig cfg = saturating(3.0);
    const OperatorSpec spec = linearization(zero_equilibrium(cfg, g), cfg);
    CHECK(sup_norm(spec.coupling_profile) == 0.0);
    CHECK(spec.epsilon < 0.0);
  }
}

TEST_CASE("linearization at phi_1: epsilon matches the closed formula") {
  const Grid g = build_grid(511);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi1 = solve_equilibrium(cfg, 1, +1, g);
  const OperatorSpec spec = linearization(phi1, cfg);
  const double a = cfg.diffusion.value(phi1.c);
  const double expected = -2.0 * cfg.lambda * cfg.lambda * cfg.diffusion.derivative(phi1.c) /
                          (a * a * a);
  CHECK(spec.epsilon == doctest::Approx(expected).epsilon(1e-12));
  CHECK(spec.epsilon < 0.0);
}

TEST_CASE("eigenpairs agree with the dense oracle and meet the residual contract") {
  const Grid g = build_grid(120);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
  const AssembledOperator op = assemble(linearization(phi2, cfg), g);

  const Spectrum spec = eigenpairs(op, 25);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_eigen(op));
  const double scale = std::abs(es.eigenvalues()(0)) + std::abs(es.eigenvalues()(119));

  for (int k = 0; k < 25; ++k) {
    const double reference = es.eigenvalues()(119 - k);  // Eigen sorts ascending
    CHECK(std::abs(spec.eigenvalues[static_cast<std::size_t>(k)] - reference) <= 1e-10 * scale);
    CHECK(spec.residuals[static_cast<std::size_t>(k)] <=
          1e-8 * (1.0 + std::abs(spec.eigenvalues[static_cast<std::size_t>(k)])));
  }

  // pairwise L2 orthogonality of the eigenvectors
  for (int i = 0; i < 25; ++i) {
    for (int j = i + 1; j < 25; ++j) {
      CHECK(std::abs(l2_inner(spec.eigenvectors[static_cast<std::size_t>(i)],
                              spec.eigenvectors[static_cast<std::size_t>(j)])) <= 1e-8);
    }
  }
  // L2 normalization
  for (int i = 0; i < 25; ++i) {
    CHECK(l2_norm(spec.eigenvectors[static_cast<std::size_t>(i)]) == doctest::Approx(1.0));
  }
}

TEST_CASE("rank-one interlacing for negative coupling") {
  const Grid g = build_grid(150);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
  OperatorSpec spec = linearization(phi2, cfg);
  const OperatorSpec base{spec.potential, spec.coupling_profile, 0.0};
  const std::vector<double> gammas = eigenvalues_only(assemble(base, g), 13);
  const std::vector<double> mus = eigenvalues_only(assemble(spec, g), 12);
  for (int j = 0; j < 12; ++j) {
    CHECK(mus[static_cast<std::size_t>(j)] <= gammas[static_cast<std::size_t>(j)] + 1e-9);
    CHECK(mus[static_cast<std::size_t>(j)] >= gammas[static_cast<std::size_t>(j + 1)] - 1e-9);
  }
}

TEST_CASE("unperturbed spectrum is simple and eigenvectors alternate parity") {
  const Grid g = build_grid(511);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
  OperatorSpec spec = linearization(phi2, cfg);
  spec.epsilon = 0.0;
  const Spectrum base = eigenpairs(assemble(spec, g), 8);

  for (std::size_t k = 1; k < base.eigenvalues.size(); ++k) {
    CHECK(base.eigenvalues[k - 1] - base.eigenvalues[k] > 1e-6);
  }
  for (std::size_t k = 0; k < base.eigenvectors.size(); ++k) {
    const auto& u = base.eigenvectors[k];
    const double parity = (k % 2 == 0) ? 1.0 : -1.0;  // u_1 symmetric, u_2 antisymmetric, ...
    double worst = 0.0;
    const int n = u.size();
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(u[n - 1 - i] - parity * u[i]));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("parity-protected eigenpairs survive the nonlocal coupling") {
  const Grid g = build_grid(511);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
  OperatorSpec spec = linearization(phi2, cfg);
  OperatorSpec base_spec{spec.potential, spec.coupling_profile, 0.0};
  const Spectrum base = eigenpairs(assemble(base_spec, g), 6);
  const AssembledOperator coupled = assemble(spec, g);

  for (int k = 1; k <= 5; k += 2) {  // odd indices for the even mode
    const auto& u = base.eigenvectors[static_cast<std::size_t>(k - 1)];
    std::vector<double> out(static_cast<std::size_t>(u.size()));
    coupled.apply(u.values(), out);
    const double gamma = base.eigenvalues[static_cast<std::size_t>(k - 1)];
    double resid = 0.0;
    for (int i = 0; i < u.size(); ++i) {
      resid = std::max(resid, std::abs(out[static_cast<std::size_t>(i)] - gamma * u[i]));
    }
    CHECK(resid <= 1e-7 * (1.0 + std::abs(gamma)));
  }
}

TEST_CASE("orthogonality_check: parity selection rules") {
  const Grid g = build_grid(511);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
  OperatorSpec base2 = linearization(phi2, cfg);
  base2.epsilon = 0.0;
  const Spectrum spec2 = eigenpairs(assemble(base2, g), 4);
  CHECK(std::abs(orthogonality_scaled(phi2, cfg, spec2, 1)) <= 1e-7);
  CHECK(std::abs(orthogonality_scaled(phi2, cfg, spec2, 3)) <= 1e-7);
  CHECK(std::abs(orthogonality_scaled(phi2, cfg, spec2, 2)) > 1e-3);

  const ModelConfig cfg10 = saturating(10.0);
  const Equilibrium phi3 = solve_equilibrium(cfg10, 3, +1, g);
  OperatorSpec base3 = linearization(phi3, cfg10);
  base3.epsilon = 0.0;
  const Spectrum spec3 = eigenpairs(assemble(base3, g), 4);
  CHECK(std::abs(orthogonality_scaled(phi3, cfg10, spec3, 2)) <= 1e-7);
  CHECK(std::abs(orthogonality_scaled(phi3, cfg10, spec3, 1)) > 1e-3);
}

TEST_CASE("epsilon_scan: zero coupling profile gives constant rows") {
  const Grid g = build_grid(127);
  OperatorSpec spec{GridFunction::sample(g, [](double x) { return std::cos(x); }),
                    GridFunction::zero(g), -1.0};
  const std::vector<double> eps = {-2.0, -1.0, 0.0, 1.0};
  const EpsilonScan scan = epsilon_scan(spec, eps, 4);
  for (std::size_t r = 1; r < scan.rows.size(); ++r) {
    for (std::size_t k = 0; k < scan.rows[r].size(); ++k) {
      CHECK(scan.rows[r][k] == doctest::Approx(scan.rows[0][k]).epsilon(1e-12));
    }
  }
  CHECK(scan.max_monotonicity_violation <= 1e-10);
}

TEST_CASE("epsilon_scan: eigenvalues weakly increase in the coupling") {
  const Grid g = build_grid(255);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
  const OperatorSpec spec = linearization(phi2, cfg);
  std::vector<double> eps;
  for (int i = 0; i <= 20; ++i) eps.push_back(2.0 * spec.epsilon * (1.0 - i / 20.0));
  const EpsilonScan scan = epsilon_scan(spec, eps, 6);
  CHECK(scan.max_monotonicity_violation <= 1e-8);
  // against the dense oracle at a few couplings
  for (std::size_t r : {std::size_t{0}, std::size_t{10}, std::size_t{20}}) {
    OperatorSpec s{spec.potential, spec.coupling_profile, eps[r]};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_eigen(assemble(s, g)),
                                                      Eigen::EigenvaluesOnly);
    for (int k = 0; k < 6; ++k) {
      CHECK(scan.rows[r][static_cast<std::size_t>(k)] ==
            doctest::Approx(es.eigenvalues()(g.size() - 1 - k)).epsilon(1e-8));
    }
  }
}

TEST_CASE("classify: stability pattern across the first window") {
  const Grid g = build_grid(511);
  SUBCASE("zero is stable below the first bifurcation") {
    const ModelConfig cfg = saturating(0.5);
    const StabilityReport rep = classify(zero_equilibrium(cfg, g), cfg);
    CHECK(rep.kind == StabilityKind::Stable);
    CHECK(rep.morse_index == 0);
  }
  SUBCASE("zero is unstable above it") {
    const ModelConfig cfg = saturating(2.0);
    const StabilityReport rep = classify(zero_equilibrium(cfg, g), cfg);
    CHECK(rep.kind == StabilityKind::Unstable);
    CHECK(rep.morse_index >= 1);
  }
  SUBCASE("phi_1 is stable, phi_2 is unstable") {
    const ModelConfig cfg = saturating(6.0);
    const Equilibrium phi1 = solve_equilibrium(cfg, 1, +1, g);
    const Equilibrium phi2 = solve_equilibrium(cfg, 2, -1, g);
    CHECK(classify(phi1, cfg).kind == StabilityKind::Stable);
    const StabilityReport rep2 = classify(phi2, cfg);
    CHECK(rep2.kind == StabilityKind::Unstable);
    CHECK(rep2.morse_index >= 1);
  }
}

TEST_CASE("variational diagnostics: Wronskian constancy and sign structure") {
  const Grid g = build_grid(1023);
  const ModelConfig cfg = saturating(12.0);
  SUBCASE("even mode: w is negative at the first minimum of phi") {
    const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
    const VariationalDiagnostics diag = variational_solution(phi2, cfg);
    CHECK(diag.max_relative_deviation <= 1e-5);
    CHECK(std::isfinite(diag.min_point));
    CHECK(diag.w_at_min_point < 0.0);
  }
  SUBCASE("odd mode >= 3: w vanishes before pi/2") {
    const Equilibrium phi3 = solve_equilibrium(cfg, 3, +1, g);
    const VariationalDiagnostics diag = variational_solution(phi3, cfg);
    CHECK(diag.max_relative_deviation <= 1e-5);
    CHECK(diag.has_zero_before_half);
    CHECK(diag.first_zero < kPi / 2);
  }
  SUBCASE("mode 1 is rejected") {
    const Equilibrium phi1 = solve_equilibrium(cfg, 1, +1, g);
    CHECK_THROWS_AS(variational_solution(phi1, cfg), std::invalid_argument);
  }
}

TEST_CASE("restricted_linearization: half-interval reduction at phi_2") {
  const Grid g = build_grid(511);
  const ModelConfig cfg = saturating(6.0);
  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);

  OperatorSpec half = restricted_linearization(phi2, 2, cfg);
  CHECK(half.potential.grid().size() == 255);
  CHECK(half.epsilon == doctest::Approx(2.0 * linearization(phi2, cfg).epsilon));

  // the positive half-profile is the stable arch: first restricted eigenvalue < 0
  OperatorSpec half0{half.potential, half.coupling_profile, 0.0};
  const std::vector<double> restricted = eigenvalues_only(assemble(half0, half.potential.grid()), 1);
  CHECK(restricted[0] < 0.0);

  OperatorSpec full0 = linearization(phi2, cfg);
  full0.epsilon = 0.0;
  const std::vector<double> gammas = eigenvalues_only(assemble(full0, g), 2);
  CHECK(std::abs(gammas[1] - restricted[0]) <= 1e-5);

  CHECK_THROWS_AS(restricted_linearization(phi2, 3, cfg), std::invalid_argument);
  const Equilibrium phi1 = solve_equilibrium(cfg, 1, +1, g);
  CHECK_THROWS_AS(restricted_linearization(phi1, 2, cfg), std::invalid_argument);
}

TEST_CASE("hyperbolicity certificates: positive limits off the degenerate set") {
  const ModelConfig cfg = saturating(6.0);
  const Grid g = build_grid(255);
  const std::vector<int> grids = {255, 511, 1023};

  const Equilibrium phi1 = solve_equilibrium(cfg, 1, +1, g);
  const GapCertificate cert1 = hyperbolicity_certificate(phi1, cfg, grids);
  CHECK(cert1.converged);
  CHECK(cert1.limit > 1e-3);

  const Equilibrium phi2 = solve_equilibrium(cfg, 2, +1, g);
  const GapCertificate cert2 = hyperbolicity_certificate(phi2, cfg, grids);
  CHECK(cert2.converged);
  CHECK(cert2.limit > 1e-3);

  // the degenerate case lambda = 4 a(0): the zero gap collapses under refinement
  const ModelConfig cfg4 = saturating(4.0);
  const GapCertificate cert0 = hyperbolicity_certificate(zero_equilibrium(cfg4, g), cfg4, grids);
  CHECK_FALSE(cert0.converged);
  CHECK(cert0.gaps.back() < 1e-3);
  CHECK(cert0.gaps.back() < cert0.gaps.front());
}
