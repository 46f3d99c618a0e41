#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlci/grid.hpp"

namespace nlci {

/// Diffusion coefficient a: R+ -> [m, M], globally Lipschitz, non-decreasing,
/// with its analytic derivative.
struct DiffusionSpec {
  std::function<double(double)> value;       // a(s)
  std::function<double(double)> derivative;  // a'(s)
  double lower = 0.0;                        // m
  double upper = 0.0;                        // M
  double lipschitz = 0.0;
  std::string name;

  /// a == 1: recovers the classical local equation.
  static DiffusionSpec constant();
  /// a(s) = 1 + s/(1+s): m=1, M=2, Lipschitz 1, strictly increasing.
  static DiffusionSpec saturating();
  /// Piecewise-linear interpolant of (s, a) knots, constant beyond the last.
  static DiffusionSpec from_table(std::vector<std::pair<double, double>> knots);
};

/// Odd C^2 reaction term with f'(0)=1, f''(u)u<0 off zero, and a
/// dissipativity witness u* (f(u)/u < 0 for |u| >= u*). The closed-form
/// antiderivative F is required by the Lyapunov functional.
struct NonlinearitySpec {
  std::function<double(double)> value;              // f(u)
  std::function<double(double)> derivative;         // f'(u)
  std::function<double(double)> second_derivative;  // f''(u)
  std::function<double(double)> antiderivative;     // F(u) = int_0^u f
  double dissipativity_witness = 0.0;               // u*
  std::string name;

  /// f(u) = u - u^3, F(u) = u^2/2 - u^4/4, u* = 1.
  static NonlinearitySpec cubic();
};

struct ModelConfig {
  DiffusionSpec diffusion;
  NonlinearitySpec nonlinearity;
  double lambda = 0.0;

  ModelConfig(DiffusionSpec d, NonlinearitySpec f, double lam);
};

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::optional<double> witness;  // first sample violating the hypothesis
  std::string detail;
};

struct ValidationReport {
  std::vector<HypothesisCheck> checks;
  bool all_passed() const;
  const HypothesisCheck* find(const std::string& name) const;
};

/// Falsification check of the standing hypotheses on a sample set: bounds,
/// monotonicity and Lipschitz continuity of a; oddness, normalization,
/// concavity pattern and dissipativity of f. Sample-based, not a proof.
/// Samples should include both signs and magnitudes beyond the witness u*.
ValidationReport validate_hypotheses(const ModelConfig& cfg, std::span<const double> samples);

/// V(u) = (1/2) int_0^{||u'||^2} a(s) ds - lambda int_0^pi F(u(x)) dx.
/// The a-antiderivative is evaluated by adaptive quadrature to 1e-10.
double lyapunov(const GridFunction& u, const ModelConfig& cfg);

}  // namespace nlci
