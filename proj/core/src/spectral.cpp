#include "nlci/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlci/errors.hpp"

namespace nlci {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Characteristic size of the operator's data (potential plus nonlocal term),
/// independent of the 1/h^2 stiffness of the difference stencil. Gap-based
/// simplicity thresholds are relative to this scale.
double operator_scale(const AssembledOperator& op) {
  const double h = op.grid().spacing();
  const double two_inv_h2 = 2.0 / (h * h);
  double p_scale = 0.0;
  for (double d : op.tridiagonal().diag) p_scale = std::max(p_scale, std::abs(d + two_inv_h2));
  double vv = 0.0;
  for (double v : op.rank_one_profile()) vv += v * v;
  return std::max(1.0, p_scale + std::abs(op.rank_one_weight()) * vv);
}

/// k-th largest eigenvalue (1-based) by bisection on the inertia count.
double kth_largest(const AssembledOperator& op, int k, double lo, double hi) {
  const int n = op.size();
  const auto& t = op.tridiagonal();
  const double rho = op.rank_one_weight();
  const auto v = op.rank_one_profile();
  const int target = n - k;  // want count_below(mu-) <= target < count_below(mu+)
  for (int it = 0;
       it < 160 && hi - lo > 1e-15 * std::max({std::abs(lo), std::abs(hi), 1.0}); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(t, rho, v, mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> top_values(const AssembledOperator& op, int count) {
  const int n = op.size();
  const int k_max = (count < 0 || count > n) ? n : count;
  const auto [lo, hi] = spectrum_bounds(op.tridiagonal(), op.rank_one_weight(),
                                        op.rank_one_profile());
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(k_max));
  double upper = hi;
  for (int k = 1; k <= k_max; ++k) {
    const double mu = kth_largest(op, k, lo, upper);
    vals.push_back(mu);
    upper = mu + 1e-12 * std::max(1.0, std::abs(mu));  // next value cannot exceed this
  }
  return vals;
}

/// Deterministic start vector: k-th sine mode plus mixed-parity jitter so the
/// iteration never starts exactly orthogonal to the target.
std::vector<double> start_vector(int n, int k) {
  std::vector<double> x(static_cast<std::size_t>(n));
  std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(k) << 32) ^
                        static_cast<std::uint64_t>(n);
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double jitter = static_cast<double>(static_cast<std::int64_t>(state >> 11)) /
                          static_cast<double>(1LL << 52);
    x[static_cast<std::size_t>(i)] =
        std::sin(static_cast<double>(k) * kPi * (i + 1) / (n + 1)) + 0.02 * jitter;
  }
  return x;
}

void normalize_euclid(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  if (s == 0.0) return;
  for (double& v : x) v /= s;
}

void orthogonalize(std::vector<double>& x, const std::vector<std::vector<double>>& basis,
                   std::span<const int> indices) {
  for (int j : indices) {
    const auto& b = basis[static_cast<std::size_t>(j)];
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * b[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * b[i];
  }
}

}  // namespace

OperatorSpec linearization(const Equilibrium& eq, const ModelConfig& cfg) {
  const double a = cfg.diffusion.value(eq.c);
  const double a_prime = cfg.diffusion.derivative(eq.c);
  const double lambda = cfg.lambda;
  GridFunction p = apply_pointwise(
      eq.phi, [&](double v) { return lambda * cfg.nonlinearity.derivative(v) / a; });
  GridFunction cvec = apply_pointwise(eq.phi, [&](double v) { return cfg.nonlinearity.value(v); });
  const double epsilon = -2.0 * lambda * lambda * a_prime / (a * a * a);
  return OperatorSpec{std::move(p), std::move(cvec), epsilon};
}

AssembledOperator::AssembledOperator(SymTridiag tridiag, double rho, std::vector<double> profile,
                                     Grid grid)
    : tridiag_(std::move(tridiag)), rho_(rho), profile_(std::move(profile)), grid_(grid) {
  if (tridiag_.size() != static_cast<int>(profile_.size()) || tridiag_.size() != grid_.size()) {
    throw std::invalid_argument("AssembledOperator: size mismatch");
  }
}

void AssembledOperator::apply(std::span<const double> x, std::span<double> y) const {
  const int n = size();
  double vx = 0.0;
  for (int i = 0; i < n; ++i) vx += profile_[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i) {
    double s = tridiag_.diag[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    if (i > 0) s += tridiag_.off[static_cast<std::size_t>(i - 1)] * x[static_cast<std::size_t>(i - 1)];
    if (i < n - 1) s += tridiag_.off[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)];
    y[static_cast<std::size_t>(i)] = s + rho_ * vx * profile_[static_cast<std::size_t>(i)];
  }
}

double AssembledOperator::entry(int i, int j) const {
  double s = rho_ * profile_[static_cast<std::size_t>(i)] * profile_[static_cast<std::size_t>(j)];
  if (i == j) s += tridiag_.diag[static_cast<std::size_t>(i)];
  if (std::abs(i - j) == 1) s += tridiag_.off[static_cast<std::size_t>(std::min(i, j))];
  return s;
}

std::vector<double> AssembledOperator::dense() const {
  const int n = size();
  std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
          entry(i, j);
    }
  }
  return m;
}

AssembledOperator assemble(const OperatorSpec& spec, const Grid& grid) {
  if (spec.potential.grid() != grid || spec.coupling_profile.grid() != grid) {
    throw std::invalid_argument("assemble: operator data lives on a different grid");
  }
  const int n = grid.size();
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  SymTridiag t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.off.assign(static_cast<std::size_t>(n - 1), inv_h2);
  for (int i = 0; i < n; ++i) {
    t.diag[static_cast<std::size_t>(i)] = -2.0 * inv_h2 + spec.potential[i];
  }
  std::vector<double> profile(spec.coupling_profile.values().begin(),
                              spec.coupling_profile.values().end());
  return AssembledOperator(std::move(t), spec.epsilon * grid.spacing(), std::move(profile), grid);
}

std::vector<double> eigenvalues_only(const AssembledOperator& op, int count) {
  return top_values(op, count);
}

Spectrum eigenpairs(const AssembledOperator& op, int count) {
  const int n = op.size();
  const int k_max = (count < 0 || count > n) ? n : count;
  const double scale = operator_scale(op);

  // one extra value for the trailing gap flag when it exists
  std::vector<double> vals = top_values(op, std::min(k_max + 1, n));

  const auto& t = op.tridiagonal();
  const double rho = op.rank_one_weight();
  const auto prof = op.rank_one_profile();
  const double h = op.grid().spacing();

  Spectrum spec;
  spec.eigenvalues.assign(vals.begin(), vals.begin() + k_max);
  spec.residuals.resize(static_cast<std::size_t>(k_max));
  spec.simple.resize(static_cast<std::size_t>(k_max));
  spec.eigenvectors.reserve(static_cast<std::size_t>(k_max));

  std::vector<std::vector<double>> raw(static_cast<std::size_t>(k_max));
  const double cluster_tol = 1e-9 * scale;

  for (int k = 0; k < k_max; ++k) {
    const double mu = spec.eigenvalues[static_cast<std::size_t>(k)];
    std::vector<int> cluster;
    for (int j = 0; j < k; ++j) {
      if (std::abs(spec.eigenvalues[static_cast<std::size_t>(j)] - mu) < cluster_tol) {
        cluster.push_back(j);
      }
    }
    std::vector<double> x = start_vector(n, k + 1);
    orthogonalize(x, raw, cluster);
    normalize_euclid(x);

    double res = kInf;
    std::vector<double> ax(static_cast<std::size_t>(n));
    for (int it = 0; it < 12; ++it) {
      x = solve_shifted_rank_one(t, mu, rho, prof, x);
      orthogonalize(x, raw, cluster);
      normalize_euclid(x);
      op.apply(x, ax);
      double num = 0.0;
      for (int i = 0; i < n; ++i) num += x[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)];
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = ax[static_cast<std::size_t>(i)] - num * x[static_cast<std::size_t>(i)];
        r2 += d * d;
      }
      res = std::sqrt(r2);
      if (it >= 1 && res <= 1e-10 * (1.0 + std::abs(mu))) break;
    }
    if (res > 1e-8 * (1.0 + std::abs(mu))) {
      throw NonConvergenceError("eigenpairs: residual stalled at index " + std::to_string(k + 1));
    }

    // sign fix: first significantly nonzero component positive
    double lead = 0.0;
    for (double v : x) {
      if (std::abs(v) > 1e-8) {
        lead = v;
        break;
      }
    }
    if (lead < 0.0) {
      for (double& v : x) v = -v;
    }
    raw[static_cast<std::size_t>(k)] = x;

    // L2 normalization (Euclidean unit -> divide by sqrt(h))
    std::vector<double> nodal = x;
    const double inv = 1.0 / std::sqrt(h);
    for (double& v : nodal) v *= inv;
    spec.eigenvectors.emplace_back(op.grid(), std::move(nodal));
    // x is Euclidean-unit, so the L2 residual of the L2-normalized pair
    // equals the Euclidean residual.
    spec.residuals[static_cast<std::size_t>(k)] = res;
  }

  const double gap_tol = 1e-6 * scale;
  for (int k = 0; k < k_max; ++k) {
    double gap = kInf;
    if (k > 0) {
      gap = std::min(gap, std::abs(vals[static_cast<std::size_t>(k - 1)] -
                                   vals[static_cast<std::size_t>(k)]));
    }
    if (k + 1 < static_cast<int>(vals.size())) {
      gap = std::min(gap, std::abs(vals[static_cast<std::size_t>(k)] -
                                   vals[static_cast<std::size_t>(k + 1)]));
    }
    spec.simple[static_cast<std::size_t>(k)] = gap > gap_tol;
  }
  return spec;
}

std::string to_string(StabilityKind k) {
  switch (k) {
    case StabilityKind::Stable: return "stable";
    case StabilityKind::Unstable: return "unstable";
    case StabilityKind::Margin: return "margin";
  }
  return "unknown";
}

namespace {

/// Top eigenvalues extended until everything below is more negative than both
/// the tolerance and the smallest magnitude seen (so Morse counts and the
/// spectral gap are decided by the returned prefix).
std::vector<double> leading_values(const AssembledOperator& op, double tol) {
  int k = 12;
  for (;;) {
    const int k_eff = std::min(k, op.size());
    std::vector<double> vals = eigenvalues_only(op, k_eff);
    double min_abs = kInf;
    for (double v : vals) min_abs = std::min(min_abs, std::abs(v));
    if (k_eff == op.size() || vals.back() < -std::max(tol, min_abs)) return vals;
    k *= 2;
  }
}

std::string equilibrium_id(const Equilibrium& eq) {
  if (eq.mode == 0) return "0";
  return "phi_" + std::to_string(eq.mode) + (eq.sign >= 0 ? "+" : "-");
}

}  // namespace

StabilityReport classify(const Equilibrium& eq, const ModelConfig& cfg, double hyperbolicity_tol) {
  const AssembledOperator op = assemble(linearization(eq, cfg), eq.phi.grid());
  const std::vector<double> vals = leading_values(op, hyperbolicity_tol);

  StabilityReport report;
  report.id = equilibrium_id(eq);
  report.leading = vals.front();
  report.spectral_gap = kInf;
  report.morse_index = 0;
  bool margin = false;
  for (double v : vals) {
    report.spectral_gap = std::min(report.spectral_gap, std::abs(v));
    if (v > hyperbolicity_tol) ++report.morse_index;
    if (std::abs(v) <= hyperbolicity_tol) margin = true;
  }
  if (margin) {
    report.kind = StabilityKind::Margin;
  } else if (report.leading < -hyperbolicity_tol) {
    report.kind = StabilityKind::Stable;
  } else {
    report.kind = StabilityKind::Unstable;
  }
  return report;
}

EpsilonScan epsilon_scan(const OperatorSpec& spec, std::span<const double> eps_list, int track) {
  const Grid& grid = spec.potential.grid();
  for (std::size_t r = 1; r < eps_list.size(); ++r) {
    if (!(eps_list[r] >= eps_list[r - 1])) {
      throw std::invalid_argument("epsilon_scan: eps_list must be sorted ascending");
    }
  }
  EpsilonScan scan;
  scan.epsilons.assign(eps_list.begin(), eps_list.end());

  const OperatorSpec base_spec{spec.potential, spec.coupling_profile, 0.0};
  const AssembledOperator base = assemble(base_spec, grid);
  const std::vector<double> gammas = eigenvalues_only(base, std::min(track + 2, base.size()));
  const double near_tol = 1e-6 * operator_scale(base);

  for (double eps : eps_list) {
    const OperatorSpec s{spec.potential, spec.coupling_profile, eps};
    const AssembledOperator op = assemble(s, grid);
    std::vector<double> row = eigenvalues_only(op, std::min(track, op.size()));
    std::vector<bool> flags(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      bool near = false;
      for (double g : gammas) {
        if (std::abs(row[i] - g) <= near_tol) {
          near = true;
          break;
        }
      }
      flags[i] = near;
    }
    scan.rows.push_back(std::move(row));
    scan.near_unperturbed.push_back(std::move(flags));
  }

  for (std::size_t r = 1; r < scan.rows.size(); ++r) {
    for (std::size_t i = 0; i < scan.rows[r].size(); ++i) {
      scan.max_monotonicity_violation =
          std::max(scan.max_monotonicity_violation, scan.rows[r - 1][i] - scan.rows[r][i]);
    }
  }
  return scan;
}

double orthogonality_check(const Equilibrium& eq, const ModelConfig& cfg, const Spectrum& base,
                           int k) {
  if (k < 1 || k > static_cast<int>(base.eigenvectors.size())) {
    throw std::invalid_argument("orthogonality_check: index out of range");
  }
  const GridFunction f_phi =
      apply_pointwise(eq.phi, [&](double v) { return cfg.nonlinearity.value(v); });
  return l2_inner(f_phi, base.eigenvectors[static_cast<std::size_t>(k - 1)]);
}

double orthogonality_scaled(const Equilibrium& eq, const ModelConfig& cfg, const Spectrum& base,
                            int k) {
  const GridFunction f_phi =
      apply_pointwise(eq.phi, [&](double v) { return cfg.nonlinearity.value(v); });
  const double denom =
      l2_norm(f_phi) * l2_norm(base.eigenvectors[static_cast<std::size_t>(k - 1)]);
  if (denom == 0.0) return 0.0;
  return orthogonality_check(eq, cfg, base, k) / denom;
}

namespace {

/// Cubic interpolation of the equilibrium profile with odd-reflection ghost
/// values at both endpoints (exact for the profile's symmetry class).
class ProfileInterpolant {
 public:
  explicit ProfileInterpolant(const GridFunction& phi)
      : h_(phi.grid().spacing()), n_(phi.size()) {
    padded_.resize(static_cast<std::size_t>(n_) + 4);
    padded_[0] = -phi[0];                       // x = -h
    padded_[1] = 0.0;                           // x = 0
    for (int i = 0; i < n_; ++i) padded_[static_cast<std::size_t>(i + 2)] = phi[i];
    padded_[static_cast<std::size_t>(n_ + 2)] = 0.0;       // x = L
    padded_[static_cast<std::size_t>(n_ + 3)] = -phi[n_ - 1];  // x = L + h
  }

  double operator()(double x) const {
    // values at x = (j-1) h for padded index j
    double u = x / h_;
    int cell = static_cast<int>(std::floor(u));
    cell = std::clamp(cell, 0, n_);
    const double tloc = u - cell;
    const int base = cell;  // padded index of the node left of x
    const double ym1 = padded_[static_cast<std::size_t>(base)];
    const double y0 = padded_[static_cast<std::size_t>(base + 1)];
    const double y1 = padded_[static_cast<std::size_t>(base + 2)];
    const double y2 = padded_[static_cast<std::size_t>(base + 3)];
    const double a = y0;
    const double b = 0.5 * (y1 - ym1);
    const double c = ym1 - 2.5 * y0 + 2.0 * y1 - 0.5 * y2;
    const double d = 0.5 * (y2 - ym1) + 1.5 * (y0 - y1);
    return a + tloc * (b + tloc * (c + tloc * d));
  }

 private:
  double h_;
  int n_;
  std::vector<double> padded_;
};

}  // namespace

VariationalDiagnostics variational_solution(const Equilibrium& eq, const ModelConfig& cfg) {
  if (eq.mode < 2) {
    throw std::invalid_argument("variational_solution: requires a sign-changing mode (>= 2)");
  }
  const Grid& grid = eq.phi.grid();
  const int n = grid.size();
  const double h = grid.spacing();
  const double a = cfg.diffusion.value(eq.c);
  const double lam_over_a = cfg.lambda / a;
  const auto& f = cfg.nonlinearity;

  // work on the positive-slope representative; diagnostics are sign-covariant
  const GridFunction phi = (eq.sign >= 0) ? eq.phi : -eq.phi;
  const ProfileInterpolant interp(phi);
  auto q = [&](double x) { return lam_over_a * f.derivative(interp(x)); };

  VariationalDiagnostics diag;
  diag.w.resize(static_cast<std::size_t>(n));
  diag.w_prime.resize(static_cast<std::size_t>(n));

  // RK4 on (w, w') with step h/2
  double w = 0.0, wp = 1.0;
  const double dt = 0.5 * h;
  for (int i = 0; i < n; ++i) {
    for (int sub = 0; sub < 2; ++sub) {
      const double x = i * h + sub * dt;
      const double k1w = wp, k1p = -q(x) * w;
      const double k2w = wp + 0.5 * dt * k1p, k2p = -q(x + 0.5 * dt) * (w + 0.5 * dt * k1w);
      const double k3w = wp + 0.5 * dt * k2p, k3p = -q(x + 0.5 * dt) * (w + 0.5 * dt * k2w);
      const double k4w = wp + dt * k3p, k4p = -q(x + dt) * (w + dt * k3w);
      w += dt * (k1w + 2.0 * k2w + 2.0 * k3w + k4w) / 6.0;
      wp += dt * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0;
    }
    diag.w[static_cast<std::size_t>(i)] = w;
    diag.w_prime[static_cast<std::size_t>(i)] = wp;
  }

  // v = phi' by 4th-order central differences with odd-reflection ghosts,
  // v' = phi'' = -mu f(phi) from the equation itself
  auto padded = [&](int j) -> double {  // nodal value at index j, 1..n interior
    if (j >= 1 && j <= n) return phi[j - 1];
    if (j == 0 || j == n + 1) return 0.0;
    if (j == -1) return -phi[0];
    if (j == n + 2) return -phi[n - 1];
    throw std::logic_error("profile ghost out of range");
  };
  const double phi_prime_0 = (8.0 * padded(1) - padded(2)) / (6.0 * h);
  diag.wronskian_reference = phi_prime_0;

  double max_dev = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double v =
        (-padded(i + 2) + 8.0 * padded(i + 1) - 8.0 * padded(i - 1) + padded(i - 2)) / (12.0 * h);
    const double v_prime = -eq.mu * f.value(padded(i));
    const double wr = diag.w_prime[static_cast<std::size_t>(i - 1)] * v -
                      diag.w[static_cast<std::size_t>(i - 1)] * v_prime;
    max_dev = std::max(max_dev, std::abs(wr - phi_prime_0));
  }
  diag.max_relative_deviation = max_dev / std::abs(phi_prime_0);

  // first interior local minimum of phi with negative value (even modes)
  diag.min_point = std::numeric_limits<double>::quiet_NaN();
  diag.w_at_min_point = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i + 1 < n; ++i) {
    if (phi[i] < 0.0 && phi[i] <= phi[i - 1] && phi[i] <= phi[i + 1]) {
      diag.min_point = grid.node(i);
      diag.w_at_min_point = diag.w[static_cast<std::size_t>(i)];
      break;
    }
  }

  // first sign change of w before pi/2 (odd modes >= 3)
  diag.has_zero_before_half = false;
  diag.first_zero = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i < n && grid.node(i) < 0.5 * kPi; ++i) {
    const double w0 = diag.w[static_cast<std::size_t>(i - 1)];
    const double w1 = diag.w[static_cast<std::size_t>(i)];
    if ((w0 > 0.0 && w1 <= 0.0) || (w0 < 0.0 && w1 >= 0.0)) {
      diag.has_zero_before_half = true;
      diag.first_zero = grid.node(i - 1) + h * w0 / (w0 - w1);
      break;
    }
  }
  return diag;
}

OperatorSpec restricted_linearization(const Equilibrium& eq, int divisor, const ModelConfig& cfg) {
  if (divisor < 2 || (divisor & (divisor - 1)) != 0) {
    throw std::invalid_argument("restricted_linearization: divisor must be a power of two >= 2");
  }
  if (eq.mode <= 0 || eq.mode % divisor != 0) {
    throw std::invalid_argument(
        "restricted_linearization: divisor does not match the mode's symmetry class");
  }
  const Grid& grid = eq.phi.grid();
  if ((grid.size() + 1) % divisor != 0) {
    throw std::invalid_argument("restricted_linearization: grid not divisible by divisor");
  }
  const OperatorSpec full = linearization(eq, cfg);
  const int n_sub = (grid.size() + 1) / divisor - 1;
  const Grid sub = Grid::with_spacing(n_sub, grid.spacing());
  std::vector<double> p(full.potential.values().begin(),
                        full.potential.values().begin() + n_sub);
  std::vector<double> c(full.coupling_profile.values().begin(),
                        full.coupling_profile.values().begin() + n_sub);
  return OperatorSpec{GridFunction(sub, std::move(p)), GridFunction(sub, std::move(c)),
                      full.epsilon * divisor};
}

GapCertificate hyperbolicity_certificate(const Equilibrium& eq, const ModelConfig& cfg,
                                         std::span<const int> grid_sizes) {
  GapCertificate cert;
  for (int n : grid_sizes) {
    const Grid grid = build_grid(n);
    const Equilibrium local = (eq.mode == 0) ? zero_equilibrium(cfg, grid)
                                             : solve_equilibrium(cfg, eq.mode, eq.sign, grid);
    const AssembledOperator op = assemble(linearization(local, cfg), grid);
    const std::vector<double> vals = leading_values(op, 0.0);
    double gap = kInf;
    for (double v : vals) gap = std::min(gap, std::abs(v));
    cert.grid_sizes.push_back(n);
    cert.gaps.push_back(gap);
  }
  cert.limit = cert.gaps.empty() ? 0.0 : cert.gaps.back();
  cert.converged = !cert.gaps.empty() && cert.limit > 1e-3;
  for (std::size_t i = 1; i < cert.gaps.size(); ++i) {
    const double rel = std::abs(cert.gaps[i] - cert.gaps[i - 1]) /
                       std::max(cert.gaps[i - 1], std::numeric_limits<double>::min());
    if (rel >= 0.10) cert.converged = false;
  }
  return cert;
}

}  // namespace nlci
