// Batch front end for the nonlocal Chafee-Infante laboratory: parses a JSON
// run configuration, dispatches to the computational modules, and emits
// CSV/JSON/SVG artifacts plus the consolidated verification report.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlci/artifacts.hpp"
#include "nlci/dynamics.hpp"
#include "nlci/equilibria.hpp"
#include "nlci/errors.hpp"
#include "nlci/grid.hpp"
#include "nlci/run_config.hpp"
#include "nlci/spectral.hpp"
#include "nlci/verification.hpp"

namespace fs = std::filesystem;
using namespace nlci;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int grid_n = 0;
  double lambda = 0.0;
  std::optional<std::uint64_t> seed;
  int max_n = 0;
};

RunConfig load_config(const CommonFlags& flags) {
  RunConfig cfg = flags.config_path.empty() ? parse_config("{}")
                                            : parse_config_file(flags.config_path);
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.grid_n > 0) cfg.grid_n = flags.grid_n;
  if (flags.lambda > 0.0) cfg.model.lambda = flags.lambda;
  if (flags.seed.has_value()) cfg.seed = *flags.seed;
  if (flags.max_n > 0) cfg.max_det_n = flags.max_n;
  if (cfg.grid_n < 3) throw ConfigError("$.grid_n: must be at least 3");
  return cfg;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
  return fs::path(cfg.out_dir) / name;
}

const Equilibrium& select_equilibrium(const std::vector<Equilibrium>& eqs,
                                      const std::string& id) {
  for (const auto& eq : eqs) {
    const std::string eq_id =
        eq.mode == 0 ? "0" : "phi_" + std::to_string(eq.mode) + (eq.sign >= 0 ? "+" : "-");
    if (eq_id == id) return eq;
  }
  throw ConfigError("$.probe.from: equilibrium \"" + id + "\" is not in the enumerated set");
}

int cmd_equilibria(const RunConfig& cfg) {
  const ModelConfig model = cfg.make_model();
  const Grid grid = cfg.make_grid();
  const auto eqs = enumerate_equilibria(model, grid);
  atomic_write_file(out_path(cfg, "equilibria.csv").string(), equilibria_csv(eqs));
  for (const auto& eq : eqs) {
    atomic_write_file(out_path(cfg, equilibrium_artifact_name("profile", eq, "csv")).string(),
                      profile_csv(eq.phi));
  }
  std::printf("wrote %zu equilibria at lambda=%g to %s\n", eqs.size(), model.lambda,
              cfg.out_dir.c_str());

  if (!cfg.sweep.lambdas.empty()) {
    std::vector<BifurcationPoint> points;
    for (double lam : cfg.sweep.lambdas) {
      const auto sweep_eqs = enumerate_equilibria(cfg.make_model(lam), grid);
      for (const auto& eq : sweep_eqs) {
        points.push_back({lam, eq.mode, eq.sign, sup_norm(eq.phi), eq.c});
      }
    }
    atomic_write_file(out_path(cfg, "bifurcation.csv").string(), bifurcation_csv(points));
    std::printf("wrote bifurcation.csv over %zu lambda values\n", cfg.sweep.lambdas.size());
  }
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const ModelConfig model = cfg.make_model();
  const Grid grid = cfg.make_grid();
  const auto eqs = enumerate_equilibria(model, grid);
  std::vector<StabilityReport> reports;
  for (const auto& eq : eqs) {
    const AssembledOperator op = assemble(linearization(eq, model), grid);
    const Spectrum spectrum = eigenpairs(op, 12);
    atomic_write_file(out_path(cfg, equilibrium_artifact_name("spectrum", eq, "csv")).string(),
                      spectrum_csv(spectrum));
    reports.push_back(classify(eq, model, cfg.hyperbolicity_tol));
  }
  atomic_write_file(out_path(cfg, "stability.json").string(), stability_json(reports));
  std::printf("wrote spectra and stability.json for %zu equilibria\n", eqs.size());
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  const ModelConfig model = cfg.make_model();
  const Grid grid = cfg.make_grid();
  const auto eqs = enumerate_equilibria(model, grid);
  const Equilibrium* target = nullptr;
  for (const auto& eq : eqs) {
    if (eq.mode >= 2 && eq.sign > 0) {
      target = &eq;
      break;
    }
  }
  if (target == nullptr) {
    std::fprintf(stderr, "no sign-changing equilibrium at lambda=%g\n", model.lambda);
    return 2;
  }
  const OperatorSpec spec = linearization(*target, model);
  std::vector<double> eps_list(static_cast<std::size_t>(cfg.scan.points));
  for (int i = 0; i < cfg.scan.points; ++i) {
    eps_list[static_cast<std::size_t>(i)] =
        2.0 * spec.epsilon * (1.0 - static_cast<double>(i) / (cfg.scan.points - 1));
  }
  const EpsilonScan scan = epsilon_scan(spec, eps_list, cfg.scan.track);
  atomic_write_file(out_path(cfg, "scan.csv").string(), scan_csv(scan));
  std::printf("wrote scan.csv: %d couplings, top %d eigenvalues, max violation %.3g\n",
              cfg.scan.points, cfg.scan.track, scan.max_monotonicity_violation);
  return 0;
}

int cmd_flow(const RunConfig& cfg) {
  const ModelConfig model = cfg.make_model();
  const Grid grid = cfg.make_grid();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coef(-cfg.flow.amplitude, cfg.flow.amplitude);
  std::vector<double> modes(5);
  for (double& v : modes) v = coef(rng);
  const GridFunction u0 = GridFunction::sample(grid, [&modes](double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) s += modes[k] * std::sin((k + 1) * x);
    return s;
  });

  IntegrationOptions opts;
  opts.dt = cfg.flow.dt;
  opts.stride = cfg.flow.stride;
  const Trajectory traj = (cfg.flow.formulation == "semilinear")
                              ? integrate_semilinear(u0, model, cfg.flow.t_end, opts)
                              : integrate_quasilinear(u0, model, cfg.flow.t_end, opts);
  const auto eqs = enumerate_equilibria(model, grid);
  atomic_write_file(out_path(cfg, "flow.csv").string(), flow_csv(traj, eqs));
  std::printf("wrote flow.csv: %zu samples over %s time %g\n", traj.times.size(),
              to_string(traj.formulation).c_str(), cfg.flow.t_end);
  return 0;
}

int cmd_probe(const RunConfig& cfg) {
  const ModelConfig model = cfg.make_model();
  const Grid grid = cfg.make_grid();
  const auto eqs = enumerate_equilibria(model, grid);
  const Equilibrium& start = select_equilibrium(eqs, cfg.probe.from);

  GridFunction direction = GridFunction::zero(grid);
  if (cfg.probe.direction == "sin") {
    direction = GridFunction::sample(grid, [](double x) { return std::sin(x); });
  } else if (cfg.probe.direction == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> modes(5);
    for (double& v : modes) v = coef(rng);
    direction = GridFunction::sample(grid, [&modes](double x) {
      double s = 0.0;
      for (std::size_t k = 0; k < modes.size(); ++k) s += modes[k] * std::sin((k + 1) * x);
      return s;
    });
  } else {  // leading eigenvector of the linearization
    const Spectrum spectrum = eigenpairs(assemble(linearization(start, model), grid), 1);
    direction = spectrum.eigenvectors[0];
  }
  direction = (1.0 / std::sqrt(h1_seminorm_sq(direction))) * direction;

  ProbeOptions opts;
  opts.t_max = cfg.probe.t_max;
  const ProbeReport report =
      unstable_probe(start, direction, cfg.probe.delta, model, eqs, opts);
  atomic_write_file(out_path(cfg, "probe.json").string(),
                    probe_json(report, cfg.probe.from, cfg.probe.direction, cfg.probe.delta));
  std::printf("probe from %s settled at mode %d (sign %+d) at t=%g\n", cfg.probe.from.c_str(),
              report.target_mode, report.target_sign, report.settle_time);
  return 0;
}

int cmd_verify(const RunConfig& cfg, int max_n) {
  (void)max_n;
  const VerificationReport report = run_verify(cfg);
  const std::string text = render_text(report);
  std::fputs(text.c_str(), stdout);
  atomic_write_file(out_path(cfg, "report.json").string(), report_json(report, cfg));
  atomic_write_file(out_path(cfg, "verification.txt").string(), text);
  return report.ok() ? 0 : 1;
}

int cmd_verify_determinants(const RunConfig& cfg) {
  // pass/fail table for the integer lemmas up to the configured bound
  int failures = 0;
  std::printf("%-6s %-22s %-22s %s\n", "n", "det", "expected", "status");
  for (int j = 2; j <= cfg.max_det_n + 10; ++j) {
    const std::int64_t det = exact_det(build_tridiag(j - 1));
    const bool ok = det == j;
    failures += !ok;
    if (j <= 12 || !ok) {
      std::printf("L%-5d %-22lld %-22d %s\n", j, static_cast<long long>(det), j,
                  ok ? "pass" : "FAIL");
    }
  }
  for (int n = 2; n <= cfg.max_det_n; ++n) {
    const std::int64_t det = exact_det(build_alternating(n));
    const std::int64_t expected = (n % 2 == 0 ? 1 : -1) * (2LL * n + 1);
    const bool ok = det == expected;
    failures += !ok;
    std::printf("A%-5d %-22lld %-22lld %s\n", n, static_cast<long long>(det),
                static_cast<long long>(expected), ok ? "pass" : "FAIL");
  }
  std::printf("%s\n", failures == 0 ? "all determinant identities hold" : "FAILURES present");
  return failures == 0 ? 0 : 1;
}

int cmd_report(const RunConfig& cfg) {
  const PlotOutcome outcome = emit_plots(cfg.out_dir);
  for (const auto& w : outcome.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& f : outcome.written) std::printf("wrote %s\n", f.c_str());

  const fs::path report_path = out_path(cfg, "report.json");
  if (fs::exists(report_path)) {
    std::ifstream in(report_path);
    const auto root = nlohmann::json::parse(in);
    const auto& summary = root.at("summary");
    std::printf("verification summary: %d passed, %d failed, %d margin\n",
                summary.at("passed").get<int>(), summary.at("failed").get<int>(),
                summary.at("margin").get<int>());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the scalar nonlocal quasilinear parabolic problem "
               "u_t = a(||u_x||^2) u_xx + lambda f(u) on (0, pi)"};
  app.require_subcommand(1);

  CommonFlags flags;
  app.add_option("--config", flags.config_path, "JSON run configuration");
  app.add_option("--out", flags.out_dir, "output directory (overrides config)");
  app.add_option("--grid", flags.grid_n, "interior grid nodes (overrides config)");
  app.add_option("--lambda", flags.lambda, "bifurcation parameter (overrides config)");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "seed for random directions");
  app.add_option("--max-n", flags.max_n, "bound for the determinant table");

  auto* sub_equilibria = app.add_subcommand("equilibria", "enumerate equilibria, write CSV");
  auto* sub_spectrum = app.add_subcommand("spectrum", "spectra and stability classification");
  auto* sub_scan = app.add_subcommand("scan", "eigenvalues against the nonlocal coupling");
  auto* sub_flow = app.add_subcommand("flow", "integrate a trajectory, write the flow table");
  auto* sub_probe = app.add_subcommand("probe", "connection probe from an equilibrium");
  auto* sub_verify = app.add_subcommand("verify", "run the verification suite");
  std::string lemma;
  sub_verify->add_option("--lemma", lemma, "print a lemma table instead (determinants)");
  auto* sub_report = app.add_subcommand("report", "render plots and summarize a report");

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) flags.seed = seed_value;

  try {
    const RunConfig cfg = load_config(flags);
    if (sub_equilibria->parsed()) return cmd_equilibria(cfg);
    if (sub_spectrum->parsed()) return cmd_spectrum(cfg);
    if (sub_scan->parsed()) return cmd_scan(cfg);
    if (sub_flow->parsed()) return cmd_flow(cfg);
    if (sub_probe->parsed()) return cmd_probe(cfg);
    if (sub_verify->parsed()) {
      if (lemma == "determinants") return cmd_verify_determinants(cfg);
      if (!lemma.empty()) throw ConfigError("unknown lemma table: " + lemma);
      return cmd_verify(cfg, flags.max_n);
    }
    if (sub_report->parsed()) return cmd_report(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
