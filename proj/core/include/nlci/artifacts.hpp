#pragma once

#include <span>
#include <string>
#include <vector>

#include "nlci/dynamics.hpp"
#include "nlci/equilibria.hpp"
#include "nlci/spectral.hpp"

namespace nlci {

/// Whole-file atomic write: temp file in the same directory, then rename.
/// Parent directories are created as needed.
void atomic_write_file(const std::string& path, const std::string& content);

/// Shortest-faithful decimal form at 17 significant digits.
std::string format_g17(double v);

std::string equilibria_csv(std::span<const Equilibrium> eqs);
std::string profile_csv(const GridFunction& phi);
std::string spectrum_csv(const Spectrum& spectrum);
std::string scan_csv(const EpsilonScan& scan);

/// Flow table: time, H1 seminorm, Lyapunov value, distance to the nearest
/// enumerated equilibrium.
std::string flow_csv(const Trajectory& traj, std::span<const Equilibrium> equilibria);

struct BifurcationPoint {
  double lambda = 0.0;
  int mode = 0;
  int sign = 0;
  double sup = 0.0;  // max |phi|
  double c = 0.0;
};
std::string bifurcation_csv(std::span<const BifurcationPoint> points);

std::string stability_json(std::span<const StabilityReport> reports);
std::string probe_json(const ProbeReport& report, const std::string& start_id,
                       const std::string& direction, double delta);

/// Filename for a per-equilibrium artifact ("profile_0.csv", "profile_2+.csv").
std::string equilibrium_artifact_name(const std::string& prefix, const Equilibrium& eq,
                                      const std::string& ext);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone SVG line plot; polyline coordinates are affine images of the
/// data values, and the data provenance goes into leading XML comments.
std::string svg_line_plot(const std::string& title, std::span<const Series> series,
                          const std::string& provenance);

struct PlotOutcome {
  std::vector<std::string> written;
  std::vector<std::string> warnings;
};

/// Render SVG plots from the CSV artifacts found in a directory (equilibrium
/// profiles, eigenvalue-vs-epsilon curves, Lyapunov decay, bifurcation
/// diagram). Missing artifacts are skipped with a warning.
PlotOutcome emit_plots(const std::string& artifacts_dir);

}  // namespace nlci
