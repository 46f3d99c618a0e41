#include "nlci/artifacts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace nlci {

void atomic_write_file(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string equilibria_csv(std::span<const Equilibrium> eqs) {
  std::ostringstream out;
  out << "mode,sign,c,mu,residual,max_abs\n";
  for (const auto& eq : eqs) {
    out << eq.mode << ',' << eq.sign << ',' << format_g17(eq.c) << ',' << format_g17(eq.mu)
        << ',' << format_g17(eq.residual) << ',' << format_g17(sup_norm(eq.phi)) << '\n';
  }
  return out.str();
}

std::string profile_csv(const GridFunction& phi) {
  std::ostringstream out;
  out << "x,phi\n";
  out << "0,0\n";
  for (int i = 0; i < phi.size(); ++i) {
    out << format_g17(phi.grid().node(i)) << ',' << format_g17(phi[i]) << '\n';
  }
  out << format_g17(phi.grid().length()) << ",0\n";
  return out.str();
}

std::string spectrum_csv(const Spectrum& spectrum) {
  std::ostringstream out;
  out << "index,value,residual,simple\n";
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    out << (k + 1) << ',' << format_g17(spectrum.eigenvalues[k]) << ','
        << format_g17(spectrum.residuals[k]) << ',' << (spectrum.simple[k] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string scan_csv(const EpsilonScan& scan) {
  std::ostringstream out;
  std::size_t track = 0;
  for (const auto& row : scan.rows) track = std::max(track, row.size());
  out << "epsilon";
  for (std::size_t k = 1; k <= track; ++k) out << ",mu_" << k;
  out << '\n';
  for (std::size_t r = 0; r < scan.rows.size(); ++r) {
    out << format_g17(scan.epsilons[r]);
    for (double v : scan.rows[r]) out << ',' << format_g17(v);
    out << '\n';
  }
  return out.str();
}

std::string flow_csv(const Trajectory& traj, std::span<const Equilibrium> equilibria) {
  std::ostringstream out;
  out << (traj.formulation == Formulation::Quasilinear ? "t" : "tau")
      << ",h1_norm,lyapunov,dist_nearest_equilibrium\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    double nearest = std::numeric_limits<double>::quiet_NaN();
    for (const auto& eq : equilibria) {
      const double d = h1_distance(traj.states[k], eq.phi);
      if (std::isnan(nearest) || d < nearest) nearest = d;
    }
    out << format_g17(traj.times[k]) << ','
        << format_g17(std::sqrt(h1_seminorm_sq(traj.states[k]))) << ','
        << format_g17(traj.lyapunov_values[k]) << ',' << format_g17(nearest) << '\n';
  }
  return out.str();
}

std::string bifurcation_csv(std::span<const BifurcationPoint> points) {
  std::ostringstream out;
  out << "lambda,mode,sign,max_abs,c\n";
  for (const auto& p : points) {
    out << format_g17(p.lambda) << ',' << p.mode << ',' << p.sign << ',' << format_g17(p.sup)
        << ',' << format_g17(p.c) << '\n';
  }
  return out.str();
}

std::string stability_json(std::span<const StabilityReport> reports) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << "  {\"id\": \"" << r.id << "\", \"classification\": \"" << to_string(r.kind)
        << "\", \"morse_index\": " << r.morse_index
        << ", \"spectral_gap\": " << format_g17(r.spectral_gap)
        << ", \"leading\": " << format_g17(r.leading) << "}";
    out << (i + 1 < reports.size() ? ",\n" : "\n");
  }
  out << "]\n";
  return out.str();
}

std::string probe_json(const ProbeReport& report, const std::string& start_id,
                       const std::string& direction, double delta) {
  std::ostringstream out;
  const std::string target = report.target_mode == 0
                                 ? std::string("0")
                                 : "phi_" + std::to_string(report.target_mode) +
                                       (report.target_sign >= 0 ? "+" : "-");
  out << "{\n";
  out << "  \"start\": \"" << start_id << "\",\n";
  out << "  \"direction\": \"" << direction << "\",\n";
  out << "  \"delta\": " << format_g17(delta) << ",\n";
  out << "  \"target\": \"" << target << "\",\n";
  if (report.escape_time.has_value()) {
    out << "  \"escape_time\": " << format_g17(*report.escape_time) << ",\n";
  } else {
    out << "  \"escape_time\": null,\n";
  }
  out << "  \"settle_time\": " << format_g17(report.settle_time) << "\n";
  out << "}\n";
  return out.str();
}

std::string equilibrium_artifact_name(const std::string& prefix, const Equilibrium& eq,
                                      const std::string& ext) {
  if (eq.mode == 0) return prefix + "_0." + ext;
  return prefix + "_" + std::to_string(eq.mode) + (eq.sign >= 0 ? "p" : "m") + "." + ext;
}

namespace {

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

Box data_box(std::span<const Series> series) {
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : series) {
    for (double v : s.x) {
      b.x_lo = std::min(b.x_lo, v);
      b.x_hi = std::max(b.x_hi, v);
    }
    for (double v : s.y) {
      b.y_lo = std::min(b.y_lo, v);
      b.y_hi = std::max(b.y_hi, v);
    }
  }
  if (!(b.x_hi > b.x_lo)) b.x_hi = b.x_lo + 1.0;
  if (!(b.y_hi > b.y_lo)) b.y_hi = b.y_lo + 1.0;
  return b;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string svg_line_plot(const std::string& title, std::span<const Series> series,
                          const std::string& provenance) {
  constexpr int W = 720, H = 480, ML = 70, MR = 20, MT = 40, MB = 45;
  const Box box = data_box(series);
  auto px = [&](double x) {
    return ML + (x - box.x_lo) / (box.x_hi - box.x_lo) * (W - ML - MR);
  };
  auto py = [&](double y) {
    return H - MB - (y - box.y_lo) / (box.y_hi - box.y_lo) * (H - MT - MB);
  };

  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!-- data: " << provenance << " -->\n";
  out << "<!-- generated: " << now << " -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";
  // axes
  out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double xv = box.x_lo + tick * (box.x_hi - box.x_lo) / 4;
    const double yv = box.y_lo + tick * (box.y_hi - box.y_lo) / 4;
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - MB + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_g17(xv).substr(0, 8) << "</text>\n";
    out << "<text x=\"" << ML - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_g17(yv).substr(0, 8) << "</text>\n";
  }
  int color = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 10]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    out << "\"/>\n";
    if (!s.label.empty()) {
      out << "<text x=\"" << W - MR - 6 << "\" y=\"" << MT + 16 + 16 * color
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
          << kPalette[color % 10] << "\">" << s.label << "</text>\n";
    }
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

namespace {

/// Minimal CSV reader for our own artifacts: header row + numeric columns.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

bool read_csv(const fs::path& path, CsvTable& table) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line)) return false;
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  table.columns.resize(table.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::size_t col = 0;
    while (std::getline(ls, cell, ',') && col < table.columns.size()) {
      table.columns[col].push_back(std::strtod(cell.c_str(), nullptr));
      ++col;
    }
  }
  return !table.columns.empty() && !table.columns[0].empty();
}

}  // namespace

PlotOutcome emit_plots(const std::string& artifacts_dir) {
  PlotOutcome outcome;
  const fs::path dir(artifacts_dir);

  // equilibrium profiles: profile_*.csv -> profiles.svg
  {
    std::vector<fs::path> files;
    if (fs::exists(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("profile_", 0) == 0 && entry.path().extension() == ".csv") {
          files.push_back(entry.path());
        }
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      outcome.warnings.push_back("no profile_*.csv artifacts; skipping profiles.svg");
    } else {
      std::vector<Series> series;
      std::string provenance;
      for (const auto& f : files) {
        CsvTable t;
        if (!read_csv(f, t) || t.columns.size() < 2) continue;
        series.push_back({f.stem().string(), t.columns[0], t.columns[1]});
        provenance += f.filename().string() + " ";
      }
      const fs::path out = dir / "profiles.svg";
      atomic_write_file(out.string(), svg_line_plot("equilibrium profiles", series, provenance));
      outcome.written.push_back(out.string());
    }
  }

  // eigenvalue-vs-epsilon curves: scan.csv -> scan.svg
  {
    const fs::path src = dir / "scan.csv";
    CsvTable t;
    if (!fs::exists(src) || !read_csv(src, t) || t.columns.size() < 2) {
      outcome.warnings.push_back("no scan.csv artifact; skipping scan.svg");
    } else {
      std::vector<Series> series;
      for (std::size_t c = 1; c < t.columns.size(); ++c) {
        series.push_back({t.header[c], t.columns[0], t.columns[c]});
      }
      const fs::path out = dir / "scan.svg";
      atomic_write_file(out.string(),
                        svg_line_plot("eigenvalues vs coupling", series, src.filename().string()));
      outcome.written.push_back(out.string());
    }
  }

  // Lyapunov decay: flow.csv -> flow.svg
  {
    const fs::path src = dir / "flow.csv";
    CsvTable t;
    if (!fs::exists(src) || !read_csv(src, t) || t.columns.size() < 3) {
      outcome.warnings.push_back("no flow.csv artifact; skipping flow.svg");
    } else {
      std::vector<Series> series;
      series.push_back({"lyapunov", t.columns[0], t.columns[2]});
      series.push_back({t.header[1], t.columns[0], t.columns[1]});
      const fs::path out = dir / "flow.svg";
      atomic_write_file(out.string(),
                        svg_line_plot("flow diagnostics", series, src.filename().string()));
      outcome.written.push_back(out.string());
    }
  }

  // bifurcation diagram: bifurcation.csv -> bifurcation.svg
  {
    const fs::path src = dir / "bifurcation.csv";
    CsvTable t;
    if (!fs::exists(src) || !read_csv(src, t) || t.columns.size() < 4) {
      outcome.warnings.push_back("no bifurcation.csv artifact; skipping bifurcation.svg");
    } else {
      // group rows by (mode, sign), signing the amplitude by the branch
      std::map<std::pair<int, int>, Series> branches;
      for (std::size_t r = 0; r < t.columns[0].size(); ++r) {
        const int mode = static_cast<int>(t.columns[1][r]);
        const int sign = static_cast<int>(t.columns[2][r]);
        auto& s = branches[{mode, sign}];
        s.label = mode == 0 ? "0" : "phi_" + std::to_string(mode) + (sign >= 0 ? "+" : "-");
        s.x.push_back(t.columns[0][r]);
        s.y.push_back((sign < 0 ? -1.0 : 1.0) * t.columns[3][r]);
      }
      std::vector<Series> series;
      for (auto& [key, s] : branches) series.push_back(std::move(s));
      const fs::path out = dir / "bifurcation.svg";
      atomic_write_file(out.string(),
                        svg_line_plot("bifurcation diagram", series, src.filename().string()));
      outcome.written.push_back(out.string());
    }
  }
  return outcome;
}

}  // namespace nlci
