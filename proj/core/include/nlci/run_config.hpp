#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlci/grid.hpp"
#include "nlci/model.hpp"

namespace nlci {

struct ModelSelection {
  std::string a = "saturating";  // "constant" | "saturating" | "table"
  std::vector<std::pair<double, double>> a_table;
  std::string f = "cubic";
  double lambda = 6.0;

  bool operator==(const ModelSelection&) const = default;
};

struct SweepConfig {
  std::vector<double> lambdas;

  bool operator==(const SweepConfig&) const = default;
};

struct ScanConfig {
  int points = 41;
  int track = 8;

  bool operator==(const ScanConfig&) const = default;
};

struct FlowConfig {
  std::string formulation = "quasilinear";  // or "semilinear"
  double t_end = 10.0;
  double dt = 0.0;
  int stride = 0;
  double amplitude = 0.1;  // of the random initial state

  bool operator==(const FlowConfig&) const = default;
};

struct ProbeConfig {
  std::string from = "phi_2+";       // equilibrium id: "0", "phi_<j>+", "phi_<j>-"
  std::string direction = "leading"; // "leading" eigenvector, "sin", or "random"
  double delta = 1e-3;
  double t_max = 0.0;

  bool operator==(const ProbeConfig&) const = default;
};

/// One JSON file drives every subcommand; unknown keys are rejected and
/// validation failures carry the JSON path.
struct RunConfig {
  ModelSelection model;
  int grid_n = 1023;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int max_det_n = 50;
  double hyperbolicity_tol = 1e-4;
  SweepConfig sweep;
  ScanConfig scan;
  FlowConfig flow;
  ProbeConfig probe;

  bool operator==(const RunConfig&) const = default;

  ModelConfig make_model() const;
  ModelConfig make_model(double lambda_override) const;
  Grid make_grid() const;
};

/// Parse and validate a JSON config text. Throws ConfigError with the JSON
/// path of the offending key.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

/// Lossless round-trip serialization of the normalized config.
std::string to_json_string(const RunConfig& cfg);

}  // namespace nlci
