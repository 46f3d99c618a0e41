#include "nlci/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlci/errors.hpp"

namespace nlci {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

void require_keys(const ordered_json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const ordered_json& obj, const std::string& path, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const ordered_json& obj, const std::string& path, const std::string& key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const ordered_json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

void parse_model(const ordered_json& obj, RunConfig& cfg) {
  require_keys(obj, "$.model", {"a", "f", "lambda"});
  if (obj.contains("a")) {
    const auto& a = obj.at("a");
    if (a.is_string()) {
      cfg.model.a = a.get<std::string>();
      if (cfg.model.a != "constant" && cfg.model.a != "saturating") {
        fail("$.model.a", "expected \"constant\", \"saturating\" or {\"table\": ...}");
      }
    } else if (a.is_object()) {
      require_keys(a, "$.model.a", {"table"});
      if (!a.contains("table") || !a.at("table").is_array()) {
        fail("$.model.a.table", "expected an array of [s, a] pairs");
      }
      cfg.model.a = "table";
      for (const auto& knot : a.at("table")) {
        if (!knot.is_array() || knot.size() != 2 || !knot[0].is_number() ||
            !knot[1].is_number()) {
          fail("$.model.a.table", "expected [s, a] number pairs");
        }
        cfg.model.a_table.emplace_back(knot[0].get<double>(), knot[1].get<double>());
      }
      if (cfg.model.a_table.size() < 2) fail("$.model.a.table", "need at least 2 knots");
    } else {
      fail("$.model.a", "expected a string or a table object");
    }
  }
  cfg.model.f = get_string(obj, "$.model", "f", cfg.model.f);
  if (cfg.model.f != "cubic") fail("$.model.f", "only \"cubic\" is available");
  cfg.model.lambda = get_number(obj, "$.model", "lambda", cfg.model.lambda);
  if (!(cfg.model.lambda > 0.0)) fail("$.model.lambda", "must be positive");
}

}  // namespace

ModelConfig RunConfig::make_model() const { return make_model(model.lambda); }

ModelConfig RunConfig::make_model(double lambda_override) const {
  DiffusionSpec a = (model.a == "constant")     ? DiffusionSpec::constant()
                    : (model.a == "saturating") ? DiffusionSpec::saturating()
                                                : DiffusionSpec::from_table(model.a_table);
  return ModelConfig(std::move(a), NonlinearitySpec::cubic(), lambda_override);
}

Grid RunConfig::make_grid() const { return build_grid(grid_n); }

RunConfig parse_config(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("$: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("$", "expected a JSON object");

  RunConfig cfg;
  require_keys(root, "$",
               {"model", "lambda", "grid_n", "out", "seed", "max_n", "hyperbolicity_tol",
                "sweep", "scan", "flow", "probe"});

  if (root.contains("model")) {
    if (!root.at("model").is_object()) fail("$.model", "expected an object");
    parse_model(root.at("model"), cfg);
  }
  if (root.contains("lambda")) {  // top-level shorthand overriding the model block
    if (!root.at("lambda").is_number()) fail("$.lambda", "expected a number");
    cfg.model.lambda = root.at("lambda").get<double>();
    if (!(cfg.model.lambda > 0.0)) fail("$.lambda", "must be positive");
  }

  cfg.grid_n = get_int(root, "$", "grid_n", cfg.grid_n);
  if (cfg.grid_n < 3) fail("$.grid_n", "must be at least 3");
  cfg.out_dir = get_string(root, "$", "out", cfg.out_dir);
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_integer()) fail("$.seed", "expected an integer");
    cfg.seed = root.at("seed").get<std::uint64_t>();
  }
  cfg.max_det_n = get_int(root, "$", "max_n", cfg.max_det_n);
  if (cfg.max_det_n < 2) fail("$.max_n", "must be at least 2");
  cfg.hyperbolicity_tol = get_number(root, "$", "hyperbolicity_tol", cfg.hyperbolicity_tol);
  if (!(cfg.hyperbolicity_tol > 0.0)) fail("$.hyperbolicity_tol", "must be positive");

  if (root.contains("sweep")) {
    const auto& sweep = root.at("sweep");
    if (!sweep.is_object()) fail("$.sweep", "expected an object");
    require_keys(sweep, "$.sweep", {"lambdas"});
    if (sweep.contains("lambdas")) {
      if (!sweep.at("lambdas").is_array()) fail("$.sweep.lambdas", "expected an array");
      for (const auto& v : sweep.at("lambdas")) {
        if (!v.is_number()) fail("$.sweep.lambdas", "expected numbers");
        const double lam = v.get<double>();
        if (!(lam > 0.0)) fail("$.sweep.lambdas", "lambdas must be positive");
        cfg.sweep.lambdas.push_back(lam);
      }
    }
  }
  if (root.contains("scan")) {
    const auto& scan = root.at("scan");
    if (!scan.is_object()) fail("$.scan", "expected an object");
    require_keys(scan, "$.scan", {"points", "track"});
    cfg.scan.points = get_int(scan, "$.scan", "points", cfg.scan.points);
    if (cfg.scan.points < 2) fail("$.scan.points", "must be at least 2");
    cfg.scan.track = get_int(scan, "$.scan", "track", cfg.scan.track);
    if (cfg.scan.track < 1) fail("$.scan.track", "must be at least 1");
  }
  if (root.contains("flow")) {
    const auto& flow = root.at("flow");
    if (!flow.is_object()) fail("$.flow", "expected an object");
    require_keys(flow, "$.flow", {"formulation", "t_end", "dt", "stride", "amplitude"});
    cfg.flow.formulation = get_string(flow, "$.flow", "formulation", cfg.flow.formulation);
    if (cfg.flow.formulation != "quasilinear" && cfg.flow.formulation != "semilinear") {
      fail("$.flow.formulation", "expected \"quasilinear\" or \"semilinear\"");
    }
    cfg.flow.t_end = get_number(flow, "$.flow", "t_end", cfg.flow.t_end);
    if (!(cfg.flow.t_end > 0.0)) fail("$.flow.t_end", "must be positive");
    cfg.flow.dt = get_number(flow, "$.flow", "dt", cfg.flow.dt);
    if (cfg.flow.dt < 0.0) fail("$.flow.dt", "must be nonnegative");
    cfg.flow.stride = get_int(flow, "$.flow", "stride", cfg.flow.stride);
    if (cfg.flow.stride < 0) fail("$.flow.stride", "must be nonnegative");
    cfg.flow.amplitude = get_number(flow, "$.flow", "amplitude", cfg.flow.amplitude);
    if (!(cfg.flow.amplitude > 0.0)) fail("$.flow.amplitude", "must be positive");
  }
  if (root.contains("probe")) {
    const auto& probe = root.at("probe");
    if (!probe.is_object()) fail("$.probe", "expected an object");
    require_keys(probe, "$.probe", {"from", "direction", "delta", "t_max"});
    cfg.probe.from = get_string(probe, "$.probe", "from", cfg.probe.from);
    cfg.probe.direction = get_string(probe, "$.probe", "direction", cfg.probe.direction);
    if (cfg.probe.direction != "leading" && cfg.probe.direction != "sin" &&
        cfg.probe.direction != "random") {
      fail("$.probe.direction", "expected \"leading\", \"sin\" or \"random\"");
    }
    cfg.probe.delta = get_number(probe, "$.probe", "delta", cfg.probe.delta);
    if (!(cfg.probe.delta > 0.0 && cfg.probe.delta <= 1e-2)) {
      fail("$.probe.delta", "must lie in (0, 1e-2]");
    }
    cfg.probe.t_max = get_number(probe, "$.probe", "t_max", cfg.probe.t_max);
    if (cfg.probe.t_max < 0.0) fail("$.probe.t_max", "must be nonnegative");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$: cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json_string(const RunConfig& cfg) {
  ordered_json root;
  if (cfg.model.a == "table") {
    ordered_json table = ordered_json::array();
    for (const auto& [s, a] : cfg.model.a_table) table.push_back({s, a});
    root["model"]["a"] = ordered_json{{"table", table}};
  } else {
    root["model"]["a"] = cfg.model.a;
  }
  root["model"]["f"] = cfg.model.f;
  root["model"]["lambda"] = cfg.model.lambda;
  root["grid_n"] = cfg.grid_n;
  root["out"] = cfg.out_dir;
  root["seed"] = cfg.seed;
  root["max_n"] = cfg.max_det_n;
  root["hyperbolicity_tol"] = cfg.hyperbolicity_tol;
  root["sweep"] = ordered_json{{"lambdas", cfg.sweep.lambdas}};
  root["scan"] = ordered_json{{"points", cfg.scan.points}, {"track", cfg.scan.track}};
  root["flow"] = ordered_json{{"formulation", cfg.flow.formulation},
                              {"t_end", cfg.flow.t_end},
                              {"dt", cfg.flow.dt},
                              {"stride", cfg.flow.stride},
                              {"amplitude", cfg.flow.amplitude}};
  root["probe"] = ordered_json{{"from", cfg.probe.from},
                               {"direction", cfg.probe.direction},
                               {"delta", cfg.probe.delta},
                               {"t_max", cfg.probe.t_max}};
  return root.dump(2) + "\n";
}

}  // namespace nlci
