#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qcat/scaling_study.hpp"
#include "qcat/serialize.hpp"
#include "qcat/validation.hpp"

namespace qcat {

enum class Command { Sweep, Asymptote, Scaling, FixedPoints, Validate };
enum class OutputFormat { Csv, Json };

// One CLI invocation, resolved from flags and/or a config file.
struct RunConfig {
  Command command = Command::Sweep;
  Model model = Model::Cusp;
  std::map<std::string, double> params;  // A, A2, A4, gamma, theta
  double mu = 1.0;
  std::vector<double> mu_list;
  std::string param_name;  // swept parameter; empty = model default
  double range_min = 0.0;
  double range_max = 0.0;
  int steps = 2;
  std::string output_path;  // empty = stdout
  OutputFormat format = OutputFormat::Csv;
  std::string validate_group = "all";
  double numeric_tol = 1e-4;
};

namespace detail {

inline const std::map<std::string, std::vector<std::string>>& allowed_params() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"cusp", {"A", "theta"}},
      {"butterfly", {"A2", "A4", "theta"}},
      {"molar", {"A", "gamma"}}};
  return m;
}

inline std::string default_sweep_param(Model m) {
  switch (m) {
    case Model::Cusp: return "A";
    case Model::Butterfly: return "A2";
    case Model::Molar: return "gamma";
  }
  return "A";
}

// Figure-default control parameters, overridden by cfg.params.
inline CatastrophePotential build_potential(const RunConfig& cfg) {
  auto get = [&cfg](const std::string& k, double dflt) {
    auto it = cfg.params.find(k);
    return it == cfg.params.end() ? dflt : it->second;
  };
  const double theta = get("theta", std::numbers::pi / 2);
  switch (cfg.model) {
    case Model::Cusp:
      return make_cusp(cfg.mu, get("A", -1.0), theta);
    case Model::Butterfly:
      return make_butterfly(cfg.mu, get("A2", 1.0),
                            get("A4", -4.0 / std::sqrt(3.0)), theta);
    case Model::Molar:
      return make_molar(cfg.mu, get("A", -1.0), get("gamma", 2.0));
  }
  throw ContractError("unknown model");
}

}  // namespace detail

inline void validate_config(RunConfig& cfg) {
  const auto& allowed = detail::allowed_params().at(model_name(cfg.model));
  for (const auto& [key, value] : cfg.params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ContractError("parameter '" + key + "' is not valid for model " +
                          model_name(cfg.model));
    if (!std::isfinite(value))
      throw ContractError("parameter '" + key + "' is not finite");
  }
  if (!(cfg.mu > 0.0)) throw ContractError("mu must be positive");
  if (cfg.command == Command::Sweep || cfg.command == Command::Asymptote) {
    if (cfg.param_name.empty())
      cfg.param_name = detail::default_sweep_param(cfg.model);
    const auto& sweepable = detail::allowed_params().at(model_name(cfg.model));
    if (cfg.param_name == "theta" ||
        std::find(sweepable.begin(), sweepable.end(), cfg.param_name) ==
            sweepable.end())
      throw ContractError("cannot sweep parameter '" + cfg.param_name +
                          "' of model " + model_name(cfg.model));
    if (!(cfg.range_min < cfg.range_max))
      throw ContractError("range: min must be below max");
    if (cfg.steps < 2) throw ContractError("steps must be >= 2");
  }
  if (cfg.command == Command::Scaling) {
    if (cfg.mu_list.size() < 3)
      throw ContractError("scaling needs at least 3 values in --mu-list");
    for (double m : cfg.mu_list)
      if (!(m > 0.0)) throw ContractError("mu-list entries must be positive");
    if (cfg.format == OutputFormat::Csv)
      throw ContractError("scaling emits json; pass --format json");
  }
}

namespace detail {

inline nlohmann::json fixed_points_json(const CatastrophePotential& p) {
  nlohmann::json out;
  out["model"] = model_name(p.model);
  out["mu"] = json_number(p.mu);
  out["points"] = nlohmann::json::array();
  for (const auto& fp : find_fixed_points(p)) {
    nlohmann::json j;
    j["location"] = nlohmann::json::array();
    for (int k = 0; k < fp.dim; ++k) j["location"].push_back(json_number(fp.location[k]));
    j["stability"] = fp.stable() ? "stable" : (fp.marginal() ? "marginal" : "unstable");
    j["well_energy"] = json_number(fp.well_energy);
    j["excitation_energies"] = nlohmann::json::array();
    for (double e : fp.excitation_energies)
      j["excitation_energies"].push_back(json_number(e));
    if (fp.dim == 2) j["normal_mode_angle"] = json_number(fp.normal_mode_angle);
    out["points"].push_back(std::move(j));
  }
  return out;
}

inline std::string fixed_points_csv(const CatastrophePotential& p) {
  std::string out = "model,mu,y1,y2,stability,eps1,eps2,well_energy\n";
  for (const auto& fp : find_fixed_points(p)) {
    out += model_name(p.model);
    out += ',';
    out += fmt12(p.mu);
    out += ',';
    out += fmt12(fp.location[0]);
    out += ',';
    out += fp.dim == 2 ? fmt12(fp.location[1]) : "";
    out += ',';
    out += fp.stable() ? "stable" : (fp.marginal() ? "marginal" : "unstable");
    out += ',';
    out += fp.excitation_energies.size() > 0 ? fmt12(fp.excitation_energies[0]) : "";
    out += ',';
    out += fp.excitation_energies.size() > 1 ? fmt12(fp.excitation_energies[1]) : "";
    out += ',';
    out += fmt12(fp.well_energy);
    out += '\n';
  }
  return out;
}

inline nlohmann::json scaling_json(const RunConfig& cfg) {
  ScalingStudy study;
  FiniteMuOptions opts;
  opts.tol = cfg.numeric_tol;
  switch (cfg.model) {
    case Model::Cusp: study = cusp_scaling_study(cfg.mu_list, opts); break;
    case Model::Butterfly:
      study = butterfly_scaling_study(cfg.mu_list, opts);
      break;
    case Model::Molar:
      opts.tol = std::max(opts.tol, 2e-3);
      study = molar_scaling_study(cfg.mu_list, opts);
      break;
  }
  nlohmann::json out;
  out["model"] = model_name(cfg.model);
  out["param_name"] = detail::default_sweep_param(cfg.model);
  out["peaks"] = nlohmann::json::array();
  for (const auto& pm : study.peaks)
    out["peaks"].push_back({{"mu", json_number(pm.mu)},
                            {"param_star", json_number(pm.peak.param_star)},
                            {"entropy_star", json_number(pm.peak.entropy_star)}});
  if (study.fit) out["fit"] = to_json(*study.fit);
  return out;
}

inline void emit(const RunConfig& cfg, const std::string& bytes) {
  if (cfg.output_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw Error("cannot open output path '" + cfg.output_path + "'");
  f << bytes;
  if (!f.good()) throw Error("write failed for '" + cfg.output_path + "'");
}

}  // namespace detail

// Execute one command; returns the process exit status.
inline int run(RunConfig cfg) {
  validate_config(cfg);
  switch (cfg.command) {
    case Command::Sweep:
    case Command::Asymptote: {
      SweepSpec spec{detail::build_potential(cfg), cfg.param_name,
                     cfg.range_min, cfg.range_max, cfg.steps,
                     cfg.command == Command::Asymptote};
      FiniteMuOptions opts;
      opts.tol = cfg.numeric_tol;
      if (cfg.model == Model::Molar && cfg.command == Command::Sweep)
        opts.tol = std::max(opts.tol, 1e-3);
      auto sr = sweep_entropy(spec, opts);
      detail::emit(cfg, cfg.format == OutputFormat::Csv
                            ? to_csv(sr)
                            : dump_json(to_json(sr)));
      return 0;
    }
    case Command::Scaling:
      detail::emit(cfg, dump_json(detail::scaling_json(cfg)));
      return 0;
    case Command::FixedPoints: {
      auto p = detail::build_potential(cfg);
      detail::emit(cfg, cfg.format == OutputFormat::Csv
                            ? detail::fixed_points_csv(p)
                            : dump_json(detail::fixed_points_json(p)));
      return 0;
    }
    case Command::Validate: {
      auto results = run_validation_group(cfg.validate_group);
      return report_validation(results);
    }
  }
  throw ContractError("unknown command");
}

}  // namespace qcat
