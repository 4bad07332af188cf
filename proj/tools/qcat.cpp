// Command-line driver: entropy sweeps, scaling studies, fixed-point tables,
// and the validation suite for the two-mode catastrophe models.

#include <CLI11.hpp>
#include <json.hpp>

#include "qcat/cli.hpp"

namespace {

struct RawArgs {
  std::string model = "cusp";
  double mu = 1.0;
  std::string mu_list;
  std::string param;
  double min = 0.0, max = 0.0;
  int steps = 2;
  std::string format = "csv";
  std::string out;
  std::string group = "all";
  double tol = 1e-4;
  std::map<std::string, double> params;
};

void add_model_flags(CLI::App* cmd, RawArgs& a, bool with_range,
                     bool with_mu = true) {
  cmd->add_option("--model", a.model, "cusp | butterfly | molar")
      ->check(CLI::IsMember({"cusp", "butterfly", "molar"}));
  if (with_mu) cmd->add_option("--mu", a.mu, "macroscopy parameter");
  auto addp = [cmd, &a](const std::string& name, const std::string& help) {
    cmd->add_option_function<double>(
        "--" + name, [&a, name](double v) { a.params[name] = v; }, help);
  };
  addp("A", "harmonic coefficient (cusp, molar)");
  addp("A2", "harmonic coefficient (butterfly)");
  addp("A4", "quartic coefficient (butterfly); default -4/sqrt(3)");
  addp("gamma", "quartic coupling modulus (molar)");
  addp("theta", "mode mixing angle (1D models); default pi/2");
  if (with_range) {
    cmd->add_option("--param", a.param, "swept parameter (default per model)");
    cmd->add_option("--min", a.min, "range lower end")->required();
    cmd->add_option("--max", a.max, "range upper end")->required();
    cmd->add_option("--steps", a.steps, "grid points")->required();
  }
  cmd->add_option("--format", a.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", a.out, "output file (default stdout)");
  cmd->add_option("--tol", a.tol, "numeric refinement tolerance");
  cmd->set_config("--config", "", "read options from an ini file");
}

qcat::RunConfig to_config(const RawArgs& a, qcat::Command cmd) {
  qcat::RunConfig cfg;
  cfg.command = cmd;
  cfg.model = qcat::model_from_name(a.model);
  cfg.mu = a.mu;
  cfg.params = a.params;
  cfg.param_name = a.param;
  cfg.range_min = a.min;
  cfg.range_max = a.max;
  cfg.steps = a.steps;
  cfg.format = a.format == "json" ? qcat::OutputFormat::Json
                                  : qcat::OutputFormat::Csv;
  cfg.output_path = a.out;
  cfg.validate_group = a.group;
  cfg.numeric_tol = a.tol;
  if (!a.mu_list.empty()) {
    std::stringstream ss(a.mu_list);
    std::string tok;
    while (std::getline(ss, tok, ','))
      cfg.mu_list.push_back(qcat::parse_double(tok));
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ground-state entanglement of two-mode catastrophe models"};
  app.require_subcommand(1);

  RawArgs sweep_args, asym_args, scaling_args, fp_args;
  std::string validate_group = "all";

  auto* sweep = app.add_subcommand(
      "sweep", "numeric entropy sweep at fixed mu");
  add_model_flags(sweep, sweep_args, true);

  auto* asym = app.add_subcommand(
      "asymptote", "macroscopic-limit entropy sweep");
  add_model_flags(asym, asym_args, true);

  auto* scaling = app.add_subcommand(
      "scaling", "entanglement-peak location vs mu with a power-law fit");
  add_model_flags(scaling, scaling_args, false);
  scaling->add_option("--mu-list", scaling_args.mu_list,
                      "comma-separated mu values")
      ->required();
  scaling_args.format = "json";

  auto* fps = app.add_subcommand("fixed-points",
                                 "classified fixed points of the potential");
  add_model_flags(fps, fp_args, false);

  auto* validate = app.add_subcommand(
      "validate", "run the cross-module validation suite");
  validate->add_option(
      "--group", validate_group,
      "fast | pipelines | convergence | cusp-scaling | butterfly-scaling | "
      "molar | all");

  try {
    app.parse(argc, argv);
    if (sweep->parsed()) return qcat::run(to_config(sweep_args, qcat::Command::Sweep));
    if (asym->parsed())
      return qcat::run(to_config(asym_args, qcat::Command::Asymptote));
    if (scaling->parsed())
      return qcat::run(to_config(scaling_args, qcat::Command::Scaling));
    if (fps->parsed())
      return qcat::run(to_config(fp_args, qcat::Command::FixedPoints));
    if (validate->parsed()) {
      RawArgs a;
      a.group = validate_group;
      return qcat::run(to_config(a, qcat::Command::Validate));
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
