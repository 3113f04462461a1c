// command line front end: runs one experiment and emits a csv or json report
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shiftlab/experiments.hpp"

namespace {

int run(const std::string& experiment, const std::vector<std::string>& overrides,
        const std::string& config_path, const std::string& out_path, const std::string& format,
        std::uint64_t seed, bool has_tol, double tol) {
  using namespace shiftlab;

  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");

  RunConfig cfg;
  cfg.experiment = experiment;
  cfg.seed = seed;
  if (has_tol) cfg.tol = tol;

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file: " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    for (const auto& [key, value] : parse_config_text(buf.str())) cfg.params[key] = value;
  }
  for (const auto& token : overrides) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override must look like key=value: '" + token + "'");
    cfg.params[token.substr(0, eq)] = token.substr(eq + 1);
  }
  // reserved keys may also arrive through the config file
  if (auto it = cfg.params.find("seed"); it != cfg.params.end()) {
    cfg.seed = std::stoull(it->second);
    cfg.params.erase(it);
  }
  if (auto it = cfg.params.find("tol"); it != cfg.params.end()) {
    cfg.tol = std::stod(it->second);
    cfg.params.erase(it);
  }

  const auto t0 = std::chrono::steady_clock::now();
  const Report rep = run_experiment(cfg);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = (format == "json") ? to_json(rep, wall_ms) : to_csv(rep, wall_ms);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write output file: " + out_path);
    out << text;
  }
  if (!rep.pass) {
    std::cerr << experiment << ": invariant check failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftlab: finite-truncation experiments for shift operator identities"};
  app.footer("overrides are key=value tokens; run with --list to see experiments and defaults");

  std::string experiment, config_path, out_path, format = "csv";
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  double tol = 0.0;
  bool list = false;

  app.add_option("experiment", experiment, "experiment name");
  app.add_option("overrides", overrides, "key=value parameter overrides");
  app.add_option("--config", config_path, "key=value config file, overridden by positional pairs");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "csv or json");
  app.add_option("--seed", seed, "random seed");
  CLI::Option* tol_opt = app.add_option("--tol", tol, "override the experiment tolerance");
  app.add_flag("--list", list, "list experiments with their default parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (list) {
      for (const auto& name : shiftlab::known_experiments()) {
        std::cout << name;
        for (const auto& [key, value] : shiftlab::default_params(name))
          std::cout << " " << key << "=" << value;
        std::cout << "\n";
      }
      return 0;
    }
    if (experiment.empty()) throw shiftlab::ConfigError("missing experiment name; see --list");
    return run(experiment, overrides, config_path, out_path, format, seed, tol_opt->count() > 0,
               tol);
  } catch (const shiftlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const shiftlab::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
