#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/spaces.hpp"

namespace shiftlab {

struct Report {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
};

struct RunConfig {
  std::string experiment;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  std::optional<double> tol;
};

// registered experiment names, in CLI order
const std::vector<std::string>& known_experiments();
// parameter names with default values for one experiment
const std::map<std::string, std::string>& default_params(const std::string& experiment);

// throws ConfigError for unknown experiments/parameters, ResourceError when a
// ladder exceeds the resource budget
Report run_experiment(const RunConfig& cfg);

std::string to_csv(const Report& rep, double wall_ms);
std::string to_json(const Report& rep, double wall_ms);

// "key=value" lines, '#' comments; later duplicates win
std::map<std::string, std::string> parse_config_text(const std::string& text);

Complex parse_complex(const std::string& token);
std::string format_double(double v);

}  // namespace shiftlab
