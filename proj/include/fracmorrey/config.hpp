#ifndef FRACMORREY_CONFIG_HPP
#define FRACMORREY_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracmorrey/conditions.hpp"
#include "fracmorrey/harness.hpp"
#include "fracmorrey/report.hpp"

namespace fracmorrey {

/// Run configuration. Text form:
///
///   # comment
///   [output]
///   dir = reports
///   format = json
///   seed = 1
///
///   [grid]                 defaults for every experiment
///   dimension = 1
///   half_width = 8
///   cells = 512
///   levels = 2
///
///   [oracle]
///   mesh = 32
///   max_shells = 6
///
///   [experiment thm41]     repeatable; starts from the experiment defaults
///   functions = ind(ball(0, 1)); step(1, 4)
///   regions = cube(0, 1); cube(2, 0.5)
///   weight = pow(0.5)
///   p = 2
///
/// Unknown sections and keys are rejected with the line number.
struct Config {
  std::string output_dir;
  ReportFormat format = ReportFormat::Json;
  std::uint64_t seed = 1;
  OracleOptions oracle;
  std::vector<ExperimentSpec> experiments;
};

/// Directory used when the config names none: $FMORREY_OUT, else "fmorrey_out".
std::string default_output_dir();

Config parse_config(std::string_view text);
Config load_config(const std::string& path);

}  // namespace fracmorrey

#endif
