#pragma once
// Batch front end: one subcommand per run, configured from a JSON file and
// flags, writing CSV/JSON artifacts plus a <output>.meta.json sidecar.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tfx/io.hpp"

namespace tfx::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::string subcommand;
  std::filesystem::path output;
  std::filesystem::path measure_output;  // prescribe/equilibrium; defaults next to output

  std::filesystem::path potential;
  std::filesystem::path base;
  std::filesystem::path measure;
  std::filesystem::path problem;
  std::filesystem::path zeta;
  std::filesystem::path phi;
  std::vector<std::filesystem::path> functions;

  std::string mode;  // metric: gram | pairwise
  std::vector<double> t_grid;
  std::vector<std::vector<double>> w_grid;
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  std::vector<double> region;  // x_min, x_max, y_min, y_max
  double step = 0.0;
  std::string quantity = "K";
  std::size_t level = 10;
  std::string topology = "circle";

  std::uint64_t seed = 0;
  std::size_t mc_steps = 0;
  std::size_t horizon = 0;
  double fd_step = 1e-5;
  double tolerance = 1e-13;
  std::size_t max_iterations = 200;

  io::json resolved;  // the merged settings, echoed into the metadata
};

// Keys a config file or flag set may carry; anything else is rejected.
const std::vector<std::string>& known_keys();

// Merge order: defaults, then file fields, then flags. Relative paths from the
// file are taken relative to file_dir; flag paths relative to the cwd.
RunConfig resolve_config(const io::json& file_fields, const std::filesystem::path& file_dir,
                         const io::json& flag_fields);

// Returns the process exit status; errors are one JSON object on err.
int run(const RunConfig& config, std::ostream& err);

// Error JSON as printed by run.
std::string error_json(const std::string& kind, const std::string& message);

}  // namespace tfx::cli
