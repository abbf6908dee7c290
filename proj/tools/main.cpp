// tfx: command-line front end. Settings come from defaults, then an optional
// --config JSON file, then flags; later sources win.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "tfx/error.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--output,-o", "output", "Output path; the metadata goes to <output>.meta.json"},
    {"--measure-output", "measure_output", "Measure JSON path for prescribe/equilibrium"},
    {"--potential", "potential", "FnTable JSON (A, or A_0 for flow)"},
    {"--base", "base", "FnTable JSON for B (flow)"},
    {"--measure", "measure", "MarkovMeasure JSON (entropy)"},
    {"--problem", "problem", "Problem JSON {B, Phi, target}"},
    {"--zeta", "zeta", "FnTable JSON for the direction zeta"},
    {"--phi", "phi", "FnTable JSON for the observable phi (derivative)"},
    {"--functions", "functions", "Comma-separated FnTable JSON paths (metric)"},
    {"--mode", "mode", "metric: gram or pairwise"},
    {"--t-grid", "t_grid", "Comma-separated times (flow, w2scan)"},
    {"--w-grid", "w_grid", "Rotation targets: 'a,b,c' (1-D) or 'a,b;c,d' (surface)"},
    {"--x-grid", "x_grid", "Comma-separated x values (geom2)"},
    {"--y-grid", "y_grid", "Comma-separated y values (geom2)"},
    {"--region", "region", "x_min,x_max,y_min,y_max (geom2)"},
    {"--step", "step", "Grid step for --region (geom2)"},
    {"--quantity", "quantity", "entropy, K, Ktilde, E or G (geom2)"},
    {"--level", "level", "Dyadic level (w2scan)"},
    {"--topology", "topology", "interval or circle (w2scan)"},
    {"--seed", "seed", "Random seed (recorded in metadata)"},
    {"--mc-steps", "mc_steps", "Monte Carlo orbit length (metric pairwise)"},
    {"--horizon", "horizon", "Correlation-sum horizon (metric pairwise)"},
    {"--fd-step", "fd_step", "Finite-difference step"},
    {"--tolerance", "tolerance", "Newton residual tolerance"},
    {"--max-iterations", "max_iterations", "Newton iteration cap"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic formalism on full shifts: batch front end"};
  app.set_version_flag("--version", tfx::cli::kToolVersion);
  std::string subcommand;
  std::string config_path;
  app.add_option("subcommand", subcommand,
                 "normalize | gibbs | entropy | pressure | metric | derivative | prescribe | equilibrium | flow | "
                 "surface | geom2 | w2scan");
  app.add_option("--config,-c", config_path, "JSON config file");
  std::string values[std::size(kFlags)];
  for (std::size_t i = 0; i < std::size(kFlags); ++i) app.add_option(kFlags[i].flag, values[i], kFlags[i].help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << tfx::cli::error_json("UsageError", e.what()) << '\n';
    return 2;
  }

  try {
    tfx::io::json file_fields;
    std::filesystem::path file_dir;
    if (!config_path.empty()) {
      file_fields = tfx::io::read_json(config_path);
      file_dir = std::filesystem::path(config_path).parent_path();
    }
    tfx::io::json flags = tfx::io::json::object();
    if (!subcommand.empty()) flags["subcommand"] = subcommand;
    for (std::size_t i = 0; i < std::size(kFlags); ++i)
      if (app.count(std::string(kFlags[i].flag).substr(0, std::string(kFlags[i].flag).find(','))) > 0)
        flags[kFlags[i].key] = values[i];
    const tfx::cli::RunConfig config = tfx::cli::resolve_config(file_fields, file_dir, flags);
    return tfx::cli::run(config, std::cerr);
  } catch (const tfx::Error& e) {
    std::cerr << tfx::cli::error_json(std::string(tfx::to_string(e.kind())), e.what()) << '\n';
    return 2;
  }
}
