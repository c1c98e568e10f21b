#include "confhyp/commands.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <optional>

int main(int argc, char** argv) {
  using namespace confhyp;
  CLI::App app{"Numerical experiments on conformally flat hypersurfaces and curvature-spirals"};
  app.require_subcommand(1);

  std::string config_path, out_dir, convention;
  std::optional<std::uint64_t> seed;
  const std::map<std::string, std::pair<std::string, std::function<int(const RunConfig&, std::ostream&)>>> commands{
      {"spiral", {"integrate a curvature-spiral and export it as CSV", command_spiral}},
      {"build", {"generate a hypersurface and export an OBJ slice with a JSON descriptor", command_build}},
      {"invariants", {"Moebius invariants at the sample points, as CSV", command_invariants}},
      {"verify", {"run the verification suite and write the reports", command_verify}},
      {"rigidity", {"closure experiment for hyperbolic curvature-spirals", command_rigidity}},
  };
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, cmd.first);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--convention", convention, "reporting convention")
        ->check(CLI::IsMember({"half", "full", "normalized"}));
    sub->add_option("--seed", seed, "seed for sample-point jitter");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.out = out_dir;
    if (!convention.empty()) cfg.convention = parse_convention(convention);
    if (seed) cfg.seed = *seed;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  for (const auto& [name, cmd] : commands) {
    if (!app.got_subcommand(name)) continue;
    try {
      return cmd.second(cfg, std::cout);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfigError;
    } catch (const std::exception& e) {
      std::cerr << name << " failed: " << e.what() << "\n";
      return kExitCheckFailure;
    }
  }
  return kExitConfigError;
}
