#pragma once

#include "confhyp/config.hpp"
#include "confhyp/spiral.hpp"

#include <iosfwd>
#include <string>

namespace confhyp {

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

/// `# params ...` line, then s,kappa,kappa_s,x,y,z,E.
std::string trajectory_csv(const SpiralTrajectory& t);

/// Spiral of the chosen family with its configured initial state.
SpiralTrajectory family_trajectory(const RunConfig& cfg, Family f);

/// Moebius invariants at the sample points of cfg.family, one row per point.
std::string invariants_csv(const RunConfig& cfg);

// Each command writes into cfg.out and reports written files on `log`.
int command_spiral(const RunConfig& cfg, std::ostream& log);
int command_build(const RunConfig& cfg, std::ostream& log);
int command_invariants(const RunConfig& cfg, std::ostream& log);
int command_verify(const RunConfig& cfg, std::ostream& log);
int command_rigidity(const RunConfig& cfg, std::ostream& log);

}  // namespace confhyp
