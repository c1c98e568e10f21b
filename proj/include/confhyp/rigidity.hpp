#pragma once

#include "confhyp/config.hpp"
#include "confhyp/spiral.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace confhyp {

struct RigidityEntry {
  Real kappa0 = 0;
  Real kappa_s0 = 0;
  bool equilibrium = false;
  Termination termination = Termination::horizon;
  ClosureResult closure;
};

struct RigidityScan {
  SpiralParams params;
  std::optional<Real> kappa_star;
  bool trivial = false;  // no equilibrium: nothing to scan
  std::optional<RigidityEntry> equilibrium;
  std::vector<RigidityEntry> grid;
  std::vector<RigidityEntry> control;  // eps = 0, R = 0, non-constant spirals
  int closures = 0;                    // among grid entries
  int inconclusive = 0;
  bool equilibrium_closed = false;
  bool control_closures = false;
  bool passed = false;
};

/// Integrate, reconstruct in the model surface and run the closure test.
RigidityEntry scan_state(const SpiralParams& params, Real kappa0, Real kappa_s0, Real horizon, Real step,
                         const ClosureTolerances& tol, Real floor, Real ceiling);

/// Grid around the equilibrium of eps = -1 spirals: kappa0 = k*(1 + d) with d
/// in [-perturbation, perturbation], kappa_s0 = k* t with t in (0, slope].
/// Every grid state has kappa_s0 != 0, so none is an equilibrium.
RigidityScan rigidity_scan(const RunConfig& cfg);

nlohmann::ordered_json to_json(const RigidityEntry& e);
nlohmann::ordered_json to_json(const RigidityScan& scan);
/// kind,kappa0,kappa_s0,status,defect,period,termination
std::string rigidity_csv(const RigidityScan& scan);

}  // namespace confhyp
