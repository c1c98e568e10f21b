#include "confhyp/rigidity.hpp"

#include "confhyp/report.hpp"

#include <cmath>
#include <sstream>

namespace confhyp {

RigidityEntry scan_state(const SpiralParams& params, Real kappa0, Real kappa_s0, Real horizon, Real step,
                         const ClosureTolerances& tol, Real floor, Real ceiling) {
  RigidityEntry e;
  e.kappa0 = kappa0;
  e.kappa_s0 = kappa_s0;
  IntegratorControls ctl;
  ctl.s_max = horizon;
  ctl.step = step;
  ctl.kappa_floor = floor;
  ctl.kappa_ceiling = ceiling;
  const SpiralTrajectory traj = reconstruct_curve(integrate_spiral(params, {0, kappa0, kappa_s0}, ctl));
  e.termination = traj.termination;
  e.closure = closure_test(traj, tol);
  if (e.closure.closed) e.termination = Termination::closure;
  return e;
}

RigidityScan rigidity_scan(const RunConfig& cfg) {
  const auto& rc = cfg.rigidity;
  RigidityScan scan;
  scan.params = SpiralParams{cfg.n, -1, rc.R, cfg.spiral_form};
  scan.kappa_star = equilibrium_kappa(scan.params);
  const ClosureTolerances open{cfg.tol.closure_open, rc.departure};
  const ClosureTolerances closed{cfg.tol.closure_closed, rc.departure};
  if (!scan.kappa_star) {
    scan.trivial = true;
    scan.passed = true;
    return scan;
  }
  const Real ks = *scan.kappa_star;
  scan.equilibrium =
      scan_state(scan.params, ks, 0, rc.horizon, rc.step, closed, cfg.kappa_floor, cfg.kappa_ceiling);
  scan.equilibrium->equilibrium = true;
  scan.equilibrium_closed = scan.equilibrium->closure.closed;

  const int g = rc.grid;
  for (int i = 0; i < g; ++i) {
    const Real d = g == 1 ? 0 : -rc.perturbation + 2 * rc.perturbation * i / (g - 1);
    for (int j = 0; j < g; ++j) {
      const Real t = rc.slope * (j + 1) / g;
      RigidityEntry e =
          scan_state(scan.params, ks * (1 + d), ks * t, rc.horizon, rc.step, open, cfg.kappa_floor, cfg.kappa_ceiling);
      if (e.closure.status == ClosureStatus::inconclusive) ++scan.inconclusive;
      if (e.closure.closed) ++scan.closures;
      scan.grid.push_back(e);
    }
  }

  // flat control: kappa'' = 0 spirals, kappa = kappa0 + kappa_s0 s
  const SpiralParams flat{cfg.n, 0, 0, cfg.spiral_form};
  for (int j = 0; j < g; ++j) {
    const Real t = rc.slope * (j + 1) / g / 10;
    RigidityEntry e = scan_state(flat, 1, t, rc.horizon, rc.step, open, cfg.kappa_floor, cfg.kappa_ceiling);
    if (e.closure.closed) scan.control_closures = true;
    scan.control.push_back(e);
  }
  scan.passed = scan.equilibrium_closed && scan.closures == 0 && !scan.control_closures;
  return scan;
}

namespace {

nlohmann::ordered_json num(Real x) {
  if (!std::isfinite(x)) return nullptr;
  return static_cast<double>(x);
}

}  // namespace

nlohmann::ordered_json to_json(const RigidityEntry& e) {
  return {{"kappa0", num(e.kappa0)},
          {"kappa_s0", num(e.kappa_s0)},
          {"status", to_string(e.closure.status)},
          {"defect", num(e.closure.defect)},
          {"period", e.closure.period ? num(*e.closure.period) : nlohmann::ordered_json(nullptr)},
          {"termination", to_string(e.termination)}};
}

nlohmann::ordered_json to_json(const RigidityScan& scan) {
  nlohmann::ordered_json j;
  j["epsilon"] = scan.params.epsilon;
  j["R"] = num(scan.params.R);
  j["n"] = scan.params.n;
  j["trivial"] = scan.trivial;
  j["kappa_star"] = scan.kappa_star ? num(*scan.kappa_star) : nlohmann::ordered_json(nullptr);
  j["equilibrium"] = scan.equilibrium ? to_json(*scan.equilibrium) : nlohmann::ordered_json(nullptr);
  auto list = [](const std::vector<RigidityEntry>& v, bool only_inconclusive) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& e : v)
      if (!only_inconclusive || e.closure.status == ClosureStatus::inconclusive) a.push_back(to_json(e));
    return a;
  };
  j["grid"] = list(scan.grid, false);
  j["inconclusive"] = list(scan.grid, true);
  j["flat_control"] = list(scan.control, false);
  Real lo = std::numeric_limits<Real>::infinity();
  for (const auto& e : scan.grid)
    if (std::isfinite(e.closure.defect)) lo = std::min(lo, e.closure.defect);
  j["grid_min_defect"] = num(lo);
  j["grid_closures"] = scan.closures;
  j["equilibrium_closed"] = scan.equilibrium_closed;
  j["flat_control_closures"] = scan.control_closures;
  j["passed"] = scan.passed;
  return j;
}

std::string rigidity_csv(const RigidityScan& scan) {
  std::ostringstream os;
  os << "kind,kappa0,kappa_s0,status,defect,period,termination\n";
  auto row = [&os](const char* kind, const RigidityEntry& e) {
    os << kind << ',' << fmt_real(e.kappa0) << ',' << fmt_real(e.kappa_s0) << ',' << to_string(e.closure.status) << ','
       << fmt_real(e.closure.defect) << ',' << (e.closure.period ? fmt_real(*e.closure.period) : std::string()) << ','
       << to_string(e.termination) << '\n';
  };
  if (scan.equilibrium) row("equilibrium", *scan.equilibrium);
  for (const auto& e : scan.grid) row("grid", e);
  for (const auto& e : scan.control) row("control", e);
  return os.str();
}

}  // namespace confhyp
