#include "confhyp/commands.hpp"

#include "confhyp/checks.hpp"
#include "confhyp/rigidity.hpp"
#include "confhyp/suite.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace confhyp {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text, std::ostream& log) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
  log << "wrote " << path.string() << "\n";
}

std::string params_line(const SpiralTrajectory& t) {
  std::ostringstream os;
  os << "# params n=" << t.params.n << " epsilon=" << t.params.epsilon << " R=" << fmt_real(t.params.R)
     << " form=" << to_string(t.params.form) << " model=" << to_string(t.model())
     << " termination=" << to_string(t.termination) << " E=" << fmt_real(t.first_integral_constant);
  return os.str();
}

}  // namespace

std::string trajectory_csv(const SpiralTrajectory& t) {
  std::ostringstream os;
  os << params_line(t) << "\n";
  os << "s,kappa,kappa_s,x,y,z,E\n";
  const bool odeint = !t.prescribed;
  for (const auto& smp : t.samples) {
    const auto& st = smp.spiral;
    os << fmt_real(st.s) << ',' << fmt_real(st.kappa) << ',' << fmt_real(st.kappa_s);
    if (t.has_curve)
      os << ',' << fmt_real(smp.curve.point(0)) << ',' << fmt_real(smp.curve.point(1)) << ','
         << fmt_real(smp.curve.point(2));
    else
      os << ",,,";
    os << ',' << (odeint ? fmt_real(first_integral(t.params, st.kappa, st.kappa_s)) : std::string()) << '\n';
  }
  return os.str();
}

SpiralTrajectory family_trajectory(const RunConfig& cfg, Family f) {
  const FamilyCase& fc = cfg.families.at(f);
  return reconstruct_curve(integrate_spiral(cfg.family_params(f), {0, fc.kappa0, fc.kappa_s0}, cfg.family_controls(f)));
}

std::string invariants_csv(const RunConfig& cfg) {
  SuiteContext ctx(cfg);
  const SampleSet& set = cfg.family == Family::torus ? ctx.torus(cfg.torus_r).set : ctx.family(cfg.family).set;
  const int n = cfg.n;
  std::ostringstream os;
  os << "# family=" << to_string(cfg.family) << " convention=" << to_string(cfg.convention) << "\n";
  for (int k = 0; k < n; ++k) os << 'p' << k << ',';
  os << "rho,H,scalar,scalar_conformal_route,trace_B,norm_B2,trace_A,max_C";
  for (int k = 0; k < n; ++k) os << ",k" << k + 1;
  os << ",status\n";
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    for (int k = 0; k < n; ++k) os << fmt_real(set.points[i](k)) << ',';
    const auto& d = set.data[i];
    const auto& s = set.scalars[i];
    if (!d || !s) {
      os << std::string(8 + static_cast<std::size_t>(n), ',') << "umbilic\n";
      continue;
    }
    os << fmt_real(d->rho) << ',' << fmt_real(d->H) << ',' << fmt_real(convert_scalar(s->direct, cfg.convention, n))
       << ',' << fmt_real(convert_scalar(s->conformal_route, cfg.convention, n)) << ',' << fmt_real(d->B.trace()) << ','
       << fmt_real(d->B.squaredNorm()) << ',' << fmt_real(d->A.trace()) << ',' << fmt_real(d->C.cwiseAbs().maxCoeff());
    for (int k = 0; k < n; ++k) os << ',' << fmt_real(d->principal_curvatures(k));
    os << ",ok\n";
  }
  return os.str();
}

int command_spiral(const RunConfig& cfg, std::ostream& log) {
  const SpiralParams params{cfg.n, cfg.epsilon, cfg.R, cfg.spiral_form};
  IntegratorControls ctl;
  ctl.s_max = cfg.s_max;
  ctl.step = cfg.step;
  ctl.kappa_floor = cfg.kappa_floor;
  ctl.kappa_ceiling = cfg.kappa_ceiling;
  SpiralTrajectory t = integrate_spiral(params, {0, cfg.kappa0, cfg.kappa_s0}, ctl);
  std::string note;
  try {
    t = reconstruct_curve(t);
  } catch (const DomainError& e) {
    note = std::string("# curve: ") + e.what() + "\n";
  }
  write_file(fs::path(cfg.out) / "spiral.csv", note + trajectory_csv(t), log);
  log << "termination: " << to_string(t.termination) << " at s = " << fmt_real(t.s_end()) << "\n";
  return kExitPass;
}

int command_build(const RunConfig& cfg, std::ostream& log) {
  HypersurfaceSpec spec;
  spec.kind = cfg.family;
  spec.n = cfg.n;
  spec.torus_r = cfg.torus_r;
  spec.pole_margin = cfg.pole_margin;
  SliceSpec slice;
  const Real lo = cfg.pole_margin + 0.1L, hi = kPi - cfg.pole_margin - 0.1L;
  if (cfg.family == Family::torus) {
    slice.u0 = 0;
    slice.u1 = 2 * kPi;
    slice.v0 = lo;
    slice.v1 = hi;
  } else {
    spec.trajectory = family_trajectory(cfg, cfg.family);
    slice.u0 = spec.trajectory->s_begin() + cfg.sample_margin;
    slice.u1 = spec.trajectory->s_end() - cfg.sample_margin;
    if (!(slice.u1 > slice.u0)) throw std::runtime_error("spiral too short to build a slice");
    switch (cfg.family) {
      case Family::cylinder: slice.v0 = -1, slice.v1 = 1; break;
      case Family::cone: slice.v0 = 0.5L, slice.v1 = 2; break;
      default: slice.v0 = lo, slice.v1 = hi; break;
    }
  }
  const Immersion f = build_hypersurface(spec);
  slice.base = f.base_point();
  slice.axis_u = 0;
  slice.axis_v = 1;
  slice.nu = slice.nv = cfg.slice_resolution;
  const std::string stem = to_string(cfg.family);
  write_file(fs::path(cfg.out) / (stem + ".obj"), to_obj(slice_mesh(f, slice), stem + " hypersurface slice"), log);
  write_file(fs::path(cfg.out) / (stem + ".json"), slice_descriptor(f, slice, stem + ".obj"), log);
  return kExitPass;
}

int command_invariants(const RunConfig& cfg, std::ostream& log) {
  write_file(fs::path(cfg.out) / ("invariants_" + to_string(cfg.family) + ".csv"), invariants_csv(cfg), log);
  return kExitPass;
}

int command_verify(const RunConfig& cfg, std::ostream& log) {
  const VerificationReport rep = run_suite(cfg);
  const fs::path out(cfg.out);
  write_file(out / "report.json", report_json_text(rep), log);
  write_file(out / "report.md", report_markdown(rep), log);
  write_file(out / "residuals.csv", residual_csv(rep), log);
  for (Family f : SuiteContext::curve_families()) {
    try {
      write_file(out / "trajectories" / (to_string(f) + ".csv"), trajectory_csv(family_trajectory(cfg, f)), log);
    } catch (const std::exception& e) {
      log << to_string(f) << " trajectory not written: " << e.what() << "\n";
    }
  }
  for (const auto& c : rep.checks)
    log << (c.kind == CheckKind::audit ? "audit " : (c.passed ? "pass  " : "FAIL  ")) << c.name
        << "  max=" << fmt_real(c.max_residual) << "  tol=" << fmt_real(c.tolerance)
        << (c.error.empty() ? "" : "  error: " + c.error) << "\n";
  return rep.all_asserts_pass() ? kExitPass : kExitCheckFailure;
}

int command_rigidity(const RunConfig& cfg, std::ostream& log) {
  const RigidityScan scan = rigidity_scan(cfg);
  const fs::path out(cfg.out);
  write_file(out / "rigidity.json", to_json(scan).dump(2) + "\n", log);
  write_file(out / "rigidity.csv", rigidity_csv(scan), log);
  log << "closures in grid: " << scan.closures << ", inconclusive: " << scan.inconclusive
      << ", equilibrium closed: " << (scan.equilibrium_closed ? "yes" : "no") << "\n";
  return scan.passed ? kExitPass : kExitCheckFailure;
}

}  // namespace confhyp
