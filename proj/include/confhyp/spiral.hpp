#pragma once

#include "confhyp/core.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace confhyp {

/// Which second-order equation defines a curvature-spiral.
///   classic:        -k''/k^3 + (n+2) k'^2/(2 k^4) + eps (n-2)/(2 k^2) = R
///   warped_scalar:  k'' = (4-n) k'^2/(2k) - eps (n-2) k/2 - R k^3/(2(n-1)),
///                   i.e. k(s)^2 (ds^2 + I_{-eps}) has full-trace scalar curvature R.
enum class SpiralForm { classic, warped_scalar };

std::string to_string(SpiralForm f);
SpiralForm parse_spiral_form(const std::string& text);

/// Model surface N^2(eps) the curve lives in.
enum class CurveModel { plane, sphere, half_plane };
CurveModel model_for(int epsilon);
std::string to_string(CurveModel m);

struct SpiralParams {
  int n = 4;
  int epsilon = 0;
  Real R = 0;
  SpiralForm form = SpiralForm::warped_scalar;

  void validate() const;
};

struct SpiralState {
  Real s = 0;
  Real kappa = 1;
  Real kappa_s = 0;
};

/// k'' = c k'^2/k + d k + e k^3
struct SpiralCoefficients {
  Real c;
  Real d;
  Real e;
};
SpiralCoefficients coefficients(const SpiralParams& p);

struct SpiralDerivative {
  Real dkappa;
  Real dkappa_s;
};

/// Right-hand side of the first-order system (k, k'). Throws SingularityError
/// if kappa <= kappa_floor.
SpiralDerivative spiral_rhs(const SpiralState& state, const SpiralParams& params, Real kappa_floor = 1e-6L);

/// Conserved quantity along solutions: E = k'^2 k^{-2c} - d k^{2-2c}/(1-c) - e k^{4-2c}/(2-c).
Real first_integral(const SpiralParams& params, Real kappa, Real kappa_s);

/// Constant solution, if any.
std::optional<Real> equilibrium_kappa(const SpiralParams& params);

/// d(k'')/dk at (k, k' = 0), analytically.
Real rhs_stiffness(const SpiralParams& params, Real kappa);

struct IntegratorControls {
  Real s_max = 10;
  Real step = 1e-3L;
  Real kappa_floor = 1e-6L;
  Real kappa_ceiling = 1e6L;

  void validate() const;
};

enum class Termination { horizon, kappa_floor, kappa_ceiling, closure };
std::string to_string(Termination t);

using Vec3 = Eigen::Matrix<Real, 3, 1>;

/// Point and unit direction of the curve. Plane and half-plane curves use
/// (x, y, 0) with `angle` the tangent angle; sphere curves use the unit
/// position and unit tangent in R^3 (angle unused).
struct CurveState {
  Vec3 point = Vec3::Zero();
  Vec3 tangent = Vec3::UnitX();
  Real angle = 0;
};

struct SpiralSample {
  SpiralState spiral;
  CurveState curve;
};

/// Curvature given directly as a function of arc length instead of by the ODE.
struct PrescribedCurvature {
  std::function<Real(Real)> kappa;
  std::function<Real(Real)> kappa_s;
  std::function<Real(Real)> kappa_ss;
};

struct SpiralTrajectory {
  SpiralParams params;
  std::vector<SpiralSample> samples;
  Real first_integral_constant = 0;
  Termination termination = Termination::horizon;
  bool has_curve = false;
  std::shared_ptr<const PrescribedCurvature> prescribed;  // null for ODE trajectories

  CurveModel model() const { return model_for(params.epsilon); }
  Real s_begin() const { return samples.front().spiral.s; }
  Real s_end() const { return samples.back().spiral.s; }

  /// Second derivative of kappa at node i.
  Real kappa_ss(std::size_t i) const;
  /// Quintic Hermite interpolation of kappa; throws DomainError outside the range.
  Real kappa_at(Real s) const;
  /// Quintic Hermite interpolation of the curve point (needs has_curve).
  Vec3 curve_at(Real s) const;
  /// Curve velocity and acceleration at node i (model coordinates).
  Vec3 curve_velocity(std::size_t i) const;
  Vec3 curve_acceleration(std::size_t i) const;

 private:
  std::size_t segment(Real s) const;
};

/// Fixed-step RK4 on (k, k'). Floor/ceiling crossings end the run at the
/// bisection-refined crossing point (to 1e-10 in s).
SpiralTrajectory integrate_spiral(const SpiralParams& params, const SpiralState& initial,
                                  const IntegratorControls& controls);

/// Trajectory whose curvature is prescribed (no spiral equation), sampled on a
/// uniform grid. Used for negative controls.
SpiralTrajectory prescribed_trajectory(int n, int epsilon, PrescribedCurvature kappa, Real s_begin, Real s_end,
                                       Real step);

/// Default initial frame for each model: plane (0,0) heading +x; sphere
/// (0,0,1) heading +x; half-plane (0,1) heading +x.
CurveState default_curve_start(CurveModel model);

/// Integrates the Frenet system of the model surface on the trajectory's own
/// nodes and fills in the curve states. Kappa values are left untouched.
SpiralTrajectory reconstruct_curve(const SpiralTrajectory& traj);
SpiralTrajectory reconstruct_curve(const SpiralTrajectory& traj, const CurveState& start);

/// Geodesic curvature recomputed from the node positions with 5-point
/// differences (interior nodes of the uniform part of the grid). Entry i
/// corresponds to node i + 2.
std::vector<Real> recomputed_curvature(const SpiralTrajectory& traj);

struct ClosureTolerances {
  Real defect = 1e-3L;
  /// The curve must first get this far (in defect) from its start before a
  /// return is looked for.
  Real departure = 0.1L;
};

enum class ClosureStatus { closed, open, inconclusive };
std::string to_string(ClosureStatus s);

struct ClosureResult {
  ClosureStatus status = ClosureStatus::inconclusive;
  bool closed = false;
  std::optional<Real> period;
  Real defect = std::numeric_limits<Real>::infinity();
};

/// position distance in the model metric + tangent angle + |dk| + |dk'|
Real closure_defect(const SpiralTrajectory& traj, const SpiralSample& a, const SpiralSample& b);

ClosureResult closure_test(const SpiralTrajectory& traj, const ClosureTolerances& tol);

/// Advance a full sample (spiral + curve) by one RK4 step of length h.
SpiralSample advance(const SpiralTrajectory& traj, const SpiralSample& from, Real h);

}  // namespace confhyp
