#include "confhyp/spiral.hpp"

#include "confhyp/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace confhyp {

std::string to_string(SpiralForm f) { return f == SpiralForm::classic ? "classic" : "warped_scalar"; }

SpiralForm parse_spiral_form(const std::string& text) {
  if (text == "classic") return SpiralForm::classic;
  if (text == "warped_scalar") return SpiralForm::warped_scalar;
  throw InputError("unknown spiral form '" + text + "' (expected classic or warped_scalar)");
}

CurveModel model_for(int epsilon) {
  switch (epsilon) {
    case 0: return CurveModel::plane;
    case 1: return CurveModel::sphere;
    case -1: return CurveModel::half_plane;
    default: throw ParameterError("epsilon must be -1, 0 or 1, got " + std::to_string(epsilon));
  }
}

std::string to_string(CurveModel m) {
  switch (m) {
    case CurveModel::plane: return "plane";
    case CurveModel::sphere: return "sphere";
    case CurveModel::half_plane: return "half_plane";
  }
  return "?";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::horizon: return "horizon";
    case Termination::kappa_floor: return "kappa_floor";
    case Termination::kappa_ceiling: return "kappa_ceiling";
    case Termination::closure: return "closure";
  }
  return "?";
}

void SpiralParams::validate() const {
  if (n < 3) throw ParameterError("n must be >= 3, got " + std::to_string(n));
  if (epsilon < -1 || epsilon > 1) throw ParameterError("epsilon must be -1, 0 or 1, got " + std::to_string(epsilon));
  if (!std::isfinite(R)) throw ParameterError("R must be finite");
}

void IntegratorControls::validate() const {
  if (!(s_max > 0) || !std::isfinite(s_max)) throw ParameterError("s_max must be positive");
  if (!(step > 0) || !std::isfinite(step)) throw ParameterError("step must be positive");
  if (!(kappa_floor > 0)) throw ParameterError("kappa_floor must be positive");
  if (!(kappa_ceiling > kappa_floor)) throw ParameterError("kappa_ceiling must exceed kappa_floor");
}

SpiralCoefficients coefficients(const SpiralParams& p) {
  p.validate();
  const Real n = p.n;
  const Real eps = p.epsilon;
  if (p.form == SpiralForm::classic) return {(n + 2) / 2, eps * (n - 2) / 2, -p.R};
  return {(4 - n) / 2, -eps * (n - 2) / 2, -p.R / (2 * (n - 1))};
}

namespace {

Real accel(const SpiralCoefficients& k, Real kappa, Real kappa_s) {
  return k.c * kappa_s * kappa_s / kappa + k.d * kappa + k.e * kappa * kappa * kappa;
}

struct Pair {
  Real kappa;
  Real kappa_s;
};

Pair rk4(const SpiralCoefficients& k, Pair y, Real h) {
  const Real a1 = y.kappa_s, b1 = accel(k, y.kappa, y.kappa_s);
  const Real k2 = y.kappa + h / 2 * a1, ks2 = y.kappa_s + h / 2 * b1;
  const Real a2 = ks2, b2 = accel(k, k2, ks2);
  const Real k3 = y.kappa + h / 2 * a2, ks3 = y.kappa_s + h / 2 * b2;
  const Real a3 = ks3, b3 = accel(k, k3, ks3);
  const Real k4 = y.kappa + h * a3, ks4 = y.kappa_s + h * b3;
  const Real a4 = ks4, b4 = accel(k, k4, ks4);
  return {y.kappa + h / 6 * (a1 + 2 * a2 + 2 * a3 + a4), y.kappa_s + h / 6 * (b1 + 2 * b2 + 2 * b3 + b4)};
}

}  // namespace

SpiralDerivative spiral_rhs(const SpiralState& state, const SpiralParams& params, Real kappa_floor) {
  if (!(state.kappa > kappa_floor)) {
    std::ostringstream os;
    os << "spiral equation singular: kappa = " << static_cast<double>(state.kappa) << " <= floor "
       << static_cast<double>(kappa_floor);
    throw SingularityError(os.str());
  }
  const auto k = coefficients(params);
  return {state.kappa_s, accel(k, state.kappa, state.kappa_s)};
}

Real first_integral(const SpiralParams& params, Real kappa, Real kappa_s) {
  const auto k = coefficients(params);
  return kappa_s * kappa_s * std::pow(kappa, -2 * k.c) - k.d * std::pow(kappa, 2 - 2 * k.c) / (1 - k.c) -
         k.e * std::pow(kappa, 4 - 2 * k.c) / (2 - k.c);
}

std::optional<Real> equilibrium_kappa(const SpiralParams& params) {
  const auto k = coefficients(params);
  if (k.e == 0) return std::nullopt;
  const Real sq = -k.d / k.e;
  if (!(sq > 0)) return std::nullopt;
  return std::sqrt(sq);
}

Real rhs_stiffness(const SpiralParams& params, Real kappa) {
  const auto k = coefficients(params);
  return k.d + 3 * k.e * kappa * kappa;
}

SpiralTrajectory integrate_spiral(const SpiralParams& params, const SpiralState& initial,
                                  const IntegratorControls& controls) {
  params.validate();
  controls.validate();
  if (!(initial.kappa > controls.kappa_floor && initial.kappa < controls.kappa_ceiling))
    throw ParameterError("initial kappa must lie in (kappa_floor, kappa_ceiling)");
  if (!std::isfinite(initial.kappa_s)) throw ParameterError("initial kappa_s must be finite");

  const auto k = coefficients(params);
  SpiralTrajectory traj;
  traj.params = params;
  traj.first_integral_constant = first_integral(params, initial.kappa, initial.kappa_s);

  const Real s0 = initial.s;
  const Real s1 = s0 + controls.s_max;
  const Real h = controls.step;
  auto inside = [&](const Pair& y) {
    return std::isfinite(y.kappa) && std::isfinite(y.kappa_s) && y.kappa > controls.kappa_floor &&
           y.kappa < controls.kappa_ceiling;
  };

  SpiralSample first;
  first.spiral = initial;
  traj.samples.push_back(first);
  Pair y{initial.kappa, initial.kappa_s};
  for (long i = 0;; ++i) {
    const Real sa = s0 + static_cast<Real>(i) * h;
    if (sa >= s1 - h * 1e-9L) break;
    Real sb = s0 + static_cast<Real>(i + 1) * h;
    if (sb > s1 - h * 1e-9L) sb = s1;
    const Real hk = sb - sa;
    Pair next = rk4(k, y, hk);
    if (!inside(next)) {
      Real lo = 0, hi = hk;
      while (hi - lo > 1e-10L) {
        const Real mid = (lo + hi) / 2;
        if (inside(rk4(k, y, mid)))
          lo = mid;
        else
          hi = mid;
      }
      Pair probe = rk4(k, y, hi);
      const bool ceiling = std::isfinite(probe.kappa) && probe.kappa >= controls.kappa_ceiling;
      traj.termination = ceiling ? Termination::kappa_ceiling : Termination::kappa_floor;
      if (lo > 0) {
        const Pair end = rk4(k, y, lo);
        SpiralSample sm;
        sm.spiral = {sa + lo, end.kappa, end.kappa_s};
        traj.samples.push_back(sm);
      }
      return traj;
    }
    y = next;
    SpiralSample sm;
    sm.spiral = {sb, y.kappa, y.kappa_s};
    traj.samples.push_back(sm);
  }
  traj.termination = Termination::horizon;
  return traj;
}

SpiralTrajectory prescribed_trajectory(int n, int epsilon, PrescribedCurvature kappa, Real s_begin, Real s_end,
                                       Real step) {
  if (!kappa.kappa || !kappa.kappa_s || !kappa.kappa_ss) throw InputError("prescribed curvature needs k, k', k''");
  if (!(s_end > s_begin) || !(step > 0)) throw ParameterError("prescribed trajectory needs s_end > s_begin, step > 0");
  SpiralTrajectory traj;
  traj.params.n = n;
  traj.params.epsilon = epsilon;
  traj.params.validate();
  traj.first_integral_constant = std::numeric_limits<Real>::quiet_NaN();
  traj.prescribed = std::make_shared<const PrescribedCurvature>(std::move(kappa));
  for (long i = 0;; ++i) {
    Real s = s_begin + static_cast<Real>(i) * step;
    const bool last = s >= s_end - step * 1e-9L;
    if (last) s = s_end;
    SpiralSample sm;
    sm.spiral = {s, traj.prescribed->kappa(s), traj.prescribed->kappa_s(s)};
    if (!(sm.spiral.kappa > 0)) throw ParameterError("prescribed curvature must stay positive");
    traj.samples.push_back(sm);
    if (last) break;
  }
  return traj;
}

Real SpiralTrajectory::kappa_ss(std::size_t i) const {
  const auto& st = samples.at(i).spiral;
  if (prescribed) return prescribed->kappa_ss(st.s);
  return accel(coefficients(params), st.kappa, st.kappa_s);
}

std::size_t SpiralTrajectory::segment(Real s) const {
  if (samples.size() < 2) throw DomainError("trajectory has fewer than two samples");
  if (s < s_begin() || s > s_end()) {
    std::ostringstream os;
    os << "arc length s = " << static_cast<double>(s) << " outside trajectory range [" << static_cast<double>(s_begin())
       << ", " << static_cast<double>(s_end()) << "]";
    throw DomainError(os.str());
  }
  auto it = std::upper_bound(samples.begin(), samples.end(), s,
                             [](Real v, const SpiralSample& sm) { return v < sm.spiral.s; });
  std::size_t j = static_cast<std::size_t>(it - samples.begin());
  if (j == 0) j = 1;
  if (j >= samples.size()) j = samples.size() - 1;
  return j - 1;
}

Real SpiralTrajectory::kappa_at(Real s) const {
  const std::size_t i = segment(s);
  const auto& a = samples[i].spiral;
  const auto& b = samples[i + 1].spiral;
  return quintic_hermite<Real>(a.s, b.s, a.kappa, a.kappa_s, kappa_ss(i), b.kappa, b.kappa_s, kappa_ss(i + 1), s).value;
}

Vec3 SpiralTrajectory::curve_velocity(std::size_t i) const {
  const auto& c = samples.at(i).curve;
  switch (model()) {
    case CurveModel::plane: return Vec3(std::cos(c.angle), std::sin(c.angle), 0);
    case CurveModel::sphere: return c.tangent;
    case CurveModel::half_plane: {
      const Real y = c.point(1);
      return Vec3(y * std::cos(c.angle), y * std::sin(c.angle), 0);
    }
  }
  return Vec3::Zero();
}

Vec3 SpiralTrajectory::curve_acceleration(std::size_t i) const {
  const auto& c = samples.at(i).curve;
  const Real kappa = samples[i].spiral.kappa;
  switch (model()) {
    case CurveModel::plane: return Vec3(-kappa * std::sin(c.angle), kappa * std::cos(c.angle), 0);
    case CurveModel::sphere: return kappa * c.point.cross(c.tangent) - c.point;
    case CurveModel::half_plane: {
      const Real y = c.point(1);
      const Real cp = std::cos(c.angle), sp = std::sin(c.angle);
      const Real yd = y * sp;
      const Real phid = kappa - cp;
      return Vec3(yd * cp - y * sp * phid, yd * sp + y * cp * phid, 0);
    }
  }
  return Vec3::Zero();
}

Vec3 SpiralTrajectory::curve_at(Real s) const {
  if (!has_curve) throw InputError("trajectory has no reconstructed curve");
  const std::size_t i = segment(s);
  return quintic_hermite<Vec3>(samples[i].spiral.s, samples[i + 1].spiral.s, samples[i].curve.point, curve_velocity(i),
                               curve_acceleration(i), samples[i + 1].curve.point, curve_velocity(i + 1),
                               curve_acceleration(i + 1), s)
      .value;
}

}  // namespace confhyp
