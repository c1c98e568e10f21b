#include "confhyp/spiral.hpp"

#include <algorithm>
#include <cmath>

namespace confhyp {

std::string to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::closed: return "closed";
    case ClosureStatus::open: return "open";
    case ClosureStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

Real wrapped(Real a, Real b) {
  Real d = std::fmod(std::fabs(a - b), 2 * kPi);
  return std::min(d, 2 * kPi - d);
}

}  // namespace

Real closure_defect(const SpiralTrajectory& traj, const SpiralSample& a, const SpiralSample& b) {
  const auto& p = a.curve;
  const auto& q = b.curve;
  Real pos = 0, ang = 0;
  switch (traj.model()) {
    case CurveModel::plane:
      pos = (p.point - q.point).norm();
      ang = wrapped(p.angle, q.angle);
      break;
    case CurveModel::sphere:
      pos = std::atan2(p.point.cross(q.point).norm(), p.point.dot(q.point));
      ang = std::atan2(p.tangent.cross(q.tangent).norm(), p.tangent.dot(q.tangent));
      break;
    case CurveModel::half_plane: {
      const Real dx = p.point(0) - q.point(0), dy = p.point(1) - q.point(1);
      pos = 2 * std::asinh(std::sqrt((dx * dx + dy * dy) / (4 * p.point(1) * q.point(1))));
      ang = wrapped(p.angle, q.angle);
      break;
    }
  }
  return pos + ang + std::fabs(a.spiral.kappa - b.spiral.kappa) + std::fabs(a.spiral.kappa_s - b.spiral.kappa_s);
}

namespace {

// Golden-section minimum of the defect on [s_{k-1}, s_{k+1}], stepping from node k-1.
std::pair<Real, Real> refine(const SpiralTrajectory& traj, std::size_t k) {
  const auto& start = traj.samples.front();
  const auto& base = traj.samples[k - 1];
  const Real span = traj.samples[k + 1].spiral.s - base.spiral.s;
  auto f = [&](Real delta) { return closure_defect(traj, start, advance(traj, base, delta)); };
  const Real g = (std::sqrt(5.0L) - 1) / 2;
  Real lo = 0, hi = span;
  Real x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  Real f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13L; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const Real x = (lo + hi) / 2;
  Real best = f(x);
  Real at = x;
  const Real node = closure_defect(traj, start, traj.samples[k]);
  if (node < best) {
    best = node;
    at = traj.samples[k].spiral.s - base.spiral.s;
  }
  return {base.spiral.s + at, best};
}

}  // namespace

ClosureResult closure_test(const SpiralTrajectory& traj, const ClosureTolerances& tol) {
  if (!traj.has_curve) throw InputError("closure_test needs a reconstructed curve");
  if (!(tol.defect > 0) || !(tol.departure > 0)) throw ParameterError("closure tolerances must be positive");
  ClosureResult res;
  const auto& sm = traj.samples;
  if (sm.size() < 5) return res;
  const auto& start = sm.front();

  std::vector<Real> d(sm.size());
  for (std::size_t i = 0; i < sm.size(); ++i) d[i] = closure_defect(traj, start, sm[i]);
  std::size_t first = 0;
  for (std::size_t i = 1; i < sm.size(); ++i)
    if (d[i] > tol.departure) {
      first = i;
      break;
    }
  if (first == 0) return res;

  Real best = std::numeric_limits<Real>::infinity();
  for (std::size_t k = first + 1; k + 1 < sm.size(); ++k) {
    if (!(d[k] <= d[k - 1] && d[k] <= d[k + 1])) continue;
    if (d[k] > 2 * best + tol.defect) continue;
    const auto [s, v] = refine(traj, k);
    if (v < best) best = v;
    if (v < tol.defect) {
      res.status = ClosureStatus::closed;
      res.closed = true;
      res.period = s - start.spiral.s;
      res.defect = v;
      return res;
    }
  }
  std::size_t k0 = first;
  while (k0 + 1 < sm.size() && d[k0 + 1] >= d[k0]) ++k0;
  const Real scanned = *std::min_element(d.begin() + static_cast<std::ptrdiff_t>(k0), d.end());
  res.defect = std::min(best, scanned);
  const bool early = traj.termination == Termination::kappa_floor || traj.termination == Termination::kappa_ceiling;
  res.status = early ? ClosureStatus::inconclusive : ClosureStatus::open;
  return res;
}

}  // namespace confhyp
