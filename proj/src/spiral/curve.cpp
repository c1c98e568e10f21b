#include "confhyp/spiral.hpp"

#include <cmath>
#include <sstream>

namespace confhyp {

namespace {

using Q = Eigen::Matrix<Real, 6, 1>;

Q pack(CurveModel m, const CurveState& c) {
  Q q = Q::Zero();
  if (m == CurveModel::sphere) {
    q.head<3>() = c.point;
    q.tail<3>() = c.tangent;
  } else {
    q(0) = c.point(0);
    q(1) = c.point(1);
    q(2) = c.angle;
  }
  return q;
}

CurveState unpack(CurveModel m, const Q& q) {
  CurveState c;
  if (m == CurveModel::sphere) {
    c.point = q.head<3>();
    c.tangent = q.tail<3>();
    c.angle = 0;
  } else {
    c.point = Vec3(q(0), q(1), 0);
    c.angle = q(2);
    c.tangent = Vec3(std::cos(q(2)), std::sin(q(2)), 0);
  }
  return c;
}

Q frenet(CurveModel m, const Q& q, Real kappa) {
  Q d = Q::Zero();
  switch (m) {
    case CurveModel::plane:
      d << std::cos(q(2)), std::sin(q(2)), kappa, 0, 0, 0;
      break;
    case CurveModel::sphere: {
      const Vec3 g = q.head<3>(), t = q.tail<3>();
      d.head<3>() = t;
      d.tail<3>() = kappa * g.cross(t) - g;
      break;
    }
    case CurveModel::half_plane:
      d << q(1) * std::cos(q(2)), q(1) * std::sin(q(2)), kappa - std::cos(q(2)), 0, 0, 0;
      break;
  }
  return d;
}

void renormalize(CurveModel m, Q& q, Real s) {
  if (m == CurveModel::sphere) {
    Vec3 g = q.head<3>().normalized();
    Vec3 t = q.tail<3>();
    t = (t - t.dot(g) * g).normalized();
    q.head<3>() = g;
    q.tail<3>() = t;
  } else if (m == CurveModel::half_plane && !(q(1) > 0)) {
    std::ostringstream os;
    os << "curve left the upper half-plane at s = " << static_cast<double>(s);
    throw DomainError(os.str());
  }
}

void validate_start(CurveModel m, const CurveState& c) {
  if (m == CurveModel::sphere) {
    if (std::fabs(c.point.norm() - 1) > 1e-10L || std::fabs(c.tangent.norm() - 1) > 1e-10L ||
        std::fabs(c.point.dot(c.tangent)) > 1e-10L)
      throw ParameterError("sphere start needs unit position and unit orthogonal tangent");
  } else if (m == CurveModel::half_plane && !(c.point(1) > 0)) {
    throw ParameterError("half-plane start needs y > 0");
  }
}

}  // namespace

CurveState default_curve_start(CurveModel model) {
  CurveState c;
  switch (model) {
    case CurveModel::plane: c.point = Vec3::Zero(); break;
    case CurveModel::sphere: c.point = Vec3::UnitZ(); break;
    case CurveModel::half_plane: c.point = Vec3(0, 1, 0); break;
  }
  c.tangent = Vec3::UnitX();
  c.angle = 0;
  return c;
}

SpiralTrajectory reconstruct_curve(const SpiralTrajectory& traj) {
  return reconstruct_curve(traj, default_curve_start(traj.model()));
}

SpiralTrajectory reconstruct_curve(const SpiralTrajectory& traj, const CurveState& start) {
  const CurveModel m = traj.model();
  validate_start(m, start);
  if (traj.samples.empty()) throw InputError("empty trajectory");
  SpiralTrajectory out = traj;
  auto kappa = [&](Real s) { return traj.prescribed ? traj.prescribed->kappa(s) : traj.kappa_at(s); };

  Q q = pack(m, start);
  out.samples[0].curve = unpack(m, q);
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const Real sa = traj.samples[i].spiral.s;
    const Real sb = traj.samples[i + 1].spiral.s;
    const Real h = sb - sa;
    const Real ka = traj.samples[i].spiral.kappa;
    const Real km = kappa(sa + h / 2);
    const Real kb = traj.samples[i + 1].spiral.kappa;
    const Q d1 = frenet(m, q, ka);
    const Q d2 = frenet(m, q + h / 2 * d1, km);
    const Q d3 = frenet(m, q + h / 2 * d2, km);
    const Q d4 = frenet(m, q + h * d3, kb);
    q += h / 6 * (d1 + 2 * d2 + 2 * d3 + d4);
    renormalize(m, q, sb);
    out.samples[i + 1].curve = unpack(m, q);
  }
  out.has_curve = true;
  return out;
}

SpiralSample advance(const SpiralTrajectory& traj, const SpiralSample& from, Real h) {
  if (!traj.has_curve) throw InputError("advance needs a reconstructed curve");
  const CurveModel m = traj.model();
  using Y = Eigen::Matrix<Real, 8, 1>;
  SpiralCoefficients k{0, 0, 0};
  if (!traj.prescribed) k = coefficients(traj.params);
  const Real s0 = from.spiral.s;
  auto rhs = [&](Real s, const Y& y) {
    Y d = Y::Zero();
    Real kap;
    if (traj.prescribed) {
      kap = traj.prescribed->kappa(s);
    } else {
      kap = y(0);
      d(0) = y(1);
      d(1) = k.c * y(1) * y(1) / y(0) + k.d * y(0) + k.e * y(0) * y(0) * y(0);
    }
    d.tail<6>() = frenet(m, y.tail<6>(), kap);
    return d;
  };
  Y y;
  y(0) = from.spiral.kappa;
  y(1) = from.spiral.kappa_s;
  y.tail<6>() = pack(m, from.curve);
  const Y d1 = rhs(s0, y);
  const Y d2 = rhs(s0 + h / 2, y + h / 2 * d1);
  const Y d3 = rhs(s0 + h / 2, y + h / 2 * d2);
  const Y d4 = rhs(s0 + h, y + h * d3);
  y += h / 6 * (d1 + 2 * d2 + 2 * d3 + d4);
  Q q = y.tail<6>();
  renormalize(m, q, s0 + h);
  SpiralSample out;
  out.spiral.s = s0 + h;
  if (traj.prescribed) {
    out.spiral.kappa = traj.prescribed->kappa(s0 + h);
    out.spiral.kappa_s = traj.prescribed->kappa_s(s0 + h);
  } else {
    out.spiral.kappa = y(0);
    out.spiral.kappa_s = y(1);
  }
  out.curve = unpack(m, q);
  return out;
}

std::vector<Real> recomputed_curvature(const SpiralTrajectory& traj) {
  if (!traj.has_curve) throw InputError("recomputed_curvature needs a reconstructed curve");
  const auto& sm = traj.samples;
  if (sm.size() < 6) throw InputError("need at least 6 samples");
  const Real h = sm[1].spiral.s - sm[0].spiral.s;
  std::size_t uniform = 1;
  while (uniform + 1 < sm.size() && std::fabs((sm[uniform + 1].spiral.s - sm[uniform].spiral.s) - h) <= 1e-9L * h)
    ++uniform;
  // nodes 0..uniform are equally spaced
  std::vector<Real> out;
  const CurveModel m = traj.model();
  for (std::size_t i = 2; i + 2 <= uniform; ++i) {
    const Vec3& a = sm[i - 2].curve.point;
    const Vec3& b = sm[i - 1].curve.point;
    const Vec3& c = sm[i].curve.point;
    const Vec3& d = sm[i + 1].curve.point;
    const Vec3& e = sm[i + 2].curve.point;
    const Vec3 v = (a - 8 * b + 8 * d - e) / (12 * h);
    const Vec3 w = (-a + 16 * b - 30 * c + 16 * d - e) / (12 * h * h);
    Real k = 0;
    switch (m) {
      case CurveModel::plane: k = (v(0) * w(1) - w(0) * v(1)) / std::pow(v.head<2>().norm(), 3); break;
      case CurveModel::sphere: k = c.dot(v.cross(w)) / std::pow(v.norm(), 3); break;
      case CurveModel::half_plane: {
        const Real y = c(1);
        k = (v(0) * w(1) - w(0) * v(1)) / (y * y) + v(0) / y;
        break;
      }
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace confhyp
