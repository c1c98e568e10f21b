#include "confhyp/zoo.hpp"

#include <cmath>
#include <memory>

namespace confhyp {

std::string to_string(Family f) {
  switch (f) {
    case Family::cylinder: return "cylinder";
    case Family::cone: return "cone";
    case Family::rotational: return "rotational";
    case Family::torus: return "torus";
  }
  return "?";
}

Family parse_family(const std::string& text) {
  if (text == "cylinder") return Family::cylinder;
  if (text == "cone") return Family::cone;
  if (text == "rotational") return Family::rotational;
  if (text == "torus") return Family::torus;
  throw InputError("unknown family '" + text + "'");
}

int family_epsilon(Family f) {
  switch (f) {
    case Family::cylinder: return 0;
    case Family::cone: return 1;
    case Family::rotational: return -1;
    case Family::torus: break;
  }
  throw InputError("the torus is not generated by a curve");
}

namespace {

using Traj = std::shared_ptr<const SpiralTrajectory>;

Traj checked(const SpiralTrajectory& traj, CurveModel model, int n, const char* what) {
  if (n < 3) throw ParameterError(std::string(what) + " needs n >= 3");
  if (!traj.has_curve) throw InputError(std::string(what) + ": trajectory has no reconstructed curve");
  if (traj.model() != model)
    throw InputError(std::string(what) + " needs a curve in the " + to_string(model) + ", got " + to_string(traj.model()));
  if (traj.samples.size() < 2) throw InputError(std::string(what) + ": trajectory too short");
  return std::make_shared<const SpiralTrajectory>(traj);
}

Vec3 tangent_at(const SpiralTrajectory& t, Real s) {
  const Real d = 1e-4L;
  return (t.curve_at(s + d) - t.curve_at(s - d)).normalized();
}

Real mid_s(const SpiralTrajectory& t) { return (t.s_begin() + t.s_end()) / 2; }

}  // namespace

Immersion cylinder_immersion(const SpiralTrajectory& traj, int n) {
  const Traj t = checked(traj, CurveModel::plane, n, "cylinder");
  auto eval = [t, n](const Vec& p) -> Vec {
    const Vec3 g = t->curve_at(p(0));
    Vec x(n + 1);
    x(0) = g(0);
    x(1) = g(1);
    x.tail(n - 1) = p.tail(n - 1);
    return x;
  };
  ChartBox box = ChartBox::unbounded(n);
  box.lower(0) = t->s_begin();
  box.upper(0) = t->s_end();
  Vec base = Vec::Zero(n);
  base(0) = mid_s(*t);
  const Vec3 tan = tangent_at(*t, base(0));
  Vec seed = Vec::Zero(n + 1);
  seed(0) = -tan(1);
  seed(1) = tan(0);
  return Immersion("cylinder", n, n + 1, AmbientKind::euclidean, eval, box, base, seed);
}

Immersion cone_immersion(const SpiralTrajectory& traj, int n, Real t_min, Real t_max) {
  const Traj t = checked(traj, CurveModel::sphere, n, "cone");
  if (!(t_min > 0) || !(t_max > t_min)) throw ParameterError("cone needs 0 < t_min < t_max");
  auto eval = [t, n](const Vec& p) -> Vec {
    if (!(p(1) > 0)) throw DomainError("cone: t must be positive");
    const Vec3 g = t->curve_at(p(0));
    Vec x(n + 1);
    x.head(3) = p(1) * Vec(g);
    x.tail(n - 2) = p.tail(n - 2);
    return x;
  };
  ChartBox box = ChartBox::unbounded(n);
  box.lower(0) = t->s_begin();
  box.upper(0) = t->s_end();
  box.lower(1) = t_min;
  box.upper(1) = t_max;
  Vec base = Vec::Zero(n);
  base(0) = mid_s(*t);
  base(1) = std::clamp<Real>(1, t_min, t_max);
  const Vec3 g = t->curve_at(base(0));
  const Vec3 nrm = g.cross(tangent_at(*t, base(0)));
  Vec seed = Vec::Zero(n + 1);
  seed.head(3) = Vec(nrm);
  return Immersion("cone", n, n + 1, AmbientKind::euclidean, eval, box, base, seed);
}

Immersion rotational_immersion(const SpiralTrajectory& traj, int n, Real pole_margin) {
  const Traj t = checked(traj, CurveModel::half_plane, n, "rotational");
  auto eval = [t, n](const Vec& p) -> Vec {
    const Vec3 g = t->curve_at(p(0));
    if (!(g(1) > 0)) throw DomainError("rotational: profile curve left y > 0");
    Vec x(n + 1);
    x(0) = g(0);
    x.tail(n) = g(1) * sphere_point(p.tail(n - 1));
    return x;
  };
  const ChartBox angles = sphere_angle_box(n - 1, pole_margin);
  ChartBox box = ChartBox::unbounded(n);
  box.lower(0) = t->s_begin();
  box.upper(0) = t->s_end();
  box.lower.tail(n - 1) = angles.lower;
  box.upper.tail(n - 1) = angles.upper;
  Vec base = Vec::Zero(n);
  base(0) = mid_s(*t);
  for (int i = 1; i < n - 1; ++i) base(i) = kPi / 2;
  const Vec3 tan = tangent_at(*t, base(0));
  Vec seed(n + 1);
  seed(0) = -tan(1);
  seed.tail(n) = tan(0) * sphere_point(base.tail(n - 1));
  return Immersion("rotational", n, n + 1, AmbientKind::euclidean, eval, box, base, seed);
}

Immersion torus_immersion(Real r, int n, Real pole_margin) {
  if (!(r > 0 && r < 1)) throw ParameterError("torus radius r must lie in (0, 1)");
  if (n < 2) throw ParameterError("torus needs n >= 2");
  const Real a = std::sqrt(1 - r * r);
  auto eval = [a, r, n](const Vec& p) -> Vec {
    Vec x(n + 2);
    x(0) = a * std::cos(p(0));
    x(1) = a * std::sin(p(0));
    x.tail(n) = r * sphere_point(p.tail(n - 1));
    return x;
  };
  const ChartBox angles = sphere_angle_box(n - 1, pole_margin);
  ChartBox box = ChartBox::unbounded(n);
  box.lower.tail(n - 1) = angles.lower;
  box.upper.tail(n - 1) = angles.upper;
  Vec base = Vec::Zero(n);
  for (int i = 1; i < n - 1; ++i) base(i) = kPi / 2;
  Vec seed(n + 2);
  seed(0) = r;
  seed(1) = 0;
  seed.tail(n) = -a * sphere_point(base.tail(n - 1));
  return Immersion("torus", n, n + 2, AmbientKind::unit_sphere, eval, box, base, seed);
}

Immersion build_hypersurface(const HypersurfaceSpec& spec) {
  auto need = [&]() -> const SpiralTrajectory& {
    if (!spec.trajectory) throw InputError(to_string(spec.kind) + " needs a spiral trajectory");
    return *spec.trajectory;
  };
  Immersion f = [&] {
    switch (spec.kind) {
      case Family::cylinder: return cylinder_immersion(need(), spec.n);
      case Family::cone: return cone_immersion(need(), spec.n, spec.t_min, spec.t_max);
      case Family::rotational: return rotational_immersion(need(), spec.n, spec.pole_margin);
      case Family::torus: break;
    }
    return torus_immersion(spec.torus_r, spec.n, spec.pole_margin);
  }();
  if (spec.post_map == PostMap::sigma) {
    if (spec.kind == Family::torus) throw InputError("the torus already lies in the sphere");
    return compose_sigma(f);
  }
  return f;
}

}  // namespace confhyp
