#pragma once

#include "confhyp/curvature.hpp"
#include "confhyp/immersion.hpp"
#include "confhyp/spiral.hpp"

#include <array>
#include <optional>
#include <string>

namespace confhyp {

inline constexpr Real kDefaultPoleMargin = 0.2L;

// --- conformal maps ---------------------------------------------------------

/// Inverse stereographic projection R^{n+1} -> S^{n+1}:
/// u -> ((1-|u|^2)/(1+|u|^2), 2u/(1+|u|^2)).
Vec sigma_map(const Vec& u);
/// Throws DomainError at (or within 1e-12 of) the antipode (-1, 0, ..., 0).
Vec sigma_inverse(const Vec& x);
/// Hyperboloid model H^{n+1} -> open hemisphere: y -> (1/y0, ybar/y0). Requires
/// -y0^2 + |ybar|^2 = -1 to 1e-10 and y0 > 0.
Vec tau_map(const Vec& y);

// --- charts on round spheres ------------------------------------------------

/// Point of S^k in hyperspherical angles (phi_1 .. phi_{k-1} polar, phi_k azimuth).
Vec sphere_point(const Vec& angles);
/// Round metric diag(1, sin^2 phi_1, sin^2 phi_1 sin^2 phi_2, ...).
Mat sphere_angle_metric(const Vec& angles);
/// Band [margin, pi - margin] on the polar angles, azimuth unbounded.
ChartBox sphere_angle_box(Eigen::Index k, Real margin);

// --- hypersurfaces -----------------------------------------------------------

enum class Family { cylinder, cone, rotational, torus };
std::string to_string(Family f);
Family parse_family(const std::string& text);
/// Curve model / epsilon that generates each family (torus: none).
int family_epsilon(Family f);

enum class PostMap { none, sigma };

/// f(s, y) = (gamma(s), y), gamma in the plane.
Immersion cylinder_immersion(const SpiralTrajectory& traj, int n);
/// f(s, t, y) = (t gamma(s), y), gamma on S^2, t in [t_min, t_max].
Immersion cone_immersion(const SpiralTrajectory& traj, int n, Real t_min = 0.05L, Real t_max = 20);
/// f(s, angles) = (x(s), y(s) theta(angles)), (x, y) in the upper half-plane.
Immersion rotational_immersion(const SpiralTrajectory& traj, int n, Real pole_margin = kDefaultPoleMargin);
/// (sqrt(1-r^2) (cos u, sin u), r theta(angles)) in S^{n+1}.
Immersion torus_immersion(Real r, int n, Real pole_margin = kDefaultPoleMargin);

/// sigma o f for a Euclidean hypersurface f.
Immersion compose_sigma(const Immersion& f);
/// lambda f.
Immersion homothety(const Immersion& f, Real lambda);

struct HypersurfaceSpec {
  Family kind = Family::cylinder;
  int n = 4;
  std::optional<SpiralTrajectory> trajectory;  // curve families
  Real torus_r = 0.5L;
  Real pole_margin = kDefaultPoleMargin;
  Real t_min = 0.05L;
  Real t_max = 20;
  PostMap post_map = PostMap::none;
};

Immersion build_hypersurface(const HypersurfaceSpec& spec);

// --- space forms and warped metrics -------------------------------------------

/// I_{-eps} on the (n-1)-dimensional cross-section in the chart used by the
/// matching family: flat (eps = 0), upper half-space (dt^2 + dy^2)/t^2
/// (eps = 1), round sphere in hyperspherical angles (eps = -1).
Mat cross_section_metric(int epsilon, const Vec& x);

/// kappa(s)^2 (ds^2 + I_{-eps}) on chart (s, x).
MetricField warped_metric_field(std::function<Real(Real)> kappa, int epsilon, int n);

// --- mesh export -------------------------------------------------------------

/// Two chart coordinates vary over a grid, all others are fixed at `base`;
/// three ambient axes are written as the vertex coordinates.
struct SliceSpec {
  Vec base;
  int axis_u = 0;
  int axis_v = 1;
  Real u0 = 0, u1 = 1, v0 = 0, v1 = 1;
  int nu = 16, nv = 16;
  std::array<int, 3> projection{0, 1, 2};
};

struct Mesh {
  std::vector<std::array<Real, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  // 1-based, as in OBJ
};

Mesh slice_mesh(const Immersion& f, const SliceSpec& slice);
std::string to_obj(const Mesh& mesh, const std::string& comment);
/// JSON text describing the slice and the immersion it came from.
std::string slice_descriptor(const Immersion& f, const SliceSpec& slice, const std::string& obj_file);

}  // namespace confhyp
