#pragma once

// Closed-form immersions and metrics used as independent references.

#include "confhyp/immersion.hpp"

#include <cmath>

namespace analytic {

using confhyp::AmbientKind;
using confhyp::ChartBox;
using confhyp::Immersion;
using confhyp::Mat;
using confhyp::Real;
using confhyp::Vec;

inline Immersion identity(int m) {
  return Immersion("identity", m, m, AmbientKind::euclidean, [](const Vec& p) { return p; }, ChartBox::unbounded(m),
                   Vec::Zero(m), Vec());
}

// hyperspherical angles, independent of the library's chart
inline Vec sphere(const Vec& a) {
  const Eigen::Index k = a.size();
  Vec x(k + 1);
  Real prod = 1;
  for (Eigen::Index i = 0; i < k - 1; ++i) {
    x(i) = prod * std::cos(a(i));
    prod *= std::sin(a(i));
  }
  x(k - 1) = prod * std::cos(a(k - 1));
  x(k) = prod * std::sin(a(k - 1));
  return x;
}

inline Vec sphere_base(Eigen::Index k) {
  Vec a = Vec::Constant(k, 1.1L);
  a(k - 1) = 0.7L;
  return a;
}

// S^n of radius 1 in R^{n+1}, position as seed
inline Immersion round_sphere(int n) {
  Vec base = sphere_base(n);
  return Immersion("sphere", n, n + 1, AmbientKind::euclidean, [](const Vec& p) { return sphere(p); },
                   ChartBox::unbounded(n), base, sphere(base));
}

// (rad cos(s/rad), rad sin(s/rad), y): cylinder over a circle of curvature 1/rad
inline Immersion circle_cylinder(int n, Real rad) {
  auto f = [rad, n](const Vec& p) {
    Vec x(n + 1);
    x(0) = rad * std::cos(p(0) / rad);
    x(1) = rad * std::sin(p(0) / rad);
    for (int k = 1; k < n; ++k) x(k + 1) = p(k);
    return x;
  };
  Vec base = Vec::Zero(n);
  base(0) = 0.3L;
  Vec seed = Vec::Zero(n + 1);
  seed(0) = std::cos(base(0) / rad);
  seed(1) = std::sin(base(0) / rad);
  return Immersion("circle cylinder", n, n + 1, AmbientKind::euclidean, f, ChartBox::unbounded(n), base, seed);
}

// small circle of Euclidean radius a on S^2, unit speed; geodesic curvature sqrt(1-a^2)/a
inline Vec small_circle(Real a, Real s) {
  Vec g(3);
  g << a * std::cos(s / a), a * std::sin(s / a), std::sqrt(1 - a * a);
  return g;
}

// cone (t gamma(s), y) over the small circle
inline Immersion small_circle_cone(int n, Real a) {
  auto f = [a, n](const Vec& p) {
    Vec x(n + 1);
    x.head(3) = p(1) * small_circle(a, p(0));
    for (int k = 2; k < n; ++k) x(k + 1) = p(k);
    return x;
  };
  ChartBox box = ChartBox::unbounded(n);
  box.lower(1) = 0.01L;
  Vec base = Vec::Zero(n);
  base(0) = 0.2L;
  base(1) = 1.3L;
  const Vec g = small_circle(a, base(0));
  const Vec t = (small_circle(a, base(0) + 1e-4L) - small_circle(a, base(0) - 1e-4L)) / 2e-4L;
  Vec seed = Vec::Zero(n + 1);
  seed.head(3) = Eigen::Matrix<Real, 3, 1>(g(0), g(1), g(2)).cross(Eigen::Matrix<Real, 3, 1>(t(0), t(1), t(2)));
  return Immersion("small circle cone", n, n + 1, AmbientKind::euclidean, f, box, base, seed);
}

// rotational hypersurface (x(s), y(s) theta) over the horocycle x = s, y = 1
inline Immersion horocycle_rotational(int n) {
  auto f = [n](const Vec& p) {
    Vec x(n + 1);
    x(0) = p(0);
    x.tail(n) = sphere(p.tail(n - 1));
    return x;
  };
  Vec base(n);
  base(0) = 0.1L;
  base.tail(n - 1) = sphere_base(n - 1);
  Vec seed(n + 1);
  seed(0) = 0;
  seed.tail(n) = sphere(base.tail(n - 1));
  return Immersion("horocycle rotational", n, n + 1, AmbientKind::euclidean, f, ChartBox::unbounded(n), base, seed);
}

// S^1(sqrt(1-r^2)) x S^{n-1}(r) in S^{n+1}
inline Immersion clifford_torus(int n, Real r) {
  const Real c = std::sqrt(1 - r * r);
  auto f = [n, r, c](const Vec& p) {
    Vec x(n + 2);
    x(0) = c * std::cos(p(0));
    x(1) = c * std::sin(p(0));
    x.tail(n) = r * sphere(p.tail(n - 1));
    return x;
  };
  Vec base(n);
  base(0) = 0.4L;
  base.tail(n - 1) = sphere_base(n - 1);
  Vec seed(n + 2);
  seed(0) = r * std::cos(base(0));
  seed(1) = r * std::sin(base(0));
  seed.tail(n) = -c * sphere(base.tail(n - 1));
  return Immersion("clifford torus", n, n + 2, AmbientKind::unit_sphere, f, ChartBox::unbounded(n), base, seed);
}

inline Mat sphere_metric(const Vec& a) {
  const Eigen::Index k = a.size();
  Mat g = Mat::Zero(k, k);
  Real w = 1;
  for (Eigen::Index i = 0; i < k; ++i) {
    g(i, i) = w;
    w *= std::sin(a(i)) * std::sin(a(i));
  }
  return g;
}

}  // namespace analytic
