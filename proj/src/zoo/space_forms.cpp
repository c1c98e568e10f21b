#include "confhyp/zoo.hpp"

#include <cmath>

namespace confhyp {

Vec sphere_point(const Vec& angles) {
  const Eigen::Index k = angles.size();
  if (k < 1) throw InputError("sphere_point needs at least one angle");
  Vec x(k + 1);
  Real prod = 1;
  for (Eigen::Index i = 0; i < k; ++i) {
    x(i) = prod * std::cos(angles(i));
    prod *= std::sin(angles(i));
  }
  x(k) = prod;
  return x;
}

Mat sphere_angle_metric(const Vec& angles) {
  const Eigen::Index k = angles.size();
  Mat g = Mat::Zero(k, k);
  Real prod = 1;
  for (Eigen::Index i = 0; i < k; ++i) {
    g(i, i) = prod;
    const Real sn = std::sin(angles(i));
    prod *= sn * sn;
  }
  return g;
}

ChartBox sphere_angle_box(Eigen::Index k, Real margin) {
  if (!(margin > 0) || margin >= kPi / 2) throw ParameterError("pole margin must lie in (0, pi/2)");
  ChartBox box = ChartBox::unbounded(k);
  for (Eigen::Index i = 0; i + 1 < k; ++i) {
    box.lower(i) = margin;
    box.upper(i) = kPi - margin;
  }
  return box;
}

Mat cross_section_metric(int epsilon, const Vec& x) {
  switch (epsilon) {
    case 0: return Mat::Identity(x.size(), x.size());
    case 1: {
      const Real t = x(0);
      if (!(t > 0)) throw DomainError("half-space cross-section needs t > 0");
      return Mat::Identity(x.size(), x.size()) / (t * t);
    }
    case -1: return sphere_angle_metric(x);
    default: throw ParameterError("epsilon must be -1, 0 or 1");
  }
}

MetricField warped_metric_field(std::function<Real(Real)> kappa, int epsilon, int n) {
  if (n < 2) throw ParameterError("warped metric needs n >= 2");
  return [kappa = std::move(kappa), epsilon, n](const Vec& p) -> Mat {
    if (p.size() != n) throw InputError("warped metric: chart point has wrong dimension");
    Mat g = Mat::Zero(n, n);
    g(0, 0) = 1;
    g.bottomRightCorner(n - 1, n - 1) = cross_section_metric(epsilon, p.tail(n - 1));
    const Real k = kappa(p(0));
    return Mat(k * k * g);
  };
}

}  // namespace confhyp
