#include "confhyp/surface.hpp"
#include "confhyp/zoo.hpp"

#include <cmath>

namespace confhyp {

Vec sigma_map(const Vec& u) {
  const Real u2 = u.squaredNorm();
  const Real d = 1 + u2;
  Vec x(u.size() + 1);
  x(0) = (1 - u2) / d;
  x.tail(u.size()) = 2 * u / d;
  return x;
}

Vec sigma_inverse(const Vec& x) {
  if (x.size() < 2) throw InputError("sigma_inverse needs a point of R^{k+1}, k >= 1");
  if (std::fabs(x.norm() - 1) > 1e-10L) throw DomainError("sigma_inverse: point is not on the unit sphere");
  if (1 + x(0) <= 1e-12L) throw DomainError("sigma_inverse: point is the antipode (-1, 0, ..., 0)");
  return x.tail(x.size() - 1) / (1 + x(0));
}

Vec tau_map(const Vec& y) {
  if (y.size() < 2) throw InputError("tau_map needs a point of R^{1,k}, k >= 1");
  const Real y0 = y(0);
  const Vec ybar = y.tail(y.size() - 1);
  if (!(y0 > 0)) throw DomainError("tau_map: y0 must be positive");
  if (std::fabs(-y0 * y0 + ybar.squaredNorm() + 1) > 1e-10L) throw DomainError("tau_map: point is not on the hyperboloid");
  Vec x(y.size());
  x(0) = 1 / y0;
  x.tail(ybar.size()) = ybar / y0;
  return x;
}

Immersion compose_sigma(const Immersion& f) {
  if (f.ambient_kind() != AmbientKind::euclidean) throw InputError(f.name() + ": sigma needs a Euclidean immersion");
  auto eval = [f](const Vec& p) -> Vec { return sigma_map(f(p)); };
  Vec seed;
  if (f.is_hypersurface()) {
    const Vec u = f(f.base_point());
    const Vec eta = unit_normal(f, f.base_point(), FDScheme::automatic());
    // d sigma_u (eta)
    const Real d = 1 + u.squaredNorm();
    const Real ue = u.dot(eta);
    seed.resize(u.size() + 1);
    seed(0) = -4 * ue / (d * d);
    seed.tail(u.size()) = 2 * eta / d - 4 * ue * u / (d * d);
  }
  return Immersion("sigma(" + f.name() + ")", f.chart_dimension(), f.ambient_dimension() + 1, AmbientKind::unit_sphere,
                   eval, f.domain(), f.base_point(), seed);
}

Immersion homothety(const Immersion& f, Real lambda) {
  if (!(lambda > 0)) throw ParameterError("homothety factor must be positive");
  if (f.ambient_kind() != AmbientKind::euclidean) throw InputError(f.name() + ": homothety needs a Euclidean immersion");
  auto eval = [f, lambda](const Vec& p) -> Vec { return lambda * f(p); };
  Vec seed;
  if (f.is_hypersurface()) seed = unit_normal(f, f.base_point(), FDScheme::automatic());
  return Immersion(f.name() + "*" + std::to_string(static_cast<double>(lambda)), f.chart_dimension(),
                   f.ambient_dimension(), f.ambient_kind(), eval, f.domain(), f.base_point(), seed);
}

}  // namespace confhyp
