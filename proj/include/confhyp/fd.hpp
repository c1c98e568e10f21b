#pragma once

#include "confhyp/core.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace confhyp {

/// Central finite-difference scheme. A step of 0 means "automatic":
/// eps^(1/(order+2)) scaled by max(1, |x_k|).
struct FDScheme {
  Real step = 0;
  int order = 4;

  static FDScheme automatic(int order = 4) { return FDScheme{0, order}; }

  void validate() const;
  Real base_step() const;
  Real step_at(Real coordinate) const { return base_step() * std::max<Real>(1, std::fabs(coordinate)); }
  /// Largest stencil offset in units of the step.
  int reach() const { return order == 2 ? 1 : 2; }
};

namespace fd_detail {

inline Real ev(Real x) { return x; }
template <class E>
auto ev(const Eigen::MatrixBase<E>& e) {
  return e.eval();
}

struct Tap {
  int offset;
  Real weight;
};

const std::vector<Tap>& first_taps(int order);
const std::vector<Tap>& second_taps(int order);

template <class F>
auto sum_taps(const F& f, Vec q, Eigen::Index k, Real origin, Real h, const std::vector<Tap>& taps) {
  q(k) = origin + taps[0].offset * h;
  auto acc = ev(taps[0].weight * f(q));
  for (std::size_t t = 1; t < taps.size(); ++t) {
    q(k) = origin + taps[t].offset * h;
    acc += taps[t].weight * f(q);
  }
  return acc;
}

}  // namespace fd_detail

/// d f / d x_k at p. `f` may return Real, Vec or Mat.
template <class F>
auto fd_partial(const F& f, const Vec& p, Eigen::Index k, const FDScheme& scheme) {
  const Real h = scheme.step_at(p(k));
  return fd_detail::ev(fd_detail::sum_taps(f, p, k, p(k), h, fd_detail::first_taps(scheme.order)) / h);
}

/// d^2 f / d x_i d x_j at p. Diagonal entries use the 3/5-point stencil; mixed
/// entries use the tensor product of first-derivative stencils.
template <class F>
auto fd_second(const F& f, const Vec& p, Eigen::Index i, Eigen::Index j, const FDScheme& scheme) {
  const Real hi = scheme.step_at(p(i));
  if (i == j) {
    return fd_detail::ev(fd_detail::sum_taps(f, p, i, p(i), hi, fd_detail::second_taps(scheme.order)) / (hi * hi));
  }
  const Real hj = scheme.step_at(p(j));
  const auto& taps = fd_detail::first_taps(scheme.order);
  auto inner = [&](const Vec& q) { return fd_detail::sum_taps(f, q, j, p(j), hj, taps); };
  return fd_detail::ev(fd_detail::sum_taps(inner, p, i, p(i), hi, taps) / (hi * hj));
}

/// Gradient of a scalar field.
template <class F>
Vec fd_gradient(const F& f, const Vec& p, const FDScheme& scheme) {
  Vec g(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) g(k) = fd_partial(f, p, k, scheme);
  return g;
}

/// Coordinate Hessian of a scalar field (symmetric by construction).
template <class F>
Mat fd_hessian(const F& f, const Vec& p, const FDScheme& scheme) {
  const Eigen::Index m = p.size();
  Mat h(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      h(i, j) = fd_second(f, p, i, j, scheme);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

}  // namespace confhyp
