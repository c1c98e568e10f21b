#pragma once

#include "confhyp/core.hpp"

namespace confhyp {

/// Quintic Hermite interpolation on [s0, s1] matching value, first and second
/// derivative at both ends (C^2 across nodes).
template <class T>
struct QuinticHermite {
  T value;
  T first;
  T second;
};

template <class T>
QuinticHermite<T> quintic_hermite(Real s0, Real s1, const T& p0, const T& d0, const T& dd0, const T& p1, const T& d1,
                                  const T& dd1, Real s) {
  const Real h = s1 - s0;
  const Real t = (s - s0) / h;
  const Real t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  // basis functions and their t-derivatives
  const Real h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5, h00d = -30 * t2 + 60 * t3 - 30 * t4, h00dd = -60 * t + 180 * t2 - 120 * t3;
  const Real h10 = t - 6 * t3 + 8 * t4 - 3 * t5, h10d = 1 - 18 * t2 + 32 * t3 - 15 * t4, h10dd = -36 * t + 96 * t2 - 60 * t3;
  const Real h20 = (t2 - 3 * t3 + 3 * t4 - t5) / 2, h20d = (2 * t - 9 * t2 + 12 * t3 - 5 * t4) / 2,
             h20dd = (2 - 18 * t + 36 * t2 - 20 * t3) / 2;
  const Real h01 = 10 * t3 - 15 * t4 + 6 * t5, h01d = 30 * t2 - 60 * t3 + 30 * t4, h01dd = 60 * t - 180 * t2 + 120 * t3;
  const Real h11 = -4 * t3 + 7 * t4 - 3 * t5, h11d = -12 * t2 + 28 * t3 - 15 * t4, h11dd = -24 * t + 84 * t2 - 60 * t3;
  const Real h21 = (t3 - 2 * t4 + t5) / 2, h21d = (3 * t2 - 8 * t3 + 5 * t4) / 2, h21dd = (6 * t - 24 * t2 + 20 * t3) / 2;

  QuinticHermite<T> out{
      T(h00 * p0 + h10 * h * d0 + h20 * h * h * dd0 + h01 * p1 + h11 * h * d1 + h21 * h * h * dd1),
      T((h00d * p0 + h10d * h * d0 + h20d * h * h * dd0 + h01d * p1 + h11d * h * d1 + h21d * h * h * dd1) / h),
      T((h00dd * p0 + h10dd * h * d0 + h20dd * h * h * dd0 + h01dd * p1 + h11dd * h * d1 + h21dd * h * h * dd1) / (h * h))};
  return out;
}

}  // namespace confhyp
