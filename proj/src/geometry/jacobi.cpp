#include "confhyp/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace confhyp {

SymmetricEigen jacobi_eigen(const Mat& input, int max_sweeps) {
  if (input.rows() != input.cols()) throw InputError("jacobi_eigen: matrix is not square");
  const Eigen::Index n = input.rows();
  Mat a = (input + input.transpose()) / 2;
  Mat v = Mat::Identity(n, n);
  const Real scale = a.norm();

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    Real off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= kEps * kEps * scale * scale || off == 0) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real apq = a(p, q);
        if (apq == 0) continue;
        const Real theta = (a(q, q) - a(p, p)) / (2 * apq);
        const Real t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const Real c = 1 / std::sqrt(t * t + 1);
        const Real s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Real akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Real apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Real vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  out.sweeps = sweep;
  return out;
}

Mat inverse_sqrt_spd(const Mat& a) {
  const auto eig = jacobi_eigen(a);
  if (eig.values.minCoeff() <= 0) throw DegeneracyError("inverse_sqrt_spd: matrix is not positive definite");
  const Vec d = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * d.asDiagonal() * eig.vectors.transpose();
}

}  // namespace confhyp
