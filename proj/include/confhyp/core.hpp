#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace confhyp {

using Real = long double;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kEps = std::numeric_limits<Real>::epsilon();

/// Chart point or stencil point left the chart domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rank-deficient jacobian, non-positive metric, or similar.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Umbilic point: the Moebius density vanishes.
class UmbilicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed numeric input (non-symmetric matrix, wrong sizes).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid model parameter (r outside (0,1), n < 3, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The spiral equation is singular at the current state.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec make_vec(std::initializer_list<Real> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Real x : xs) v(i++) = x;
  return v;
}

// Symmetry defect relative to the largest entry.
inline Real asymmetry(const Mat& m) {
  const Real scale = std::max<Real>(m.cwiseAbs().maxCoeff(), 1);
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace confhyp
