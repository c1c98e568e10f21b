#pragma once

#include "confhyp/fd.hpp"
#include "confhyp/immersion.hpp"

#include <vector>

namespace confhyp {

/// Metric components g_ij in the chart basis at `point`.
struct MetricSample {
  Vec point;
  Mat g;

  /// Throws DegeneracyError unless g is symmetric (1e-14 relative) and
  /// positive definite.
  void validate() const;
};

/// Everything the fundamental forms need at one chart point, evaluated once.
struct SurfacePoint {
  Vec point;
  Vec position;
  Mat jacobian;                 // N x m
  std::vector<Mat> hessian;     // N entries, each m x m: d^2 f_A / dx_i dx_j
  MetricSample first_form;
  Vec normal;                   // unit, oriented
  Mat second_form;              // h_ij = <f_ij, normal>
};

Mat jacobian(const Immersion& f, const Vec& p, const FDScheme& scheme);
std::vector<Mat> ambient_hessian(const Immersion& f, const Vec& p, const FDScheme& scheme);
MetricSample first_fundamental_form(const Immersion& f, const Vec& p, const FDScheme& scheme);
Vec unit_normal(const Immersion& f, const Vec& p, const FDScheme& scheme);
Mat second_fundamental_form(const Immersion& f, const Vec& p, const FDScheme& scheme);
SurfacePoint surface_point(const Immersion& f, const Vec& p, const FDScheme& scheme);

/// Unnormalised generalised cross product of the columns of an N x (N-1)
/// matrix: component k is (-1)^k times the minor with row k removed.
Vec cofactor_normal(const Mat& columns);

/// Eigenvalues of II v = lambda I v, sorted descending.
Vec principal_curvatures(const MetricSample& first, const Mat& second);

/// Levi-Civita symbols of the induced metric straight from the immersion:
/// Gamma^c_ab = I^{cd} <f_ab, f_d>. Flattened as [c * m * m + a * m + b].
std::vector<Real> induced_christoffel(const SurfacePoint& sp);

/// Gram-Schmidt orthonormalisation of the coordinate basis in index order with
/// respect to g. Column i holds the coordinate components of e_i.
Mat orthonormal_frame(const Mat& g);

}  // namespace confhyp
