#pragma once

#include "confhyp/fd.hpp"

#include <functional>
#include <string>
#include <vector>

namespace confhyp {

/// Scalar-curvature normalisations.
///   half_trace  = sum_{i>j} R_ijij
///   full_trace  = sum_{i,j} R_ijij  (the textbook scalar curvature)
///   normalized  = full_trace / (n(n-1))
enum class Convention { half_trace, full_trace, normalized };

inline constexpr Convention kAllConventions[] = {Convention::half_trace, Convention::full_trace,
                                                  Convention::normalized};

std::string to_string(Convention c);
/// Accepts "half", "full", "normalized" (and the enum spellings).
Convention parse_convention(const std::string& text);
Real convert_scalar(Real full_trace, Convention to, Eigen::Index n);

using MetricField = std::function<Mat(const Vec&)>;
using ScalarField = std::function<Real(const Vec&)>;
using TensorField = std::function<Mat(const Vec&)>;

/// Curvature of a metric field at one point. Christoffels are in chart
/// coordinates; Riemann and Ricci are in the Gram-Schmidt orthonormal frame.
struct CurvatureBundle {
  Eigen::Index dim = 0;
  Vec point;
  Mat metric;
  Mat frame;                      // columns = orthonormal frame in coordinates
  std::vector<Real> christoffel;  // Gamma^k_ij at [k*m*m + i*m + j]
  std::vector<Real> riemann;      // R_ijkl at [((i*m + j)*m + k)*m + l]
  Mat ricci;
  Real full_trace = 0;
  Real scalar = 0;
  Convention convention = Convention::full_trace;

  Real gamma(Eigen::Index k, Eigen::Index i, Eigen::Index j) const {
    return christoffel[static_cast<std::size_t>((k * dim + i) * dim + j)];
  }
  Real r(Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) const {
    return riemann[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)];
  }
  Real scalar_as(Convention c) const { return convert_scalar(full_trace, c, dim); }
  /// max |R_ijkl + R_jikl|, |R_ijkl + R_ijlk|, |R_ijkl - R_klij|
  Real symmetry_residual() const;
  /// max |R_ijkl + R_iklj + R_iljk|
  Real bianchi_residual() const;
};

/// Throws DegeneracyError on non-symmetric, indefinite or near-singular g.
void require_riemannian(const Mat& g, const std::string& context);

std::vector<Real> christoffel_symbols(const MetricField& g, const Vec& p, const FDScheme& scheme);

CurvatureBundle metric_field_curvature(const MetricField& g, const Vec& p, const FDScheme& scheme,
                                       Convention convention = Convention::full_trace);

/// Full-trace scalar curvature of e^{2u} g0 from the curvature of g0, the
/// Laplacian of u and |grad u|^2 (both in g0).
Real conformal_scalar(const CurvatureBundle& base, const ScalarField& u, const Vec& p, const FDScheme& scheme);

/// S = Ric - R/(2(n-1)) Id in the orthonormal frame, with R taken in the
/// bundle's convention.
Mat schouten_tensor(const CurvatureBundle& bundle, Eigen::Index n);

/// Coordinate components of the Schouten tensor, R in `convention`.
Mat schouten_coordinates(const MetricField& g, const Vec& p, const FDScheme& scheme, Convention convention);

/// max_{ijk} |S_ij,k - S_ik,j| (orthonormal frame) for a symmetric (0,2)
/// tensor field given in coordinates, using the Levi-Civita connection of g.
Real codazzi_defect(const TensorField& s, const MetricField& g, const Vec& p, const FDScheme& scheme);

/// Codazzi defect of the Schouten field of g.
Real schouten_codazzi_defect(const MetricField& g, Convention convention, const Vec& p, const FDScheme& scheme);

}  // namespace confhyp
