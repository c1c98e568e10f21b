#pragma once

#include "confhyp/curvature.hpp"
#include "confhyp/surface.hpp"

namespace confhyp {

/// Two finite-difference levels: `inner` differentiates the immersion,
/// `outer` differentiates fields that are themselves built from the
/// immersion's derivatives (rho, H, the Moebius metric).
struct MoebiusSchemes {
  FDScheme inner{2e-3L, 4};
  FDScheme outer{3e-3L, 4};
  void validate() const {
    inner.validate();
    outer.validate();
  }
};

inline constexpr Real kUmbilicThreshold = 1e-18L;

struct Density {
  Real rho;
  Real H;
};

/// rho^2 = n/(n-1) (|h|^2 - n H^2) in an I-orthonormal frame. Throws UmbilicError
/// when rho^2 <= kUmbilicThreshold.
Density moebius_density(const MetricSample& first, const Mat& second, Eigen::Index n);

MetricSample moebius_metric(const MetricSample& first, Real rho);

/// Moebius second fundamental form in the g-orthonormal frame.
Mat moebius_B(const MetricSample& first, const Mat& second, Real rho, Real H);

/// rho and H as fields on the chart (each evaluation differentiates the immersion).
ScalarField rho_field(const Immersion& f, const FDScheme& inner);
ScalarField mean_curvature_field(const Immersion& f, const FDScheme& inner);
MetricField moebius_metric_field(const Immersion& f, const FDScheme& inner);
MetricField induced_metric_field(const Immersion& f, const FDScheme& inner);

/// C_i = -rho^{-2} [e_i(H) + sum_j (h_ij - H delta_ij) e_j(log rho)], g-orthonormal frame.
Vec moebius_form(const Immersion& f, const Vec& p, const ScalarField& rho, const ScalarField& H,
                 const MoebiusSchemes& schemes);
Vec moebius_form(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes);

/// Blaschke tensor in the g-orthonormal frame.
Mat blaschke_A(const Immersion& f, const Vec& p, const ScalarField& rho, const ScalarField& H, const Mat& second,
               const MoebiusSchemes& schemes);
Mat blaschke_A(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes);

struct ScalarRoutes {
  Real direct;
  Real conformal_route;
};

/// Scalar curvature of g = rho^2 I, directly and via the conformal-change formula.
ScalarRoutes moebius_scalar(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes,
                            Convention convention = Convention::full_trace);

/// max_i |sum_j B_ij,j + (n-1) C_i| (g-orthonormal frame).
Real moebius_form_divergence_residual(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes);

struct MoebiusData {
  Vec point;
  Real rho = 0;
  Real H = 0;
  MetricSample g_moebius;
  Mat B;
  Mat A;
  Vec C;
  Vec principal_curvatures;
};

MoebiusData moebius_data(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes);

/// Distinct values of a sorted list, clustered at `tol`; returns cluster sizes
/// in descending order of value.
std::vector<int> multiplicities(const Vec& sorted_desc, Real tol);

}  // namespace confhyp
