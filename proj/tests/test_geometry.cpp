#include "analytic.hpp"

#include "confhyp/checks.hpp"
#include "confhyp/curvature.hpp"
#include "confhyp/fd.hpp"
#include "confhyp/jacobi.hpp"
#include "confhyp/surface.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace confhyp;

namespace {

const FDScheme kAuto = FDScheme::automatic();

Real max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Immersion sigma_chart(int m) {
  auto f = [](const Vec& u) {
    const Real q = u.squaredNorm();
    Vec x(u.size() + 1);
    x(0) = (1 - q) / (1 + q);
    x.tail(u.size()) = 2 * u / (1 + q);
    return x;
  };
  return Immersion("sigma", m, m + 1, AmbientKind::unit_sphere, f, ChartBox::unbounded(m), Vec::Zero(m), Vec());
}

}  // namespace

TEST(FiniteDifferences, FourthOrderErrorFallsSixteenfold) {
  auto f = [](const Vec& p) { return std::exp(p(0)) * std::sin(2 * p(1)); };
  Vec p = make_vec({0.3L, 0.7L});
  const Real exact = 2 * std::exp(0.3L) * std::cos(1.4L);
  const Real e1 = std::fabs(fd_partial(f, p, 1, FDScheme{2e-2L, 4}) - exact);
  const Real e2 = std::fabs(fd_partial(f, p, 1, FDScheme{1e-2L, 4}) - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
  const Real m1 = std::fabs(fd_second(f, p, 0, 1, FDScheme{2e-2L, 2}) - exact);
  const Real m2 = std::fabs(fd_second(f, p, 0, 1, FDScheme{1e-2L, 2}) - exact);
  EXPECT_NEAR(std::log2(m1 / m2), 2.0, 0.3);
}

TEST(FiniteDifferences, RejectsBadSchemes) {
  EXPECT_THROW(FDScheme({-1e-3L, 4}).validate(), InputError);
  EXPECT_THROW(FDScheme({1e-3L, 3}).validate(), InputError);
  EXPECT_NO_THROW(FDScheme::automatic(2).validate());
  EXPECT_GT(FDScheme::automatic().base_step(), 0);
}

TEST(Jacobi, DiagonalisesSymmetricMatrix) {
  Mat a(3, 3);
  a << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const SymmetricEigen e = jacobi_eigen(a);
  EXPECT_NEAR(e.values(0), 2 + std::sqrt(2.0L), 1e-15);
  EXPECT_NEAR(e.values(1), 2, 1e-15);
  EXPECT_NEAR(e.values(2), 2 - std::sqrt(2.0L), 1e-15);
  EXPECT_LT(max_abs(a * e.vectors - e.vectors * e.values.asDiagonal().toDenseMatrix()), 1e-15);
  const Mat s = inverse_sqrt_spd(a);
  EXPECT_LT(max_abs(s * a * s - Mat::Identity(3, 3)), 1e-15);
}

TEST(Jacobian, IdentityMap) {
  const Mat j = jacobian(analytic::identity(2), make_vec({0.4L, -1.7L}), kAuto);
  EXPECT_LT(max_abs(j - Mat::Identity(2, 2)), 1e-12);
}

TEST(Jacobian, InverseStereographicAtOrigin) {
  const Mat j = jacobian(sigma_chart(3), Vec::Zero(3), kAuto);
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(j.col(a).norm(), 2, 1e-10);
    for (int b = a + 1; b < 3; ++b) EXPECT_NEAR(j.col(a).dot(j.col(b)), 0, 1e-10);
  }
}

TEST(Jacobian, CylinderOverUnitCircle) {
  const Immersion f = analytic::circle_cylinder(4, 1);
  const Vec p = make_vec({0.9L, 0.1L, -0.2L, 0.3L});
  const Mat j = jacobian(f, p, kAuto);
  EXPECT_NEAR(j(0, 0), -std::sin(0.9L), 1e-10);
  EXPECT_NEAR(j(1, 0), std::cos(0.9L), 1e-10);
  EXPECT_NEAR(j.col(0).tail(3).norm(), 0, 1e-10);
  Mat rest = Mat::Zero(5, 3);
  rest.bottomRows(3) = Mat::Identity(3, 3);
  EXPECT_LT(max_abs(j.rightCols(3) - rest), 1e-10);
}

TEST(Jacobian, StencilLeavingDomainNamesCoordinate) {
  ChartBox box{make_vec({0, 0}), make_vec({1, 1})};
  const Immersion f("boxed", 2, 2, AmbientKind::euclidean, [](const Vec& p) { return p; }, box, make_vec({0.5L, 0.5L}),
                    Vec());
  try {
    jacobian(f, make_vec({0.5L, 1e-5L}), FDScheme{1e-3L, 4});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("coordinate 1"), std::string::npos) << e.what();
  }
}

TEST(FirstForm, CylinderIsFlat) {
  const MetricSample I = first_fundamental_form(analytic::circle_cylinder(4, 1.5L), make_vec({0.2L, 1, 2, 3}), kAuto);
  EXPECT_LT(max_abs(I.g - Mat::Identity(4, 4)), 1e-10);
}

TEST(FirstForm, ConeScalesArcLengthByT) {
  const Real t = 1.7L;
  const MetricSample I = first_fundamental_form(analytic::small_circle_cone(4, 0.6L), make_vec({0.3L, t, 0.5L, -0.5L}), kAuto);
  Mat want = Mat::Identity(4, 4);
  want(0, 0) = t * t;
  EXPECT_LT(max_abs(I.g - want), 1e-10);
}

TEST(FirstForm, RotationalIsWarpedBySquaredHeight) {
  const Vec p = make_vec({0.4L, 1.0L, 1.2L, 2.0L});
  const MetricSample I = first_fundamental_form(analytic::horocycle_rotational(4), p, kAuto);
  Mat want = Mat::Zero(4, 4);
  want(0, 0) = 1;
  want.bottomRightCorner(3, 3) = analytic::sphere_metric(p.tail(3));
  EXPECT_LT(max_abs(I.g - want), 1e-10);
}

TEST(FirstForm, DegenerateParametrisationIsRejected) {
  const Immersion f("folded", 2, 3, AmbientKind::euclidean,
                    [](const Vec& p) { return make_vec({p(0) * p(0), p(1), 0}); }, ChartBox::unbounded(2),
                    make_vec({1, 0}), Vec());
  EXPECT_THROW(first_fundamental_form(f, make_vec({0, 0.3L}), kAuto), DegeneracyError);
}

TEST(Normal, RoundSphereNormalIsPosition) {
  const Immersion f = analytic::round_sphere(3);
  const Vec p = make_vec({0.9L, 1.3L, 2.0L});
  const Vec eta = unit_normal(f, p, kAuto);
  EXPECT_NEAR((eta - analytic::sphere(p)).norm(), 0, 1e-10);
  const Vec flipped = unit_normal(f.with_seed(-f.orientation_seed()), p, kAuto);
  EXPECT_NEAR((flipped + analytic::sphere(p)).norm(), 0, 1e-10);
}

TEST(Normal, CylinderNormalIsRadial) {
  const Vec p = make_vec({1.1L, 0.4L, 0.1L, -2});
  const Vec eta = unit_normal(analytic::circle_cylinder(4, 1), p, kAuto);
  Vec want = Vec::Zero(5);
  want(0) = std::cos(1.1L);
  want(1) = std::sin(1.1L);
  EXPECT_NEAR((eta - want).norm(), 0, 1e-10);
}

TEST(Normal, TorusNormalIsTangentToSphere) {
  const Immersion f = analytic::clifford_torus(4, 0.5L);
  const Vec p = make_vec({1.0L, 1.2L, 0.8L, 2.5L});
  const Vec eta = unit_normal(f, p, kAuto);
  EXPECT_NEAR(eta.norm(), 1, 1e-12);
  EXPECT_NEAR(eta.dot(f(p)), 0, 1e-10);
  const Mat j = jacobian(f, p, kAuto);
  EXPECT_LT((j.transpose() * eta).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SecondForm, CylinderCarriesCurveCurvature) {
  const Real rad = 2;
  const Mat h = second_fundamental_form(analytic::circle_cylinder(4, rad), make_vec({0.5L, 0, 1, 2}), kAuto);
  Mat want = Mat::Zero(4, 4);
  want(0, 0) = -1 / rad;  // outward normal
  EXPECT_LT(max_abs(h - want), 1e-9);
}

TEST(SecondForm, ConeCarriesTKappa) {
  const Real a = 0.6L, t = 1.4L;
  const Real kg = std::sqrt(1 - a * a) / a;
  const Mat h = second_fundamental_form(analytic::small_circle_cone(4, a), make_vec({0.3L, t, 0.2L, 0.1L}), kAuto);
  EXPECT_NEAR(std::fabs(h(0, 0)), t * kg, 1e-9);
  Mat rest = h;
  rest(0, 0) = 0;
  EXPECT_LT(max_abs(rest), 1e-9);
}

TEST(SecondForm, FlipsWithOrientationSeed) {
  const Immersion f = analytic::small_circle_cone(4, 0.5L);
  const Vec p = make_vec({0.4L, 0.9L, 0.3L, 0.7L});
  const Mat h = second_fundamental_form(f, p, kAuto);
  const Mat g = second_fundamental_form(f.with_seed(-f.orientation_seed()), p, kAuto);
  EXPECT_LT(max_abs(h + g), 1e-12);
  const MetricSample I = first_fundamental_form(f, p, kAuto);
  const Vec k1 = principal_curvatures(I, h), k2 = principal_curvatures(I, g);
  EXPECT_LT((k1 + k2.reverse()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PrincipalCurvatures, UnitSphereIsUmbilic) {
  const Immersion f = analytic::round_sphere(4);
  const Vec p = make_vec({1.0L, 0.9L, 1.4L, 0.3L});
  const Vec k = principal_curvatures(first_fundamental_form(f, p, kAuto), second_fundamental_form(f, p, kAuto));
  EXPECT_LT((k.cwiseAbs() - Vec::Ones(4)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(k.maxCoeff() - k.minCoeff(), 1e-9);
}

TEST(PrincipalCurvatures, HorocycleRotational) {
  // x = s, y = 1: (kappa y - x')/y^2 = 0 and -x'/y^2 = -1 (n-1 times), up to orientation
  const Immersion f = analytic::horocycle_rotational(4);
  const Vec p = make_vec({0.3L, 1.2L, 1.0L, 0.5L});
  Vec k = principal_curvatures(first_fundamental_form(f, p, kAuto), second_fundamental_form(f, p, kAuto));
  if (k.sum() < 0) k = -k.reverse().eval();
  EXPECT_NEAR(k(0), 1, 1e-9);
  EXPECT_NEAR(k(2), 1, 1e-9);
  EXPECT_NEAR(k(3), 0, 1e-9);
}

TEST(PrincipalCurvatures, TorusGap) {
  for (Real r : {0.3L, 0.5L, 0.8L}) {
    const Immersion f = analytic::clifford_torus(4, r);
    const Vec p = make_vec({2.0L, 1.1L, 1.7L, 0.4L});
    const Vec k = principal_curvatures(first_fundamental_form(f, p, kAuto), second_fundamental_form(f, p, kAuto));
    EXPECT_NEAR(std::fabs(k(0) - k(3)), 1 / (r * std::sqrt(1 - r * r)), 1e-8);
    EXPECT_TRUE(std::fabs(k(0) - k(2)) < 1e-9 || std::fabs(k(1) - k(3)) < 1e-9);
  }
}

TEST(PrincipalCurvatures, InvariantUnderAffineReparametrisation) {
  const Immersion f = analytic::small_circle_cone(4, 0.7L);
  Mat a(4, 4);
  a << 1.2, 0.3, 0, 0.1, -0.2, 0.9, 0.1, 0, 0, 0.2, 1.1, -0.3, 0.1, 0, 0.2, 0.8;
  const Vec b = make_vec({0.1L, 0.2L, -0.1L, 0.05L});
  const Immersion g = reparametrize(f, a, b);
  const Vec q = make_vec({0.2L, 1.1L, 0.3L, -0.4L});
  const Vec p = a * q + b;
  const Vec kf = principal_curvatures(first_fundamental_form(f, p, kAuto), second_fundamental_form(f, p, kAuto));
  const Vec kg = principal_curvatures(first_fundamental_form(g, q, kAuto), second_fundamental_form(g, q, kAuto));
  EXPECT_LT((kf - kg).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(PrincipalCurvatures, RejectsNonSymmetricInput) {
  MetricSample I{Vec::Zero(2), Mat::Identity(2, 2)};
  Mat h(2, 2);
  h << 1, 0.5, 0, 1;
  EXPECT_THROW(principal_curvatures(I, h), InputError);
}

TEST(Curvature, EuclideanMetricIsFlat) {
  const CurvatureBundle b = metric_field_curvature([](const Vec&) { return Mat(Mat::Identity(3, 3)); },
                                                   make_vec({0.1L, 0.2L, 0.3L}), kAuto);
  for (Real x : b.riemann) EXPECT_NEAR(x, 0, 1e-12);
  EXPECT_NEAR(b.full_trace, 0, 1e-12);
}

TEST(Curvature, UnitTwoSphere) {
  const CurvatureBundle b = metric_field_curvature(analytic::sphere_metric, make_vec({1.0L, 0.4L}), kAuto);
  EXPECT_NEAR(b.full_trace, 2, 1e-9);
  EXPECT_NEAR(b.scalar_as(Convention::half_trace), 1, 1e-9);
  EXPECT_NEAR(b.scalar_as(Convention::normalized), 1, 1e-9);
}

TEST(Curvature, ScaledCircleTimesSphere) {
  const int n = 4;
  for (Real kappa : {0.7L, 1.0L, 1.8L}) {
    auto g = [kappa](const Vec& p) {
      Mat m = Mat::Zero(4, 4);
      m(0, 0) = 1;
      m.bottomRightCorner(3, 3) = analytic::sphere_metric(p.tail(3));
      return Mat(kappa * kappa * m);
    };
    const CurvatureBundle b = metric_field_curvature(g, make_vec({0.5L, 1.2L, 1.0L, 0.3L}), kAuto);
    EXPECT_NEAR(b.full_trace, (n - 1) * (n - 2) / (kappa * kappa), 1e-8);
  }
}

TEST(Curvature, SymmetriesConvergeAtNominalOrder) {
  const MetricField g = perturbed_product_metric(4);
  const Vec p = make_vec({0.3L, 0.4L, 0.5L, 0.6L});
  for (int order : {2, 4}) {
    const Real r1 = metric_field_curvature(g, p, FDScheme{2e-2L, order}).symmetry_residual();
    const Real r2 = metric_field_curvature(g, p, FDScheme{1e-2L, order}).symmetry_residual();
    EXPECT_NEAR(std::log2(r1 / r2), order, 0.5) << "order " << order;
    // first Bianchi holds exactly for Riemann assembled from a symmetric connection
    EXPECT_LT(metric_field_curvature(g, p, FDScheme{1e-2L, order}).bianchi_residual(), 1e-15);
  }
}

TEST(Curvature, IndefiniteMetricIsRejected) {
  auto g = [](const Vec&) {
    Mat m = Mat::Identity(2, 2);
    m(1, 1) = -1;
    return m;
  };
  EXPECT_THROW(metric_field_curvature(g, make_vec({0, 0}), kAuto), DegeneracyError);
}

TEST(ConformalScalar, ZeroFactorKeepsBase) {
  const Vec p = make_vec({1.0L, 0.4L});
  const CurvatureBundle b = metric_field_curvature(analytic::sphere_metric, p, kAuto);
  EXPECT_NEAR(conformal_scalar(b, [](const Vec&) { return Real(0); }, p, kAuto), b.full_trace, 1e-12);
}

TEST(ConformalScalar, ConstantFactorScales) {
  const Vec p = make_vec({1.0L, 0.4L});
  const CurvatureBundle b = metric_field_curvature(analytic::sphere_metric, p, kAuto);
  const Real c = 0.6L;
  EXPECT_NEAR(conformal_scalar(b, [c](const Vec&) { return c; }, p, kAuto), std::exp(-2 * c) * b.full_trace, 1e-9);
}

TEST(ConformalScalar, StereographicFactorGivesUnitSphere) {
  auto flat = [](const Vec&) { return Mat(Mat::Identity(2, 2)); };
  auto u = [](const Vec& x) { return std::log(2 / (1 + x.squaredNorm())); };
  const Vec pts[] = {make_vec({0, 0}), make_vec({0.5L, -0.3L}), make_vec({1.2L, 0.8L}), make_vec({-2, 0.1L}),
                     make_vec({0.05L, 3})};
  for (const Vec& p : pts) {
    const CurvatureBundle b = metric_field_curvature(flat, p, kAuto);
    EXPECT_NEAR(conformal_scalar(b, u, p, kAuto), 2, 1e-6);
  }
}

TEST(ConformalScalar, AgreesWithDirectCurvature) {
  const MetricField g0 = perturbed_product_metric(4);
  auto u = [](const Vec& x) { return 0.3L * std::sin(x(0)) * std::cos(x(2)) + 0.2L * x(1) * x(3); };
  auto g = [&](const Vec& x) { return Mat(std::exp(2 * u(x)) * g0(x)); };
  const Vec p = make_vec({0.3L, 0.4L, 0.5L, 0.6L});
  const CurvatureBundle b = metric_field_curvature(g0, p, kAuto);
  EXPECT_NEAR(conformal_scalar(b, u, p, kAuto), metric_field_curvature(g, p, kAuto).full_trace, 1e-5);
}

TEST(Schouten, FlatIsZero) {
  const CurvatureBundle b = metric_field_curvature([](const Vec&) { return Mat(Mat::Identity(3, 3)); },
                                                   make_vec({0.1L, 0.2L, 0.3L}), kAuto);
  EXPECT_LT(max_abs(schouten_tensor(b, 3)), 1e-12);
}

TEST(Schouten, UnitSphereIsHalfIdentity) {
  const CurvatureBundle b = metric_field_curvature(analytic::sphere_metric, make_vec({1.0L, 1.3L, 0.4L}), kAuto);
  EXPECT_LT(max_abs(schouten_tensor(b, 3) - 0.5L * Mat::Identity(3, 3)), 1e-8);
}

TEST(Codazzi, ConstantTensorOnFlatBackground) {
  auto flat = [](const Vec&) { return Mat(Mat::Identity(3, 3)); };
  auto s = [](const Vec&) { return Mat(2.5L * Mat::Identity(3, 3)); };
  EXPECT_LT(codazzi_defect(s, flat, make_vec({0.3L, -0.2L, 1}), kAuto), 1e-12);
}

TEST(Codazzi, ConformallyFlatMetricsPassAndPerturbedProductFails) {
  const FDScheme outer{3e-3L, 4};
  const Vec p = make_vec({1.1L, 1.0L, 1.2L, 0.6L});
  auto sphere4 = [](const Vec& x) { return analytic::sphere_metric(x); };
  EXPECT_LT(schouten_codazzi_defect(sphere4, Convention::full_trace, p, outer), 1e-6);
  const MetricField control = perturbed_product_metric(4);
  EXPECT_GT(schouten_codazzi_defect(control, Convention::full_trace, make_vec({0.3L, 0.4L, 0.5L, 0.6L}), outer), 1e-3);
}
