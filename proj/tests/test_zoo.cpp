#include "analytic.hpp"

#include "confhyp/moebius.hpp"
#include "confhyp/surface.hpp"
#include "confhyp/zoo.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace confhyp;

namespace {

const FDScheme kAuto = FDScheme::automatic();
const MoebiusSchemes kSchemes{};

SpiralTrajectory spiral(int eps, Real R, Real k0, Real ks0, Real smax, int n = 4) {
  IntegratorControls ctl;
  ctl.s_max = smax;
  return reconstruct_curve(integrate_spiral(SpiralParams{n, eps, R, SpiralForm::warped_scalar}, {0, k0, ks0}, ctl));
}

Vec curvatures(const Immersion& f, const Vec& p) {
  return principal_curvatures(first_fundamental_form(f, p, kAuto), second_fundamental_form(f, p, kAuto));
}

}  // namespace

TEST(Sigma, OriginMapsToPole) {
  const Vec x = sigma_map(Vec::Zero(4));
  Vec want = Vec::Zero(5);
  want(0) = 1;
  EXPECT_EQ(x, want);
}

TEST(Sigma, InverseRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    Vec u(4);
    for (int k = 0; k < 4; ++k) u(k) = coord(rng);
    if (u.norm() > 10) u *= 10 / u.norm();
    const Vec x = sigma_map(u);
    ASSERT_NEAR(x.norm(), 1, 1e-15);
    ASSERT_LT((sigma_inverse(x) - u).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Sigma, InverseRejectsAntipodeAndOffSphere) {
  Vec south = Vec::Zero(3);
  south(0) = -1;
  EXPECT_THROW(sigma_inverse(south), DomainError);
  EXPECT_THROW(sigma_inverse(make_vec({0.5L, 0.5L, 0})), DomainError);
}

TEST(Tau, VertexAndHemisphere) {
  Vec v = Vec::Zero(4);
  v(0) = 1;
  EXPECT_EQ(tau_map(v), v);
  const Vec y = make_vec({std::sqrt(1 + 0.36L + 0.64L), 0.6L, 0.8L});
  const Vec x = tau_map(y);
  EXPECT_NEAR(x.norm(), 1, 1e-15);
  EXPECT_GT(x(0), 0);
  EXPECT_THROW(tau_map(make_vec({1, 1, 0})), DomainError);
  EXPECT_THROW(tau_map(make_vec({-std::sqrt(2.0L), 1, 0})), DomainError);
}

TEST(SphereChart, MatchesIndependentParametrisation) {
  const Vec a = make_vec({0.7L, 1.9L, 2.5L});
  EXPECT_LT((sphere_point(a) - analytic::sphere(a)).cwiseAbs().maxCoeff(), 1e-18);
  EXPECT_LT((sphere_angle_metric(a) - analytic::sphere_metric(a)).cwiseAbs().maxCoeff(), 1e-18);
  const ChartBox box = sphere_angle_box(3, 0.2L);
  EXPECT_EQ(box.lower(0), 0.2L);
  EXPECT_EQ(box.upper(1), kPi - 0.2L);
  EXPECT_FALSE(std::isfinite(box.upper(2)));
  EXPECT_THROW(sphere_angle_box(3, 2), ParameterError);
}

TEST(Cylinder, UnitCircleIsIsoparametric) {
  const SpiralTrajectory t = spiral(0, 0, 1, 0, 6);
  const Immersion f = cylinder_immersion(t, 4);
  for (Real s : {0.5L, 2.0L, 4.5L}) {
    const Vec p = make_vec({s, 0.3L, -0.1L, 0.7L});
    EXPECT_LT((first_fundamental_form(f, p, kAuto).g - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-9);
    Mat want = Mat::Zero(4, 4);
    want(0, 0) = 1;
    const Mat h = second_fundamental_form(f, p, kAuto);
    EXPECT_LT((h.cwiseAbs() - want).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Cylinder, SecondFormFollowsSpiralCurvature) {
  const SpiralTrajectory t = spiral(0, 0, 1, 0.1L, 4);
  const Immersion f = cylinder_immersion(t, 4);
  for (Real s : {0.7L, 1.9L, 3.3L}) {
    const Mat h = second_fundamental_form(f, make_vec({s, 0.2L, 0.1L, -0.4L}), kAuto);
    EXPECT_NEAR(std::fabs(h(0, 0)), t.kappa_at(s), 1e-8);
    EXPECT_NEAR(h.bottomRightCorner(3, 3).cwiseAbs().maxCoeff(), 0, 1e-8);
  }
}

TEST(Cylinder, ChartOutsideTrajectoryThrows) {
  const Immersion f = cylinder_immersion(spiral(0, 0, 1, 0.1L, 2), 4);
  EXPECT_THROW(f(make_vec({2.5L, 0, 0, 0})), DomainError);
}

TEST(Cylinder, WrongModelIsRejected) {
  EXPECT_THROW(cylinder_immersion(spiral(1, -6, 1, 0, 1), 4), InputError);
  EXPECT_THROW(rotational_immersion(spiral(0, 0, 1, 0, 1), 4), InputError);
}

TEST(Cone, MetricIsIndependentOfT) {
  const SpiralTrajectory t = spiral(1, -6, 1, -0.005L, 3);
  const Immersion f = cone_immersion(t, 4);
  const Mat g1 = moebius_data(f, make_vec({1.1L, 0.8L, 0.3L, 0.2L}), kSchemes).g_moebius.g;
  const Mat g2 = moebius_data(f, make_vec({1.1L, 1.6L, 0.3L, 0.2L}), kSchemes).g_moebius.g;
  // g = kappa^2 (ds^2 + (dt^2 + dy^2)/t^2): the ds^2 entry does not depend on t
  EXPECT_NEAR(g1(0, 0), g2(0, 0), 1e-9);
  EXPECT_NEAR(g1(1, 1) * 0.8L * 0.8L, g2(1, 1) * 1.6L * 1.6L, 1e-9);
}

TEST(Cone, RejectsNonPositiveT) {
  const Immersion f = cone_immersion(spiral(1, -6, 1, 0, 2), 4);
  EXPECT_THROW(f(make_vec({1, 0.01L, 0, 0})), DomainError);
  EXPECT_THROW(cone_immersion(spiral(1, -6, 1, 0, 2), 4, 0, 2), ParameterError);
}

TEST(Rotational, PrincipalCurvatureFormula) {
  const SpiralTrajectory t = spiral(-1, 3, 1.6L, 0.1L, 4);
  const Immersion f = rotational_immersion(t, 4);
  for (std::size_t i : {700u, 1800u, 3100u}) {
    const auto& smp = t.samples[i];
    const Real y = smp.curve.point(1);
    const Real xs = y * std::cos(smp.curve.angle);
    const Real k = smp.spiral.kappa;
    Vec want(4);
    want << (k * y - xs) / (y * y), -xs / (y * y), -xs / (y * y), -xs / (y * y);
    Vec got = curvatures(f, make_vec({smp.spiral.s, 1.0L, 1.3L, 0.4L}));
    std::sort(want.data(), want.data() + 4, std::greater<Real>());
    Vec flipped = -got.reverse();
    const Real e = std::min((got - want).cwiseAbs().maxCoeff(), (flipped - want).cwiseAbs().maxCoeff());
    EXPECT_LT(e, 1e-8) << "node " << i;
  }
}

TEST(Rotational, HyperbolicCircleHasVanishingMoebiusForm) {
  const Real ks = std::sqrt(2.0L);
  const SpiralTrajectory t = spiral(-1, 3, ks, 0, 4);
  const Immersion f = rotational_immersion(t, 4);
  for (Real s : {0.8L, 2.1L, 3.0L}) {
    const MoebiusData d = moebius_data(f, make_vec({s, 1.2L, 1.0L, 2.0L}), kSchemes);
    EXPECT_LT(d.C.cwiseAbs().maxCoeff(), 1e-6);
    const auto m = multiplicities(d.principal_curvatures, 1e-8L);
    EXPECT_EQ(m.size(), 2u);
  }
}

TEST(Rotational, FiveDimensionalSmoke) {
  const SpiralTrajectory t = spiral(-1, 3, 1.6L, 0.1L, 3, 5);
  const Immersion f = rotational_immersion(t, 5);
  const MoebiusData d = moebius_data(f, make_vec({1.5L, 1.0L, 1.2L, 1.4L, 0.5L}), kSchemes);
  const Vec& k = d.principal_curvatures;
  EXPECT_TRUE(std::fabs(k(0) - k(3)) < 1e-8 || std::fabs(k(1) - k(4)) < 1e-8);
  EXPECT_NEAR(d.B.squaredNorm(), 0.8L, 1e-10);
}

TEST(Torus, LiesOnUnitSphere) {
  const Immersion f = torus_immersion(0.6L, 4);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 2 * kPi), polar(0.25, kPi - 0.25);
  for (int i = 0; i < 50; ++i) {
    const Vec p = make_vec({u(rng), polar(rng), polar(rng), u(rng)});
    ASSERT_NEAR(f(p).norm(), 1, 1e-12);
    ASSERT_LT((f(p) - analytic::clifford_torus(4, 0.6L)(p)).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_THROW(torus_immersion(1.0L, 4), ParameterError);
  EXPECT_THROW(torus_immersion(0, 4), ParameterError);
}

TEST(Torus, TwoPrincipalCurvaturesAndVanishingForm) {
  const Immersion f = torus_immersion(0.5L, 4);
  const MoebiusData d = moebius_data(f, make_vec({0.9L, 1.1L, 1.6L, 0.3L}), kSchemes);
  const auto m = multiplicities(d.principal_curvatures, 1e-8L);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(std::min(m[0], m[1]), 1);
  EXPECT_LT(d.C.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Torus, PolesAreOutsideChart) {
  const Immersion f = torus_immersion(0.5L, 4);
  EXPECT_THROW(f(make_vec({0, 0.1L, 1, 1})), DomainError);
}

TEST(PostMaps, SigmaAndHomothety) {
  const Immersion f = cylinder_immersion(spiral(0, 0, 1, 0.1L, 3), 4);
  const Immersion g = compose_sigma(f);
  const Vec p = make_vec({1.2L, 0.2L, 0.1L, 0.3L});
  EXPECT_EQ(g.ambient_kind(), AmbientKind::unit_sphere);
  EXPECT_NEAR(g(p).norm(), 1, 1e-15);
  EXPECT_LT((g(p) - sigma_map(f(p))).cwiseAbs().maxCoeff(), 1e-18);
  EXPECT_THROW(compose_sigma(g), InputError);
  const Immersion h = homothety(f, 2.5L);
  EXPECT_LT((h(p) - 2.5L * f(p)).cwiseAbs().maxCoeff(), 1e-18);
  EXPECT_THROW(homothety(f, -1), ParameterError);
}

TEST(PostMaps, SigmaPreservesMoebiusInvariants) {
  const Immersion f = cone_immersion(spiral(1, -6, 1, -0.005L, 3), 4);
  const Vec p = make_vec({1.2L, 1.1L, 0.1L, 0.3L});
  const MoebiusData a = moebius_data(f, p, kSchemes), b = moebius_data(compose_sigma(f), p, kSchemes);
  EXPECT_LT((a.g_moebius.g - b.g_moebius.g).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_NEAR(moebius_scalar(f, p, kSchemes).direct, moebius_scalar(compose_sigma(f), p, kSchemes).direct, 1e-5);
}

TEST(Build, DispatchesFamilies) {
  HypersurfaceSpec spec;
  spec.kind = Family::rotational;
  spec.trajectory = spiral(-1, 3, 1.6L, 0.1L, 3);
  EXPECT_EQ(build_hypersurface(spec).ambient_dimension(), 5);
  spec.post_map = PostMap::sigma;
  EXPECT_EQ(build_hypersurface(spec).ambient_kind(), AmbientKind::unit_sphere);
  HypersurfaceSpec torus;
  torus.kind = Family::torus;
  torus.torus_r = 0.3L;
  EXPECT_EQ(build_hypersurface(torus).ambient_dimension(), 6);
  torus.post_map = PostMap::sigma;
  EXPECT_THROW(build_hypersurface(torus), InputError);
  HypersurfaceSpec missing;
  missing.kind = Family::cone;
  EXPECT_THROW(build_hypersurface(missing), InputError);
  EXPECT_EQ(parse_family("cone"), Family::cone);
  EXPECT_THROW(parse_family("klein"), InputError);
}

TEST(WarpedMetric, CrossSections) {
  const auto k = [](Real s) { return 1 + 0.1L * s; };
  const Vec p = make_vec({0.5L, 1.4L, 0.3L, -0.2L});
  const Mat flat = warped_metric_field(k, 0, 4)(p);
  EXPECT_LT((flat - 1.05L * 1.05L * Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-18);
  const Mat hyp = warped_metric_field(k, 1, 4)(p);
  EXPECT_NEAR(hyp(2, 2), 1.05L * 1.05L / (1.4L * 1.4L), 1e-18);
  const Vec q = make_vec({0.5L, 1.0L, 1.2L, 0.3L});
  const Mat sph = warped_metric_field(k, -1, 4)(q);
  EXPECT_LT((sph.bottomRightCorner(3, 3) - 1.05L * 1.05L * analytic::sphere_metric(q.tail(3))).cwiseAbs().maxCoeff(), 1e-18);
}

TEST(MeshExport, ObjAndDescriptor) {
  const Immersion f = torus_immersion(0.5L, 4);
  SliceSpec slice;
  slice.base = make_vec({0, 1.2L, 1.2L, 0.5L});
  slice.u0 = 0;
  slice.u1 = 2 * kPi;
  slice.v0 = 0.5L;
  slice.v1 = 2.5L;
  slice.nu = 5;
  slice.nv = 4;
  const Mesh mesh = slice_mesh(f, slice);
  EXPECT_EQ(mesh.vertices.size(), 20u);
  EXPECT_EQ(mesh.faces.size(), 24u);
  for (const auto& fc : mesh.faces)
    for (int i : fc) ASSERT_TRUE(i >= 1 && i <= 20);
  const std::string obj = to_obj(mesh, "torus");
  std::istringstream in(obj);
  std::string line;
  int v = 0, fcount = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++fcount;
  }
  EXPECT_EQ(v, 20);
  EXPECT_EQ(fcount, 24);
  const auto j = nlohmann::json::parse(slice_descriptor(f, slice, "torus.obj"));
  EXPECT_EQ(j["vertices"], 20);
  EXPECT_EQ(j["obj"], "torus.obj");
  slice.axis_v = 0;
  EXPECT_THROW(slice_mesh(f, slice), InputError);
}
