#include "confhyp/moebius.hpp"

#include <cmath>
#include <sstream>

namespace confhyp {

namespace {

struct Local {
  SurfacePoint sp;
  Mat frame;  // I-orthonormal
  Mat h_frame;
  Density density;
};

Density density_from_frame(const Mat& h_frame, Eigen::Index n) {
  const Real nn = static_cast<Real>(n);
  const Real H = h_frame.trace() / nn;
  const Real norm2 = h_frame.squaredNorm();
  const Real rho2 = nn / (nn - 1) * (norm2 - nn * H * H);
  if (!(rho2 > kUmbilicThreshold)) {
    std::ostringstream os;
    os << "umbilic point: rho^2 = " << static_cast<double>(rho2);
    throw UmbilicError(os.str());
  }
  return {std::sqrt(rho2), H};
}

Local local(const Immersion& f, const Vec& p, const FDScheme& inner) {
  Local l;
  l.sp = surface_point(f, p, inner);
  l.frame = orthonormal_frame(l.sp.first_form.g);
  l.h_frame = l.frame.transpose() * l.sp.second_form * l.frame;
  l.h_frame = (l.h_frame + l.h_frame.transpose()) / 2;
  l.density = density_from_frame(l.h_frame, f.chart_dimension());
  return l;
}

Real ambient_constant(const Immersion& f) { return f.ambient_kind() == AmbientKind::unit_sphere ? 1 : 0; }

}  // namespace

Density moebius_density(const MetricSample& first, const Mat& second, Eigen::Index n) {
  first.validate();
  if (second.rows() != n || second.cols() != n || first.g.rows() != n)
    throw InputError("moebius_density: dimension mismatch");
  const Mat e = orthonormal_frame(first.g);
  Mat h = e.transpose() * second * e;
  return density_from_frame((h + h.transpose()) / 2, n);
}

MetricSample moebius_metric(const MetricSample& first, Real rho) {
  if (!(rho > 0)) throw UmbilicError("moebius_metric: rho must be positive");
  return MetricSample{first.point, rho * rho * first.g};
}

Mat moebius_B(const MetricSample& first, const Mat& second, Real rho, Real H) {
  const Eigen::Index n = first.g.rows();
  const Mat e = orthonormal_frame(first.g);
  Mat h = e.transpose() * second * e;
  h = (h + h.transpose()) / 2;
  return (h - H * Mat::Identity(n, n)) / rho;
}

ScalarField rho_field(const Immersion& f, const FDScheme& inner) {
  return [f, inner](const Vec& q) { return local(f, q, inner).density.rho; };
}

ScalarField mean_curvature_field(const Immersion& f, const FDScheme& inner) {
  return [f, inner](const Vec& q) { return local(f, q, inner).density.H; };
}

MetricField moebius_metric_field(const Immersion& f, const FDScheme& inner) {
  return [f, inner](const Vec& q) {
    const Local l = local(f, q, inner);
    return Mat(l.density.rho * l.density.rho * l.sp.first_form.g);
  };
}

MetricField induced_metric_field(const Immersion& f, const FDScheme& inner) {
  return [f, inner](const Vec& q) { return first_fundamental_form(f, q, inner).g; };
}

Vec moebius_form(const Immersion& f, const Vec& p, const ScalarField& rho, const ScalarField& H,
                 const MoebiusSchemes& schemes) {
  schemes.validate();
  const Local l = local(f, p, schemes.inner);
  const Eigen::Index n = f.chart_dimension();
  const ScalarField log_rho = [&](const Vec& q) { return std::log(rho(q)); };
  const Vec dH = l.frame.transpose() * fd_gradient(H, p, schemes.outer);
  const Vec du = l.frame.transpose() * fd_gradient(log_rho, p, schemes.outer);
  const Real r = l.density.rho;
  const Vec c = -(dH + (l.h_frame - l.density.H * Mat::Identity(n, n)) * du) / (r * r);
  return c;
}

Vec moebius_form(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes) {
  return moebius_form(f, p, rho_field(f, schemes.inner), mean_curvature_field(f, schemes.inner), schemes);
}

Mat blaschke_A(const Immersion& f, const Vec& p, const ScalarField& rho, const ScalarField& H, const Mat& second,
               const MoebiusSchemes& schemes) {
  schemes.validate();
  const Local l = local(f, p, schemes.inner);
  const Eigen::Index m = f.chart_dimension();
  const ScalarField u = [&](const Vec& q) { return std::log(rho(q)); };
  const Vec grad = fd_gradient(u, p, schemes.outer);
  Mat hess = fd_hessian(u, p, schemes.outer);
  const std::vector<Real> gamma = induced_christoffel(l.sp);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      for (Eigen::Index c = 0; c < m; ++c) hess(a, b) -= gamma[static_cast<std::size_t>(c * m * m + a * m + b)] * grad(c);
  const Mat& I = l.sp.first_form.g;
  const Real h0 = H(p);
  const Real grad2 = grad.dot(I.inverse() * grad);
  const Mat coord = grad * grad.transpose() - hess + h0 * second +
                    (ambient_constant(f) - h0 * h0 - grad2) / 2 * I;
  const Real r = rho(p);
  Mat a = l.frame.transpose() * coord * l.frame / (r * r);
  return (a + a.transpose()) / 2;
}

Mat blaschke_A(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes) {
  const Mat second = surface_point(f, p, schemes.inner).second_form;
  return blaschke_A(f, p, rho_field(f, schemes.inner), mean_curvature_field(f, schemes.inner), second, schemes);
}

ScalarRoutes moebius_scalar(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes, Convention convention) {
  schemes.validate();
  const Eigen::Index n = f.chart_dimension();
  const CurvatureBundle direct = metric_field_curvature(moebius_metric_field(f, schemes.inner), p, schemes.outer);
  const CurvatureBundle base = metric_field_curvature(induced_metric_field(f, schemes.inner), p, schemes.outer);
  const ScalarField rho = rho_field(f, schemes.inner);
  const ScalarField u = [&](const Vec& q) { return std::log(rho(q)); };
  const Real route = conformal_scalar(base, u, p, schemes.outer);
  return {convert_scalar(direct.full_trace, convention, n), convert_scalar(route, convention, n)};
}

Real moebius_form_divergence_residual(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes) {
  schemes.validate();
  const Eigen::Index m = f.chart_dimension();
  // coordinate components of B: rho (h - H I)
  const TensorField b = [&](const Vec& q) {
    const Local l = local(f, q, schemes.inner);
    return Mat(l.density.rho * (l.sp.second_form - l.density.H * l.sp.first_form.g));
  };
  const MetricField g = moebius_metric_field(f, schemes.inner);
  const Mat g0 = g(p);
  const Mat g_inv = g0.inverse();
  const std::vector<Real> gamma = christoffel_symbols(g, p, schemes.outer);
  const auto G = [&](Eigen::Index k, Eigen::Index i, Eigen::Index j) {
    return gamma[static_cast<std::size_t>((k * m + i) * m + j)];
  };
  const Mat b0 = b(p);
  std::vector<Mat> db;
  for (Eigen::Index c = 0; c < m; ++c) db.push_back(fd_partial(b, p, c, schemes.outer));
  Vec div = Vec::Zero(m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index bb = 0; bb < m; ++bb)
      for (Eigen::Index c = 0; c < m; ++c) {
        Real cov = db[static_cast<std::size_t>(c)](a, bb);
        for (Eigen::Index d = 0; d < m; ++d) cov -= G(d, c, a) * b0(d, bb) + G(d, c, bb) * b0(a, d);
        div(a) += g_inv(bb, c) * cov;
      }
  const Mat frame = orthonormal_frame(g0);
  const Vec div_frame = frame.transpose() * div;
  const Vec c = moebius_form(f, p, schemes);
  return (div_frame + static_cast<Real>(m - 1) * c).cwiseAbs().maxCoeff();
}

MoebiusData moebius_data(const Immersion& f, const Vec& p, const MoebiusSchemes& schemes) {
  schemes.validate();
  const Local l = local(f, p, schemes.inner);
  const Eigen::Index n = f.chart_dimension();
  MoebiusData d;
  d.point = p;
  d.rho = l.density.rho;
  d.H = l.density.H;
  d.g_moebius = moebius_metric(l.sp.first_form, d.rho);
  d.B = (l.h_frame - d.H * Mat::Identity(n, n)) / d.rho;
  const ScalarField rho = rho_field(f, schemes.inner);
  const ScalarField H = mean_curvature_field(f, schemes.inner);
  d.A = blaschke_A(f, p, rho, H, l.sp.second_form, schemes);
  d.C = moebius_form(f, p, rho, H, schemes);
  d.principal_curvatures = principal_curvatures(l.sp.first_form, l.sp.second_form);
  return d;
}

std::vector<int> multiplicities(const Vec& sorted_desc, Real tol) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < sorted_desc.size(); ++i) {
    if (i > 0 && std::fabs(sorted_desc(i) - sorted_desc(i - 1)) <= tol)
      ++out.back();
    else
      out.push_back(1);
  }
  return out;
}

}  // namespace confhyp
