#include "confhyp/curvature.hpp"

#include "confhyp/surface.hpp"

#include <algorithm>
#include <cmath>

namespace confhyp {

std::string to_string(Convention c) {
  switch (c) {
    case Convention::half_trace: return "half";
    case Convention::full_trace: return "full";
    case Convention::normalized: return "normalized";
  }
  return "full";
}

Convention parse_convention(const std::string& text) {
  if (text == "half" || text == "half_trace" || text == "HALF_TRACE") return Convention::half_trace;
  if (text == "full" || text == "full_trace" || text == "FULL_TRACE") return Convention::full_trace;
  if (text == "normalized" || text == "NORMALIZED") return Convention::normalized;
  throw InputError("unknown scalar-curvature convention '" + text + "' (expected half|full|normalized)");
}

Real convert_scalar(Real full_trace, Convention to, Eigen::Index n) {
  switch (to) {
    case Convention::half_trace: return full_trace / 2;
    case Convention::full_trace: return full_trace;
    case Convention::normalized: return full_trace / static_cast<Real>(n * (n - 1));
  }
  return full_trace;
}

Real CurvatureBundle::symmetry_residual() const {
  Real worst = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index k = 0; k < dim; ++k)
        for (Eigen::Index l = 0; l < dim; ++l) {
          const Real v = r(i, j, k, l);
          worst = std::max({worst, std::fabs(v + r(j, i, k, l)), std::fabs(v + r(i, j, l, k)),
                            std::fabs(v - r(k, l, i, j))});
        }
  return worst;
}

Real CurvatureBundle::bianchi_residual() const {
  Real worst = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index k = 0; k < dim; ++k)
        for (Eigen::Index l = 0; l < dim; ++l)
          worst = std::max(worst, std::fabs(r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k)));
  return worst;
}

void require_riemannian(const Mat& g, const std::string& context) {
  if (g.rows() != g.cols()) throw DegeneracyError(context + ": metric is not square");
  if (!g.allFinite()) throw DegeneracyError(context + ": metric has non-finite entries");
  if (asymmetry(g) > 1e-12L) throw DegeneracyError(context + ": metric is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  const Real lo = es.eigenvalues().minCoeff();
  const Real hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0)) throw DegeneracyError(context + ": metric is indefinite");
  if (lo < 1e-14L * hi) throw DegeneracyError(context + ": metric is nearly singular");
}

std::vector<Real> christoffel_symbols(const MetricField& field, const Vec& p, const FDScheme& scheme) {
  const Mat g = field(p);
  require_riemannian(g, "christoffel_symbols");
  const Eigen::Index m = g.rows();
  std::vector<Mat> dg;
  dg.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index c = 0; c < m; ++c) dg.push_back(fd_partial(field, p, c, scheme));
  const Mat g_inv = g.inverse();

  std::vector<Real> gamma(static_cast<std::size_t>(m * m * m));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      Vec lowered(m);  // Gamma_{l ij}
      for (Eigen::Index l = 0; l < m; ++l)
        lowered(l) = (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                      dg[static_cast<std::size_t>(l)](i, j)) / 2;
      const Vec raised = g_inv * lowered;
      for (Eigen::Index k = 0; k < m; ++k) {
        gamma[static_cast<std::size_t>((k * m + i) * m + j)] = raised(k);
        gamma[static_cast<std::size_t>((k * m + j) * m + i)] = raised(k);
      }
    }
  }
  return gamma;
}

namespace {

Vec as_vec(const std::vector<Real>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// T'_{i...} = sum_a E_{a i} T_{a...} applied to every slot of a rank-4 tensor.
std::vector<Real> to_frame4(const std::vector<Real>& t, const Mat& e, Eigen::Index m) {
  std::vector<Real> cur = t, next(t.size());
  const auto idx = [m](Eigen::Index a, Eigen::Index b, Eigen::Index c, Eigen::Index d) {
    return static_cast<std::size_t>(((a * m + b) * m + c) * m + d);
  };
  for (int slot = 0; slot < 4; ++slot) {
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b)
        for (Eigen::Index c = 0; c < m; ++c)
          for (Eigen::Index d = 0; d < m; ++d) {
            Real acc = 0;
            for (Eigen::Index s = 0; s < m; ++s) {
              switch (slot) {
                case 0: acc += e(s, a) * cur[idx(s, b, c, d)]; break;
                case 1: acc += e(s, b) * cur[idx(a, s, c, d)]; break;
                case 2: acc += e(s, c) * cur[idx(a, b, s, d)]; break;
                default: acc += e(s, d) * cur[idx(a, b, c, s)]; break;
              }
            }
            next[idx(a, b, c, d)] = acc;
          }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace

CurvatureBundle metric_field_curvature(const MetricField& field, const Vec& p, const FDScheme& scheme,
                                       Convention convention) {
  scheme.validate();
  CurvatureBundle b;
  b.point = p;
  b.metric = field(p);
  require_riemannian(b.metric, "metric_field_curvature");
  const Eigen::Index m = b.metric.rows();
  b.dim = m;
  b.christoffel = christoffel_symbols(field, p, scheme);

  const auto gamma_vec = [&](const Vec& q) { return as_vec(christoffel_symbols(field, q, scheme)); };
  std::vector<Vec> dgamma;  // dgamma[c] = d_c Gamma (flattened)
  dgamma.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index c = 0; c < m; ++c) dgamma.push_back(fd_partial(gamma_vec, p, c, scheme));

  const auto G = [&](Eigen::Index k, Eigen::Index i, Eigen::Index j) { return b.gamma(k, i, j); };
  const auto dG = [&](Eigen::Index c, Eigen::Index k, Eigen::Index i, Eigen::Index j) {
    return dgamma[static_cast<std::size_t>(c)](static_cast<Eigen::Index>((k * m + i) * m + j));
  };

  // R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}, then lower a.
  std::vector<Real> up(static_cast<std::size_t>(m * m * m * m));
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index bb = 0; bb < m; ++bb)
      for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index d = 0; d < m; ++d) {
          Real v = dG(c, a, d, bb) - dG(d, a, c, bb);
          for (Eigen::Index e = 0; e < m; ++e) v += G(a, c, e) * G(e, d, bb) - G(a, d, e) * G(e, c, bb);
          up[static_cast<std::size_t>(((a * m + bb) * m + c) * m + d)] = v;
        }
  std::vector<Real> low(up.size(), 0);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index e = 0; e < m; ++e) {
      const Real gae = b.metric(a, e);
      for (Eigen::Index rest = 0; rest < m * m * m; ++rest)
        low[static_cast<std::size_t>(a * m * m * m + rest)] += gae * up[static_cast<std::size_t>(e * m * m * m + rest)];
    }

  b.frame = orthonormal_frame(b.metric);
  b.riemann = to_frame4(low, b.frame, m);
  b.ricci = Mat::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = 0; l < m; ++l)
      for (Eigen::Index i = 0; i < m; ++i) b.ricci(j, l) += b.r(i, j, i, l);
  b.ricci = (b.ricci + b.ricci.transpose()) / 2;
  b.full_trace = b.ricci.trace();
  b.convention = convention;
  b.scalar = b.scalar_as(convention);
  return b;
}

Real conformal_scalar(const CurvatureBundle& base, const ScalarField& u, const Vec& p, const FDScheme& scheme) {
  const Eigen::Index n = base.dim;
  const Real u0 = u(p);
  const Vec grad = fd_gradient(u, p, scheme);
  const Mat hess = fd_hessian(u, p, scheme);
  const Mat g_inv = base.metric.inverse();
  Real laplacian = 0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index bb = 0; bb < n; ++bb) {
      Real cov = hess(a, bb);
      for (Eigen::Index c = 0; c < n; ++c) cov -= base.gamma(c, a, bb) * grad(c);
      laplacian += g_inv(a, bb) * cov;
    }
  const Real grad2 = grad.dot(g_inv * grad);
  const Real nn = static_cast<Real>(n);
  return std::exp(-2 * u0) * (base.full_trace - 2 * (nn - 1) * laplacian - (nn - 2) * (nn - 1) * grad2);
}

Mat schouten_tensor(const CurvatureBundle& bundle, Eigen::Index n) {
  if (n < 3) throw ParameterError("schouten_tensor needs n >= 3");
  return bundle.ricci - bundle.scalar / (2 * static_cast<Real>(n - 1)) * Mat::Identity(n, n);
}

Mat schouten_coordinates(const MetricField& g, const Vec& p, const FDScheme& scheme, Convention convention) {
  const CurvatureBundle b = metric_field_curvature(g, p, scheme, convention);
  const Mat s_frame = schouten_tensor(b, b.dim);
  const Mat e_inv = b.frame.inverse();
  return e_inv.transpose() * s_frame * e_inv;
}

Real codazzi_defect(const TensorField& s, const MetricField& g, const Vec& p, const FDScheme& scheme) {
  const Mat s0 = s(p);
  const Eigen::Index m = s0.rows();
  const std::vector<Real> gamma = christoffel_symbols(g, p, scheme);
  const auto G = [&](Eigen::Index k, Eigen::Index i, Eigen::Index j) {
    return gamma[static_cast<std::size_t>((k * m + i) * m + j)];
  };
  std::vector<Mat> ds;
  for (Eigen::Index c = 0; c < m; ++c) ds.push_back(fd_partial(s, p, c, scheme));
  // nabla_c S_ab
  const auto cov = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c) {
    Real v = ds[static_cast<std::size_t>(c)](a, b);
    for (Eigen::Index d = 0; d < m; ++d) v -= G(d, c, a) * s0(d, b) + G(d, c, b) * s0(a, d);
    return v;
  };
  std::vector<Real> t(static_cast<std::size_t>(m * m * m));
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      for (Eigen::Index c = 0; c < m; ++c) t[static_cast<std::size_t>((a * m + b) * m + c)] = cov(a, b, c) - cov(a, c, b);

  const Mat e = orthonormal_frame(g(p));
  Real worst = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index k = 0; k < m; ++k) {
        Real v = 0;
        for (Eigen::Index a = 0; a < m; ++a)
          for (Eigen::Index b = 0; b < m; ++b)
            for (Eigen::Index c = 0; c < m; ++c) v += e(a, i) * e(b, j) * e(c, k) * t[static_cast<std::size_t>((a * m + b) * m + c)];
        worst = std::max(worst, std::fabs(v));
      }
  return worst;
}

Real schouten_codazzi_defect(const MetricField& g, Convention convention, const Vec& p, const FDScheme& scheme) {
  const TensorField s = [&](const Vec& q) { return schouten_coordinates(g, q, scheme, convention); };
  return codazzi_defect(s, g, p, scheme);
}

}  // namespace confhyp
