#include "confhyp/surface.hpp"

#include "confhyp/jacobi.hpp"

#include <cmath>

namespace confhyp {

namespace {

void require_stencil(const Immersion& f, const Vec& p, const FDScheme& scheme, const char* what) {
  scheme.validate();
  Vec margin(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) margin(k) = 2 * scheme.step_at(p(k));
  f.domain().require_interior(p, margin, f.name() + " " + what);
}

Mat normal_columns(const Immersion& f, const Vec& position, const Mat& j) {
  if (!f.is_hypersurface()) throw InputError(f.name() + ": unit normal needs a hypersurface");
  if (f.ambient_kind() == AmbientKind::euclidean) return j;
  Mat cols(f.ambient_dimension(), f.chart_dimension() + 1);
  cols << j, position;
  return cols;
}

Vec oriented_normal(const Immersion& f, const Vec& position, const Mat& j) {
  const Mat cols = normal_columns(f, position, j);
  const Vec c = cofactor_normal(cols);
  Real scale = 1;
  for (Eigen::Index k = 0; k < cols.cols(); ++k) scale *= cols.col(k).norm();
  const Real len = c.norm();
  if (!(len > 1e-12L * scale)) throw DegeneracyError(f.name() + ": tangent space is degenerate");
  return (f.orientation_sign() / len) * c;
}

}  // namespace

void MetricSample::validate() const {
  if (g.rows() != g.cols() || g.rows() != point.size()) throw InputError("metric sample has wrong shape");
  if (asymmetry(g) > 1e-14L) throw DegeneracyError("metric sample is not symmetric");
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw DegeneracyError("metric sample is not positive definite");
}

Mat jacobian(const Immersion& f, const Vec& p, const FDScheme& scheme) {
  require_stencil(f, p, scheme, "jacobian");
  Mat j(f.ambient_dimension(), f.chart_dimension());
  for (Eigen::Index k = 0; k < p.size(); ++k) j.col(k) = fd_partial(f, p, k, scheme);
  return j;
}

std::vector<Mat> ambient_hessian(const Immersion& f, const Vec& p, const FDScheme& scheme) {
  require_stencil(f, p, scheme, "hessian");
  const Eigen::Index m = f.chart_dimension();
  std::vector<Mat> out(static_cast<std::size_t>(f.ambient_dimension()), Mat(m, m));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = i; k < m; ++k) {
      const Vec d2 = fd_second(f, p, i, k, scheme);
      for (Eigen::Index a = 0; a < d2.size(); ++a) {
        out[static_cast<std::size_t>(a)](i, k) = d2(a);
        out[static_cast<std::size_t>(a)](k, i) = d2(a);
      }
    }
  }
  return out;
}

MetricSample first_fundamental_form(const Immersion& f, const Vec& p, const FDScheme& scheme) {
  const Mat j = jacobian(f, p, scheme);
  Mat g = j.transpose() * j;
  g = (g + g.transpose()) / 2;
  MetricSample s{p, g};
  try {
    s.validate();
  } catch (const DegeneracyError&) {
    throw DegeneracyError(f.name() + ": jacobian is rank deficient (singular parametrisation)");
  }
  return s;
}

Vec unit_normal(const Immersion& f, const Vec& p, const FDScheme& scheme) {
  return oriented_normal(f, f(p), jacobian(f, p, scheme));
}

Mat second_fundamental_form(const Immersion& f, const Vec& p, const FDScheme& scheme) {
  return surface_point(f, p, scheme).second_form;
}

SurfacePoint surface_point(const Immersion& f, const Vec& p, const FDScheme& scheme) {
  SurfacePoint sp;
  sp.point = p;
  sp.position = f(p);
  sp.jacobian = jacobian(f, p, scheme);
  Mat g = sp.jacobian.transpose() * sp.jacobian;
  sp.first_form = MetricSample{p, (g + g.transpose()) / 2};
  try {
    sp.first_form.validate();
  } catch (const DegeneracyError&) {
    throw DegeneracyError(f.name() + ": jacobian is rank deficient (singular parametrisation)");
  }
  sp.normal = oriented_normal(f, sp.position, sp.jacobian);
  sp.hessian = ambient_hessian(f, p, scheme);
  const Eigen::Index m = f.chart_dimension();
  sp.second_form = Mat::Zero(m, m);
  for (std::size_t a = 0; a < sp.hessian.size(); ++a)
    sp.second_form += sp.normal(static_cast<Eigen::Index>(a)) * sp.hessian[a];
  return sp;
}

Vec cofactor_normal(const Mat& columns) {
  const Eigen::Index n = columns.rows();
  if (columns.cols() != n - 1) throw InputError("cofactor_normal expects N x (N-1) columns");
  Vec c(n);
  Mat minor(n - 1, n - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index r = 0, row = 0; r < n; ++r) {
      if (r == k) continue;
      minor.row(row++) = columns.row(r);
    }
    c(k) = ((k % 2) ? -1 : 1) * minor.determinant();
  }
  return c;
}

Vec principal_curvatures(const MetricSample& first, const Mat& second) {
  if (second.rows() != first.g.rows() || second.cols() != first.g.cols())
    throw InputError("principal_curvatures: shape mismatch");
  if (asymmetry(first.g) > 1e-10L || asymmetry(second) > 1e-10L)
    throw InputError("principal_curvatures: fundamental forms must be symmetric");
  const Mat root = inverse_sqrt_spd(first.g);
  return jacobi_eigen(root * second * root).values;
}

std::vector<Real> induced_christoffel(const SurfacePoint& sp) {
  const Eigen::Index m = sp.jacobian.cols();
  const Mat g_inv = sp.first_form.g.inverse();
  std::vector<Real> gamma(static_cast<std::size_t>(m * m * m), 0);
  // <f_ab, f_d>
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a; b < m; ++b) {
      Vec fab(sp.jacobian.rows());
      for (Eigen::Index r = 0; r < fab.size(); ++r) fab(r) = sp.hessian[static_cast<std::size_t>(r)](a, b);
      const Vec lowered = sp.jacobian.transpose() * fab;
      const Vec raised = g_inv * lowered;
      for (Eigen::Index c = 0; c < m; ++c) {
        gamma[static_cast<std::size_t>(c * m * m + a * m + b)] = raised(c);
        gamma[static_cast<std::size_t>(c * m * m + b * m + a)] = raised(c);
      }
    }
  }
  return gamma;
}

Mat orthonormal_frame(const Mat& g) {
  const Eigen::Index m = g.rows();
  Mat e = Mat::Identity(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec v = e.col(i);
    for (Eigen::Index j = 0; j < i; ++j) v -= (e.col(j).dot(g * v)) * e.col(j);
    const Real len2 = v.dot(g * v);
    if (!(len2 > 0)) throw DegeneracyError("orthonormal_frame: metric is not positive definite");
    e.col(i) = v / std::sqrt(len2);
  }
  return e;
}

}  // namespace confhyp
