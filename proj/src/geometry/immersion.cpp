#include "confhyp/immersion.hpp"

#include "confhyp/surface.hpp"

#include <cmath>
#include <sstream>

namespace confhyp {

ChartBox ChartBox::unbounded(Eigen::Index m) {
  const Real inf = std::numeric_limits<Real>::infinity();
  return ChartBox{Vec::Constant(m, -inf), Vec::Constant(m, inf)};
}

void ChartBox::require_interior(const Vec& p, const Vec& margin, const std::string& context) const {
  if (p.size() != dimension()) throw InputError(context + ": chart point has wrong dimension");
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (!std::isfinite(p(k)) || p(k) - margin(k) < lower(k) || p(k) + margin(k) > upper(k)) {
      std::ostringstream msg;
      msg << context << ": coordinate " << k << " = " << static_cast<double>(p(k)) << " is not " << static_cast<double>(margin(k))
          << " inside [" << static_cast<double>(lower(k)) << ", " << static_cast<double>(upper(k)) << "]";
      throw DomainError(msg.str());
    }
  }
}

void ChartBox::require_inside(const Vec& p, const std::string& context) const {
  require_interior(p, Vec::Zero(p.size()), context);
}

Immersion::Immersion(std::string name, Eigen::Index chart_dim, Eigen::Index ambient_dim, AmbientKind kind,
                     Evaluator f, ChartBox domain, Vec base_point, Vec orientation_seed)
    : name_(std::move(name)),
      chart_dim_(chart_dim),
      ambient_dim_(ambient_dim),
      kind_(kind),
      f_(std::make_shared<const Evaluator>(std::move(f))),
      domain_(std::move(domain)),
      base_point_(std::move(base_point)),
      seed_(std::move(orientation_seed)) {
  if (chart_dim_ < 1 || ambient_dim_ < chart_dim_) throw ParameterError("immersion dimensions are inconsistent");
  if (domain_.dimension() != chart_dim_ || base_point_.size() != chart_dim_)
    throw ParameterError("immersion domain/base point dimension mismatch");
  if (is_hypersurface() && seed_.size() == ambient_dim_) {
    const Vec c = cofactor_normal([&] {
      const Mat j = jacobian(*this, base_point_, FDScheme::automatic());
      if (kind_ == AmbientKind::euclidean) return j;
      Mat cols(ambient_dim_, chart_dim_ + 1);
      cols << j, (*this)(base_point_);
      return cols;
    }());
    const Real dot = c.dot(seed_);
    if (std::fabs(dot) <= 1e-12L * c.norm() * seed_.norm())
      throw ParameterError(name_ + ": orientation seed is tangent to the hypersurface at the base point");
    sign_ = dot > 0 ? 1 : -1;
  }
}

bool Immersion::is_hypersurface() const {
  return kind_ == AmbientKind::euclidean ? chart_dim_ + 1 == ambient_dim_ : chart_dim_ + 2 == ambient_dim_;
}

Vec Immersion::operator()(const Vec& p) const {
  domain_.require_inside(p, name_);
  Vec x = (*f_)(p);
  if (x.size() != ambient_dim_) throw InputError(name_ + ": evaluator returned wrong ambient dimension");
  return x;
}

Immersion Immersion::with_seed(Vec seed) const {
  return Immersion(name_, chart_dim_, ambient_dim_, kind_, *f_, domain_, base_point_, std::move(seed));
}

Immersion Immersion::with_name(std::string name) const {
  Immersion copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Immersion reparametrize(const Immersion& f, const Mat& a, const Vec& b) {
  if (a.rows() != f.chart_dimension() || a.cols() != f.chart_dimension() || b.size() != f.chart_dimension())
    throw InputError("reparametrize: affine map has wrong size");
  const Mat a_inv = a.inverse();
  auto eval = [f, a, b](const Vec& q) -> Vec { return f(a * q + b); };
  const Vec base = a_inv * (f.base_point() - b);
  return Immersion(f.name() + "/affine", f.chart_dimension(), f.ambient_dimension(), f.ambient_kind(), eval,
                   ChartBox::unbounded(f.chart_dimension()), base, f.orientation_seed());
}

}  // namespace confhyp
