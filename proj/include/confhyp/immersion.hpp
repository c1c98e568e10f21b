#pragma once

#include "confhyp/core.hpp"

#include <functional>
#include <memory>
#include <string>

namespace confhyp {

enum class AmbientKind { euclidean, unit_sphere };

/// Axis-aligned chart domain; infinite bounds are allowed.
struct ChartBox {
  Vec lower;
  Vec upper;

  static ChartBox unbounded(Eigen::Index m);
  Eigen::Index dimension() const { return lower.size(); }
  /// Throws DomainError naming the first coordinate of p that is not at least
  /// `margin(k)` inside the box.
  void require_interior(const Vec& p, const Vec& margin, const std::string& context) const;
  void require_inside(const Vec& p, const std::string& context) const;
};

/// An evaluatable parametric map from an m-dimensional chart into R^N.
/// Immutable once built; evaluation is a pure function of the chart point.
class Immersion {
 public:
  using Evaluator = std::function<Vec(const Vec&)>;

  /// `orientation_seed` is a reference normal at `base_point`; it may be empty
  /// for maps that are not hypersurfaces.
  Immersion(std::string name, Eigen::Index chart_dim, Eigen::Index ambient_dim, AmbientKind kind, Evaluator f,
            ChartBox domain, Vec base_point, Vec orientation_seed);

  Vec operator()(const Vec& p) const;

  const std::string& name() const { return name_; }
  Eigen::Index chart_dimension() const { return chart_dim_; }
  Eigen::Index ambient_dimension() const { return ambient_dim_; }
  AmbientKind ambient_kind() const { return kind_; }
  const ChartBox& domain() const { return domain_; }
  const Vec& base_point() const { return base_point_; }
  const Vec& orientation_seed() const { return seed_; }
  bool is_hypersurface() const;
  /// +1 or -1: multiplies the cofactor normal so that it agrees with the seed
  /// at the base point. The cofactor normal is continuous on the chart, so this
  /// fixes a continuous orientation everywhere.
  int orientation_sign() const { return sign_; }

  Immersion with_seed(Vec seed) const;
  Immersion with_name(std::string name) const;

 private:
  std::string name_;
  Eigen::Index chart_dim_;
  Eigen::Index ambient_dim_;
  AmbientKind kind_;
  std::shared_ptr<const Evaluator> f_;
  ChartBox domain_;
  Vec base_point_;
  Vec seed_;
  int sign_ = 1;
};

/// f(A q + b): used for reparametrisation checks.
Immersion reparametrize(const Immersion& f, const Mat& a, const Vec& b);

}  // namespace confhyp
