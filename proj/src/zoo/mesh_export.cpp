#include "confhyp/zoo.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace confhyp {

Mesh slice_mesh(const Immersion& f, const SliceSpec& slice) {
  const Eigen::Index m = f.chart_dimension();
  if (slice.base.size() != m) throw InputError("slice base has wrong dimension");
  if (slice.axis_u == slice.axis_v || slice.axis_u < 0 || slice.axis_v < 0 || slice.axis_u >= m || slice.axis_v >= m)
    throw InputError("slice axes must be two distinct chart coordinates");
  if (slice.nu < 2 || slice.nv < 2) throw InputError("slice needs at least 2 x 2 vertices");
  for (int a : slice.projection)
    if (a < 0 || a >= f.ambient_dimension()) throw InputError("projection axis outside the ambient space");
  Mesh mesh;
  for (int i = 0; i < slice.nu; ++i) {
    for (int j = 0; j < slice.nv; ++j) {
      Vec q = slice.base;
      q(slice.axis_u) = slice.u0 + (slice.u1 - slice.u0) * i / (slice.nu - 1);
      q(slice.axis_v) = slice.v0 + (slice.v1 - slice.v0) * j / (slice.nv - 1);
      const Vec x = f(q);
      mesh.vertices.push_back({x(slice.projection[0]), x(slice.projection[1]), x(slice.projection[2])});
    }
  }
  auto idx = [&](int i, int j) { return i * slice.nv + j + 1; };
  for (int i = 0; i + 1 < slice.nu; ++i)
    for (int j = 0; j + 1 < slice.nv; ++j) {
      mesh.faces.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
      mesh.faces.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
    }
  return mesh;
}

std::string to_obj(const Mesh& mesh, const std::string& comment) {
  std::ostringstream os;
  os << std::setprecision(17);
  if (!comment.empty()) os << "# " << comment << "\n";
  for (const auto& v : mesh.vertices)
    os << "v " << static_cast<double>(v[0]) << " " << static_cast<double>(v[1]) << " " << static_cast<double>(v[2]) << "\n";
  for (const auto& fc : mesh.faces) os << "f " << fc[0] << " " << fc[1] << " " << fc[2] << "\n";
  return os.str();
}

std::string slice_descriptor(const Immersion& f, const SliceSpec& slice, const std::string& obj_file) {
  nlohmann::ordered_json j;
  j["immersion"] = f.name();
  j["chart_dimension"] = f.chart_dimension();
  j["ambient_dimension"] = f.ambient_dimension();
  j["ambient_kind"] = f.ambient_kind() == AmbientKind::unit_sphere ? "unit_sphere" : "euclidean";
  std::vector<double> base;
  for (Eigen::Index k = 0; k < slice.base.size(); ++k) base.push_back(static_cast<double>(slice.base(k)));
  j["fixed_coordinates"] = base;
  j["axes"] = {slice.axis_u, slice.axis_v};
  j["ranges"] = {{static_cast<double>(slice.u0), static_cast<double>(slice.u1)},
                 {static_cast<double>(slice.v0), static_cast<double>(slice.v1)}};
  j["resolution"] = {slice.nu, slice.nv};
  j["projection"] = slice.projection;
  j["obj"] = obj_file;
  j["vertices"] = slice.nu * slice.nv;
  j["faces"] = 2 * (slice.nu - 1) * (slice.nv - 1);
  return j.dump(2) + "\n";
}

}  // namespace confhyp
