#pragma once

#include "confhyp/curvature.hpp"
#include "confhyp/spiral.hpp"
#include "confhyp/zoo.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace confhyp {

/// Bad configuration file or value (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyCase {
  Real R = 0;
  Real kappa0 = 1;
  Real kappa_s0 = 0;
  Real s_max = 4;
};

struct Tolerances {
  Real metric_match = 1e-6L;
  Real trace = 1e-8L;
  Real commutator = 1e-8L;
  Real multiplicity = 1e-8L;
  Real codazzi = 1e-6L;
  Real codazzi_control_factor = 10;
  Real two_route = 1e-5L;
  Real constancy = 1e-5L;
  Real negative_control_factor = 10;
  Real first_integral = 1e-9L;
  Real round_trip = 1e-6L;
  Real closure_open = 1e-3L;
  Real closure_closed = 1e-6L;
  Real torus_form = 1e-8L;
  Real torus_match = 1e-5L;
  Real sigma_invariance = 1e-5L;
  Real homothety_invariance = 1e-6L;
  Real divergence = 1e-6L;
};

struct RigidityConfig {
  Real R = 3;
  int grid = 5;
  Real perturbation = 0.2L;  // largest relative kappa offset
  Real slope = 0.2L;         // largest kappa_s / kappa*
  Real horizon = 200;
  Real step = 1e-3L;
  Real departure = 0.1L;
};

/// Every field can be set from the flat `key = value` config file under the
/// key named in the comment.
struct RunConfig {
  int n = 4;                                         // n
  SpiralForm spiral_form = SpiralForm::warped_scalar;  // spiral_form
  // single spiral (spiral command): epsilon, R, kappa0, kappa_s0, s_max
  int epsilon = -1;
  Real R = 3;
  Real kappa0 = 1.6L;
  Real kappa_s0 = 0.1L;
  Real s_max = 10;
  Real step = 1e-3L;            // step
  Real kappa_floor = 1e-6L;     // kappa_floor
  Real kappa_ceiling = 1e6L;    // kappa_ceiling
  int fd_order = 4;             // fd_order
  Real fd_step = 2e-3L;         // fd_step (immersion level)
  Real fd_outer_step = 3e-3L;   // fd_outer_step (fields built from the immersion)
  int samples = 20;             // samples
  int codazzi_samples = 3;      // codazzi_samples
  int sigma_samples = 5;        // sigma_samples
  int first_integral_states = 10;  // first_integral_states
  Real first_integral_s = 10;   // first_integral_s
  Real first_integral_band = 2;  // first_integral_band (kappa kept within kappa0/band .. kappa0*band)
  Real sample_margin = 0.25L;   // sample_margin (in s, away from the trajectory ends)
  Real pole_margin = kDefaultPoleMargin;  // pole_margin
  Real polar_jitter_margin = 0.5L;        // polar_jitter_margin (sampled polar angles keep this off the chart box)
  Family family = Family::rotational;     // family (build / invariants)
  Real torus_r = 0.5L;                    // torus_r
  std::vector<Real> torus_radii;          // torus_radii
  std::map<Family, FamilyCase> families;  // <family>.R, <family>.kappa0, <family>.kappa_s0, <family>.s_max
  std::vector<std::string> checks;        // checks (empty = none)
  std::vector<Convention> conventions;    // conventions
  Convention convention = Convention::full_trace;  // convention
  std::uint64_t seed = 20240611;          // seed
  std::string out = "confhyp-out";        // out
  Tolerances tol;                         // tol.<name>
  RigidityConfig rigidity;                // rigidity.<name>
  int slice_resolution = 24;              // slice_resolution

  RunConfig();
  /// Throws ConfigError.
  void validate() const;
  FDScheme inner_scheme() const { return FDScheme{fd_step, fd_order}; }
  FDScheme outer_scheme() const { return FDScheme{fd_outer_step, fd_order}; }
  SpiralParams family_params(Family f) const;
  IntegratorControls family_controls(Family f) const;
};

/// Names of all checks in report order.
const std::vector<std::string>& all_check_names();

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Sorted key = value listing of every setting; hashed into the report.
std::string canonical_config(const RunConfig& c);
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace confhyp
