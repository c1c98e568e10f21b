#pragma once

#include "confhyp/config.hpp"
#include "confhyp/moebius.hpp"
#include "confhyp/report.hpp"
#include "confhyp/zoo.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>

namespace confhyp {

/// Seeded uniform numbers with a fixed mapping (identical on every platform).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
  Real uniform(Real a, Real b) { return a + (b - a) * static_cast<Real>(engine_() >> 11) * 0x1.0p-53L; }

 private:
  std::mt19937_64 engine_;
};

struct SampleSet {
  Immersion immersion;
  std::vector<Vec> points;
  std::vector<std::optional<MoebiusData>> data;  // empty entry: umbilic sample
  std::vector<std::optional<ScalarRoutes>> scalars;
  int umbilic = 0;
};

struct FamilyRun {
  Family family;
  SpiralParams params;
  SpiralTrajectory trajectory;
  SampleSet set;
};

struct TorusRun {
  Real r;
  SampleSet set;
};

/// Shared state for one suite run. Families and tori are built on first use
/// and cached; building failures surface in whichever check asks first.
class SuiteContext {
 public:
  explicit SuiteContext(RunConfig cfg);

  const RunConfig& config() const { return cfg_; }
  const MoebiusSchemes& schemes() const { return schemes_; }
  FamilyRun& family(Family f);
  TorusRun& torus(Real r);
  static const std::vector<Family>& curve_families();

  /// Chart points for an immersion of the given family (s evenly spaced,
  /// other coordinates jittered by the seed).
  std::vector<Vec> sample_points(Family f, const Immersion& imm, Real s_begin, Real s_end, int count,
                                 std::uint64_t salt) const;
  std::vector<Vec> torus_points(int count, std::uint64_t salt) const;
  void evaluate(SampleSet& set) const;

 private:
  RunConfig cfg_;
  MoebiusSchemes schemes_;
  std::map<Family, std::unique_ptr<FamilyRun>> families_;
  std::map<long double, std::unique_ptr<TorusRun>> tori_;
};

CheckRecord check_moebius_metric_match(SuiteContext& ctx);
CheckRecord check_trace_identities(SuiteContext& ctx);
CheckRecord check_commutator(SuiteContext& ctx);
CheckRecord check_cartan_schouten_multiplicity(SuiteContext& ctx);
CheckRecord check_schouten_codazzi(SuiteContext& ctx);
CheckRecord check_two_route_scalar(SuiteContext& ctx);
CheckRecord check_lemma_warped_metric(SuiteContext& ctx, std::vector<ConventionAuditRow>& audit);
CheckRecord check_constant_moebius_scalar(SuiteContext& ctx);
CheckRecord check_torus_theorem(SuiteContext& ctx, std::vector<ConventionAuditRow>& audit,
                                nlohmann::ordered_json& table);
CheckRecord check_sigma_invariance(SuiteContext& ctx);
CheckRecord check_homothety_invariance(SuiteContext& ctx);
CheckRecord check_first_integral(SuiteContext& ctx);
CheckRecord check_curve_round_trip(SuiteContext& ctx);
CheckRecord check_rigidity(SuiteContext& ctx);
CheckRecord check_moebius_form_divergence(SuiteContext& ctx);
CheckRecord check_trace_A_audit(SuiteContext& ctx, std::vector<ConventionAuditRow>& audit);
CheckRecord check_schouten_convention_audit(SuiteContext& ctx, std::vector<ConventionAuditRow>& audit);
CheckRecord check_classic_form_audit(SuiteContext& ctx);

/// Metric with non-vanishing Cotton tensor, used as the Codazzi negative control.
MetricField perturbed_product_metric(int n);

/// Rotational hypersurface over kappa(s) = 1 + 0.3 sin s, which is not a
/// curvature-spiral.
SpiralTrajectory non_spiral_profile(int n, Real s_max, Real step);

/// Statement exercised by the named check; empty for unknown names.
const std::string& check_anchor(const std::string& name);

/// Spread (max - min) of the finite entries.
Real spread(const std::vector<Real>& v);

}  // namespace confhyp
