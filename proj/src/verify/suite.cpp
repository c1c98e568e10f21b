#include "confhyp/suite.hpp"

#include "confhyp/checks.hpp"

#include <algorithm>
#include <functional>

namespace confhyp {

VerificationReport run_suite(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport rep;
  rep.seed = cfg.seed;
  rep.config_hash = hex64(fnv1a64(canonical_config(cfg)));
  SuiteContext ctx(cfg);
  auto& audit = rep.convention_audit;
  auto& table = rep.torus_table;

  const std::map<std::string, std::function<CheckRecord()>> run{
      {"moebius_metric_match", [&] { return check_moebius_metric_match(ctx); }},
      {"trace_identities", [&] { return check_trace_identities(ctx); }},
      {"commutator", [&] { return check_commutator(ctx); }},
      {"cartan_schouten_multiplicity", [&] { return check_cartan_schouten_multiplicity(ctx); }},
      {"schouten_codazzi", [&] { return check_schouten_codazzi(ctx); }},
      {"two_route_scalar", [&] { return check_two_route_scalar(ctx); }},
      {"lemma_warped_metric", [&] { return check_lemma_warped_metric(ctx, audit); }},
      {"constant_moebius_scalar", [&] { return check_constant_moebius_scalar(ctx); }},
      {"torus_theorem", [&] { return check_torus_theorem(ctx, audit, table); }},
      {"sigma_invariance", [&] { return check_sigma_invariance(ctx); }},
      {"homothety_invariance", [&] { return check_homothety_invariance(ctx); }},
      {"first_integral", [&] { return check_first_integral(ctx); }},
      {"curve_round_trip", [&] { return check_curve_round_trip(ctx); }},
      {"rigidity", [&] { return check_rigidity(ctx); }},
      {"moebius_form_divergence", [&] { return check_moebius_form_divergence(ctx); }},
      {"trace_A_audit", [&] { return check_trace_A_audit(ctx, audit); }},
      {"schouten_convention_audit", [&] { return check_schouten_convention_audit(ctx, audit); }},
      {"classic_form_audit", [&] { return check_classic_form_audit(ctx); }},
  };

  const Tolerances& t = cfg.tol;
  const std::map<std::string, Real> tolerance{
      {"moebius_metric_match", t.metric_match}, {"trace_identities", t.trace},
      {"commutator", t.commutator},             {"cartan_schouten_multiplicity", t.multiplicity},
      {"schouten_codazzi", t.codazzi},          {"two_route_scalar", t.two_route},
      {"lemma_warped_metric", t.constancy},     {"constant_moebius_scalar", t.constancy},
      {"torus_theorem", t.torus_form},          {"sigma_invariance", t.sigma_invariance},
      {"homothety_invariance", t.homothety_invariance}, {"first_integral", t.first_integral},
      {"curve_round_trip", t.round_trip},       {"rigidity", t.closure_closed},
      {"moebius_form_divergence", t.divergence}, {"trace_A_audit", t.two_route},
      {"schouten_convention_audit", t.codazzi}, {"classic_form_audit", t.constancy},
  };

  for (const std::string& name : all_check_names()) {
    if (std::find(cfg.checks.begin(), cfg.checks.end(), name) == cfg.checks.end()) continue;
    CheckRecord rec;
    try {
      rec = run.at(name)();
    } catch (const std::exception& e) {
      rec = CheckRecord{};
      rec.name = name;
      rec.anchor = check_anchor(name);
      rec.kind = name.ends_with("_audit") ? CheckKind::audit : CheckKind::assert_check;
      rec.tolerance = tolerance.at(name);
      rec.passed = false;
      rec.error = e.what();
    }
    rep.checks.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace confhyp
