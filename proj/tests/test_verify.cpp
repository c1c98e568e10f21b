#include "confhyp/checks.hpp"
#include "confhyp/commands.hpp"
#include "confhyp/config.hpp"
#include "confhyp/rigidity.hpp"
#include "confhyp/suite.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

using namespace confhyp;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const CheckRecord& find(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Config, DefaultsAreValid) {
  const RunConfig c = parse_config("");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.n, 4);
  EXPECT_EQ(c.checks, all_check_names());
  EXPECT_EQ(c.torus_radii.size(), 3u);
}

TEST(Config, ParsesValuesAndComments) {
  const RunConfig c = parse_config("# comment\nn = 5\nseed = 17\ncone.R = -4\ntorus_radii = 0.2, 0.4\nchecks = rigidity\n");
  EXPECT_EQ(c.n, 5);
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.families.at(Family::cone).R, -4);
  EXPECT_EQ(c.torus_radii, (std::vector<Real>{0.2L, 0.4L}));
  EXPECT_EQ(c.checks, std::vector<std::string>{"rigidity"});
}

TEST(Config, RejectsUnknownAndDuplicateKeys) {
  EXPECT_NE(error_of("colour = red\n").find("unknown key"), std::string::npos);
  EXPECT_NE(error_of("n = 4\nn = 5\n").find("duplicate key"), std::string::npos);
  EXPECT_NE(error_of("n = four\n"), "");
  EXPECT_NE(error_of("checks = nonsense\n").find("unknown check"), std::string::npos);
}

TEST(Config, ZeroToleranceIsSchemaError) {
  EXPECT_NE(error_of("tol.trace = 0\n").find("schema error"), std::string::npos);
  EXPECT_NE(error_of("tol.first_integral = -1\n").find("schema error"), std::string::npos);
  EXPECT_NE(error_of("first_integral_band = 1\n").find("schema error"), std::string::npos);
  EXPECT_NE(error_of("pole_margin = 0.8\npolar_jitter_margin = 0.8\n").find("schema error"), std::string::npos);
}

TEST(Config, CanonicalFormIsStable) {
  const RunConfig a = parse_config("seed = 3\nn = 4\n"), b = parse_config("n = 4\nseed = 3\n");
  EXPECT_EQ(canonical_config(a), canonical_config(b));
  EXPECT_NE(canonical_config(a), canonical_config(parse_config("seed = 4\n")));
  EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
}

TEST(Suite, EmptyCheckSetGivesValidEmptyReport) {
  const VerificationReport r = run_suite(parse_config("checks = none\n"));
  EXPECT_TRUE(r.checks.empty());
  EXPECT_TRUE(r.all_asserts_pass());
  const auto j = to_json(r);
  EXPECT_TRUE(validate_report(j).empty());
  EXPECT_EQ(j["summary"]["status"], "pass");
}

TEST(Suite, CrashIsRecordedAsFailure) {
  const VerificationReport r = run_suite(parse_config("checks = moebius_metric_match\nkappa_ceiling = 1.5\ncylinder.kappa_s0 = 3\n"));
  ASSERT_EQ(r.checks.size(), 1u);
  const CheckRecord& c = r.checks[0];
  EXPECT_FALSE(c.passed);
  EXPECT_FALSE(c.error.empty());
  EXPECT_FALSE(r.all_asserts_pass());
  EXPECT_TRUE(validate_report(to_json(r)).empty());
}

TEST(Suite, SmallRunIsDeterministicAndAnchored) {
  const char* text = "samples = 4\ncodazzi_samples = 1\nsigma_samples = 2\nfirst_integral_states = 2\n"
                     "checks = trace_identities, commutator, first_integral, curve_round_trip, trace_A_audit\n";
  const RunConfig cfg = parse_config(text);
  const VerificationReport a = run_suite(cfg), b = run_suite(cfg);
  EXPECT_EQ(report_json_text(a), report_json_text(b));
  EXPECT_EQ(a.checks.size(), 5u);
  for (const auto& c : a.checks) {
    EXPECT_FALSE(c.anchor.empty()) << c.name;
    EXPECT_TRUE(c.error.empty()) << c.name << ": " << c.error;
  }
  EXPECT_TRUE(validate_report(to_json(a)).empty());
  const RunConfig other = parse_config(std::string(text) + "seed = 99\n");
  EXPECT_NE(report_json_text(run_suite(other)), report_json_text(a));
}

TEST(Suite, EveryCheckHasAnAnchor) {
  for (const auto& name : all_check_names()) EXPECT_FALSE(check_anchor(name).empty()) << name;
  EXPECT_TRUE(check_anchor("no_such_check").empty());
}

TEST(Report, ValidatorRejectsAnchorlessAndMalformed) {
  VerificationReport r;
  CheckRecord c;
  c.name = "x";
  c.tolerance = 1;
  c.passed = true;
  r.checks.push_back(c);
  auto j = to_json(r);
  auto errs = validate_report(j);
  ASSERT_FALSE(errs.empty());
  EXPECT_NE(errs[0].find("anchor"), std::string::npos);
  r.checks[0].anchor = "statement";
  r.checks[0].tolerance = 0;
  EXPECT_FALSE(validate_report(to_json(r)).empty());
  r.checks[0].tolerance = 1;
  EXPECT_TRUE(validate_report(to_json(r)).empty());
  EXPECT_FALSE(validate_report(nlohmann::ordered_json::array()).empty());
  r.checks.push_back(r.checks[0]);
  EXPECT_FALSE(validate_report(to_json(r)).empty());
}

TEST(Report, ResidualCsvAndMarkdown) {
  VerificationReport r;
  CheckRecord c;
  c.name = "trace_identities";
  c.anchor = "a";
  c.tolerance = 1e-8L;
  c.residuals = {1e-12L, 2e-12L};
  finalize(c);
  c.passed = true;
  r.checks.push_back(c);
  EXPECT_EQ(r.checks[0].samples, 2);
  EXPECT_EQ(r.checks[0].max_residual, 2e-12L);
  const std::string csv = residual_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "check,sample,residual");
  EXPECT_NE(csv.find("trace_identities,1,"), std::string::npos);
  EXPECT_NE(report_markdown(r).find("| trace_identities | assert | 2 |"), std::string::npos);
}

TEST(Commands, TrajectoryCsvLayout) {
  RunConfig cfg = parse_config("");
  const SpiralTrajectory t = family_trajectory(cfg, Family::rotational);
  const std::string csv = trajectory_csv(t);
  std::istringstream in(csv);
  std::string params, header, row;
  std::getline(in, params);
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(params.rfind("# params n=4 epsilon=-1 R=3", 0), 0u) << params;
  EXPECT_EQ(header, "s,kappa,kappa_s,x,y,z,E");
  EXPECT_EQ(row.rfind("0,1.6", 0), 0u) << row;
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  EXPECT_EQ(lines, t.samples.size() + 2);
}

TEST(Rigidity, CsvRowsMatchScan) {
  RunConfig cfg = parse_config("rigidity.grid = 2\nrigidity.horizon = 20\n");
  RigidityScan scan = rigidity_scan(cfg);
  const std::string csv = rigidity_csv(scan);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "kind,kappa0,kappa_s0,status,defect,period,termination");
  ASSERT_TRUE(scan.equilibrium.has_value());
  EXPECT_TRUE(scan.equilibrium_closed);
  EXPECT_LT(scan.equilibrium->closure.defect, 1e-6);
  EXPECT_EQ(scan.grid.size(), 4u);
  const auto j = to_json(scan);
  EXPECT_EQ(j["grid"].size(), 4u);
}

// Asserted residuals limited by finite-difference truncation, on a coarse
// baseline and at half the steps.
TEST(Convergence, HalvingTheStepsReducesResiduals) {
  const std::string base =
      "samples = 6\ncodazzi_samples = 2\nsigma_samples = 3\n"
      "checks = moebius_metric_match, commutator, cartan_schouten_multiplicity, schouten_codazzi, "
      "two_route_scalar, constant_moebius_scalar, torus_theorem, sigma_invariance, moebius_form_divergence\n";
  const VerificationReport coarse = run_suite(parse_config(base + "fd_step = 8e-3\nfd_outer_step = 1.2e-2\n"));
  const VerificationReport fine = run_suite(parse_config(base + "fd_step = 4e-3\nfd_outer_step = 6e-3\n"));
  ASSERT_EQ(coarse.checks.size(), 9u);
  for (const auto& c : coarse.checks) {
    const CheckRecord& f = find(fine, c.name);
    ASSERT_TRUE(c.error.empty() && f.error.empty()) << c.name;
    ASSERT_GT(f.max_residual, 0) << c.name;
    const Real ratio = c.max_residual / f.max_residual;
    RecordProperty(c.name, std::to_string(static_cast<double>(ratio)));
    EXPECT_GE(ratio, 2) << c.name << ": " << static_cast<double>(c.max_residual) << " -> "
                        << static_cast<double>(f.max_residual);
  }
}
