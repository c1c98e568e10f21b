#pragma once

#include "confhyp/config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace confhyp {

inline constexpr const char* kReportSchema = "confhyp.report/1";
inline constexpr const char* kToolVersion = "1.0.0";

enum class CheckKind { assert_check, audit };

struct CheckRecord {
  std::string name;
  std::string anchor;  // the statement the check exercises
  CheckKind kind = CheckKind::assert_check;
  int samples = 0;
  Real max_residual = 0;
  Real tolerance = 0;
  bool passed = false;
  std::string error;               // non-empty if the check crashed
  std::vector<Real> residuals;     // per sample
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct ConventionAuditRow {
  std::string identity;
  std::string best;
  std::vector<std::pair<Convention, Real>> residuals;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<CheckRecord> checks;
  std::vector<ConventionAuditRow> convention_audit;
  nlohmann::ordered_json torus_table = nlohmann::ordered_json::array();

  bool all_asserts_pass() const;
};

/// Residuals of `rec` summarised: max_residual and samples from residuals.
void finalize(CheckRecord& rec);

nlohmann::ordered_json to_json(const VerificationReport& r);
std::string report_json_text(const VerificationReport& r);
std::string report_markdown(const VerificationReport& r);
/// check,sample,residual
std::string residual_csv(const VerificationReport& r);

/// Structural validation of a report document; returns the list of problems.
std::vector<std::string> validate_report(const nlohmann::ordered_json& j);

/// Deterministic number printing for CSV output.
std::string fmt_real(Real x);

}  // namespace confhyp
