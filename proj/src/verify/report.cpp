#include "confhyp/report.hpp"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace confhyp {

namespace {

nlohmann::ordered_json num(Real x) {
  if (!std::isfinite(x)) return nullptr;
  return static_cast<double>(x);
}

std::string kind_name(CheckKind k) { return k == CheckKind::audit ? "audit" : "assert"; }

std::string sci(Real x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : "inf";
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << static_cast<double>(x);
  return os.str();
}

}  // namespace

std::string fmt_real(Real x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  std::ostringstream os;
  os << std::setprecision(17) << static_cast<double>(x);
  return os.str();
}

bool VerificationReport::all_asserts_pass() const {
  for (const auto& c : checks)
    if (c.kind == CheckKind::assert_check && !c.passed) return false;
  return true;
}

void finalize(CheckRecord& rec) {
  rec.samples = static_cast<int>(rec.residuals.size());
  rec.max_residual = 0;
  for (Real r : rec.residuals) {
    if (std::isnan(r)) {
      rec.max_residual = r;
      break;
    }
    rec.max_residual = std::max(rec.max_residual, r);
  }
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["environment"] = {{"tool", "confhyp"}, {"version", kToolVersion}, {"seed", r.seed}, {"config_hash", r.config_hash}};
  int passed = 0, failed = 0, audits = 0;
  for (const auto& c : r.checks) {
    if (c.kind == CheckKind::audit)
      ++audits;
    else if (c.passed)
      ++passed;
    else
      ++failed;
  }
  j["summary"] = {{"checks", r.checks.size()},
                  {"asserts_passed", passed},
                  {"asserts_failed", failed},
                  {"audits", audits},
                  {"status", failed == 0 ? "pass" : "fail"}};
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["anchor"] = c.anchor;
    cj["kind"] = kind_name(c.kind);
    cj["samples"] = c.samples;
    cj["max_residual"] = num(c.max_residual);
    cj["tolerance"] = num(c.tolerance);
    cj["passed"] = c.passed;
    if (!c.error.empty()) cj["error"] = c.error;
    nlohmann::ordered_json res = nlohmann::ordered_json::array();
    for (Real x : c.residuals) res.push_back(num(x));
    cj["residuals"] = res;
    cj["details"] = c.details;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  nlohmann::ordered_json audit = nlohmann::ordered_json::array();
  for (const auto& row : r.convention_audit) {
    nlohmann::ordered_json rj;
    rj["identity"] = row.identity;
    rj["best_convention"] = row.best;
    nlohmann::ordered_json res = nlohmann::ordered_json::object();
    for (const auto& [conv, v] : row.residuals) res[to_string(conv)] = num(v);
    rj["residuals"] = res;
    audit.push_back(rj);
  }
  j["convention_audit"] = audit;
  j["torus_table"] = r.torus_table;
  return j;
}

std::string report_json_text(const VerificationReport& r) { return to_json(r).dump(2) + "\n"; }

std::string report_markdown(const VerificationReport& r) {
  std::ostringstream os;
  os << "# Verification report\n\n";
  os << "- tool: confhyp " << kToolVersion << "\n- seed: " << r.seed << "\n- config hash: " << r.config_hash << "\n";
  os << "- status: " << (r.all_asserts_pass() ? "pass" : "fail") << "\n\n";
  os << "## Checks\n\n| check | kind | samples | max residual | tolerance | result |\n|---|---|---|---|---|---|\n";
  for (const auto& c : r.checks) {
    os << "| " << c.name << " | " << kind_name(c.kind) << " | " << c.samples << " | " << sci(c.max_residual) << " | "
       << sci(c.tolerance) << " | " << (c.kind == CheckKind::audit ? "recorded" : (c.passed ? "pass" : "FAIL"))
       << (c.error.empty() ? "" : " (error: " + c.error + ")") << " |\n";
  }
  if (!r.convention_audit.empty()) {
    os << "\n## Convention audit\n\n| identity | half | full | normalized | best |\n|---|---|---|---|---|\n";
    for (const auto& row : r.convention_audit) {
      os << "| " << row.identity;
      for (Convention want : kAllConventions) {
        std::string cell = "-";
        for (const auto& [conv, v] : row.residuals)
          if (conv == want) cell = sci(v);
        os << " | " << cell;
      }
      os << " | " << row.best << " |\n";
    }
  }
  if (!r.torus_table.empty()) {
    os << "\n## Torus scalar curvature candidates\n\n| r | convention | candidate | computed | expected | residual | "
          "match |\n|---|---|---|---|---|---|---|\n";
    for (const auto& row : r.torus_table) {
      auto d = [&](const char* k) {
        return row[k].is_null() ? std::string("-") : sci(static_cast<Real>(row[k].get<double>()));
      };
      os << "| " << d("r") << " | " << row["convention"].get<std::string>() << " | "
         << row["candidate"].get<std::string>() << " | " << d("computed") << " | " << d("expected") << " | "
         << d("residual") << " | " << (row["match"].get<bool>() ? "yes" : "no") << " |\n";
    }
  }
  return os.str();
}

std::string residual_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "check,sample,residual\n";
  for (const auto& c : r.checks)
    for (std::size_t i = 0; i < c.residuals.size(); ++i) os << c.name << "," << i << "," << fmt_real(c.residuals[i]) << "\n";
  return os.str();
}

std::vector<std::string> validate_report(const nlohmann::ordered_json& j) {
  std::vector<std::string> errs;
  if (!j.is_object()) return {"report is not a JSON object"};
  if (!j.contains("schema") || j["schema"] != kReportSchema) errs.push_back("missing or wrong schema tag");
  if (!j.contains("environment") || !j["environment"].is_object()) {
    errs.push_back("missing environment block");
  } else {
    for (const char* k : {"tool", "version", "seed", "config_hash"})
      if (!j["environment"].contains(k)) errs.push_back(std::string("environment lacks '") + k + "'");
  }
  if (!j.contains("summary") || !j["summary"].is_object()) errs.push_back("missing summary block");
  if (!j.contains("checks") || !j["checks"].is_array()) {
    errs.push_back("missing checks array");
    return errs;
  }
  std::set<std::string> names;
  for (const auto& c : j["checks"]) {
    if (!c.is_object()) {
      errs.push_back("check entry is not an object");
      continue;
    }
    const std::string name = c.contains("name") && c["name"].is_string() ? c["name"].get<std::string>() : "";
    if (name.empty()) errs.push_back("check without a name");
    if (!names.insert(name).second) errs.push_back("check '" + name + "' appears more than once");
    if (!c.contains("anchor") || !c["anchor"].is_string() || c["anchor"].get<std::string>().empty())
      errs.push_back("check '" + name + "' has no anchor");
    if (!c.contains("kind") || (c["kind"] != "assert" && c["kind"] != "audit"))
      errs.push_back("check '" + name + "' has an invalid kind");
    if (!c.contains("samples") || !c["samples"].is_number_integer() || c["samples"].get<long long>() < 0)
      errs.push_back("check '" + name + "' has an invalid sample count");
    if (!c.contains("passed") || !c["passed"].is_boolean()) errs.push_back("check '" + name + "' lacks a pass flag");
    if (!c.contains("max_residual")) errs.push_back("check '" + name + "' lacks max_residual");
    if (!c.contains("tolerance")) {
      errs.push_back("check '" + name + "' lacks a tolerance");
    } else if (c.contains("kind") && c["kind"] == "assert" &&
               (!c["tolerance"].is_number() || !(c["tolerance"].get<double>() > 0))) {
      errs.push_back("assert '" + name + "' needs a positive tolerance");
    }
    if (!c.contains("residuals") || !c["residuals"].is_array()) errs.push_back("check '" + name + "' lacks residuals");
  }
  if (!j.contains("convention_audit") || !j["convention_audit"].is_array()) errs.push_back("missing convention_audit");
  return errs;
}

}  // namespace confhyp
