#include "confhyp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace confhyp {

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names{
      "moebius_metric_match", "trace_identities",     "commutator",        "cartan_schouten_multiplicity",
      "schouten_codazzi",     "two_route_scalar",     "lemma_warped_metric", "constant_moebius_scalar",
      "torus_theorem",        "sigma_invariance",     "homothety_invariance", "first_integral",
      "curve_round_trip",     "rigidity",             "moebius_form_divergence", "trace_A_audit",
      "schouten_convention_audit", "classic_form_audit"};
  return names;
}

RunConfig::RunConfig() {
  torus_radii = {0.3L, 0.5L, 1 / std::sqrt(2.0L)};
  families[Family::cylinder] = FamilyCase{0, 1, 0.1L, 4};
  families[Family::cone] = FamilyCase{-6, 1, -0.005L, 4};
  families[Family::rotational] = FamilyCase{3, 1.6L, 0.1L, 4};
  checks = all_check_names();
  conventions = {std::begin(kAllConventions), std::end(kAllConventions)};
}

SpiralParams RunConfig::family_params(Family f) const {
  SpiralParams p;
  p.n = n;
  p.epsilon = family_epsilon(f);
  p.R = families.at(f).R;
  p.form = spiral_form;
  return p;
}

IntegratorControls RunConfig::family_controls(Family f) const {
  IntegratorControls c;
  c.s_max = families.at(f).s_max;
  c.step = step;
  c.kappa_floor = kappa_floor;
  c.kappa_ceiling = kappa_ceiling;
  return c;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Real to_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const Real x = std::stold(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::string fmt(Real x) {
  std::ostringstream os;
  os << std::setprecision(21) << x;
  return os.str();
}

struct Key {
  std::function<void(RunConfig&, const std::string& key, const std::string& value)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class M>
Key real_key(M member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) { c.*member = to_real(k, v); },
          [member](const RunConfig& c) { return fmt(c.*member); }};
}

template <class M>
Key int_key(M member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = static_cast<int>(to_int(k, v));
          },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

template <class M>
Key tol_key(M member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) { c.tol.*member = to_real(k, v); },
          [member](const RunConfig& c) { return fmt(c.tol.*member); }};
}

template <class M>
Key rig_real(M member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) { c.rigidity.*member = to_real(k, v); },
          [member](const RunConfig& c) { return fmt(c.rigidity.*member); }};
}

Key family_key(Family f, Real FamilyCase::*member) {
  return {[f, member](RunConfig& c, const std::string& k, const std::string& v) { c.families[f].*member = to_real(k, v); },
          [f, member](const RunConfig& c) { return fmt(c.families.at(f).*member); }};
}

const std::map<std::string, Key>& keys() {
  static const std::map<std::string, Key> table = [] {
    std::map<std::string, Key> t;
    t["n"] = int_key(&RunConfig::n);
    t["spiral_form"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                          try {
                            c.spiral_form = parse_spiral_form(v);
                          } catch (const std::exception& e) {
                            throw ConfigError(std::string("config key 'spiral_form': ") + e.what());
                          }
                        },
                        [](const RunConfig& c) { return to_string(c.spiral_form); }};
    t["epsilon"] = int_key(&RunConfig::epsilon);
    t["R"] = real_key(&RunConfig::R);
    t["kappa0"] = real_key(&RunConfig::kappa0);
    t["kappa_s0"] = real_key(&RunConfig::kappa_s0);
    t["s_max"] = real_key(&RunConfig::s_max);
    t["step"] = real_key(&RunConfig::step);
    t["kappa_floor"] = real_key(&RunConfig::kappa_floor);
    t["kappa_ceiling"] = real_key(&RunConfig::kappa_ceiling);
    t["fd_order"] = int_key(&RunConfig::fd_order);
    t["fd_step"] = real_key(&RunConfig::fd_step);
    t["fd_outer_step"] = real_key(&RunConfig::fd_outer_step);
    t["samples"] = int_key(&RunConfig::samples);
    t["codazzi_samples"] = int_key(&RunConfig::codazzi_samples);
    t["sigma_samples"] = int_key(&RunConfig::sigma_samples);
    t["first_integral_states"] = int_key(&RunConfig::first_integral_states);
    t["first_integral_s"] = real_key(&RunConfig::first_integral_s);
    t["first_integral_band"] = real_key(&RunConfig::first_integral_band);
    t["polar_jitter_margin"] = real_key(&RunConfig::polar_jitter_margin);
    t["sample_margin"] = real_key(&RunConfig::sample_margin);
    t["pole_margin"] = real_key(&RunConfig::pole_margin);
    t["slice_resolution"] = int_key(&RunConfig::slice_resolution);
    t["family"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                     try {
                       c.family = parse_family(v);
                     } catch (const std::exception& e) {
                       throw ConfigError(std::string("config key 'family': ") + e.what());
                     }
                   },
                   [](const RunConfig& c) { return to_string(c.family); }};
    t["torus_r"] = real_key(&RunConfig::torus_r);
    t["torus_radii"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                          c.torus_radii.clear();
                          for (const auto& item : split_list(v)) c.torus_radii.push_back(to_real(k, item));
                        },
                        [](const RunConfig& c) {
                          std::string s;
                          for (Real r : c.torus_radii) s += (s.empty() ? "" : ",") + fmt(r);
                          return s;
                        }};
    t["checks"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                     c.checks.clear();
                     const auto items = split_list(v);
                     if (items.size() == 1 && items[0] == "all") {
                       c.checks = all_check_names();
                       return;
                     }
                     if (items.size() == 1 && items[0] == "none") return;
                     for (const auto& item : items) {
                       const auto& names = all_check_names();
                       if (std::find(names.begin(), names.end(), item) == names.end())
                         throw ConfigError("config key 'checks': unknown check '" + item + "'");
                       if (std::find(c.checks.begin(), c.checks.end(), item) != c.checks.end())
                         throw ConfigError("config key 'checks': '" + item + "' listed twice");
                       c.checks.push_back(item);
                     }
                   },
                   [](const RunConfig& c) {
                     std::string s;
                     for (const auto& x : c.checks) s += (s.empty() ? "" : ",") + x;
                     return s;
                   }};
    t["conventions"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                          c.conventions.clear();
                          for (const auto& item : split_list(v)) {
                            try {
                              c.conventions.push_back(parse_convention(item));
                            } catch (const std::exception& e) {
                              throw ConfigError(std::string("config key 'conventions': ") + e.what());
                            }
                          }
                        },
                        [](const RunConfig& c) {
                          std::string s;
                          for (auto x : c.conventions) s += (s.empty() ? "" : ",") + to_string(x);
                          return s;
                        }};
    t["convention"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                         try {
                           c.convention = parse_convention(v);
                         } catch (const std::exception& e) {
                           throw ConfigError(std::string("config key 'convention': ") + e.what());
                         }
                       },
                       [](const RunConfig& c) { return to_string(c.convention); }};
    t["seed"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                   try {
                     std::size_t used = 0;
                     if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
                     c.seed = std::stoull(v, &used);
                     if (used != v.size()) throw std::invalid_argument(v);
                   } catch (const std::exception&) {
                     throw ConfigError("config key '" + k + "': expected an unsigned 64-bit integer, got '" + v + "'");
                   }
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }};
    t["out"] = {[](RunConfig& c, const std::string&, const std::string& v) { c.out = v; },
                [](const RunConfig& c) { return c.out; }};

    t["tol.metric_match"] = tol_key(&Tolerances::metric_match);
    t["tol.trace"] = tol_key(&Tolerances::trace);
    t["tol.commutator"] = tol_key(&Tolerances::commutator);
    t["tol.multiplicity"] = tol_key(&Tolerances::multiplicity);
    t["tol.codazzi"] = tol_key(&Tolerances::codazzi);
    t["tol.codazzi_control_factor"] = tol_key(&Tolerances::codazzi_control_factor);
    t["tol.two_route"] = tol_key(&Tolerances::two_route);
    t["tol.constancy"] = tol_key(&Tolerances::constancy);
    t["tol.negative_control_factor"] = tol_key(&Tolerances::negative_control_factor);
    t["tol.first_integral"] = tol_key(&Tolerances::first_integral);
    t["tol.round_trip"] = tol_key(&Tolerances::round_trip);
    t["tol.closure_open"] = tol_key(&Tolerances::closure_open);
    t["tol.closure_closed"] = tol_key(&Tolerances::closure_closed);
    t["tol.torus_form"] = tol_key(&Tolerances::torus_form);
    t["tol.torus_match"] = tol_key(&Tolerances::torus_match);
    t["tol.sigma_invariance"] = tol_key(&Tolerances::sigma_invariance);
    t["tol.homothety_invariance"] = tol_key(&Tolerances::homothety_invariance);
    t["tol.divergence"] = tol_key(&Tolerances::divergence);

    t["rigidity.R"] = rig_real(&RigidityConfig::R);
    t["rigidity.grid"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                            c.rigidity.grid = static_cast<int>(to_int(k, v));
                          },
                          [](const RunConfig& c) { return std::to_string(c.rigidity.grid); }};
    t["rigidity.perturbation"] = rig_real(&RigidityConfig::perturbation);
    t["rigidity.slope"] = rig_real(&RigidityConfig::slope);
    t["rigidity.horizon"] = rig_real(&RigidityConfig::horizon);
    t["rigidity.step"] = rig_real(&RigidityConfig::step);
    t["rigidity.departure"] = rig_real(&RigidityConfig::departure);

    for (Family f : {Family::cylinder, Family::cone, Family::rotational}) {
      const std::string p = to_string(f) + ".";
      t[p + "R"] = family_key(f, &FamilyCase::R);
      t[p + "kappa0"] = family_key(f, &FamilyCase::kappa0);
      t[p + "kappa_s0"] = family_key(f, &FamilyCase::kappa_s0);
      t[p + "s_max"] = family_key(f, &FamilyCase::s_max);
    }
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError("schema error: " + m); };
  if (n < 3 || n > 8) fail("n must lie in [3, 8]");
  if (epsilon < -1 || epsilon > 1) fail("epsilon must be -1, 0 or 1");
  if (!(kappa0 > 0)) fail("kappa0 must be positive");
  if (!(s_max > 0) || !(step > 0) || step > s_max) fail("need 0 < step <= s_max");
  if (!(kappa_floor > 0) || !(kappa_ceiling > kappa_floor)) fail("need 0 < kappa_floor < kappa_ceiling");
  if (fd_order != 2 && fd_order != 4) fail("fd_order must be 2 or 4");
  if (!(fd_step > 0) || !(fd_outer_step > 0)) fail("fd steps must be positive");
  if (samples < 1 || codazzi_samples < 1 || sigma_samples < 1 || first_integral_states < 1)
    fail("sample counts must be positive");
  if (!(first_integral_s > 0)) fail("first_integral_s must be positive");
  if (!(sample_margin > 0)) fail("sample_margin must be positive");
  if (!(first_integral_band > 1)) fail("first_integral_band must exceed 1");
  if (!(polar_jitter_margin >= 0) || !(pole_margin + polar_jitter_margin < kPi / 2))
    fail("polar_jitter_margin must be non-negative and leave a non-empty polar band");
  if (!(pole_margin > 0) || pole_margin >= kPi / 4) fail("pole_margin must lie in (0, pi/4)");
  if (slice_resolution < 2) fail("slice_resolution must be at least 2");
  if (!(torus_r > 0 && torus_r < 1)) fail("torus_r must lie in (0, 1)");
  for (Real r : torus_radii)
    if (!(r > 0 && r < 1)) fail("torus_radii entries must lie in (0, 1)");
  for (const auto& [f, c] : families) {
    if (!(c.kappa0 > 0)) fail(to_string(f) + ".kappa0 must be positive");
    if (!(c.s_max > 2 * sample_margin)) fail(to_string(f) + ".s_max must exceed twice sample_margin");
  }
  const Real tols[] = {tol.metric_match, tol.trace, tol.commutator, tol.multiplicity, tol.codazzi,
                       tol.codazzi_control_factor, tol.two_route, tol.constancy, tol.negative_control_factor,
                       tol.first_integral, tol.round_trip, tol.closure_open, tol.closure_closed, tol.torus_form,
                       tol.torus_match, tol.sigma_invariance, tol.homothety_invariance, tol.divergence};
  for (Real t : tols)
    if (!(t > 0)) fail("all tolerances must be > 0");
  if (tol.closure_closed > tol.closure_open) fail("tol.closure_closed must not exceed tol.closure_open");
  if (rigidity.grid < 1) fail("rigidity.grid must be positive");
  if (!(rigidity.horizon > 0) || !(rigidity.step > 0) || !(rigidity.departure > 0))
    fail("rigidity horizon, step and departure must be positive");
  if (!(rigidity.perturbation >= 0) || !(rigidity.slope > 0)) fail("rigidity perturbation/slope out of range");
  if (conventions.empty()) fail("conventions must not be empty");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = keys().find(key);
    if (it == keys().end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    seen.push_back(key);
    it->second.set(c, key, value);
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const RunConfig& c) {
  std::string out;
  for (const auto& [key, k] : keys())
    if (key != "out") out += key + " = " + k.get(c) + "\n";
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

}  // namespace confhyp
