#pragma once

// Command layer behind the `ncdirac` tool. Every command returns an ordered
// JSON document with a flat "rows" array; render() turns that into JSON,
// CSV or an aligned text table.

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "ncdirac/dirac_hydrogen.hpp"
#include "ncdirac/errors.hpp"
#include "ncdirac/nc_shift.hpp"
#include "ncdirac/nonrel.hpp"
#include "ncdirac/oracle.hpp"

namespace ncdirac::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMismatch = 2;

enum class Format { json, csv, table };

struct RunConfig {
  PhysicalConstants constants;
  double lambda_qcd = kDefaultLambdaQcd_eV;
  HzConvention hz_convention = HzConvention::two_pi_hbar;
  Format format = Format::json;
  std::string out;  ///< empty: stdout
  int quad_order = specfun::kDefaultLaguerreOrder;
};

struct CommandOutput {
  json doc;
  int exit_code = kExitOk;
};

// ---------------------------------------------------------------------------
// Parsing helpers

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  throw ParseError("unknown format '" + s + "' (json, csv, table)");
}

inline HzConvention parse_hz_convention(const std::string& s) {
  if (s == "two_pi_hbar") return HzConvention::two_pi_hbar;
  if (s == "planck_h") return HzConvention::planck_h;
  throw ParseError("unknown hz convention '" + s + "' (two_pi_hbar, planck_h)");
}

inline const char* to_string(HzConvention c) {
  return c == HzConvention::two_pi_hbar ? "two_pi_hbar" : "planck_h";
}

inline double parse_real(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) throw ParseError("not a number: '" + s + "'");
  return v;
}

/// theta in eV^-2, either as a plain number or as "(X GeV)^-2".
inline double parse_theta(const std::string& text) {
  static const std::regex kScale(R"(^\s*\(\s*([0-9.eE+\-]+)\s*GeV\s*\)\s*\^\s*-\s*2\s*$)");
  std::smatch m;
  double theta = 0.0;
  if (std::regex_match(text, m, kScale)) {
    theta = theta_from_scale_GeV(parse_real(m[1].str()));
  } else {
    theta = parse_real(text);
  }
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw ParseError("theta must be a finite value >= 0");
  return theta;
}

/// Applies a JSON constants file: keys m_e, alpha, hbar_eV_s, planck_eV_s,
/// lambda_qcd, hz_convention. Any other key is rejected.
inline void apply_constants_json(const json& j, RunConfig& cfg) {
  if (!j.is_object()) throw ValidationError("constants file must hold a JSON object");
  static const std::set<std::string> kKeys = {"m_e", "alpha", "hbar_eV_s", "planck_eV_s", "lambda_qcd", "hz_convention"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ValidationError("unknown key in constants file: '" + key + "'");
    if (key == "hz_convention") {
      if (!value.is_string()) throw ValidationError("hz_convention must be a string");
      cfg.hz_convention = parse_hz_convention(value.get<std::string>());
      continue;
    }
    if (!value.is_number()) throw ValidationError("constants file key '" + key + "' must be numeric");
    const double v = value.get<double>();
    if (key == "m_e") cfg.constants.m_e = v;
    if (key == "alpha") cfg.constants.alpha = v;
    if (key == "hbar_eV_s") cfg.constants.hbar_eV_s = v;
    if (key == "planck_eV_s") cfg.constants.planck_eV_s = v;
    if (key == "lambda_qcd") cfg.lambda_qcd = v;
  }
  cfg.constants.validate();
  if (!(cfg.lambda_qcd > 0.0)) throw ValidationError("lambda_qcd must be positive");
}

inline void load_constants_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("constants file '" + path + "': " + e.what());
  }
  apply_constants_json(j, cfg);
}

// ---------------------------------------------------------------------------
// Rendering

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

namespace detail {
inline std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::vector<std::string> columns(const json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows) {
    for (const auto& [key, _] : row.items()) {
      if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    }
  }
  return cols;
}
}  // namespace detail

inline std::string render_csv(const json& doc) {
  const json rows = doc.contains("rows") ? doc.at("rows") : json::array();
  const auto cols = detail::columns(rows);
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << (i ? "," : "") << (row.contains(cols[i]) ? detail::csv_escape(detail::cell(row.at(cols[i]))) : "");
    }
    os << '\n';
  }
  return os.str();
}

inline std::string render_table(const json& doc) {
  const json rows = doc.contains("rows") ? doc.at("rows") : json::array();
  const auto cols = detail::columns(rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      line.push_back(row.contains(cols[i]) ? detail::cell(row.at(cols[i])) : "");
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream os;
  if (doc.contains("command")) os << "# " << doc.at("command").get<std::string>() << '\n';
  const auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << (i ? "  " : "") << line[i] << std::string(width[i] - line[i].size(), ' ');
    }
    os << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  return os.str();
}

inline std::string render(const json& doc, Format f) {
  switch (f) {
    case Format::json: return doc.dump(2) + "\n";
    case Format::csv: return render_csv(doc);
    case Format::table: return render_table(doc);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Record builders

namespace detail {
inline json header(const std::string& command, const RunConfig& cfg) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = command;
  doc["constants"] = {{"m_e", cfg.constants.m_e},
                      {"alpha", cfg.constants.alpha},
                      {"hbar_eV_s", cfg.constants.hbar_eV_s},
                      {"planck_eV_s", cfg.constants.planck_eV_s},
                      {"lambda_qcd", cfg.lambda_qcd},
                      {"hz_convention", to_string(cfg.hz_convention)}};
  return doc;
}

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json bound_json(const std::optional<ThetaBound>& b) {
  if (!b) return nullptr;
  return {{"theta_eV2", b->theta_eV2}, {"scale_GeV", b->scale_GeV()}};
}
}  // namespace detail

inline json to_json(const ShiftReport& r) {
  json j;
  j["level"] = r.level;
  j["theta_eV2"] = r.theta;
  j["accuracy_hz"] = r.accuracy_hz;
  j["rho1"] = {{"closed_form", {{"value", r.rho1_closed_form}, {"kappa", r.closed_form_kappa}, {"provenance", "closed form at reference kappa"}}},
               {"quadrature", {{"value", r.rho1_quadrature}, {"provenance", "finite-part Gauss-Laguerre quadrature"}}},
               {"rel_discrepancy", r.rho1_rel_discrepancy}};
  j["rho2"] = {{"closed_form", {{"value", r.rho2_closed_form}, {"kappa", r.closed_form_kappa}, {"provenance", "closed form at reference kappa"}}},
               {"quadrature", {{"value", r.rho2_quadrature}, {"provenance", "finite-part Gauss-Laguerre quadrature"}}}};
  return j;
}

inline json shift_rows(const ShiftReport& r) {
  json rows = json::array();
  for (const auto& e : r.entries) {
    rows.push_back({{"level", r.level},
                    {"M", e.m.str()},
                    {"eigenvalue", e.eigenvalue},
                    {"sigma_diagonal", e.sigma_diagonal},
                    {"coefficient_closed_form_eV3", e.coefficient_closed_form},
                    {"coefficient_quadrature_eV3", e.coefficient_quadrature},
                    {"shift_closed_form_eV", e.shift_closed_form},
                    {"shift_quadrature_eV", e.shift_quadrature}});
  }
  return rows;
}

inline json to_json(const ValidationReport& r) {
  const auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"quantity", r.quantity},
          {"closed_form", num(r.closed_form)},
          {"quadrature", num(r.quadrature)},
          {"rel_error", num(r.rel_error)},
          {"tolerance", r.tolerance},
          {"verdict", to_string(r.verdict)},
          {"divergent", r.divergent},
          {"refinement_monotone", r.refinement_monotone},
          {"self_error", r.self_error},
          {"note", r.note}};
}

inline json to_json(const HyperfineTerms& t) {
  return {{"r3_term_eV", t.r3_term},
          {"r4_term_eV", t.r4_term},
          {"r5_term_eV", detail::optional_number(t.r5_term)},
          {"finite_sum_eV", t.finite_sum},
          {"total_eV", detail::optional_number(t.total)}};
}

inline json to_json(const ExpectationTable& t) {
  return {{"r_inv3", t.r3},
          {"r_inv4", t.r4},
          {"r_inv5", detail::optional_number(t.r5)},
          {"p4_as_printed", t.p4_as_printed},
          {"p4_physical", t.p4_physical},
          {"theta_L_over_r4", t.theta_L_r4},
          {"theta_L_over_r3", t.theta_L_r3},
          {"sigma_theta_over_r4", t.sigma_theta_r4},
          {"sigma_r_theta_r_over_r6", t.sigma_r_theta_r_r6},
          {"sigma_L_over_r3", t.sigma_L_r3},
          {"theta_L_sigma_L_over_r5", detail::optional_number(t.theta_L_sigma_L_r5)},
          {"pi_delta", t.pi_delta},
          {"theta_L_p2_over_r3", t.theta_L_p2_r3},
          {"theta_L_over_r5", detail::optional_number(t.theta_L_r5)}};
}

// ---------------------------------------------------------------------------
// Commands

inline json level_record(const RelativisticState& s) {
  const Level lv = level_of_state(s);
  const double m = s.constants.m_e;
  return {{"label", lv.label()},
          {"n_r", s.n_r},
          {"kappa", s.kappa},
          {"reference_kappa", lv.reference_kappa()},
          {"l", s.l},
          {"j", s.j.str()},
          {"principal", s.principal()},
          {"energy_eV", s.energy},
          {"binding_eV", m - s.energy},
          {"nu", s.nu},
          {"a", s.a}};
}

inline CommandOutput cmd_levels(const std::vector<std::string>& labels, const RunConfig& cfg) {
  json doc = detail::header("levels", cfg);
  json rows = json::array();
  for (const auto& label : labels) rows.push_back(level_record(parse_level(label).state(kHalf, cfg.constants)));
  doc["rows"] = rows;
  return {doc};
}

inline CommandOutput cmd_levels(int n_r, int kappa, const RunConfig& cfg) {
  json doc = detail::header("levels", cfg);
  doc["rows"] = json::array({level_record(make_state(n_r, kappa, kHalf, cfg.constants))});
  return {doc};
}

inline ShiftOptions shift_options(const RunConfig& cfg, double accuracy_hz = 80.0) {
  ShiftOptions opt;
  opt.accuracy_hz = accuracy_hz;
  opt.hz_convention = cfg.hz_convention;
  opt.quad_order = cfg.quad_order;
  return opt;
}

inline CommandOutput cmd_shift(const std::string& label, double theta, const RunConfig& cfg) {
  const auto report = level_shift(parse_level(label), theta, cfg.constants, shift_options(cfg));
  json doc = detail::header("shift", cfg);
  doc["report"] = to_json(report);
  doc["rows"] = shift_rows(report);
  return {doc};
}

/// Bounds from every distinct nonzero |coefficient| of a level (both
/// provenances). S levels use the cutoff shift.
inline CommandOutput cmd_bound(const std::string& label, double accuracy_khz, const RunConfig& cfg) {
  if (!(accuracy_khz > 0.0)) throw DomainError("accuracy must be positive");
  const double hz = accuracy_khz * 1e3;
  const Level lv = parse_level(label);
  json doc = detail::header("bound", cfg);
  doc["level"] = lv.label();
  doc["accuracy_khz"] = accuracy_khz;
  json rows = json::array();
  if (lv.l == 0) {
    const auto b = s_state_bound(hz, cfg.lambda_qcd, cfg.constants, cfg.hz_convention);
    json row = {{"level", lv.label()},
                {"source", "cutoff"},
                {"coefficient_eV3", s_state_shift(1.0, cfg.lambda_qcd, cfg.constants)},
                {"theta_eV2", b.theta_eV2},
                {"scale_GeV", b.scale_GeV()}};
    if (lv.principal == 1) row["quoted_scale_GeV"] = kQuoted1SBoundGeV;
    rows.push_back(row);
  } else {
    const auto report = level_shift(lv, 0.0, cfg.constants, shift_options(cfg, hz));
    for (const char* source : {"closed_form", "quadrature"}) {
      std::vector<double> seen;
      for (const auto& e : report.entries) {
        const bool cf = std::string(source) == "closed_form";
        const double coef = std::abs(cf ? e.coefficient_closed_form : e.coefficient_quadrature);
        if (coef == 0.0) continue;
        if (std::any_of(seen.begin(), seen.end(), [&](double s) { return std::abs(s - coef) <= 1e-9 * coef; })) continue;
        seen.push_back(coef);
        const auto b = theta_bound(coef, hz, cfg.constants, cfg.hz_convention);
        rows.push_back({{"level", lv.label()},
                        {"source", source},
                        {"coefficient_eV3", coef},
                        {"theta_eV2", b.theta_eV2},
                        {"scale_GeV", b.scale_GeV()}});
      }
    }
  }
  doc["rows"] = rows;
  return {doc};
}

/// Bound for an explicit coefficient (eV^3 per unit theta).
inline CommandOutput cmd_bound_coefficient(double coefficient, double accuracy_khz, const RunConfig& cfg) {
  const auto b = theta_bound(coefficient, accuracy_khz * 1e3, cfg.constants, cfg.hz_convention);
  json doc = detail::header("bound", cfg);
  doc["accuracy_khz"] = accuracy_khz;
  doc["rows"] = json::array({{{"source", "given"},
                              {"coefficient_eV3", coefficient},
                              {"theta_eV2", b.theta_eV2},
                              {"scale_GeV", b.scale_GeV()}}});
  return {doc};
}

inline CommandOutput cmd_nonrel(int n, int l, HalfInteger j, HalfInteger m_j, double theta, const RunConfig& cfg) {
  const auto& c = cfg.constants;
  const auto s = make_schrodinger_state(n, l, j, m_j, c);
  json doc = detail::header("nonrel", cfg);
  doc["state"] = {{"n", n}, {"l", l}, {"j", j.str()}, {"m_j", m_j.str()}, {"a0_per_eV", s.a0}};
  doc["theta_eV2"] = theta;
  doc["energy_eV"] = schrodinger_energy(n, c);
  json row = {{"n", n}, {"l", l}, {"j", j.str()}, {"m_j", m_j.str()}, {"theta_eV2", theta}, {"energy_eV", schrodinger_energy(n, c)}};
  if (l == 0) {
    if (n != 1) throw DomainError("the cutoff S-state shift is available for 1S only");
    const double shift = s_state_shift(theta, cfg.lambda_qcd, c);
    doc["s_state"] = {{"lambda_qcd_eV", cfg.lambda_qcd},
                      {"expectation", s_state_expectation(theta, cfg.lambda_qcd, c)},
                      {"shift_eV", shift},
                      {"shift_assembled_eV", s_state_shift_assembled(theta, cfg.lambda_qcd, c)}};
    row["nc_shift_eV"] = shift;
  } else {
    const auto fs = fine_structure_shift(n, l, j, c);
    const auto hf = nc_hyperfine_shift(s, theta);
    doc["fine_structure"] = {{"as_printed_eV", fs.as_printed},
                             {"sign_corrected_eV", fs.sign_corrected},
                             {"dirac_expansion_eV", fs.dirac_expansion}};
    doc["nc_hyperfine"] = {{"r5_divergent", hf.r5_divergent},
                           {"as_printed", to_json(hf.as_printed)},
                           {"assembled", to_json(hf.assembled)}};
    doc["expectation_table"] = to_json(expectation_table(s, theta));
    row["fine_structure_eV"] = fs.sign_corrected;
    row["fine_structure_as_printed_eV"] = fs.as_printed;
    row["nc_shift_eV"] = detail::optional_number(hf.as_printed.total);
    row["nc_shift_finite_part_eV"] = hf.as_printed.finite_sum;
    row["r5_divergent"] = hf.r5_divergent;
  }
  doc["rows"] = json::array({row});
  return {doc};
}

enum class SweepSource { quadrature, closed_form };

inline SweepSource parse_sweep_source(const std::string& s) {
  if (s == "quadrature") return SweepSource::quadrature;
  if (s == "closed-form" || s == "closed_form") return SweepSource::closed_form;
  throw ParseError("unknown source '" + s + "' (quadrature, closed-form)");
}

/// Evenly spaced theta values; one row per (theta, level, M) with columns
/// theta_eV2, level, eigenvalue, shift_eV.
inline CommandOutput cmd_sweep(double theta_min, double theta_max, int steps, const std::vector<std::string>& labels,
                               SweepSource source, const RunConfig& cfg) {
  if (steps < 2) throw DomainError("sweep needs steps >= 2");
  if (!(theta_min >= 0.0) || !(theta_max > theta_min)) throw DomainError("sweep needs 0 <= theta_min < theta_max");
  std::vector<ShiftReport> unit;
  for (const auto& label : labels) unit.push_back(level_shift(parse_level(label), 1.0, cfg.constants, shift_options(cfg)));
  json doc = detail::header("sweep", cfg);
  doc["source"] = source == SweepSource::quadrature ? "quadrature" : "closed-form";
  json rows = json::array();
  for (int i = 0; i < steps; ++i) {
    const double theta = theta_min + (theta_max - theta_min) * i / (steps - 1);
    for (const auto& r : unit) {
      for (const auto& e : r.entries) {
        const double coef = source == SweepSource::quadrature ? e.coefficient_quadrature : e.coefficient_closed_form;
        rows.push_back({{"theta_eV2", theta}, {"level", r.level}, {"eigenvalue", e.eigenvalue}, {"shift_eV", coef * theta}});
      }
    }
  }
  doc["rows"] = rows;
  return {doc};
}

inline CommandOutput cmd_verify(const RunConfig& cfg) {
  SuiteOptions opt;
  opt.quad_order = cfg.quad_order;
  const auto reports = run_validation_suite(cfg.constants, opt);
  json doc = detail::header("verify", cfg);
  json rows = json::array();
  int matched = 0, flagged = 0, unexpected = 0;
  for (const auto& r : reports) {
    rows.push_back(to_json(r));
    const bool bad = r.unexpected() || !r.refinement_monotone;
    if (bad) ++unexpected;
    else if (r.verdict == Verdict::flagged_known_inconsistency) ++flagged;
    else ++matched;
  }
  doc["summary"] = {{"total", reports.size()}, {"match", matched}, {"flagged", flagged}, {"unexpected", unexpected}};
  doc["rows"] = rows;
  return {doc, unexpected > 0 ? kExitMismatch : kExitOk};
}

}  // namespace ncdirac::cli
