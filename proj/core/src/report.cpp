#include "charzero/report.hpp"

#include <charconv>
#include <json.hpp>
#include <string>

#include "charzero/error.hpp"
#include "charzero/version.hpp"

namespace charzero::report {

namespace {

using Json = nlohmann::ordered_json;

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json config_json(const harness::ScenarioConfig& config) {
  Json constants = Json::object();
  for (const auto& [key, value] : config.constants()) constants[key] = value;
  return Json{{"q_min", config.q_min},
              {"q_max", config.q_max},
              {"epsilon", config.epsilon},
              {"T", config.T},
              {"budget", std::string(harness::to_string(config.budget))},
              {"seed", config.seed},
              {"constants", constants}};
}

Json witness_json(const multfn::Prop61Witness& w) {
  return Json{{"y", w.y},           {"mean", complex_json(w.mean)}, {"abs_mean", std::abs(w.mean)},
              {"guarantee", w.guarantee}, {"lambda", w.lambda},   {"y_min", w.y_min},
              {"grid_points", w.grid_points}, {"phi", w.phi},     {"M", w.M}};
}

Json disk_json(const zeros::DiskAudit& a) {
  return Json{{"q", a.q},
              {"conrey", a.conrey},
              {"x", a.x},
              {"L", a.L},
              {"abs_S", a.abs_S},
              {"N", a.N},
              {"phi", a.phi},
              {"M", a.M},
              {"center", complex_json(a.center)},
              {"radius", a.radius},
              {"count", a.count},
              {"threshold_360", a.threshold_360},
              {"threshold_400", a.threshold_400},
              {"x_range_ok", a.x_range_ok},
              {"n_range_ok", a.n_range_ok},
              {"l_range_ok_360", a.l_range_ok_360},
              {"l_range_ok_400", a.l_range_ok_400},
              {"vacuous", a.vacuous},
              {"meets_360", a.meets_360},
              {"meets_400", a.meets_400}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw RangeError("format_double: buffer too small");
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw DomainError("CsvTable: row width differs from header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_escape(fields[i]);
    }
    out += "\r\n";
  };
  line(header_);
  for (const auto& row : rows_) line(row);
  return out;
}

std::string character_json(const dirichlet::Character& chi) {
  return dump(Json{{"q", chi.modulus()},
                   {"conrey", chi.conrey_label()},
                   {"order", chi.order()},
                   {"parity", chi.parity()},
                   {"conductor", chi.conductor()},
                   {"primitive", chi.is_primitive()}});
}

std::string characters_json(const std::vector<dirichlet::Character>& chars) {
  Json arr = Json::array();
  for (const auto& chi : chars) arr.push_back(Json::parse(character_json(chi)));
  return dump(Json{{"version", std::string(kVersion)}, {"characters", arr}});
}

std::string characters_csv(const std::vector<dirichlet::Character>& chars) {
  CsvTable table({"q", "conrey", "order", "parity", "conductor", "primitive"});
  for (const auto& chi : chars) {
    table.add_row({str(chi.modulus()), str(chi.conrey_label()), str(chi.order()), str(chi.parity()),
                   str(chi.conductor()), str(chi.is_primitive())});
  }
  return table.str();
}

std::string zeros_csv(const std::vector<ZeroRecord>& zeros) {
  CsvTable table({"q", "conrey", "beta", "gamma", "residual", "method"});
  for (const auto& z : zeros) {
    table.add_row({str(z.q), str(z.conrey), format_double(z.beta), format_double(z.gamma), format_double(z.residual),
                   std::string(to_string(z.method))});
  }
  return table.str();
}

std::string hzeros_csv(const std::vector<spectral::HZero>& zeros) {
  CsvTable table({"k", "re", "im", "residual", "gap"});
  for (const auto& z : zeros) {
    table.add_row({str(z.k), format_double(z.z.real()), format_double(z.z.imag()), format_double(z.residual),
                   format_double(z.asymptotic_gap)});
  }
  return table.str();
}

std::string audit_json(const harness::AuditReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"q", r.q},
                        {"conrey", r.conrey},
                        {"order", r.order},
                        {"epsilon", r.epsilon},
                        {"x", r.x},
                        {"budget", r.budget},
                        {"zero_count", r.zero_count},
                        {"abs_S", r.abs_S},
                        {"predicted_bound", r.predicted_bound},
                        {"ratio", r.ratio},
                        {"hypothesis_ok", r.hypothesis_ok},
                        {"vacuous", r.vacuous},
                        {"conclusion_ok", r.conclusion_ok ? Json(*r.conclusion_ok) : Json(nullptr)},
                        {"region_sigma_min", r.region_sigma_min},
                        {"region_t_max", r.region_t_max},
                        {"region_hypothesis_ok", r.region_hypothesis_ok},
                        {"region_zero_count", r.region_zero_count}});
  }
  return dump(Json{{"version", report.version},
                   {"rule", std::string(harness::to_string(report.rule))},
                   {"config", config_json(report.config)},
                   {"rows", rows}});
}

std::string audit_csv(const harness::AuditReport& report) {
  std::vector<std::string> header = {"version", "rule", "q", "conrey", "order", "epsilon", "x", "budget",
                                     "zero_count", "abs_S", "predicted_bound", "ratio", "hypothesis_ok", "vacuous",
                                     "conclusion_ok", "region_sigma_min", "region_t_max", "region_hypothesis_ok",
                                     "region_zero_count"};
  const auto constants = report.config.constants();
  for (const auto& [key, value] : constants) header.push_back(key);
  CsvTable table(std::move(header));
  const std::string rule(harness::to_string(report.rule));
  for (const auto& r : report.rows) {
    std::vector<std::string> row = {report.version,
                                    rule,
                                    str(r.q),
                                    str(r.conrey),
                                    str(r.order),
                                    format_double(r.epsilon),
                                    format_double(r.x),
                                    format_double(r.budget),
                                    str(r.zero_count),
                                    format_double(r.abs_S),
                                    format_double(r.predicted_bound),
                                    format_double(r.ratio),
                                    str(r.hypothesis_ok),
                                    str(r.vacuous),
                                    r.conclusion_ok ? str(*r.conclusion_ok) : std::string(),
                                    format_double(r.region_sigma_min),
                                    format_double(r.region_t_max),
                                    str(r.region_hypothesis_ok),
                                    str(r.region_zero_count)};
    for (const auto& [key, value] : constants) row.push_back(format_double(value));
    table.add_row(std::move(row));
  }
  return table.str();
}

std::string census_json(const std::vector<harness::CensusResult>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"q", r.q},
                       {"u", r.u},
                       {"x", r.x},
                       {"count", r.count},
                       {"bound", r.bound},
                       {"fraction", r.fraction},
                       {"exceeds_bound", r.exceeds_bound}});
  }
  return dump(Json{{"version", std::string(kVersion)}, {"rows", arr}});
}

std::string census_csv(const std::vector<harness::CensusResult>& rows) {
  CsvTable table({"q", "u", "x", "count", "bound", "fraction", "exceeds_bound"});
  for (const auto& r : rows) {
    table.add_row({str(r.q), format_double(r.u), format_double(r.x), str(r.count), format_double(r.bound),
                   format_double(r.fraction), str(r.exceeds_bound)});
  }
  return table.str();
}

std::string disk_audit_json(const zeros::DiskAudit& audit) {
  return dump(Json{{"version", std::string(kVersion)}, {"audit", disk_json(audit)}});
}

std::string main_theorem_json(const harness::MainTheoremReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"L", r.L},
                        {"threshold_360", r.threshold_360},
                        {"threshold_400", r.threshold_400},
                        {"audit", r.audit ? disk_json(*r.audit) : Json(nullptr)},
                        {"error", r.error}});
  }
  return dump(Json{{"version", report.version},
                   {"q", report.q},
                   {"conrey", report.conrey},
                   {"order", report.order},
                   {"x", report.x},
                   {"x_range", Json{{"lo", report.x_range_lo},
                                    {"hi", report.x_range_hi},
                                    {"nonempty", report.x_range_nonempty},
                                    {"contains_x", report.x_in_range}}},
                   {"y0", report.y0},
                   {"abs_S", report.abs_S},
                   {"N", report.N},
                   {"lemma_hypothesis_ok", report.lemma_hypothesis_ok},
                   {"phi", report.phi},
                   {"M", report.M},
                   {"phi_bound", report.phi_bound},
                   {"phi_bound_order", report.phi_bound_order},
                   {"phi_within_bound", report.phi_within_bound},
                   {"phi_within_order_bound", report.phi_within_order_bound},
                   {"vacuous", report.vacuous},
                   {"config", config_json(report.config)},
                   {"rows", rows}});
}

std::string product_search_json(const harness::ProductSearch& r, const harness::ScenarioConfig& config) {
  return dump(Json{{"version", std::string(kVersion)},
                   {"hypothesis_ok", r.hypothesis_ok},
                   {"mean1", complex_json(r.mean1)},
                   {"mean2", complex_json(r.mean2)},
                   {"phi1", r.phi1},
                   {"phi2", r.phi2},
                   {"phi", r.phi},
                   {"x_min", r.x_min},
                   {"witness", witness_json(r.witness)},
                   {"xi_report", r.xi_report},
                   {"exponent_ok", r.exponent_ok},
                   {"mean_ok", r.mean_ok},
                   {"config", config_json(config)}});
}

std::string power_search_json(const harness::PowerSearch& r, const harness::ScenarioConfig& config) {
  return dump(Json{{"version", std::string(kVersion)},
                   {"hypothesis_ok", r.hypothesis_ok},
                   {"mean", complex_json(r.mean)},
                   {"k", r.k},
                   {"witness", witness_json(r.witness)},
                   {"y_target", r.y_target},
                   {"y_ok", r.y_ok},
                   {"config", config_json(config)}});
}

}  // namespace charzero::report
