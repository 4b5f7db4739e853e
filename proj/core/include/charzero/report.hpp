#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "charzero/dirichlet.hpp"
#include "charzero/harness.hpp"
#include "charzero/spectral.hpp"
#include "charzero/zero_record.hpp"

namespace charzero::report {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// RFC 4180 field quoting (quotes fields containing ',', '"', CR or LF).
std::string csv_escape(std::string_view field);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  /// Throws DomainError when the row width differs from the header.
  void add_row(std::vector<std::string> row);
  /// Header plus rows, CRLF line endings.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string character_json(const dirichlet::Character& chi);
std::string characters_json(const std::vector<dirichlet::Character>& chars);
std::string characters_csv(const std::vector<dirichlet::Character>& chars);

/// Columns q,conrey,beta,gamma,residual,method.
std::string zeros_csv(const std::vector<ZeroRecord>& zeros);

/// Columns k,re,im,residual,gap.
std::string hzeros_csv(const std::vector<spectral::HZero>& zeros);

std::string audit_json(const harness::AuditReport& report);
std::string audit_csv(const harness::AuditReport& report);

std::string census_json(const std::vector<harness::CensusResult>& rows);
std::string census_csv(const std::vector<harness::CensusResult>& rows);

std::string disk_audit_json(const zeros::DiskAudit& audit);

std::string main_theorem_json(const harness::MainTheoremReport& report);

std::string product_search_json(const harness::ProductSearch& result, const harness::ScenarioConfig& config);
std::string power_search_json(const harness::PowerSearch& result, const harness::ScenarioConfig& config);

}  // namespace charzero::report
