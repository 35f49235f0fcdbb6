#include "hypemb/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hypemb {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::exact:
      return "exact";
    case Provenance::truncated_tail:
      return "truncated-with-tail";
    case Provenance::monte_carlo:
      return "monte-carlo";
  }
  return "?";
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void Report::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw std::logic_error("report row width does not match the schema");
  rows.push_back(std::move(cells));
}

void Report::add_metric(const std::string& name, const std::string& value) {
  metrics.emplace_back(name, value);
}

void Report::add_metric(const std::string& name, double value, Provenance prov) {
  metrics.emplace_back(name, format_double(value) + " [" + provenance_name(prov) + "]");
}

void emit_rows(const Report& report, std::ostream& out) {
  out << "# experiment " << report.experiment << "\n";
  out << "# schema " << report.schema_version << "\n";
  for (const auto& [k, v] : report.config_echo) out << "# cfg " << k << " = " << v << "\n";
  if (!report.columns.empty()) {
    out << "# provenance";
    for (std::size_t i = 0; i < report.columns.size(); ++i)
      out << (i == 0 ? " " : ", ") << report.columns[i] << "="
          << provenance_name(report.column_provenance[i]);
    out << "\n";
  }
  for (const auto& [k, v] : report.metrics) out << "# " << k << " " << v << "\n";
  out << "# criterion " << report.criterion << "\n";
  out << "# verdict " << (report.pass ? "pass" : "fail") << "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    out << (i == 0 ? "" : ",") << report.columns[i];
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i == 0 ? "" : ",") << row[i];
    out << "\n";
  }
}

void emit_summary(const Report& report, std::ostream& out) {
  out << "experiment: " << report.experiment << " (schema " << report.schema_version << ")\n";
  out << "config:\n";
  for (const auto& [k, v] : report.config_echo) out << "  " << k << " = " << v << "\n";
  if (!report.columns.empty()) {
    out << "columns:\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i)
      out << "  " << report.columns[i] << " [" << provenance_name(report.column_provenance[i])
          << "]\n";
    for (const auto& row : report.rows) {
      out << "  ";
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i == 0 ? "" : "  ") << report.columns[i] << "=" << row[i];
      out << "\n";
    }
  }
  for (const auto& [k, v] : report.metrics) out << k << ": " << v << "\n";
  out << "criterion: " << report.criterion << "\n";
  out << "verdict: " << (report.pass ? "PASS" : "FAIL") << "\n";
}

}  // namespace hypemb
