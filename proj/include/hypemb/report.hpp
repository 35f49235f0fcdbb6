#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypemb {

/// How a numeric cell was obtained. Every column declares one; nothing is
/// emitted untagged.
enum class Provenance { exact, truncated_tail, monte_carlo };

std::string provenance_name(Provenance p);

/// Deterministic double formatting shared by both output formats.
std::string format_double(double x);

struct Report {
  std::string experiment;
  std::string schema_version = "1";
  std::vector<std::pair<std::string, std::string>> config_echo;  // sorted keys
  std::vector<std::string> columns;
  std::vector<Provenance> column_provenance;
  std::vector<std::vector<std::string>> rows;
  /// Scalar results, each (name, value, provenance tag already rendered).
  std::vector<std::pair<std::string, std::string>> metrics;
  bool pass = false;
  std::string criterion;  // human statement of the pass condition

  void add_row(std::vector<std::string> cells);
  void add_metric(const std::string& name, const std::string& value);
  void add_metric(const std::string& name, double value, Provenance prov);
};

/// Comma-separated rows with a header line; configuration, per-column
/// provenance, metrics and the verdict ride along as '#' comment lines.
void emit_rows(const Report& report, std::ostream& out);

/// Human-readable summary; contains the full config echo (seed included).
void emit_summary(const Report& report, std::ostream& out);

}  // namespace hypemb
