#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spec_io.hpp"
#include "verify.hpp"

namespace slicing {

enum class OutputFormat { Json, Csv };
OutputFormat parse_format(std::string_view name);
std::string_view to_string(OutputFormat f);

inline constexpr std::string_view kCsvHeader = "theorem,n,k,lhs,rhs,ratio,epsilon,est_error,pass";

// %.17g
std::string format_double(double v);

Json report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& doc);

// One row of the fixed CSV layout. Constants and sandwich rows use their own
// tag in the theorem column.
struct CsvRow {
  std::string tag;
  int n = 0;
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double epsilon = 0.0;
  double est_error = 0.0;
  bool pass = false;
};

CsvRow csv_row(const VerificationReport& r);
// Without trailing newline.
std::string to_csv(const CsvRow& row);
CsvRow parse_csv_row(std::string_view line);

std::string emit_report(const VerificationReport& r, OutputFormat f);
std::string emit_reports(const std::vector<VerificationReport>& reports, OutputFormat f);

}  // namespace slicing
