#pragma once

#include <string>
#include <vector>

#include "nogaps/common.hpp"
#include "nogaps/deloc.hpp"
#include "nogaps/experiments.hpp"
#include "nogaps/structure.hpp"

namespace nogaps::io {

/// All floating-point output uses 17 significant digits so files round-trip
/// losslessly.
std::string format_double(double x);

/// Minimal ordered JSON emitter; keys keep insertion order and numbers are
/// formatted with format_double.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double value);
  JsonObject& add(const std::string& key, std::int64_t value);
  JsonObject& add(const std::string& key, std::uint64_t value);
  JsonObject& add(const std::string& key, const std::string& value);
  JsonObject& add(const std::string& key, const std::vector<double>& values);
  JsonObject& add_raw(const std::string& key, const std::string& json);
  std::string str(int indent = 2) const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

/// Matrix text format: header `rows,cols,field`, then one `re,im` pair per
/// entry, row-major.
std::string matrix_to_text(const Matrix& a, Field field);
struct ParsedMatrix {
  Matrix matrix;
  Field field = Field::Complex;
};
ParsedMatrix matrix_from_text(const std::string& text);

std::string tail_curve_csv(const experiments::TailCurve& curve);
std::string profile_csv(const deloc::DelocProfile& profile);
std::string run_report_json(const experiments::RunReport& report);
std::string lcd_result_json(const structure::LcdResult& result);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace nogaps::io
