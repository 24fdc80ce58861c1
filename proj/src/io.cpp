#include "nogaps/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nogaps::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string array_json(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  out += ']';
  return out;
}

}  // namespace

JsonObject& JsonObject::add(const std::string& key, double value) {
  fields_.emplace_back(key, format_double(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, std::int64_t value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, std::uint64_t value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, quote(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const std::vector<double>& values) {
  fields_.emplace_back(key, array_json(values));
  return *this;
}
JsonObject& JsonObject::add_raw(const std::string& key, const std::string& json) {
  fields_.emplace_back(key, json);
  return *this;
}

std::string JsonObject::str(int indent) const {
  if (indent <= 0) {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i) out += ", ";
      out += quote(fields_[i].first) + ": " + fields_[i].second;
    }
    out += '}';
    return out;
  }
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string out = "{\n";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    out += pad + quote(fields_[i].first) + ": " + fields_[i].second;
    if (i + 1 < fields_.size()) out += ',';
    out += '\n';
  }
  out += "}\n";
  return out;
}

std::string matrix_to_text(const Matrix& a, Field field) {
  std::string out = std::to_string(a.rows()) + "," + std::to_string(a.cols()) + "," +
                    field_name(field) + "\n";
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out += format_double(a(i, j).real()) + "," + format_double(a(i, j).imag()) + "\n";
  return out;
}

ParsedMatrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("matrix parse: empty input");
  Index rows = 0, cols = 0;
  char field_buf[16] = {0};
  if (std::sscanf(line.c_str(), "%td,%td,%15s", &rows, &cols, field_buf) != 3)
    throw std::invalid_argument("matrix parse: bad header '" + line + "'");
  ParsedMatrix parsed;
  const std::string field_str(field_buf);
  if (field_str == "real") parsed.field = Field::Real;
  else if (field_str == "complex") parsed.field = Field::Complex;
  else throw std::invalid_argument("matrix parse: unknown field '" + field_str + "'");
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix parse: bad dimensions");
  parsed.matrix.resize(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (!std::getline(in, line))
        throw std::invalid_argument("matrix parse: truncated entry list");
      double re = 0, im = 0;
      if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) != 2)
        throw std::invalid_argument("matrix parse: bad entry '" + line + "'");
      parsed.matrix(i, j) = Complex(re, im);
    }
  }
  return parsed;
}

std::string tail_curve_csv(const experiments::TailCurve& curve) {
  std::string out = "eps,hits,trials,phat,wilson_lo,wilson_hi\n";
  for (std::size_t i = 0; i < curve.eps.size(); ++i) {
    out += format_double(curve.eps[i]) + "," + std::to_string(curve.hits[i]) + "," +
           std::to_string(curve.trials) + "," + format_double(curve.phat[i]) + "," +
           format_double(curve.wilson_lo[i]) + "," + format_double(curve.wilson_hi[i]) + "\n";
  }
  return out;
}

std::string profile_csv(const deloc::DelocProfile& profile) {
  std::string out = "index,sorted_sq\n";
  for (Index i = 0; i < profile.n; ++i)
    out += std::to_string(i) + "," + format_double(profile.sorted_sq(i)) + "\n";
  out += "linf," + format_double(profile.linf) + "\n";
  return out;
}

std::string run_report_json(const experiments::RunReport& report) {
  JsonObject config;
  for (const auto& [k, v] : report.config) config.add(k, v);
  JsonObject metrics;
  for (const auto& [k, v] : report.metrics) metrics.add(k, v);
  JsonObject series;
  for (const auto& [k, v] : report.series) series.add(k, v);

  JsonObject root;
  root.add("experiment", report.experiment);
  root.add_raw("config", config.str(0));
  root.add("master_seed", report.master_seed);
  root.add_raw("metrics", metrics.str(0));
  root.add_raw("series", series.str(0));
  if (report.slope) {
    JsonObject slope;
    slope.add("value", report.slope->slope);
    slope.add("stderr", report.slope->stderr_value);
    slope.add("points_used", static_cast<std::int64_t>(report.slope->points_used));
    root.add_raw("slope", slope.str(0));
  }
  return root.str();
}

std::string lcd_result_json(const structure::LcdResult& result) {
  JsonObject obj;
  obj.add("status", result.status == structure::LcdStatus::Found ? "found" : "exceeds_cap");
  obj.add("value", result.value);
  obj.add("witness_re", result.witness_theta.real());
  obj.add("witness_im", result.witness_theta.imag());
  obj.add("achieved_dist", result.achieved_dist);
  return obj.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nogaps::io
