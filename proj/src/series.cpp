#include "plateau/series.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "plateau/error.hpp"

namespace plateau {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',' || c == ';' || c == '\t') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r' && c != ' ' && c != '"') {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

TimeSeries::TimeSeries(std::vector<double> values, std::string name)
    : values_(std::move(values)), name_(std::move(name)) {
  if (values_.empty()) throw InvalidArgument("time series must have at least one value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidArgument("time series value " + std::to_string(i) + " is not finite");
    }
  }
}

double TimeSeries::at(std::size_t i) const {
  if (i >= values_.size()) {
    throw InvalidArgument("series index " + std::to_string(i) + " out of range (length " +
                          std::to_string(values_.size()) + ")");
  }
  return values_[i];
}

TimeSeries TimeSeries::with_value(std::size_t index, double value) const {
  std::vector<double> copy = values_;
  copy.at(index) = value;
  return TimeSeries(std::move(copy), name_);
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  out << "i,x\n";
  for (std::size_t i = 0; i < series.size(); ++i) out << i << ',' << format_full(series[i]) << '\n';
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_series_csv(out, series);
  if (!out) throw IoError("failed writing '" + path + "'");
}

TimeSeries read_series_csv(std::istream& in, const std::string& column, const std::string& name) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  long selected = -1;  // column index; -1 means last
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto fields = split_fields(line);
    if (first_data_line) {
      first_data_line = false;
      double probe = 0.0;
      const bool is_header = !parse_double(fields.back(), probe);
      if (is_header) {
        const std::string wanted = column.empty() ? "x" : column;
        for (std::size_t c = 0; c < fields.size(); ++c) {
          if (fields[c] == wanted) selected = static_cast<long>(c);
        }
        if (selected < 0 && !column.empty()) {
          throw InvalidArgument("column '" + column + "' not found in header");
        }
        continue;
      }
      if (!column.empty()) throw InvalidArgument("column '" + column + "' requested but no header");
    }
    const std::size_t c = selected < 0 ? fields.size() - 1 : static_cast<std::size_t>(selected);
    double value = 0.0;
    if (c >= fields.size() || !parse_double(fields[c], value)) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": cannot parse a number from '" +
                            line + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw InvalidArgument("series file contains no samples");
  return TimeSeries(std::move(values), name);
}

TimeSeries read_series_csv(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open series file '" + path + "'");
  return read_series_csv(in, column, path);
}

}  // namespace plateau
