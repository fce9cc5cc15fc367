#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace plateau {

// Ordered scalar samples. Length ≥ 1, every value finite.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> values, std::string name = "x");

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::size_t i) const;
  std::span<const double> values() const noexcept { return values_; }
  const std::string& name() const noexcept { return name_; }

  // Copy with one value replaced.
  TimeSeries with_value(std::size_t index, double value) const;

 private:
  std::vector<double> values_;
  std::string name_;
};

// "i,x" header, 0-based index, 17 significant digits.
void write_series_csv(std::ostream& out, const TimeSeries& series);
void write_series_csv(const std::string& path, const TimeSeries& series);

// Reads a delimited text file. With a header, takes the column named
// `column` (default "x", falling back to the last column); without one,
// the last column of each row. Lines starting with '#' are skipped.
TimeSeries read_series_csv(std::istream& in, const std::string& column = "",
                           const std::string& name = "x");
TimeSeries read_series_csv(const std::string& path, const std::string& column = "");

std::string format_full(double value);

}  // namespace plateau
