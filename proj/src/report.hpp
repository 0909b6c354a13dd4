#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ecoop {

// Column-oriented numeric table with a metadata preamble; the CSV form is a
// block of "# key = value" comment lines, a header row, then data rows.
class ReportTable {
 public:
  explicit ReportTable(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  void add_column(std::string column_name, std::vector<double> values);
  void add_metadata(std::string key, std::string value);

  std::size_t num_columns() const { return columns_.size(); }
  std::size_t num_rows() const;
  const std::string& column_name(std::size_t col) const { return columns_[col].first; }
  const std::vector<double>& column(std::size_t col) const { return columns_[col].second; }
  const std::vector<double>& column(const std::string& column_name) const;
  double value(std::size_t row, std::size_t col) const;
  const std::vector<std::pair<std::string, std::string>>& metadata() const {
    return metadata_;
  }

  // Throws std::runtime_error on ragged columns or non-finite values.
  void write_csv(std::ostream& out, int precision = 12) const;
  std::string to_csv(int precision = 12) const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, std::vector<double>>> columns_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

std::string format_significant(double value, int precision);

}  // namespace ecoop
