#include "report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ecoop {

void ReportTable::add_column(std::string column_name, std::vector<double> values) {
  columns_.emplace_back(std::move(column_name), std::move(values));
}

void ReportTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::size_t ReportTable::num_rows() const {
  return columns_.empty() ? 0 : columns_.front().second.size();
}

const std::vector<double>& ReportTable::column(const std::string& column_name) const {
  for (const auto& [name, values] : columns_) {
    if (name == column_name) return values;
  }
  throw std::out_of_range("ReportTable: no column named " + column_name);
}

double ReportTable::value(std::size_t row, std::size_t col) const {
  return columns_.at(col).second.at(row);
}

std::string format_significant(double value, int precision) {
  std::ostringstream out;
  out.precision(precision);
  out << value;
  return out.str();
}

void ReportTable::write_csv(std::ostream& out, int precision) const {
  const std::size_t rows = num_rows();
  for (const auto& [name, values] : columns_) {
    if (values.size() != rows) {
      throw std::runtime_error("ReportTable: ragged column " + name);
    }
    for (double v : values) {
      if (!std::isfinite(v)) {
        throw std::runtime_error("ReportTable: non-finite value in column " + name);
      }
    }
  }
  out << "# table = " << name_ << "\n";
  for (const auto& [key, value] : metadata_) {
    out << "# " << key << " = " << value << "\n";
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out << (c ? "," : "") << columns_[c].first;
  }
  out << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      out << (c ? "," : "") << format_significant(columns_[c].second[r], precision);
    }
    out << "\n";
  }
}

std::string ReportTable::to_csv(int precision) const {
  std::ostringstream out;
  write_csv(out, precision);
  return out.str();
}

}  // namespace ecoop
