#pragma once

#include <string>
#include <variant>
#include <vector>

namespace assocnorm::cli {

using Cell = std::variant<std::string, double, long long>;

/// Fields are quoted only when needed; doubles use 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add(std::vector<Cell> row);
  std::string str() const;
  void write(const std::string& path) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::string csv_escape(const std::string& field);

/// Minimal reader for files this tool wrote (header + rows).
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace assocnorm::cli
