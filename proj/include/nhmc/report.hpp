#ifndef NHMC_REPORT_HPP
#define NHMC_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace nhmc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest decimal that round-trips to the same double. Throws on NaN/Inf.
std::string format_double(double x);

/// A CSV field; monostate is written as an empty field.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  std::size_t rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& columns() const noexcept { return columns_; }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace nhmc

#endif  // NHMC_REPORT_HPP
