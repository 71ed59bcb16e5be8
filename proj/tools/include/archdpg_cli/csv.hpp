#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace archdpg::cli {

/// Output file could not be written (exit code 1).
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scientific notation with 16 significant digits; "inf", "-inf", "nan";
/// negative zero is written as zero.
std::string format_number(double v);

/// In-memory CSV table written in one go.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& cell(double v);
  CsvTable& cell(int v);
  CsvTable& cell(const std::string& text);
  /// Finishes the current row; throws std::logic_error on a width mismatch.
  void end_row();

  std::size_t rows() const { return rows_; }
  const std::string& text() const { return text_; }

 private:
  std::size_t width_;
  std::size_t rows_ = 0;
  std::vector<std::string> current_;
  std::string text_;
};

/// Writes `content` to `path`, creating parent directories. Throws OutputError.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace archdpg::cli
