#include "archdpg_cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace archdpg::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
  current_ = std::move(header);
  end_row();
  rows_ = 0;
}

CsvTable& CsvTable::cell(double v) {
  current_.push_back(format_number(v));
  return *this;
}

CsvTable& CsvTable::cell(int v) {
  current_.push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::cell(const std::string& text) {
  current_.push_back(text);
  return *this;
}

void CsvTable::end_row() {
  if (current_.size() != width_)
    throw std::logic_error("CSV row has " + std::to_string(current_.size()) + " cells, expected " +
                           std::to_string(width_));
  for (std::size_t i = 0; i < current_.size(); ++i) {
    if (i) text_ += ',';
    text_ += current_[i];
  }
  text_ += '\n';
  current_.clear();
  ++rows_;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw OutputError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

}  // namespace archdpg::cli
