#include "mwell/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mwell {

void write_csv(const std::string& path, const CsvTable& table) {
  if (table.columns.empty()) throw std::invalid_argument("write_csv: no columns");
  const std::size_t rows = table.columns.front().size();
  for (const auto& col : table.columns)
    if (col.size() != rows) throw std::invalid_argument("write_csv: ragged columns");

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("write_csv: cannot open " + tmp);
    for (std::size_t c = 0; c < table.header.size(); ++c)
      out << (c ? "," : "") << table.header[c];
    out << "\n";
    char buf[40];
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        std::snprintf(buf, sizeof buf, "%.15g", table.columns[c][r]);
        out << (c ? "," : "") << buf;
      }
      out << "\n";
    }
  }
  std::filesystem::rename(tmp, path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',') && c < t.columns.size())
      t.columns[c++].push_back(std::stod(cell));
  }
  return t;
}

}  // namespace mwell
