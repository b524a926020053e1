#ifndef MWELL_CSV_HPP
#define MWELL_CSV_HPP

#include <string>
#include <vector>

namespace mwell {

/// Column-oriented numeric table written with 15 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

/// Atomic write: the file appears under its final name only when complete.
void write_csv(const std::string& path, const CsvTable& table);

CsvTable read_csv(const std::string& path);

}  // namespace mwell

#endif
