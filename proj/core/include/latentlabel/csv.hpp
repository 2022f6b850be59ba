#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace latentlabel {

// Numeric CSV with a header row and a leading sample-id column.
struct CsvTable {
  std::vector<std::string> header;  // includes the id column name
  std::vector<std::string> ids;     // one per data row
  Eigen::MatrixXd values;           // rows x (header.size() - 1)
};

// Parse failures name the file, 1-based row and column.
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const CsvTable& table);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace latentlabel
