#include "latentlabel/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "latentlabel/errors.hpp"

namespace latentlabel {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError(path + ": missing header row");
  }
  for (auto& cell : split_line(line)) table.header.push_back(trim(cell));
  if (table.header.size() < 2) {
    throw InputError(path + ": header needs an id column and at least one field");
  }
  const std::size_t width = table.header.size() - 1;

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      std::ostringstream os;
      os << path << " row " << line_no << ": has " << cells.size()
         << " cells, header has " << table.header.size();
      throw InputError(os.str());
    }
    table.ids.push_back(trim(cells[0]));
    std::vector<double> row(width);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      const std::string cell = trim(cells[j]);
      double value = 0.0;
      const auto* begin = cell.data();
      const auto* end = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr != end || cell.empty()) {
        std::ostringstream os;
        os << path << " row " << line_no << " column " << j + 1
           << ": cannot parse \"" << cell << "\" as a number";
        throw InputError(os.str());
      }
      row[j - 1] = value;
    }
    rows.push_back(std::move(row));
  }

  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      table.values(static_cast<Eigen::Index>(i),
                   static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
  if (table.header.size() !=
      static_cast<std::size_t>(table.values.cols()) + 1) {
    throw DimensionMismatch("write_csv: header width does not match values");
  }
  if (table.ids.size() != static_cast<std::size_t>(table.values.rows())) {
    throw DimensionMismatch("write_csv: id count does not match rows");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j) out << ',';
    out << table.header[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
    out << table.ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
      out << ',' << format_double(table.values(i, j));
    }
    out << '\n';
  }
  if (!out) throw InputError("write failed: " + path);
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buffer, ptr);
}

}  // namespace latentlabel
