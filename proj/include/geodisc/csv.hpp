#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodisc/core.hpp"
#include "geodisc/pointset.hpp"

namespace geodisc {

/// Decimal formatting used in every CSV: 17 significant digits, enough to
/// round-trip an IEEE double exactly.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void write_points_csv(const UnitCubePoints& p, std::ostream& os) {
  for (std::size_t j = 0; j < p.dim(); ++j) {
    if (j) os << ',';
    os << "dim" << j;
  }
  os << '\n';
  for (std::size_t n = 0; n < p.size(); ++n) {
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (j) os << ',';
      os << format_double(p(n, j));
    }
    os << '\n';
  }
}

inline void write_points_csv(const UnitCubePoints& p, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_points_csv(p, os);
}

inline UnitCubePoints read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("point CSV: empty input");
  std::size_t s = 1;
  for (char c : line)
    if (c == ',') ++s;
  std::vector<double> coords;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t cols = 0;
    while (std::getline(ss, cell, ',')) {
      coords.push_back(std::stod(cell));
      ++cols;
    }
    if (cols != s) throw std::runtime_error("point CSV: ragged row");
    ++rows;
  }
  if (rows == 0) throw std::runtime_error("point CSV: no data rows");
  return UnitCubePoints(rows, s, std::move(coords));
}

inline UnitCubePoints read_points_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_points_csv(is);
}

/// Result rows share one schema across the discrepancy modules:
/// family,q,method,N,s,value,error_hint (error_hint empty when absent).
inline std::string result_csv_header() { return "family,q,method,N,s,value,error_hint"; }

inline std::string result_csv_line(const DiscrepancyResult& r, std::size_t n_points,
                                   std::size_t s) {
  std::ostringstream os;
  os << to_string(r.family) << ',';
  if (r.q == kInf)
    os << "inf";
  else
    os << format_double(r.q);
  os << ',' << to_string(r.method) << ',' << n_points << ',' << s << ','
     << format_double(r.value) << ',';
  if (r.error_hint) os << format_double(*r.error_hint);
  return os.str();
}

/// Minimal column table for experiment output.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& os) const {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (j) os << ',';
      os << header[j];
    }
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) os << ',';
        os << format_double(row[j]);
      }
      os << '\n';
    }
  }

  void write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write(os);
  }

  std::vector<double> column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (header[j] == name) {
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& row : rows) out.push_back(row.at(j));
        return out;
      }
    }
    throw std::runtime_error("no such column: " + name);
  }
};

inline CsvTable read_table_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("table CSV: empty input");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(cell.empty() ? 0.0 : std::stod(cell));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable read_table_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_table_csv(is);
}

}  // namespace geodisc
