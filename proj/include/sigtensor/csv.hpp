// Coefficient matrix CSV: d rows, m columns. Entries are decimal floats or
// "p/q" rationals; the field kind of the target space decides how cells are
// parsed. A rational space accepts integers, "p/q", and decimals that are
// exactly integers; it rejects every other decimal.
#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sigtensor/matrix.hpp"

namespace sigtensor {

struct CsvParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t first = 0, last = s.size();
  while (first < last && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
  return s.substr(first, last - first);
}

inline Rational parse_cell(const std::string& cell, const Rational*) {
  if (cell.find('.') != std::string::npos) {
    // Exact decimal: accept only if it denotes an integer.
    std::size_t pos = 0;
    if (pos < cell.size() && (cell[pos] == '-' || cell[pos] == '+')) ++pos;
    std::string digits;
    while (pos < cell.size() && std::isdigit(static_cast<unsigned char>(cell[pos])))
      digits += cell[pos++];
    if (pos >= cell.size() || cell[pos] != '.' || digits.empty())
      throw CsvParseError("invalid rational cell '" + cell + "'");
    ++pos;
    long fraction_digits = 0;
    bool fraction_nonzero = false;
    while (pos < cell.size() && std::isdigit(static_cast<unsigned char>(cell[pos]))) {
      if (cell[pos] != '0') fraction_nonzero = true;
      ++fraction_digits;
      ++pos;
    }
    if (pos != cell.size())
      throw CsvParseError("invalid rational cell '" + cell + "'");
    if (fraction_nonzero)
      throw CsvParseError("non-integer decimal '" + cell + "' is not representable in a rational matrix; use p/q");
    return rational_from_string((cell[0] == '-' ? "-" : "") + digits);
  }
  try {
    return rational_from_string(cell);
  } catch (const std::invalid_argument& e) {
    throw CsvParseError(e.what());
  }
}

inline double parse_cell(const std::string& cell, const double*) {
  const std::size_t slash = cell.find('/');
  if (slash != std::string::npos) {
    try {
      return to_double(rational_from_string(cell));
    } catch (const std::invalid_argument& e) {
      throw CsvParseError(e.what());
    }
  }
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw CsvParseError("invalid float cell '" + cell + "'");
  if (!std::isfinite(value)) throw CsvParseError("non-finite float cell '" + cell + "'");
  return value;
}

}  // namespace detail

template <typename T>
Matrix<T> read_coefficient_csv(std::istream& in) {
  std::vector<std::vector<T>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    std::vector<T> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const std::string value = detail::trim(cell);
      if (value.empty()) throw CsvParseError("empty cell in row " + std::to_string(rows.size() + 1));
      row.push_back(detail::parse_cell(value, static_cast<const T*>(nullptr)));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw CsvParseError("row " + std::to_string(rows.size() + 1) + " has " +
                          std::to_string(row.size()) + " cells, expected " +
                          std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvParseError("coefficient CSV is empty");
  Matrix<T> out(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      out(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return out;
}

template <typename T>
Matrix<T> read_coefficient_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open coefficient CSV '" + path + "'");
  return read_coefficient_csv<T>(in);
}

}  // namespace sigtensor
