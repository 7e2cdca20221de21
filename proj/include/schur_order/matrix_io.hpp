#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur_order/matrix.hpp"

namespace schur {

struct MatrixCsv {
  SymmetricMatrix matrix;
  double max_asymmetry = 0.0;
  // True when the raw data was asymmetric beyond tolerance and got averaged.
  bool symmetrized = false;
};

namespace detail {

inline double parse_double(const std::string& tok, int line_no) {
  std::size_t b = tok.find_first_not_of(" \t\r");
  std::size_t e = tok.find_last_not_of(" \t\r");
  if (b == std::string::npos)
    throw std::invalid_argument("matrix csv: empty field on line " + std::to_string(line_no));
  const std::string t = tok.substr(b, e - b + 1);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("matrix csv: bad number '" + t + "' on line " +
                                std::to_string(line_no));
  }
}

}  // namespace detail

/// Reads the matrix format: first line the dimension n, then n rows of n
/// comma-separated entries. Data asymmetric beyond tolerance is averaged
/// with its transpose and flagged for the caller to warn about.
inline MatrixCsv load_matrix_csv(std::istream& in, double symmetry_tol = defaults::symmetry_tol) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw std::invalid_argument("matrix csv: empty input");
  ++line_no;
  int n = 0;
  try {
    n = std::stoi(line);
  } catch (const std::exception&) {
    throw std::invalid_argument("matrix csv: first line must be the dimension");
  }
  if (n < 1) throw std::invalid_argument("matrix csv: dimension must be at least 1");

  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw std::invalid_argument("matrix csv: expected " + std::to_string(n) + " rows");
    ++line_no;
    std::stringstream row(line);
    std::string tok;
    int j = 0;
    while (std::getline(row, tok, ',')) {
      if (j >= n) throw std::invalid_argument("matrix csv: too many entries on line " +
                                              std::to_string(line_no));
      m.at(i, j) = detail::parse_double(tok, line_no);
      ++j;
    }
    if (j != n)
      throw std::invalid_argument("matrix csv: expected " + std::to_string(n) +
                                  " entries on line " + std::to_string(line_no));
  }

  const double asym = m.max_asymmetry();
  const double scale = std::max(1.0, m.max_abs());
  const bool beyond = asym > symmetry_tol * scale;
  Matrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.at(i, j) = 0.5 * (m.at(i, j) + m.at(j, i));
  return MatrixCsv{SymmetricMatrix(std::move(s)), asym, beyond};
}

inline MatrixCsv load_matrix_csv_file(const std::string& path,
                                      double symmetry_tol = defaults::symmetry_tol) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("matrix csv: cannot open '" + path + "'");
  return load_matrix_csv(in, symmetry_tol);
}

inline void save_matrix_csv(std::ostream& out, const SymmetricMatrix& m) {
  out << m.n() << "\n";
  out.precision(17);
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) out << (j ? "," : "") << m.at(i, j);
    out << "\n";
  }
}

inline void save_matrix_csv_file(const std::string& path, const SymmetricMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("matrix csv: cannot open '" + path + "' for writing");
  save_matrix_csv(out, m);
}

}  // namespace schur
