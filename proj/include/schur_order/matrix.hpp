#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schur {

namespace defaults {
inline constexpr double symmetry_tol = 1e-12;
inline constexpr double eig_tol = 1e-12;
inline constexpr double psd_tol = 1e-9;
inline constexpr double check_tol = 1e-9;
inline constexpr double coeff_tol = 1e-12;
inline constexpr double dd_switch = 1e-6;
inline constexpr double headroom = 0.95;
// Stand-in half-width used by grids and samplers when the domain is all of R.
inline constexpr double working_box = 10.0;
inline constexpr int coeff_depth = 64;
inline constexpr int grid_points = 64;
}  // namespace defaults

/// Dense square real matrix, row-major.
class Matrix {
 public:
  explicit Matrix(int n) : n_(check_dim(n)), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  Matrix(int n, std::vector<double> entries) : n_(check_dim(n)), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(n_) * n_)
      throw std::invalid_argument("Matrix: entry count does not match dimension");
    for (double x : a_)
      if (!std::isfinite(x)) throw std::invalid_argument("Matrix: entries must be finite");
  }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n)
        throw std::invalid_argument("Matrix: rows must form a square matrix");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return Matrix(n, std::move(flat));
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int n() const { return n_; }

  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& data() const { return a_; }

  Matrix transpose() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double max_asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) m = std::max(m, std::abs(at(i, j) - at(j, i)));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_dim(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_dim(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(double c) {
    for (double& x : a_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(double c, Matrix a) { return a *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same_dim(b);
    const int n = a.n_;
    Matrix c(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const double aik = a.at(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }

 private:
  static int check_dim(int n) {
    if (n < 1) throw std::invalid_argument("Matrix: dimension must be at least 1");
    return n;
  }
  void check_same_dim(const Matrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Matrix: dimension mismatch");
  }

  int n_;
  std::vector<double> a_;
};

/// M^t M; symmetric by construction (bitwise, since IEEE products commute).
inline Matrix gram(const Matrix& g) {
  const int n = g.n();
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += g.at(k, i) * g.at(k, j);
      m.at(i, j) = s;
    }
  return m;
}

/// Real symmetric matrix. Symmetry is validated on construction, never repaired.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Matrix m, double symmetry_tol = defaults::symmetry_tol)
      : m_(std::move(m)) {
    if (symmetry_tol < 0.0) throw std::invalid_argument("SymmetricMatrix: negative tolerance");
    const double scale = std::max(1.0, m_.max_abs());
    if (m_.max_asymmetry() > symmetry_tol * scale)
      throw std::invalid_argument("SymmetricMatrix: input is not symmetric within tolerance (" +
                                  std::to_string(m_.max_asymmetry()) + ")");
  }

  static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                   double symmetry_tol = defaults::symmetry_tol) {
    return SymmetricMatrix(Matrix::from_rows(rows), symmetry_tol);
  }

  static SymmetricMatrix zero(int n) { return SymmetricMatrix(Matrix(n)); }
  static SymmetricMatrix identity(int n) { return SymmetricMatrix(Matrix::identity(n)); }

  /// All-ones matrix J.
  static SymmetricMatrix ones(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = 1.0;
    return SymmetricMatrix(std::move(m));
  }

  static SymmetricMatrix diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
    return SymmetricMatrix(std::move(m));
  }

  /// Rank-one v v^t.
  static SymmetricMatrix outer(const std::vector<double>& v) {
    Matrix m(static_cast<int>(v.size()));
    for (int i = 0; i < m.n(); ++i)
      for (int j = 0; j < m.n(); ++j)
        m.at(i, j) = v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    return SymmetricMatrix(std::move(m));
  }

  int n() const { return m_.n(); }
  double at(int i, int j) const { return m_.at(i, j); }
  const Matrix& dense() const { return m_; }

  std::vector<double> diag() const {
    std::vector<double> d(static_cast<std::size_t>(n()));
    for (int i = 0; i < n(); ++i) d[static_cast<std::size_t>(i)] = at(i, i);
    return d;
  }

  double max_abs() const { return m_.max_abs(); }
  double frobenius() const { return m_.frobenius(); }

  double quadratic_form(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != n())
      throw std::invalid_argument("quadratic_form: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) s += at(i, j) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    return s;
  }

  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return SymmetricMatrix(a.m_ + b.m_);
  }
  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return SymmetricMatrix(a.m_ - b.m_);
  }
  friend SymmetricMatrix operator*(double c, const SymmetricMatrix& a) {
    return SymmetricMatrix(c * a.m_);
  }

 private:
  Matrix m_;
};

/// A * A as a symmetric matrix (the square of a symmetric matrix is symmetric).
inline SymmetricMatrix sym_square(const SymmetricMatrix& a) {
  return SymmetricMatrix(a.dense() * a.dense());
}

/// Non-increasing real vector (eigenvalues, singular values).
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values) : v_(std::move(values)) {
    if (v_.empty()) throw std::invalid_argument("Spectrum: empty");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (!std::isfinite(v_[i])) throw std::invalid_argument("Spectrum: values must be finite");
      if (i > 0 && v_[i] > v_[i - 1])
        throw std::invalid_argument("Spectrum: values must be non-increasing");
    }
  }

  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return v_; }

  double sum() const {
    double s = 0.0;
    for (double x : v_) s += x;
    return s;
  }

 private:
  std::vector<double> v_;
};

}  // namespace schur
