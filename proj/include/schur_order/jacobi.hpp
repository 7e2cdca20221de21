#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "schur_order/matrix.hpp"

namespace schur {

struct EigDecomposition {
  Spectrum values;  // non-increasing
  Matrix basis;     // columns hold the matching orthonormal eigenvectors
};

namespace detail {

inline double off_diagonal_norm(const Matrix& w) {
  double s = 0.0;
  for (int p = 0; p < w.n(); ++p)
    for (int q = p + 1; q < w.n(); ++q) s += 2.0 * w.at(p, q) * w.at(p, q);
  return std::sqrt(s);
}

}  // namespace detail

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method.
/// Rotations zero one off-diagonal pair at a time; the off-diagonal mass
/// decreases monotonically and the sweep count stays small for n <= 12.
inline EigDecomposition sym_eig(const SymmetricMatrix& m) {
  const int n = m.n();
  Matrix w = m.dense();
  Matrix q = Matrix::identity(n);

  const double stop = 1e-15 * std::max(1e-300, m.frobenius());
  const int max_sweeps = 64;
  int sweep = 0;
  while (detail::off_diagonal_norm(w) > stop) {
    if (++sweep > max_sweeps)
      throw std::runtime_error("sym_eig: Jacobi iteration failed to converge");
    for (int p = 0; p < n - 1; ++p) {
      for (int qq = p + 1; qq < n; ++qq) {
        const double apq = w.at(p, qq);
        if (apq == 0.0) continue;
        const double theta = (w.at(qq, qq) - w.at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double wpp = w.at(p, p), wqq = w.at(qq, qq);
        w.at(p, p) = wpp - t * apq;
        w.at(qq, qq) = wqq + t * apq;
        w.at(p, qq) = 0.0;
        w.at(qq, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == qq) continue;
          const double wrp = w.at(r, p), wrq = w.at(r, qq);
          w.at(r, p) = wrp - s * (wrq + tau * wrp);
          w.at(p, r) = w.at(r, p);
          w.at(r, qq) = wrq + s * (wrp - tau * wrq);
          w.at(qq, r) = w.at(r, qq);
        }
        for (int r = 0; r < n; ++r) {
          const double qrp = q.at(r, p), qrq = q.at(r, qq);
          q.at(r, p) = qrp - s * (qrq + tau * qrp);
          q.at(r, qq) = qrq + s * (qrp - tau * qrq);
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&w](int a, int b) { return w.at(a, a) > w.at(b, b); });

  std::vector<double> values(static_cast<std::size_t>(n));
  Matrix basis(n);
  for (int j = 0; j < n; ++j) {
    values[static_cast<std::size_t>(j)] = w.at(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    for (int r = 0; r < n; ++r) basis.at(r, j) = q.at(r, order[static_cast<std::size_t>(j)]);
  }
  return EigDecomposition{Spectrum(std::move(values)), std::move(basis)};
}

/// Q diag(values) Q^t.
inline SymmetricMatrix eig_reconstruct(const EigDecomposition& e) {
  const int n = e.basis.n();
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += e.values[k] * e.basis.at(i, k) * e.basis.at(j, k);
      m.at(i, j) = s;
    }
  return SymmetricMatrix(std::move(m), 1e-9);
}

struct PsdResult {
  bool psd;
  double min_eigenvalue;
};

/// Positive semidefiniteness up to a relative eigenvalue tolerance:
/// true iff min eig >= -tol * max(1, operator norm).
inline PsdResult is_psd(const SymmetricMatrix& m, double tol = defaults::psd_tol) {
  if (tol < 0.0) throw std::invalid_argument("is_psd: tolerance must be nonnegative");
  const Spectrum ev = sym_eig(m).values;
  const double lo = ev[ev.size() - 1];
  const double op = std::max(std::abs(ev[0]), std::abs(lo));
  return PsdResult{lo >= -tol * std::max(1.0, op), lo};
}

/// Loewner order: a >= b iff a - b is positive semidefinite.
inline bool loewner_geq(const SymmetricMatrix& a, const SymmetricMatrix& b,
                        double tol = defaults::psd_tol) {
  if (a.n() != b.n()) throw std::invalid_argument("loewner_geq: dimension mismatch");
  return is_psd(a - b, tol).psd;
}

/// Singular values, non-increasing. Symmetric input uses |eigenvalues|
/// directly (full precision); otherwise the Gram route sqrt(eig(M^t M)).
inline Spectrum singular_values(const Matrix& m) {
  std::vector<double> s;
  if (m.max_asymmetry() <= defaults::symmetry_tol * std::max(1.0, m.max_abs())) {
    const Spectrum ev = sym_eig(SymmetricMatrix(m)).values;
    s.reserve(static_cast<std::size_t>(ev.size()));
    for (int i = 0; i < ev.size(); ++i) s.push_back(std::abs(ev[i]));
  } else {
    const Spectrum ev = sym_eig(SymmetricMatrix(gram(m), 1e-6)).values;
    s.reserve(static_cast<std::size_t>(ev.size()));
    for (int i = 0; i < ev.size(); ++i) s.push_back(std::sqrt(std::max(0.0, ev[i])));
  }
  std::stable_sort(s.begin(), s.end(), [](double a, double b) { return a > b; });
  return Spectrum(std::move(s));
}

inline Spectrum singular_values(const SymmetricMatrix& m) { return singular_values(m.dense()); }

/// Operator (spectral) norm of a symmetric matrix.
inline double op_norm(const SymmetricMatrix& m) {
  const Spectrum ev = sym_eig(m).values;
  return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

}  // namespace schur
