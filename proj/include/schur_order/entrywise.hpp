#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "schur_order/jacobi.hpp"
#include "schur_order/matrix.hpp"
#include "schur_order/scalar_function.hpp"

namespace schur {

/// f[A]: apply f to every entry. Symmetry of the result is inherited from
/// the argument, never repaired here.
inline SymmetricMatrix apply_entrywise(const ScalarFunction& f, const SymmetricMatrix& a) {
  const int n = a.n();
  const double alpha = f.domain_alpha();
  Matrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = a.at(i, j);
      if (!(std::abs(x) < alpha))
        throw std::domain_error("apply_entrywise: entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") = " + detail::fmt_num(x) +
                                " outside domain (-" + detail::fmt_num(alpha) + ", " +
                                detail::fmt_num(alpha) + ")");
      r.at(i, j) = f.eval(x);
    }
  return SymmetricMatrix(std::move(r));
}

/// Entrywise first derivative f'[A] (used by the remainder inequalities).
inline SymmetricMatrix apply_entrywise_deriv(const ScalarFunction& f, const SymmetricMatrix& a) {
  const int n = a.n();
  Matrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = f.deriv(a.at(i, j), 1);
  return SymmetricMatrix(std::move(r));
}

/// Hadamard product A o B.
inline SymmetricMatrix schur_product(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("schur_product: dimension mismatch");
  Matrix r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r.at(i, j) = a.at(i, j) * b.at(i, j);
  return SymmetricMatrix(std::move(r));
}

/// Hadamard power A^(k); k = 0 gives the all-ones matrix.
inline SymmetricMatrix schur_power(const SymmetricMatrix& a, int k) {
  if (k < 0) throw std::invalid_argument("schur_power: exponent must be >= 0");
  SymmetricMatrix r = SymmetricMatrix::ones(a.n());
  for (int i = 0; i < k; ++i) r = schur_product(r, a);
  return r;
}

/// Spectral calculus f(A) = Q f(Lambda) Q^t. Every eigenvalue must lie in
/// the domain of f.
inline SymmetricMatrix functional_calculus(const ScalarFunction& f, const SymmetricMatrix& a) {
  const EigDecomposition e = sym_eig(a);
  const double alpha = f.domain_alpha();
  std::vector<double> fv(static_cast<std::size_t>(e.values.size()));
  for (int i = 0; i < e.values.size(); ++i) {
    const double lam = e.values[i];
    if (!(std::abs(lam) < alpha))
      throw std::domain_error("functional_calculus: eigenvalue " + detail::fmt_num(lam) +
                              " outside domain (-" + detail::fmt_num(alpha) + ", " +
                              detail::fmt_num(alpha) + ")");
    fv[static_cast<std::size_t>(i)] = f.eval(lam);
  }
  const int n = a.n();
  Matrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += fv[static_cast<std::size_t>(k)] * e.basis.at(i, k) * e.basis.at(j, k);
      r.at(i, j) = s;
    }
  return SymmetricMatrix(std::move(r), 1e-9);
}

struct SeriesEntrywiseResult {
  SymmetricMatrix value;
  double tail_bound;  // bound on the entrywise truncation error
};

/// Partial sum sum_{k<=K} a_k A^(k) of the Taylor expansion of f applied
/// entrywise, plus a truncation bound from the scalar tail at the largest
/// entry magnitude.
inline SeriesEntrywiseResult series_entrywise(const ScalarFunction& f, const SymmetricMatrix& a,
                                              int terms = defaults::coeff_depth) {
  if (terms < 1) throw std::invalid_argument("series_entrywise: need at least one term");
  const double m = a.max_abs();
  const double radius = f.series_radius();
  if (!(m < radius))
    throw std::domain_error("series_entrywise: max |entry| = " + detail::fmt_num(m) +
                            " >= series radius " + detail::fmt_num(radius));

  const int n = a.n();
  Matrix acc(n);
  Matrix power(n);  // running Hadamard power, starts at A^(0) = J
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) power.at(i, j) = 1.0;
  for (int k = 0; k < terms; ++k) {
    const double c = f.taylor_coeff(k);
    if (c != 0.0)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc.at(i, j) += c * power.at(i, j);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) power.at(i, j) *= a.at(i, j);
  }

  // Scalar tail sum_{k>K} |a_k| m^k, summed until it stops moving, with a
  // geometric extension when the term ratio settles below 1.
  double tail = 0.0;
  double prev = 0.0;
  double ratio = 0.0;
  double mk = std::pow(m, terms);
  const int extra = 256;
  for (int k = terms; k < terms + extra; ++k) {
    const double term = std::abs(f.taylor_coeff(k)) * mk;
    tail += term;
    if (prev > 0.0 && term > 0.0) ratio = std::max(ratio, term / prev);
    prev = term;
    mk *= m;
    if (term < 1e-300) {
      prev = 0.0;
      break;
    }
  }
  if (prev > 0.0) {
    if (ratio > 0.0 && ratio < 1.0)
      tail += prev * ratio / (1.0 - ratio);
    else
      tail = std::numeric_limits<double>::infinity();
  }
  return SeriesEntrywiseResult{SymmetricMatrix(std::move(acc)), tail};
}

}  // namespace schur
