#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur_order/class_certify.hpp"
#include "schur_order/entrywise.hpp"
#include "schur_order/jacobi.hpp"
#include "schur_order/majorization_verify.hpp"
#include "schur_order/matrix.hpp"
#include "schur_order/norms.hpp"
#include "schur_order/scalar_function.hpp"

namespace schur {

/// A constructive search ran out of grid without either finding the claimed
/// violation or refuting its premise; callers map this to a distinct exit.
struct SearchInconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Self-contained falsification evidence. `violated_quantity` is the primary
/// signed quantity; `expected_sign` says which side of zero proves the claim.
/// Re-validation recomputes it from the stored data plus an independent
/// second evaluation (the quadratic form along `eta` where present).
struct Witness {
  std::string kind;
  std::string description;
  std::string fn;  // function in DSL form, e.g. "phi:1.5"
  std::vector<SymmetricMatrix> matrices;
  std::optional<std::vector<double>> eta;
  std::map<std::string, double> params;
  double violated_quantity = 0.0;
  int expected_sign = -1;
};

namespace detail {

/// Gaussian elimination with partial pivoting; m is small (<= 7 here).
inline std::vector<double> solve_gepp(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(piv)]);
    std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(piv)]);
    const double d = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    if (d == 0.0) throw std::runtime_error("solve_gepp: singular system");
    for (int r = col + 1; r < n; ++r) {
      const double factor = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      rhs[static_cast<std::size_t>(r)] -= factor * rhs[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c)
      s -= m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = s / m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return x;
}

inline std::vector<double> moment_row(int n, int k) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    r[static_cast<std::size_t>(i - 1)] = std::pow(static_cast<double>(i), static_cast<double>(k));
  return r;
}

/// Minimum-norm solution of the (rows x n) moment system: rows k in
/// `orth_moments` must annihilate eta, the `norm_moment` row must hit 1.
/// Solved through the normal equations of the underdetermined system.
inline std::vector<double> solve_moment_system(int n, const std::vector<int>& orth_moments,
                                               int norm_moment) {
  std::vector<std::vector<double>> rows;
  for (int k : orth_moments) rows.push_back(moment_row(n, k));
  rows.push_back(moment_row(n, norm_moment));
  const int m = static_cast<int>(rows.size());
  if (m > n) throw std::invalid_argument("moment system: more constraints than dimensions");

  std::vector<std::vector<double>> gram(static_cast<std::size_t>(m),
                                        std::vector<double>(static_cast<std::size_t>(m)));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] *
             rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      gram[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = s;
    }
  std::vector<double> e(static_cast<std::size_t>(m), 0.0);
  e.back() = 1.0;
  const std::vector<double> y = solve_gepp(std::move(gram), std::move(e));
  std::vector<double> eta(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < m; ++r)
      eta[static_cast<std::size_t>(i)] +=
          y[static_cast<std::size_t>(r)] * rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
  return eta;
}

/// Member of the family [1 + t i j], i, j = 1..n.
inline SymmetricMatrix moment_family_matrix(int n, double t) {
  Matrix m(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m.at(i - 1, j - 1) = 1.0 + t * i * j;
  return SymmetricMatrix(std::move(m));
}

/// g(t) = sum_{ij} (1 + t i j)^p eta_i eta_j and its exact t-derivatives.
inline double moment_family_form(int n, double p, const std::vector<double>& eta, double t,
                                 int order) {
  double s = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const double ij = static_cast<double>(i) * j;
      double term = std::pow(1.0 + t * ij, p - order);
      term *= falling(p, order) * std::pow(ij, static_cast<double>(order));
      s += term * eta[static_cast<std::size_t>(i - 1)] * eta[static_cast<std::size_t>(j - 1)];
    }
  return s;
}

inline double norm_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace detail

/// Midpoint-convexity counterexample for |x|^p below the order threshold
/// (non-integer 0 < p < n): a pair A_s >= 0, A_t >= 0 from the family
/// [1 + t i j] whose entrywise p-th powers violate midpoint convexity.
/// The moment vector eta kills the Taylor terms t^2..t^{[p]+1} of the
/// quadratic form, leaving a negative t^{[p]+2} coefficient in charge.
inline Witness lemma52_witness(int n, double p, double check_tol = defaults::check_tol) {
  if (n < 2) throw std::invalid_argument("lemma52_witness: insufficient dimensions (need n >= 2)");
  if (detail::is_integer(p))
    throw std::invalid_argument("lemma52_witness: integer p lies in the class; no witness exists");
  if (!(p > 0.0 && p < static_cast<double>(n)))
    throw std::invalid_argument("lemma52_witness: requires 0 < p < n");

  const int fl = static_cast<int>(std::floor(p));
  std::vector<int> orth;
  for (int k = 2; k <= fl + 1; ++k) orth.push_back(k);
  const std::vector<double> eta = detail::solve_moment_system(n, orth, fl + 2);
  const ScalarFunction f = ScalarFunction::abs_power(p);
  const auto g = [&](double t) { return detail::moment_family_form(n, p, eta, t, 0); };

  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (int k = 1; k <= 40; ++k) {
    const double t0 = std::ldexp(scale, -k);
    const double curv = detail::moment_family_form(n, p, eta, t0, 2);
    const double h = t0 / 16.0;
    const double d1 = (g(t0 + h) - 2.0 * g(t0) + g(t0 - h)) / (h * h);
    const double d2 = (g(t0 + h / 2) - 2.0 * g(t0) + g(t0 - h / 2)) / (h * h / 4.0);
    const double fd = (4.0 * d2 - d1) / 3.0;
    if (!(curv < 0.0 && fd < 0.0)) continue;

    for (const auto& [s, t] : {std::pair{0.0, 2.0 * t0}, std::pair{t0 / 2.0, 1.5 * t0}}) {
      const double mid = 0.5 * (s + t);
      const double gap = g(mid) - 0.5 * (g(s) + g(t));
      if (!(gap > 10.0 * check_tol)) continue;
      const SymmetricMatrix as = detail::moment_family_matrix(n, s);
      const SymmetricMatrix at = detail::moment_family_matrix(n, t);
      const SymmetricMatrix am = detail::moment_family_matrix(n, mid);
      const SymmetricMatrix d =
          0.5 * (apply_entrywise(f, as) + apply_entrywise(f, at)) - apply_entrywise(f, am);
      Witness w;
      w.kind = "lemma52";
      w.fn = f.describe();
      w.description = "midpoint convexity of |x|^" + detail::fmt_num(p) + " fails at order " +
                      std::to_string(n) + " along the family [1 + t i j]";
      w.matrices = {as, at};
      w.eta = eta;
      w.params = {{"n", static_cast<double>(n)}, {"p", p}, {"s", s}, {"t", t}};
      w.violated_quantity = sym_eig(d).values[n - 1];
      w.expected_sign = -1;
      return w;
    }
  }
  throw SearchInconclusive("lemma52_witness: no violation found on the scan grid");
}

/// Sharpness witnesses for the power thresholds. For the positivity class
/// (non-integer p < n - 2) a single matrix A_t >= 0 with f[A_t] not PSD;
/// for the monotonicity class (non-integer p < n - 1) a pair
/// A_t2 >= A_t1 >= 0 with f[A_t2] - f[A_t1] not PSD.
inline Witness fh_sharpness_witness(int n, double p, SClass cls,
                                    double check_tol = defaults::check_tol) {
  if (cls == SClass::s_conv)
    throw std::invalid_argument(
        "fh_sharpness_witness: convexity sharpness is covered by lemma52_witness");
  if (detail::is_integer(p))
    throw std::invalid_argument(
        "fh_sharpness_witness: integer p lies in the class; no witness exists");
  const ScalarFunction f = ScalarFunction::abs_power(p);
  const int fl = static_cast<int>(std::floor(p));
  const double scale = 1.0 / (static_cast<double>(n) * n);

  if (cls == SClass::s_pos) {
    if (n < 3 || !(p > 0.0 && p < n - 2))
      throw std::invalid_argument("fh_sharpness_witness: positivity case needs n >= 3, 0 < p < n-2");
    std::vector<int> orth;
    for (int k = 0; k <= fl + 1; ++k) orth.push_back(k);
    const std::vector<double> eta = detail::solve_moment_system(n, orth, fl + 2);
    for (int k = 1; k <= 40; ++k) {
      const double t0 = std::ldexp(scale, -k);
      const SymmetricMatrix at = detail::moment_family_matrix(n, t0);
      const SymmetricMatrix fat = apply_entrywise(f, at);
      const double quad = fat.quadratic_form(eta);
      const double mineig = sym_eig(fat).values[n - 1];
      if (quad < 0.0 && mineig < -10.0 * check_tol) {
        Witness w;
        w.kind = "fh-spos";
        w.fn = f.describe();
        w.description = "entrywise positivity of |x|^" + detail::fmt_num(p) + " fails at order " +
                        std::to_string(n) + ": [1 + t i j] is PSD, its p-th Hadamard power is not";
        w.matrices = {at};
        w.eta = eta;
        w.params = {{"n", static_cast<double>(n)}, {"p", p}, {"t", t0}};
        w.violated_quantity = mineig;
        w.expected_sign = -1;
        return w;
      }
    }
    throw SearchInconclusive("fh_sharpness_witness: no positivity violation on the scan grid");
  }

  if (n < 2 || !(p > 0.0 && p < n - 1))
    throw std::invalid_argument("fh_sharpness_witness: monotonicity case needs n >= 2, 0 < p < n-1");
  std::vector<int> orth;
  for (int k = 1; k <= fl + 1; ++k) orth.push_back(k);
  const std::vector<double> eta = detail::solve_moment_system(n, orth, fl + 2);
  const auto g = [&](double t) { return detail::moment_family_form(n, p, eta, t, 0); };
  for (int k = 1; k <= 40; ++k) {
    const double t0 = std::ldexp(scale, -k);
    const double slope = detail::moment_family_form(n, p, eta, t0, 1);
    const double h = t0 / 16.0;
    const double s1 = (g(t0 + h) - g(t0 - h)) / (2.0 * h);
    const double s2 = (g(t0 + h / 2) - g(t0 - h / 2)) / h;
    const double fd = (4.0 * s2 - s1) / 3.0;
    if (!(slope < 0.0 && fd < 0.0)) continue;
    const double t1 = t0 / 2.0, t2 = 1.5 * t0;
    const double drop = g(t1) - g(t2);
    if (!(drop > 10.0 * check_tol)) continue;
    const SymmetricMatrix a1 = detail::moment_family_matrix(n, t1);
    const SymmetricMatrix a2 = detail::moment_family_matrix(n, t2);
    const SymmetricMatrix d = apply_entrywise(f, a2) - apply_entrywise(f, a1);
    Witness w;
    w.kind = "fh-smono";
    w.fn = f.describe();
    w.description = "entrywise monotonicity of |x|^" + detail::fmt_num(p) + " fails at order " +
                    std::to_string(n) + " along [1 + t i j] with increasing t";
    w.matrices = {a1, a2};
    w.eta = eta;
    w.params = {{"n", static_cast<double>(n)}, {"p", p}, {"t1", t1}, {"t2", t2}};
    w.violated_quantity = sym_eig(d).values[n - 1];
    w.expected_sign = -1;
    return w;
  }
  throw SearchInconclusive("fh_sharpness_witness: no monotonicity violation on the scan grid");
}

/// The two fixed order-2 counterexamples for the eigenvalue comparison of
/// entrywise vs spectral calculus, plus the pass-side control: (1) the
/// operator norm of the entrywise p-th power (0 < p < 1) exceeds that of the
/// spectral power on a rank-one projection-like matrix; (2) the singular
/// value prefix bound fails for the signed power p = 1.2 at prefix 2 and
/// holds again by p = 1.5.
inline std::vector<Witness> remark64_suite() {
  std::vector<Witness> out;

  {
    const double p = 0.5;
    const ScalarFunction f = ScalarFunction::abs_power(p);
    const SymmetricMatrix a = SymmetricMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    const double lhs = ui_norm(apply_entrywise(f, a), NormKind::operator_norm());
    const double rhs = ui_norm(functional_calculus(f, a), NormKind::operator_norm());
    Witness w;
    w.kind = "remark64-opnorm";
    w.fn = f.describe();
    w.description =
        "operator norm of the entrywise power exceeds the spectral power: 2^(1-p) > 1";
    w.matrices = {a};
    w.params = {{"p", p}};
    w.violated_quantity = lhs - rhs;
    w.expected_sign = 1;
    out.push_back(std::move(w));
  }

  const SymmetricMatrix a = SymmetricMatrix::ones(2);
  const SymmetricMatrix b = SymmetricMatrix::from_rows({{1.0, -1.0}, {-1.0, 1.0}});
  for (const double p : {1.2, 1.5}) {
    const ScalarFunction f = ScalarFunction::signed_power(p);
    const VerifyResult vr = verify_thm63(f, a, b);
    Witness w;
    w.kind = p == 1.2 ? "remark64-prefix" : "remark64-prefix-control";
    w.fn = f.describe();
    w.matrices = {a, b};
    w.params = {{"p", p}};
    w.violated_quantity = -vr.verdict.prefix_margins[1];  // 4 - 2 p 2^(p-1)
    if (p == 1.2) {
      w.expected_sign = 1;
      w.description = "prefix-2 comparison fails for the signed power p = 1.2: 4 > 2 p 2^(p-1)";
    } else {
      w.expected_sign = -1;
      w.description = "pass-side control: p = 1.5 satisfies 4 <= 2 p 2^(p-1)";
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// Affinity obstruction: if monotonicity were required without the PSD
/// restriction on the smaller matrix, the four order-2 families below would
/// force f(a) = f(lambda a) + f((1-lambda) a) and oddness, i.e. f affine.
/// Returns the first family whose image inequality fails, or a no-violation
/// verdict for affine f.
inline Witness prop12_affinity_witness(const ScalarFunction& f, double a, double lambda,
                                       double check_tol = defaults::check_tol) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("prop12_affinity_witness: lambda must lie in (0,1)");
  if (!(a > 0.0 && a < f.domain_alpha()))
    throw std::invalid_argument("prop12_affinity_witness: a must lie in (0, alpha)");

  const double la = lambda * a, ma = (1.0 - lambda) * a;
  struct Family {
    const char* note;
    SymmetricMatrix x, y;
  };
  const std::vector<Family> families = {
      {"f(a) - f((1-l)a) >= |f(l a)|",
       SymmetricMatrix::from_rows({{a, la}, {la, a}}), SymmetricMatrix::diagonal({ma, ma})},
      {"f(l a) >= |f((1-l)a) - f(a)|",
       SymmetricMatrix::from_rows({{la, ma}, {ma, la}}),
       SymmetricMatrix::from_rows({{0.0, a}, {a, 0.0}})},
      {"f(a) >= |f(-a)|", SymmetricMatrix::from_rows({{a, -a}, {-a, a}}), SymmetricMatrix::zero(2)},
      {"-f(-a) >= |f(a)|", SymmetricMatrix::zero(2),
       SymmetricMatrix::from_rows({{-a, a}, {a, -a}})}};

  double min_margin = std::numeric_limits<double>::infinity();
  int idx = 0;
  for (const Family& fam : families) {
    ++idx;
    const SymmetricMatrix d = apply_entrywise(f, fam.x) - apply_entrywise(f, fam.y);
    const double mineig = sym_eig(d).values[1];
    const double scale = std::max(1.0, op_norm(d));
    if (mineig < -check_tol * scale) {
      Witness w;
      w.kind = "prop12-affinity";
      w.fn = f.describe();
      w.description = std::string("unrestricted monotonicity fails on family ") +
                      std::to_string(idx) + ": the images would need " + fam.note;
      w.matrices = {fam.x, fam.y};
      w.params = {{"a", a}, {"lambda", lambda}, {"family", static_cast<double>(idx)}};
      w.violated_quantity = mineig;
      w.expected_sign = -1;
      return w;
    }
    min_margin = std::min(min_margin, mineig);
  }
  Witness w;
  w.kind = "prop12-none";
  w.fn = f.describe();
  w.description = "all four families keep their image inequalities (consistent with affinity)";
  w.params = {{"a", a}, {"lambda", lambda}};
  w.violated_quantity = min_margin;
  w.expected_sign = 1;
  return w;
}

}  // namespace schur
