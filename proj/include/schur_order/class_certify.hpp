#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur_order/matrix.hpp"
#include "schur_order/scalar_function.hpp"

namespace schur {

/// The three entrywise classes, ordered by inclusion of their defining tests.
enum class SClass { s_pos, s_mono, s_conv };

inline const char* to_string(SClass c) {
  switch (c) {
    case SClass::s_pos: return "s-pos";
    case SClass::s_mono: return "s-mono";
    case SClass::s_conv: return "s-conv";
  }
  return "?";
}

inline SClass sclass_from_string(const std::string& s) {
  if (s == "s-pos" || s == "spos") return SClass::s_pos;
  if (s == "s-mono" || s == "smono") return SClass::s_mono;
  if (s == "s-conv" || s == "sconv") return SClass::s_conv;
  throw std::invalid_argument("unknown class '" + s + "' (expected s-pos, s-mono, s-conv)");
}

struct ClassVerdict {
  bool holds = false;
  double margin = 0.0;  // most-violated gap; nonnegative slack when holds
  std::string witness;  // empty when nothing noteworthy
  std::optional<SymmetricMatrix> witness_a;
  std::optional<SymmetricMatrix> witness_b;
  int witness_trial = -1;
};

/// Sufficient certificate for class membership at every order: all Taylor
/// coefficients from the class's start index (0, 1, or 2) are nonnegative.
inline ClassVerdict certify_class_by_coeffs(const ScalarFunction& f, SClass cls,
                                            int depth = defaults::coeff_depth,
                                            double coeff_tol = defaults::coeff_tol) {
  if (depth < 1) throw std::invalid_argument("certify_class_by_coeffs: depth must be >= 1");
  if (!f.analytic_at_zero())
    throw std::domain_error("certify_class_by_coeffs: not analytic at 0: " + f.describe());
  const int start = cls == SClass::s_pos ? 0 : (cls == SClass::s_mono ? 1 : 2);
  ClassVerdict v;
  v.holds = true;
  v.margin = 0.0;
  bool first = true;
  for (int k = start; k < depth; ++k) {
    const double c = f.taylor_coeff(k);
    if (first || c < v.margin) {
      v.margin = c;
      first = false;
    }
    if (c < -coeff_tol && v.holds) {
      v.holds = false;
      v.witness = "coefficient k=" + std::to_string(k) + " is " + detail::fmt_num(c);
    }
  }
  return v;
}

/// Logarithmically spaced grid in (0, alpha); an unbounded domain uses the
/// standard working box.
inline std::vector<double> make_log_grid(double alpha, int points = defaults::grid_points) {
  if (points < 2) throw std::invalid_argument("make_log_grid: need at least 2 points");
  const double eff = std::isinf(alpha) ? defaults::working_box : alpha;
  if (!(eff > 0.0)) throw std::invalid_argument("make_log_grid: alpha must be positive");
  const double lo = eff * 1e-4, hi = eff * 0.999;
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  return g;
}

/// Grid test for the order-2 positivity class on (0, alpha): nonnegative,
/// non-decreasing, and f(sqrt(st)) <= sqrt(f(s) f(t)) over all grid pairs
/// (equivalently, log f(e^x) is non-decreasing and midpoint-convex).
inline ClassVerdict check_phi_class(const ScalarFunction& f, const std::vector<double>& grid,
                                    double tol = defaults::check_tol) {
  if (grid.size() < 2) throw std::invalid_argument("check_phi_class: grid too small");
  const double alpha = f.domain_alpha();
  std::vector<double> fv(grid.size());
  double fmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < alpha))
      throw std::domain_error("check_phi_class: grid point outside (0, alpha)");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("check_phi_class: grid must be strictly increasing");
    fv[i] = f.eval(grid[i]);
    fmax = std::max(fmax, std::abs(fv[i]));
  }
  const double slack_floor = -tol * std::max(1.0, fmax);

  ClassVerdict v;
  v.holds = true;
  bool first = true;
  const auto consider = [&](double slack, const std::string& what) {
    if (first || slack < v.margin) {
      v.margin = slack;
      first = false;
      if (slack < slack_floor) v.witness = what;
    }
    if (slack < slack_floor) v.holds = false;
  };

  for (std::size_t i = 0; i < grid.size(); ++i)
    consider(fv[i], "f(" + detail::fmt_num(grid[i]) + ") < 0");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    consider(fv[i + 1] - fv[i], "decreasing between " + detail::fmt_num(grid[i]) + " and " +
                                    detail::fmt_num(grid[i + 1]));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double mid = std::sqrt(grid[i] * grid[j]);
      const double rhs = std::sqrt(std::max(0.0, fv[i] * fv[j]));
      consider(rhs - f.eval(mid), "sqrt-submultiplicativity fails at (" +
                                      detail::fmt_num(grid[i]) + ", " + detail::fmt_num(grid[j]) +
                                      ")");
    }
  return v;
}

/// Order-2 entrywise positivity characterization: f restricted to (0, alpha)
/// passes the grid test above, 0 <= f(0) <= f(0+), and |f(-t)| <= f(t).
inline ClassVerdict check_spos2(const ScalarFunction& f, const std::vector<double>& grid,
                                double tol = defaults::check_tol) {
  ClassVerdict v = check_phi_class(f, grid, tol);

  double fmax = std::abs(f.eval(0.0));
  for (double t : grid) fmax = std::max({fmax, std::abs(f.eval(t)), std::abs(f.eval(-t))});
  const double slack_floor = -tol * std::max(1.0, fmax);

  const auto consider = [&](double slack, const std::string& what) {
    if (slack < v.margin) {
      v.margin = slack;
      if (slack < slack_floor) v.witness = what;
    }
    if (slack < slack_floor) v.holds = false;
  };

  const double f0 = f.eval(0.0);
  consider(f0, "f(0) < 0");
  consider(f.eval(grid.front()) - f0, "f(0) > f(0+)");
  for (double t : grid)
    consider(f.eval(t) - std::abs(f.eval(-t)), "|f(-t)| > f(t) at t = " + detail::fmt_num(t));
  return v;
}

/// How firmly class membership at order n is known for f.
enum class HypothesisStatus { valid, invalid, unknown };

inline const char* to_string(HypothesisStatus h) {
  switch (h) {
    case HypothesisStatus::valid: return "valid";
    case HypothesisStatus::invalid: return "invalid";
    case HypothesisStatus::unknown: return "unknown";
  }
  return "?";
}

/// Decide membership of f in the order-n class where a proof is known:
/// power functions are in the class at and above the sharp threshold
/// (n-2 / n-1 / n) and out of it below for non-integer exponents; integer
/// exponents whose power function is a genuine polynomial are in the class
/// at every order, the remaining integer cases are undecided. Analytic
/// functions are decided by the coefficient certificate (one-sided).
inline HypothesisStatus hypothesis_status(const ScalarFunction& f, SClass cls, int n) {
  if (n < 1) throw std::invalid_argument("hypothesis_status: n must be >= 1");
  const double th =
      cls == SClass::s_pos ? n - 2 : (cls == SClass::s_mono ? n - 1 : static_cast<double>(n));
  const auto power_case = [&](double p, bool polynomial_when_integer) {
    if (p >= th) return HypothesisStatus::valid;
    if (!detail::is_integer(p)) return HypothesisStatus::invalid;
    return polynomial_when_integer ? HypothesisStatus::valid : HypothesisStatus::unknown;
  };
  if (const auto* ap = std::get_if<AbsPowerFn>(&f.variant()))
    return power_case(ap->p, std::lround(ap->p) % 2 == 0);  // |x|^p = x^p for even p
  if (const auto* sp = std::get_if<SignedPowerFn>(&f.variant()))
    return power_case(sp->p, std::lround(sp->p) % 2 == 1);  // sign(x)|x|^p = x^p for odd p
  if (f.analytic_at_zero())
    return certify_class_by_coeffs(f, cls).holds ? HypothesisStatus::valid
                                                 : HypothesisStatus::unknown;
  return HypothesisStatus::unknown;
}

}  // namespace schur
