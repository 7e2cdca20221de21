#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur_order/divided_difference.hpp"
#include "schur_order/entrywise.hpp"
#include "schur_order/jacobi.hpp"
#include "schur_order/majorization.hpp"
#include "schur_order/matrix.hpp"
#include "schur_order/norms.hpp"
#include "schur_order/scalar_function.hpp"

namespace schur {

struct CheckConfig {
  double psd_tol = defaults::psd_tol;
  double check_tol = defaults::check_tol;
  double dd_switch = defaults::dd_switch;
};

/// Outcome of one weak-majorization identity check. `lhs` and `rhs` hold the
/// two compared vectors as computed (before rearrangement); `assumptions`
/// records which hypotheses were checked here and which the caller asserted.
struct VerifyResult {
  MajorizationVerdict verdict;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<std::string> assumptions;
};

/// Two-sided remainder comparison (Hadamard-square and matrix-square bounds)
/// plus the chaining between the two right-hand sides.
struct RemainderResult {
  MajorizationVerdict hadamard;  // against f2 o s((A-B) o (A-B))
  MajorizationVerdict square;    // against f2 o s((A-B)^2)
  MajorizationVerdict chain;     // s((A-B) o (A-B)) <_w s((A-B)^2)
  std::vector<double> lhs;
  std::vector<double> rhs_hadamard;
  std::vector<double> rhs_square;
  std::vector<std::string> assumptions;
};

namespace detail {

inline void require_psd(const SymmetricMatrix& m, double tol, const char* who,
                        std::vector<std::string>& assumptions) {
  const PsdResult r = is_psd(m, tol);
  if (!r.psd)
    throw std::invalid_argument(std::string(who) + ": matrix is not positive semidefinite " +
                                "(min eigenvalue " + fmt_num(r.min_eigenvalue) + ")");
  assumptions.push_back(std::string(who) + ":psd-checked");
}

inline void require_strict_norm(const SymmetricMatrix& m, double alpha, const char* who,
                                std::vector<std::string>& assumptions) {
  const double nrm = op_norm(m);
  if (!(nrm < alpha))
    throw std::domain_error(std::string(who) + ": operator norm " + fmt_num(nrm) +
                            " must be strictly below alpha = " + fmt_num(alpha) +
                            " (boundary case rejected)");
  assumptions.push_back(std::string(who) + ":opnorm-strictly-inside-domain");
}

}  // namespace detail

/// lambda(f[A] - f(0) J) <_w lambda(f(A) - f(0) I) for entrywise-monotone f
/// (caller-asserted class) and A >= 0 with operator norm strictly below
/// alpha. Pairs the entrywise and spectral calculi of the same function.
inline VerifyResult verify_thm61(const ScalarFunction& f, const SymmetricMatrix& a,
                                 const CheckConfig& cfg = {}) {
  VerifyResult r;
  r.assumptions.push_back("f:s-mono:caller-asserted");
  detail::require_psd(a, cfg.psd_tol, "A", r.assumptions);
  detail::require_strict_norm(a, f.domain_alpha(), "A", r.assumptions);

  const double f0 = f.eval(0.0);
  const SymmetricMatrix lhs_m = apply_entrywise(f, a) - f0 * SymmetricMatrix::ones(a.n());
  const SymmetricMatrix rhs_m = functional_calculus(f, a) - f0 * SymmetricMatrix::identity(a.n());
  r.lhs = sym_eig(lhs_m).values.values();
  r.rhs = sym_eig(rhs_m).values.values();
  r.verdict = weak_majorize(r.lhs, r.rhs, cfg.check_tol);
  return r;
}

/// s(f[A] - f[B]) <_w f[1](lambda(A), lambda(B)) o s(A - B), pairing the
/// i-th largest eigenvalues with the i-th largest singular value. Needs an
/// entrywise-convex f with f'(0) >= 0 (caller-asserted) and PSD A, B with
/// operator norms strictly below alpha. A and B need not be ordered.
inline VerifyResult verify_thm63(const ScalarFunction& f, const SymmetricMatrix& a,
                                 const SymmetricMatrix& b, const CheckConfig& cfg = {}) {
  if (a.n() != b.n()) throw std::invalid_argument("verify_thm63: dimension mismatch");
  if (a.n() < 2) throw std::invalid_argument("verify_thm63: requires n >= 2");
  VerifyResult r;
  r.assumptions.push_back("f:s-conv-and-deriv0-nonneg:caller-asserted");
  detail::require_psd(a, cfg.psd_tol, "A", r.assumptions);
  detail::require_psd(b, cfg.psd_tol, "B", r.assumptions);
  detail::require_strict_norm(a, f.domain_alpha(), "A", r.assumptions);
  detail::require_strict_norm(b, f.domain_alpha(), "B", r.assumptions);

  r.lhs = singular_values(apply_entrywise(f, a) - apply_entrywise(f, b)).values();
  const Spectrum la = sym_eig(a).values;
  const Spectrum lb = sym_eig(b).values;
  const Spectrum s = singular_values(a - b);
  r.rhs.reserve(static_cast<std::size_t>(a.n()));
  for (int i = 0; i < a.n(); ++i)
    r.rhs.push_back(div_diff1(f, la[i], lb[i], cfg.dd_switch) * s[i]);
  r.verdict = weak_majorize(r.lhs, r.rhs, cfg.check_tol);
  return r;
}

namespace detail {

inline RemainderResult remainder_compare(const ScalarFunction& f, const SymmetricMatrix& a,
                                         const SymmetricMatrix& b,
                                         const std::vector<double>& weights,
                                         const CheckConfig& cfg) {
  RemainderResult r;
  const SymmetricMatrix diff = a - b;
  const SymmetricMatrix remainder =
      apply_entrywise(f, a) - apply_entrywise(f, b) - schur_product(diff, apply_entrywise_deriv(f, b));
  r.lhs = singular_values(remainder).values();

  const std::vector<double> s_had = singular_values(schur_product(diff, diff)).values();
  const std::vector<double> s_sq = singular_values(sym_square(diff)).values();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    r.rhs_hadamard.push_back(weights[i] * s_had[i]);
    r.rhs_square.push_back(weights[i] * s_sq[i]);
  }
  r.hadamard = weak_majorize(r.lhs, r.rhs_hadamard, cfg.check_tol);
  r.square = weak_majorize(r.lhs, r.rhs_square, cfg.check_tol);
  r.chain = weak_majorize(s_had, s_sq, cfg.check_tol);
  return r;
}

}  // namespace detail

/// Second-order remainder bound: s(f[A] - f[B] - (A-B) o f'[B]) is weakly
/// majorized by f[2](lambda_i(A), lambda_i(B), lambda_i(B)) o s((A-B) o (A-B))
/// and by the same weights against s((A-B)^2). Needs differentiable f with
/// f' entrywise-convex and f''(0) >= 0 (caller-asserted).
inline RemainderResult verify_prop65(const ScalarFunction& f, const SymmetricMatrix& a,
                                     const SymmetricMatrix& b, const CheckConfig& cfg = {}) {
  if (a.n() != b.n()) throw std::invalid_argument("verify_prop65: dimension mismatch");
  std::vector<std::string> assumptions;
  assumptions.push_back("f:deriv-s-conv-and-deriv2-at-0-nonneg:caller-asserted");
  detail::require_psd(a, cfg.psd_tol, "A", assumptions);
  detail::require_psd(b, cfg.psd_tol, "B", assumptions);
  detail::require_strict_norm(a, f.domain_alpha(), "A", assumptions);
  detail::require_strict_norm(b, f.domain_alpha(), "B", assumptions);

  const Spectrum la = sym_eig(a).values;
  const Spectrum lb = sym_eig(b).values;
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(a.n()));
  for (int i = 0; i < a.n(); ++i) w.push_back(div_diff2(f, la[i], lb[i], lb[i], cfg.dd_switch));
  RemainderResult r = detail::remainder_compare(f, a, b, w, cfg);
  r.assumptions = std::move(assumptions);
  return r;
}

/// Diagonal-scaled difference bound: s(f[A] - f[B]) <_w
/// (max_i f[1](a_ii, b_ii)) s(A - B) for entrywise-monotone f. Entry bounds
/// suffice here; n = 2 additionally needs continuous differentiability,
/// which the caller asserts.
inline VerifyResult verify_prop66(const ScalarFunction& f, const SymmetricMatrix& a,
                                  const SymmetricMatrix& b, const CheckConfig& cfg = {}) {
  if (a.n() != b.n()) throw std::invalid_argument("verify_prop66: dimension mismatch");
  if (a.n() < 2) throw std::invalid_argument("verify_prop66: requires n >= 2");
  VerifyResult r;
  r.assumptions.push_back("f:s-mono:caller-asserted");
  if (a.n() == 2) r.assumptions.push_back("f:continuously-differentiable:caller-asserted(n=2)");
  detail::require_psd(a, cfg.psd_tol, "A", r.assumptions);
  detail::require_psd(b, cfg.psd_tol, "B", r.assumptions);

  double c = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.n(); ++i)
    c = std::max(c, div_diff1(f, a.at(i, i), b.at(i, i), cfg.dd_switch));
  r.lhs = singular_values(apply_entrywise(f, a) - apply_entrywise(f, b)).values();
  const Spectrum s = singular_values(a - b);
  for (int i = 0; i < a.n(); ++i) r.rhs.push_back(c * s[i]);
  r.verdict = weak_majorize(r.lhs, r.rhs, cfg.check_tol);
  return r;
}

/// Diagonal-scaled remainder bound: like verify_prop65 but with the scalar
/// weight max_i f[2](a_ii, b_ii, b_ii). Requires n >= 3 and entrywise-convex
/// f (caller-asserted).
inline RemainderResult verify_prop67(const ScalarFunction& f, const SymmetricMatrix& a,
                                     const SymmetricMatrix& b, const CheckConfig& cfg = {}) {
  if (a.n() != b.n()) throw std::invalid_argument("verify_prop67: dimension mismatch");
  if (a.n() < 3) throw std::invalid_argument("verify_prop67: requires n >= 3");
  std::vector<std::string> assumptions;
  assumptions.push_back("f:s-conv:caller-asserted");
  detail::require_psd(a, cfg.psd_tol, "A", assumptions);
  detail::require_psd(b, cfg.psd_tol, "B", assumptions);

  double c = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.n(); ++i)
    c = std::max(c, div_diff2(f, a.at(i, i), b.at(i, i), b.at(i, i), cfg.dd_switch));
  std::vector<double> w(static_cast<std::size_t>(a.n()), c);
  RemainderResult r = detail::remainder_compare(f, a, b, w, cfg);
  r.assumptions = std::move(assumptions);
  return r;
}

struct NormRow {
  std::string norm;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs
};

/// |||f[A] - f[B]||| vs (max_i f[1](a_ii, b_ii)) |||A - B||| across a set of
/// unitarily invariant norms. Follows from the prefix comparison whenever
/// the scaled bound holds, since Ky Fan norms generate the family.
inline std::vector<NormRow> norm_inequality_report(const ScalarFunction& f,
                                                   const SymmetricMatrix& a,
                                                   const SymmetricMatrix& b,
                                                   const std::vector<NormKind>& kinds,
                                                   const CheckConfig& cfg = {}) {
  if (a.n() != b.n()) throw std::invalid_argument("norm_inequality_report: dimension mismatch");
  double c = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.n(); ++i)
    c = std::max(c, div_diff1(f, a.at(i, i), b.at(i, i), cfg.dd_switch));
  const Spectrum sd = singular_values(apply_entrywise(f, a) - apply_entrywise(f, b));
  const Spectrum s = singular_values(a - b);
  std::vector<NormRow> rows;
  rows.reserve(kinds.size());
  for (const NormKind& k : kinds) {
    const double lhs = ui_norm(sd, k);
    const double rhs = c * ui_norm(s, k);
    rows.push_back(NormRow{k.name(), lhs, rhs, rhs - lhs});
  }
  return rows;
}

}  // namespace schur
