#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace schur {

namespace detail {

inline bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

/// p (p-1) ... (p-k+1)
inline double falling(double p, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (p - i);
  return r;
}

inline double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

/// Generalized binomial coefficient C(p, k).
inline double binom_real(double p, int k) { return falling(p, k) / factorial(k); }

inline double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// |x|^q
inline double abs_pow(double x, double q) { return q == 0.0 ? 1.0 : std::pow(std::abs(x), q); }

/// sign(x) |x|^q, zero at zero
inline double signed_pow(double x, double q) {
  if (x == 0.0) return 0.0;
  return sign_of(x) * (q == 0.0 ? 1.0 : std::pow(std::abs(x), q));
}

inline std::string fmt_num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

class ScalarFunction;
using FnPtr = std::shared_ptr<const ScalarFunction>;

struct PowerSeriesFn {
  std::vector<double> coeffs;  // a_0 ... a_K
  double radius;               // convergence radius, may be inf
};
struct AbsPowerFn { double p; };     // |x|^p with |x|^0 := 1
struct SignedPowerFn { double p; };  // sign(x)|x|^p with value 0 at x = 0
struct ExpFn {};
struct NegLog1mFn {};                // -log(1-x) on (-1,1)
struct NegPowerFn { double p; };     // -(1-x)^p, 0 < p < 1, on (-1,1)
struct ShiftedFn { FnPtr inner; double offset; };  // x -> inner(x + offset)
struct SumFn { std::vector<FnPtr> terms; };
struct ScaledFn { double factor; FnPtr inner; };
struct ReflectedFn { FnPtr inner; };  // x -> inner(-x); backs the even/odd split

/// A scalar function from the closed universe the matrix calculus operates
/// on. Every member knows its symmetric domain (-alpha, alpha), supports
/// exact derivatives where they exist, and exposes Taylor coefficients at 0
/// when the variant is analytic there.
class ScalarFunction {
 public:
  using Variant = std::variant<PowerSeriesFn, AbsPowerFn, SignedPowerFn, ExpFn, NegLog1mFn,
                               NegPowerFn, ShiftedFn, SumFn, ScaledFn, ReflectedFn>;

  static ScalarFunction power_series(std::vector<double> coeffs, double radius) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    for (double c : coeffs)
      if (!std::isfinite(c)) throw std::invalid_argument("power_series: coefficients must be finite");
    if (!(radius > 0.0)) throw std::invalid_argument("power_series: radius must be positive");
    return ScalarFunction(PowerSeriesFn{std::move(coeffs), radius});
  }
  static ScalarFunction abs_power(double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("abs_power: p must be >= 0");
    return ScalarFunction(AbsPowerFn{p});
  }
  static ScalarFunction signed_power(double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("signed_power: p must be >= 0");
    return ScalarFunction(SignedPowerFn{p});
  }
  static ScalarFunction exp_fn() { return ScalarFunction(ExpFn{}); }
  static ScalarFunction neglog1m() { return ScalarFunction(NegLog1mFn{}); }
  static ScalarFunction neg_power(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("neg_power: requires 0 < p < 1");
    return ScalarFunction(NegPowerFn{p});
  }
  static ScalarFunction shifted(ScalarFunction inner, double offset) {
    if (!std::isfinite(offset)) throw std::invalid_argument("shifted: offset must be finite");
    if (std::abs(offset) >= inner.domain_alpha())
      throw std::invalid_argument("shifted: |offset| must stay inside the inner domain");
    return ScalarFunction(ShiftedFn{std::make_shared<ScalarFunction>(std::move(inner)), offset});
  }
  static ScalarFunction sum(std::vector<ScalarFunction> terms) {
    if (terms.empty()) throw std::invalid_argument("sum: needs at least one term");
    SumFn s;
    s.terms.reserve(terms.size());
    for (auto& t : terms) s.terms.push_back(std::make_shared<ScalarFunction>(std::move(t)));
    return ScalarFunction(std::move(s));
  }
  static ScalarFunction scaled(double factor, ScalarFunction inner) {
    if (!std::isfinite(factor)) throw std::invalid_argument("scaled: factor must be finite");
    return ScalarFunction(ScaledFn{factor, std::make_shared<ScalarFunction>(std::move(inner))});
  }
  static ScalarFunction reflected(ScalarFunction inner) {
    return ScalarFunction(ReflectedFn{std::make_shared<ScalarFunction>(std::move(inner))});
  }
  static ScalarFunction zero() { return power_series({0.0}, std::numeric_limits<double>::infinity()); }
  static ScalarFunction constant(double c) {
    return power_series({c}, std::numeric_limits<double>::infinity());
  }
  static ScalarFunction identity() {
    return power_series({0.0, 1.0}, std::numeric_limits<double>::infinity());
  }

  const Variant& variant() const { return v_; }

  /// Half-width alpha of the symmetric domain (-alpha, alpha).
  double domain_alpha() const {
    const double inf = std::numeric_limits<double>::infinity();
    if (auto* ps = std::get_if<PowerSeriesFn>(&v_)) return ps->radius;
    if (std::holds_alternative<NegLog1mFn>(v_) || std::holds_alternative<NegPowerFn>(v_)) return 1.0;
    if (auto* sh = std::get_if<ShiftedFn>(&v_)) return sh->inner->domain_alpha() - std::abs(sh->offset);
    if (auto* su = std::get_if<SumFn>(&v_)) {
      double a = inf;
      for (const auto& t : su->terms) a = std::min(a, t->domain_alpha());
      return a;
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_)) return sc->inner->domain_alpha();
    if (auto* rf = std::get_if<ReflectedFn>(&v_)) return rf->inner->domain_alpha();
    return inf;  // AbsPower, SignedPower, Exp
  }

  double eval(double x) const {
    if (!std::isfinite(x)) throw std::domain_error("eval: argument must be finite");
    const double alpha = domain_alpha();
    if (!(std::abs(x) < alpha)) {
      if (std::holds_alternative<PowerSeriesFn>(v_))
        throw std::domain_error("eval: |x| >= series radius " + detail::fmt_num(alpha));
      throw std::domain_error("eval: x = " + detail::fmt_num(x) + " outside domain (-" +
                              detail::fmt_num(alpha) + ", " + detail::fmt_num(alpha) + ")");
    }
    return eval_unchecked(x);
  }

  /// Exact k-th derivative at x (k = 0 gives the value). Throws where the
  /// derivative does not exist or the variant cannot express it exactly.
  double deriv(double x, int order) const {
    if (order < 0) throw std::invalid_argument("deriv: order must be >= 0");
    if (order == 0) return eval(x);
    const double alpha = domain_alpha();
    if (!(std::abs(x) < alpha))
      throw std::domain_error("deriv: x outside domain (-" + detail::fmt_num(alpha) + ", " +
                              detail::fmt_num(alpha) + ")");
    return deriv_unchecked(x, order);
  }

  /// True when the variant has a Taylor expansion at 0 this code can produce
  /// exactly. AbsPower needs even integer p, SignedPower odd integer p.
  bool analytic_at_zero() const {
    if (auto* ap = std::get_if<AbsPowerFn>(&v_))
      return ap->p == 0.0 || (detail::is_integer(ap->p) && std::fmod(ap->p, 2.0) == 0.0);
    if (auto* sp = std::get_if<SignedPowerFn>(&v_))
      return detail::is_integer(sp->p) && std::fmod(sp->p, 2.0) == 1.0;
    if (auto* sh = std::get_if<ShiftedFn>(&v_)) {
      if (!sh->inner->analytic_at_zero()) return false;
      return sh->inner->series_radius_unchecked() > std::abs(sh->offset);
    }
    if (auto* su = std::get_if<SumFn>(&v_)) {
      for (const auto& t : su->terms)
        if (!t->analytic_at_zero()) return false;
      return true;
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_)) return sc->inner->analytic_at_zero();
    if (auto* rf = std::get_if<ReflectedFn>(&v_)) return rf->inner->analytic_at_zero();
    return true;  // PowerSeries, Exp, NegLog1m, NegPower
  }

  /// Radius of the Taylor expansion at 0.
  double series_radius() const {
    if (!analytic_at_zero())
      throw std::domain_error("series_radius: function is not analytic at 0: " + describe());
    return series_radius_unchecked();
  }

  /// k-th Taylor coefficient at 0, exact per variant.
  double taylor_coeff(int k) const {
    if (k < 0) throw std::invalid_argument("taylor_coeff: k must be >= 0");
    if (!analytic_at_zero())
      throw std::domain_error("taylor_coeff: function is not analytic at 0: " + describe());
    if (auto* ps = std::get_if<PowerSeriesFn>(&v_))
      return k < static_cast<int>(ps->coeffs.size()) ? ps->coeffs[static_cast<std::size_t>(k)] : 0.0;
    if (auto* ap = std::get_if<AbsPowerFn>(&v_)) return ap->p == static_cast<double>(k) ? 1.0 : 0.0;
    if (auto* sp = std::get_if<SignedPowerFn>(&v_)) return sp->p == static_cast<double>(k) ? 1.0 : 0.0;
    if (std::holds_alternative<ExpFn>(v_)) return 1.0 / detail::factorial(k);
    if (std::holds_alternative<NegLog1mFn>(v_)) return k == 0 ? 0.0 : 1.0 / k;
    if (auto* np = std::get_if<NegPowerFn>(&v_)) {
      if (k == 0) return -1.0;
      const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k-1)
      return sign * detail::binom_real(np->p, k);
    }
    if (auto* sh = std::get_if<ShiftedFn>(&v_))
      return sh->inner->deriv(sh->offset, k) / detail::factorial(k);
    if (auto* su = std::get_if<SumFn>(&v_)) {
      double s = 0.0;
      for (const auto& t : su->terms) s += t->taylor_coeff(k);
      return s;
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_)) return sc->factor * sc->inner->taylor_coeff(k);
    if (auto* rf = std::get_if<ReflectedFn>(&v_))
      return (k % 2 == 0 ? 1.0 : -1.0) * rf->inner->taylor_coeff(k);
    throw std::logic_error("taylor_coeff: unhandled variant");
  }

  /// Symbolic derivative inside the same universe. Throws when the result is
  /// not expressible (NegLog1m, NegPower, |x|^p with 0 < p < 1, sign).
  ScalarFunction derivative() const {
    const double inf = std::numeric_limits<double>::infinity();
    if (auto* ps = std::get_if<PowerSeriesFn>(&v_)) {
      std::vector<double> d;
      for (std::size_t j = 1; j < ps->coeffs.size(); ++j)
        d.push_back(static_cast<double>(j) * ps->coeffs[j]);
      if (d.empty()) d.push_back(0.0);
      return power_series(std::move(d), ps->radius);
    }
    if (auto* ap = std::get_if<AbsPowerFn>(&v_)) {
      if (ap->p == 0.0) return zero();
      if (ap->p >= 1.0) return scaled(ap->p, signed_power(ap->p - 1.0));
      throw std::domain_error("derivative: |x|^p with 0 < p < 1 has no derivative at 0");
    }
    if (auto* sp = std::get_if<SignedPowerFn>(&v_)) {
      if (sp->p >= 1.0) return scaled(sp->p, abs_power(sp->p - 1.0));
      throw std::domain_error("derivative: sign-type function is not differentiable at 0");
    }
    if (std::holds_alternative<ExpFn>(v_)) return exp_fn();
    if (std::holds_alternative<NegLog1mFn>(v_) || std::holds_alternative<NegPowerFn>(v_))
      throw std::domain_error("derivative: not expressible in the function universe for " +
                              describe());
    if (auto* sh = std::get_if<ShiftedFn>(&v_)) return shifted(sh->inner->derivative(), sh->offset);
    if (auto* su = std::get_if<SumFn>(&v_)) {
      std::vector<ScalarFunction> d;
      for (const auto& t : su->terms) d.push_back(t->derivative());
      return sum(std::move(d));
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_)) return scaled(sc->factor, sc->inner->derivative());
    if (auto* rf = std::get_if<ReflectedFn>(&v_))
      return scaled(-1.0, reflected(rf->inner->derivative()));
    (void)inf;
    throw std::logic_error("derivative: unhandled variant");
  }

  std::string describe() const {
    if (auto* ps = std::get_if<PowerSeriesFn>(&v_)) {
      std::string s = "series:";
      for (std::size_t j = 0; j < ps->coeffs.size(); ++j)
        s += (j ? "," : "") + detail::fmt_num(ps->coeffs[j]);
      return s + "@" + detail::fmt_num(ps->radius);
    }
    if (auto* ap = std::get_if<AbsPowerFn>(&v_)) return "phi:" + detail::fmt_num(ap->p);
    if (auto* sp = std::get_if<SignedPowerFn>(&v_)) return "psi:" + detail::fmt_num(sp->p);
    if (std::holds_alternative<ExpFn>(v_)) return "exp";
    if (std::holds_alternative<NegLog1mFn>(v_)) return "neglog1m";
    if (auto* np = std::get_if<NegPowerFn>(&v_)) return "negpow:" + detail::fmt_num(np->p);
    if (auto* sh = std::get_if<ShiftedFn>(&v_))
      return "shift:" + detail::fmt_num(sh->offset) + ":" + sh->inner->describe();
    if (auto* su = std::get_if<SumFn>(&v_)) {
      std::string s = "sum:(";
      for (std::size_t j = 0; j < su->terms.size(); ++j)
        s += (j ? "|" : "") + su->terms[j]->describe();
      return s + ")";
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_))
      return "scale:" + detail::fmt_num(sc->factor) + ":" + sc->inner->describe();
    if (auto* rf = std::get_if<ReflectedFn>(&v_)) return "reflect:" + rf->inner->describe();
    return "?";
  }

 private:
  explicit ScalarFunction(Variant v) : v_(std::move(v)) {}

  double series_radius_unchecked() const {
    const double inf = std::numeric_limits<double>::infinity();
    if (auto* ps = std::get_if<PowerSeriesFn>(&v_)) return ps->radius;
    if (std::holds_alternative<NegLog1mFn>(v_) || std::holds_alternative<NegPowerFn>(v_)) return 1.0;
    if (auto* sh = std::get_if<ShiftedFn>(&v_)) {
      const double r = sh->inner->series_radius_unchecked();
      return std::isinf(r) ? inf : r - std::abs(sh->offset);
    }
    if (auto* su = std::get_if<SumFn>(&v_)) {
      double r = inf;
      for (const auto& t : su->terms) r = std::min(r, t->series_radius_unchecked());
      return r;
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_)) return sc->inner->series_radius_unchecked();
    if (auto* rf = std::get_if<ReflectedFn>(&v_)) return rf->inner->series_radius_unchecked();
    return inf;  // Exp and the analytic power cases
  }

  double eval_unchecked(double x) const {
    if (auto* ps = std::get_if<PowerSeriesFn>(&v_)) {
      double r = 0.0;
      for (std::size_t j = ps->coeffs.size(); j-- > 0;) r = r * x + ps->coeffs[j];
      return r;
    }
    if (auto* ap = std::get_if<AbsPowerFn>(&v_)) return detail::abs_pow(x, ap->p);
    if (auto* sp = std::get_if<SignedPowerFn>(&v_)) return detail::signed_pow(x, sp->p);
    if (std::holds_alternative<ExpFn>(v_)) return std::exp(x);
    if (std::holds_alternative<NegLog1mFn>(v_)) return -std::log1p(-x);
    if (auto* np = std::get_if<NegPowerFn>(&v_)) return -std::pow(1.0 - x, np->p);
    if (auto* sh = std::get_if<ShiftedFn>(&v_)) return sh->inner->eval(x + sh->offset);
    if (auto* su = std::get_if<SumFn>(&v_)) {
      double s = 0.0;
      for (const auto& t : su->terms) s += t->eval(x);
      return s;
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_)) return sc->factor * sc->inner->eval(x);
    if (auto* rf = std::get_if<ReflectedFn>(&v_)) return rf->inner->eval(-x);
    throw std::logic_error("eval: unhandled variant");
  }

  // Derivatives of |x|^p alternate between the absolute and signed power
  // families: (|x|^p)' = p sign(x)|x|^(p-1), (sign(x)|x|^p)' = p |x|^(p-1).
  static double abs_power_deriv(double p, double x, int k) {
    if (p == 0.0) return 0.0;
    if (x != 0.0) {
      const double f = detail::falling(p, k);
      return f * (k % 2 == 0 ? detail::abs_pow(x, p - k) : detail::signed_pow(x, p - k));
    }
    if (detail::is_integer(p) && std::fmod(p, 2.0) == 0.0)
      return p == static_cast<double>(k) ? detail::factorial(k) : 0.0;
    if (k < p) return 0.0;
    throw std::domain_error("deriv: |x|^" + detail::fmt_num(p) + " has no order-" +
                            std::to_string(k) + " derivative at 0");
  }

  static double signed_power_deriv(double p, double x, int k) {
    if (x != 0.0) {
      if (p == 0.0) return 0.0;  // locally constant sign
      const double f = detail::falling(p, k);
      return f * (k % 2 == 0 ? detail::signed_pow(x, p - k) : detail::abs_pow(x, p - k));
    }
    if (detail::is_integer(p) && std::fmod(p, 2.0) == 1.0)
      return p == static_cast<double>(k) ? detail::factorial(k) : 0.0;
    if (p != 0.0 && k < p) return 0.0;
    throw std::domain_error("deriv: sign(x)|x|^" + detail::fmt_num(p) + " has no order-" +
                            std::to_string(k) + " derivative at 0");
  }

  double deriv_unchecked(double x, int k) const {
    if (auto* ps = std::get_if<PowerSeriesFn>(&v_)) {
      const int sz = static_cast<int>(ps->coeffs.size());
      double r = 0.0;
      for (int j = sz - 1; j >= k; --j)
        r = r * x + ps->coeffs[static_cast<std::size_t>(j)] * detail::falling(static_cast<double>(j), k);
      return r;
    }
    if (auto* ap = std::get_if<AbsPowerFn>(&v_)) return abs_power_deriv(ap->p, x, k);
    if (auto* sp = std::get_if<SignedPowerFn>(&v_)) return signed_power_deriv(sp->p, x, k);
    if (std::holds_alternative<ExpFn>(v_)) return std::exp(x);
    if (std::holds_alternative<NegLog1mFn>(v_))
      return detail::factorial(k - 1) / std::pow(1.0 - x, static_cast<double>(k));
    if (auto* np = std::get_if<NegPowerFn>(&v_)) {
      const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k+1)
      return sign * detail::falling(np->p, k) * std::pow(1.0 - x, np->p - k);
    }
    if (auto* sh = std::get_if<ShiftedFn>(&v_)) return sh->inner->deriv(x + sh->offset, k);
    if (auto* su = std::get_if<SumFn>(&v_)) {
      double s = 0.0;
      for (const auto& t : su->terms) s += t->deriv(x, k);
      return s;
    }
    if (auto* sc = std::get_if<ScaledFn>(&v_)) return sc->factor * sc->inner->deriv(x, k);
    if (auto* rf = std::get_if<ReflectedFn>(&v_))
      return (k % 2 == 0 ? 1.0 : -1.0) * rf->inner->deriv(-x, k);
    throw std::logic_error("deriv: unhandled variant");
  }

  Variant v_;
};

/// Even/odd decomposition f = f_even + f_odd.
inline std::pair<ScalarFunction, ScalarFunction> even_odd_split(const ScalarFunction& f) {
  ScalarFunction even = ScalarFunction::scaled(
      0.5, ScalarFunction::sum({f, ScalarFunction::reflected(f)}));
  ScalarFunction odd = ScalarFunction::scaled(
      0.5, ScalarFunction::sum({f, ScalarFunction::scaled(-1.0, ScalarFunction::reflected(f))}));
  return {std::move(even), std::move(odd)};
}

}  // namespace schur
