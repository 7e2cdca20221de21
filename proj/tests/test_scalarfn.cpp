#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "schur_order/divided_difference.hpp"
#include "schur_order/scalar_function.hpp"

using namespace schur;
using Catch::Approx;

namespace {

// Central-difference oracle with one Richardson step, for first and second
// derivatives away from kinks.
double fd_deriv(const ScalarFunction& f, double x, int order, double h) {
  const auto d = [&](double step) {
    if (order == 1) return (f.eval(x + step) - f.eval(x - step)) / (2.0 * step);
    return (f.eval(x + step) - 2.0 * f.eval(x) + f.eval(x - step)) / (step * step);
  };
  return (4.0 * d(h / 2) - d(h)) / 3.0;
}

}  // namespace

TEST_CASE("power series evaluation and domain") {
  const ScalarFunction f = ScalarFunction::power_series({1.0, 1.0, 0.5}, 2.0);
  REQUIRE(f.domain_alpha() == 2.0);
  REQUIRE(f.eval(0.0) == 1.0);
  REQUIRE(f.eval(1.0) == Approx(2.5));
  REQUIRE(f.eval(-1.5) == Approx(1.0 - 1.5 + 0.5 * 2.25));
  REQUIRE_THROWS_AS(f.eval(2.0), std::domain_error);
  REQUIRE_THROWS_AS(f.eval(-2.5), std::domain_error);
  REQUIRE(f.taylor_coeff(2) == 0.5);
  REQUIRE(f.taylor_coeff(7) == 0.0);
  REQUIRE(f.analytic_at_zero());
  REQUIRE(f.series_radius() == 2.0);

  REQUIRE_THROWS_AS(ScalarFunction::power_series({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("absolute and signed powers") {
  const ScalarFunction phi = ScalarFunction::abs_power(1.5);
  const ScalarFunction psi = ScalarFunction::signed_power(1.5);
  REQUIRE(phi.eval(-2.0) == Approx(std::pow(2.0, 1.5)));
  REQUIRE(psi.eval(-2.0) == Approx(-std::pow(2.0, 1.5)));
  REQUIRE(phi.eval(0.0) == 0.0);
  REQUIRE(psi.eval(0.0) == 0.0);
  REQUIRE(std::isinf(phi.domain_alpha()));
  REQUIRE_FALSE(phi.analytic_at_zero());

  // phi_0 is constant one; psi_0 is the sign with psi_0(0) = 0
  REQUIRE(ScalarFunction::abs_power(0.0).eval(0.0) == 1.0);
  REQUIRE(ScalarFunction::signed_power(0.0).eval(0.0) == 0.0);
  REQUIRE(ScalarFunction::signed_power(0.0).eval(-3.0) == -1.0);

  // even |x|^p and odd sign(x)|x|^p coincide with x^p on integers
  REQUIRE(ScalarFunction::abs_power(2.0).eval(-3.0) == Approx(9.0));
  REQUIRE(ScalarFunction::signed_power(3.0).eval(-2.0) == Approx(-8.0));
}

TEST_CASE("exp, neglog1m and negpow") {
  const ScalarFunction e = ScalarFunction::exp_fn();
  REQUIRE(e.eval(1.0) == Approx(std::exp(1.0)));
  REQUIRE(std::isinf(e.domain_alpha()));
  REQUIRE(e.taylor_coeff(4) == Approx(1.0 / 24.0));

  const ScalarFunction g = ScalarFunction::neglog1m();
  REQUIRE(g.domain_alpha() == 1.0);
  REQUIRE(g.eval(0.5) == Approx(-std::log(0.5)));
  REQUIRE(g.eval(0.0) == 0.0);
  REQUIRE(g.taylor_coeff(3) == Approx(1.0 / 3.0));
  REQUIRE_THROWS_AS(g.eval(1.0), std::domain_error);

  const ScalarFunction h = ScalarFunction::neg_power(0.5);
  REQUIRE(h.eval(0.0) == -1.0);
  REQUIRE(h.eval(0.75) == Approx(-0.5));
  REQUIRE(h.taylor_coeff(0) == -1.0);
  REQUIRE(h.taylor_coeff(1) == Approx(0.5));
  // -(1-x)^p = -sum binom(p,k)(-x)^k; k >= 1 coefficients are positive
  REQUIRE(h.taylor_coeff(2) == Approx(0.125));
  REQUIRE_THROWS_AS(ScalarFunction::neg_power(1.5), std::invalid_argument);
}

TEST_CASE("shift, sum, scale, reflect combinators") {
  const ScalarFunction f =
      ScalarFunction::shifted(ScalarFunction::neglog1m(), 0.5);  // x -> -log(1-(x+0.5))
  REQUIRE(f.domain_alpha() == Approx(0.5));
  REQUIRE(f.eval(0.2) == Approx(-std::log(0.3)));

  const ScalarFunction s = ScalarFunction::sum(
      {ScalarFunction::exp_fn(), ScalarFunction::scaled(-1.0, ScalarFunction::identity())});
  REQUIRE(s.eval(1.0) == Approx(std::exp(1.0) - 1.0));
  REQUIRE(s.taylor_coeff(1) == Approx(0.0));
  REQUIRE(s.taylor_coeff(2) == Approx(0.5));

  const ScalarFunction r = ScalarFunction::reflected(ScalarFunction::neglog1m());
  REQUIRE(r.eval(-0.5) == Approx(-std::log(0.5)));
  REQUIRE(r.domain_alpha() == 1.0);

  REQUIRE_THROWS_AS(ScalarFunction::shifted(ScalarFunction::neglog1m(), 1.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(ScalarFunction::sum({}), std::invalid_argument);
}

TEST_CASE("exact derivatives match finite differences") {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> dist(0.15, 0.8);
  const std::vector<ScalarFunction> fns = {
      ScalarFunction::exp_fn(),
      ScalarFunction::neglog1m(),
      ScalarFunction::neg_power(0.5),
      ScalarFunction::abs_power(2.5),
      ScalarFunction::signed_power(2.5),
      ScalarFunction::power_series({0.0, 1.0, -0.25, 2.0}, 5.0),
      ScalarFunction::shifted(ScalarFunction::exp_fn(), 0.3),
      ScalarFunction::reflected(ScalarFunction::neglog1m()),
  };
  for (const ScalarFunction& f : fns) {
    for (int rep = 0; rep < 12; ++rep) {
      double x = dist(eng);
      if (std::holds_alternative<ReflectedFn>(f.variant())) x = -x;
      for (int order : {1, 2}) {
        const double exact = f.deriv(x, order);
        const double approx = fd_deriv(f, x, order, 1e-4);
        REQUIRE(exact == Approx(approx).epsilon(1e-6).margin(1e-6));
      }
    }
  }
}

TEST_CASE("derivatives of powers at zero follow the existence rules") {
  // below the order the kink kills the derivative unless the power is an
  // even (abs) or odd (signed) integer
  REQUIRE(ScalarFunction::abs_power(2.5).deriv(0.0, 1) == 0.0);
  REQUIRE(ScalarFunction::abs_power(2.5).deriv(0.0, 2) == 0.0);
  REQUIRE_THROWS_AS(ScalarFunction::abs_power(2.5).deriv(0.0, 3), std::domain_error);
  REQUIRE(ScalarFunction::abs_power(2.0).deriv(0.0, 2) == 2.0);
  REQUIRE(ScalarFunction::abs_power(2.0).deriv(0.0, 3) == 0.0);
  REQUIRE(ScalarFunction::signed_power(3.0).deriv(0.0, 3) == 6.0);
  REQUIRE_THROWS_AS(ScalarFunction::signed_power(2.0).deriv(0.0, 2), std::domain_error);
  REQUIRE_THROWS_AS(ScalarFunction::abs_power(1.0).deriv(0.0, 1), std::domain_error);
  REQUIRE(ScalarFunction::signed_power(1.0).deriv(0.0, 1) == 1.0);
}

TEST_CASE("symbolic derivative objects") {
  const ScalarFunction dphi = ScalarFunction::abs_power(2.5).derivative();
  REQUIRE(dphi.eval(-1.0) == Approx(-2.5));  // 2.5 psi_{1.5}(-1)
  const ScalarFunction dpsi = ScalarFunction::signed_power(2.5).derivative();
  REQUIRE(dpsi.eval(-1.0) == Approx(2.5));  // 2.5 phi_{1.5}(-1)

  const ScalarFunction dexp = ScalarFunction::exp_fn().derivative();
  REQUIRE(dexp.eval(0.7) == Approx(std::exp(0.7)));

  const ScalarFunction dseries = ScalarFunction::power_series({3.0, 2.0, 1.0}, 4.0).derivative();
  REQUIRE(dseries.eval(1.0) == Approx(4.0));
  REQUIRE(dseries.domain_alpha() == 4.0);

  REQUIRE_THROWS_AS(ScalarFunction::neglog1m().derivative(), std::domain_error);
  REQUIRE_THROWS_AS(ScalarFunction::abs_power(0.5).derivative(), std::domain_error);
}

TEST_CASE("even and odd parts") {
  const auto [even, odd] = even_odd_split(ScalarFunction::exp_fn());
  REQUIRE(even.eval(0.6) == Approx(std::cosh(0.6)));
  REQUIRE(odd.eval(0.6) == Approx(std::sinh(0.6)));
  REQUIRE(even.eval(-0.6) == Approx(even.eval(0.6)));
  REQUIRE(odd.eval(-0.6) == Approx(-odd.eval(0.6)));
}

TEST_CASE("describe emits canonical specs") {
  REQUIRE(ScalarFunction::abs_power(1.5).describe() == "phi:1.5");
  REQUIRE(ScalarFunction::signed_power(0.0).describe() == "psi:0");
  REQUIRE(ScalarFunction::exp_fn().describe() == "exp");
  REQUIRE(ScalarFunction::neglog1m().describe() == "neglog1m");
  REQUIRE(ScalarFunction::neg_power(0.5).describe() == "negpow:0.5");
  REQUIRE(ScalarFunction::power_series({0.0, 1.0}, 2.0).describe() == "series:0,1@2");
  REQUIRE(ScalarFunction::identity().describe() == "series:0,1@inf");
  REQUIRE(ScalarFunction::scaled(2.0, ScalarFunction::exp_fn()).describe() == "scale:2:exp");
  REQUIRE(ScalarFunction::shifted(ScalarFunction::exp_fn(), -0.5).describe() ==
          "shift:-0.5:exp");
  REQUIRE(ScalarFunction::reflected(ScalarFunction::neglog1m()).describe() ==
          "reflect:neglog1m");
  REQUIRE(ScalarFunction::sum({ScalarFunction::exp_fn(), ScalarFunction::neglog1m()})
              .describe() == "sum:(exp|neglog1m)");
}

TEST_CASE("first divided differences") {
  const ScalarFunction sq = ScalarFunction::power_series({0.0, 0.0, 1.0},
                                                         std::numeric_limits<double>::infinity());
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = dist(eng), b = dist(eng);
    // f(x) = x^2: f[1](a, b) = a + b exactly
    REQUIRE(div_diff1(sq, a, b) == Approx(a + b).margin(1e-10));
  }
  // coincident arguments switch to the derivative
  REQUIRE(div_diff1(sq, 1.5, 1.5) == Approx(3.0));
  REQUIRE(div_diff1(sq, 1.5, 1.5 + 1e-9) == Approx(3.0).margin(1e-7));
  REQUIRE(div_diff1(ScalarFunction::exp_fn(), 2.0, 2.0) == Approx(std::exp(2.0)));
}

TEST_CASE("second divided differences") {
  const auto inf = std::numeric_limits<double>::infinity();
  const ScalarFunction cube = ScalarFunction::power_series({0.0, 0.0, 0.0, 1.0}, inf);
  const ScalarFunction sq = ScalarFunction::power_series({0.0, 0.0, 1.0}, inf);
  std::mt19937_64 eng(6);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = dist(eng), b = dist(eng), c = dist(eng);
    // f(x) = x^3: f[2](a, b, c) = a + b + c; f(x) = x^2: f[2] = 1
    REQUIRE(div_diff2(cube, a, b, c) == Approx(a + b + c).margin(1e-10));
    REQUIRE(div_diff2(sq, a, b, c) == Approx(1.0).margin(1e-10));
  }
  // degenerate patterns
  REQUIRE(div_diff2(cube, 2.0, 2.0, 2.0) == Approx(6.0));          // f''(2)/2 = 3*2
  REQUIRE(div_diff2(cube, 1.0, 2.0, 2.0) == Approx(5.0));          // a + b + c
  REQUIRE(div_diff2(cube, 2.0, 1.0, 2.0) == Approx(5.0));          // order-free
  REQUIRE(div_diff2(cube, 2.0, 2.0 + 1e-9, 1.0) == Approx(5.0).margin(1e-6));
  REQUIRE(div_diff2(ScalarFunction::exp_fn(), 0.3, 0.3, 0.3) ==
          Approx(0.5 * std::exp(0.3)));
}
