#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "schur_order/entrywise.hpp"
#include "schur_order/jacobi.hpp"
#include "schur_order/norms.hpp"
#include "schur_order/sampling.hpp"

using namespace schur;
using Catch::Approx;

TEST_CASE("entrywise application") {
  const SymmetricMatrix a = SymmetricMatrix::from_rows({{1.0, -2.0}, {-2.0, 4.0}});
  const SymmetricMatrix sq = apply_entrywise(
      ScalarFunction::power_series({0.0, 0.0, 1.0}, std::numeric_limits<double>::infinity()), a);
  REQUIRE(sq.at(0, 0) == 1.0);
  REQUIRE(sq.at(0, 1) == 4.0);
  REQUIRE(sq.at(1, 1) == 16.0);
  REQUIRE((sq - schur_product(a, a)).max_abs() == 0.0);

  const SymmetricMatrix dphi =
      apply_entrywise_deriv(ScalarFunction::abs_power(2.0), a);  // 2 psi_1 = 2x
  REQUIRE(dphi.at(0, 1) == Approx(-4.0));

  // domain violations name the offending entry
  const SymmetricMatrix off = SymmetricMatrix::from_rows({{0.5, -2.0}, {-2.0, 0.25}});
  REQUIRE_THROWS_WITH(apply_entrywise(ScalarFunction::neglog1m(), off),
                      Catch::Matchers::ContainsSubstring("(0,1)"));
  // the domain is open, so a boundary entry is rejected as well
  REQUIRE_THROWS_WITH(apply_entrywise(ScalarFunction::neglog1m(), a),
                      Catch::Matchers::ContainsSubstring("(0,0) = 1"));
}

TEST_CASE("schur powers") {
  const SymmetricMatrix a = SymmetricMatrix::from_rows({{2.0, -1.0}, {-1.0, 3.0}});
  REQUIRE((schur_power(a, 0) - SymmetricMatrix::ones(2)).max_abs() == 0.0);
  REQUIRE((schur_power(a, 1) - a).max_abs() == 0.0);
  REQUIRE(schur_power(a, 3).at(0, 1) == -1.0);
  REQUIRE(schur_power(a, 3).at(1, 1) == 27.0);
  REQUIRE_THROWS_AS(schur_power(a, -1), std::invalid_argument);
}

TEST_CASE("schur product of psd matrices stays psd") {
  Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const SymmetricMatrix a = sample_psd(4, 10.0, rng);
    const SymmetricMatrix b = sample_psd(4, 10.0, rng);
    const PsdResult r = is_psd(schur_product(a, b));
    CAPTURE(rep, r.min_eigenvalue);
    REQUIRE(r.psd);
  }
}

TEST_CASE("functional calculus") {
  SECTION("diagonal matrices reduce to entrywise on the diagonal") {
    const SymmetricMatrix d = SymmetricMatrix::diagonal({2.0, 0.5, 0.0});
    const SymmetricMatrix fd = functional_calculus(ScalarFunction::exp_fn(), d);
    REQUIRE(fd.at(0, 0) == Approx(std::exp(2.0)).margin(1e-12));
    REQUIRE(fd.at(1, 1) == Approx(std::exp(0.5)).margin(1e-12));
    REQUIRE(fd.at(2, 2) == Approx(1.0).margin(1e-12));
    REQUIRE(fd.at(0, 1) == Approx(0.0).margin(1e-12));
  }
  SECTION("square via spectrum equals matrix square") {
    const SymmetricMatrix a = SymmetricMatrix::from_rows({{2.0, 1.0}, {1.0, 3.0}});
    const SymmetricMatrix fa = functional_calculus(
        ScalarFunction::power_series({0.0, 0.0, 1.0}, std::numeric_limits<double>::infinity()),
        a);
    REQUIRE((fa - sym_square(a)).max_abs() <= 1e-12 * 13.0);
  }
  SECTION("entrywise and spectral powers differ on the half projection") {
    const SymmetricMatrix a = SymmetricMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    const ScalarFunction root = ScalarFunction::abs_power(0.5);
    REQUIRE(ui_norm(apply_entrywise(root, a), NormKind::operator_norm()) ==
            Approx(std::sqrt(2.0)).margin(1e-12));
    REQUIRE(ui_norm(functional_calculus(root, a), NormKind::operator_norm()) ==
            Approx(1.0).margin(1e-12));
  }
  SECTION("eigenvalues outside the domain are rejected") {
    REQUIRE_THROWS_AS(functional_calculus(ScalarFunction::neglog1m(),
                                          SymmetricMatrix::diagonal({2.0, 0.0})),
                      std::domain_error);
  }
}

TEST_CASE("entrywise series summation converges within its tail bound") {
  Rng rng(77);
  const std::vector<ScalarFunction> fns = {ScalarFunction::exp_fn(),
                                           ScalarFunction::neglog1m(),
                                           ScalarFunction::neg_power(0.5)};
  for (const ScalarFunction& f : fns) {
    const double radius = f.series_radius();
    const double box = std::isinf(radius) ? 2.0 : 0.9 * radius;
    for (int rep = 0; rep < 20; ++rep) {
      SymmetricMatrix a = sample_psd(3, box, rng);
      const SeriesEntrywiseResult r = series_entrywise(f, a, 48);
      const SymmetricMatrix exact = apply_entrywise(f, a);
      CAPTURE(f.describe(), rep, r.tail_bound);
      REQUIRE((r.value - exact).max_abs() <= r.tail_bound + 1e-12);
    }
  }

  // entries at or beyond the radius are rejected
  REQUIRE_THROWS_AS(series_entrywise(ScalarFunction::neglog1m(), SymmetricMatrix::ones(2), 16),
                    std::domain_error);
}
