// Weak-majorization primitives and the eigenvalue/singular-value
// comparison checks built on them.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "schur_order/fn_dsl.hpp"
#include "schur_order/majorization_verify.hpp"
#include "schur_order/order_testing.hpp"

using namespace schur;

namespace {

// Shared fixture: a rank-deficient pair whose comparison values have
// closed forms (sqrt(5) +- 1, multiples of sqrt(2)).
const SymmetricMatrix fix_a = SymmetricMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 0}});
const SymmetricMatrix fix_b = SymmetricMatrix::diagonal({2, 0, 0});
const double rt5 = std::sqrt(5.0);
const double rt2 = std::sqrt(2.0);

// Box sample pulled strictly inside the operator-norm domain of f.
SymmetricMatrix sample_inside(const ScalarFunction& f, int n, double box, Rng& rng) {
  SymmetricMatrix a = sample_psd(n, std::min(box, f.domain_alpha()), rng);
  const double alpha = f.domain_alpha();
  if (std::isfinite(alpha)) {
    const double no = op_norm(a);
    if (no >= 0.9 * alpha) a = (0.9 * alpha / no) * a;
  }
  return a;
}

}  // namespace

TEST_CASE("decreasing rearrangement and majorization verdicts") {
  CHECK(dec_rearrange({1, 3, 2, 3}) == std::vector<double>{3, 3, 2, 1});
  CHECK(dec_rearrange({-1, -3}) == std::vector<double>{-1, -3});

  SECTION("weak domination with slack") {
    const MajorizationVerdict v = weak_majorize({1, 1, 1}, {3, 0, 0});
    CHECK(v.holds);
    CHECK_FALSE(v.first_violation.has_value());
    REQUIRE(v.prefix_margins.size() == 3);
    CHECK(v.prefix_margins[0] == Catch::Approx(2.0));
    CHECK(v.prefix_margins[1] == Catch::Approx(1.0));
    CHECK(v.prefix_margins[2] == Catch::Approx(0.0).margin(1e-15));
  }

  SECTION("first-prefix violation") {
    const MajorizationVerdict v = weak_majorize({2, 0}, {1, 1});
    CHECK_FALSE(v.holds);
    REQUIRE(v.first_violation.has_value());
    CHECK(*v.first_violation == 1);
    CHECK(v.prefix_margins[0] == Catch::Approx(-1.0));
  }

  SECTION("order of input entries is irrelevant") {
    CHECK(weak_majorize({0, 1, 2}, {0, 0, 3}).holds);
    CHECK(weak_majorize({2, 1, 0}, {3, 0, 0}).holds);
  }

  SECTION("full majorization needs matching totals") {
    CHECK(majorize({2, 1, 1}, {3, 1, 0}).holds);
    const MajorizationVerdict v = majorize({1, 1}, {3, 0});
    CHECK_FALSE(v.holds);
    REQUIRE(v.first_violation.has_value());
    CHECK(*v.first_violation == 2);
    CHECK(weak_majorize({1, 1}, {3, 0}).holds);
  }

  SECTION("argument validation") {
    CHECK_THROWS_AS(weak_majorize({1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(weak_majorize({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(weak_majorize({1}, {1}, -1.0), std::invalid_argument);
  }
}

TEST_CASE("singular values are subadditive in the weak-majorization sense") {
  Rng rng(19);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 4;
    // Indefinite symmetric inputs from differences of box samples.
    const SymmetricMatrix x = sample_psd(n, 3.0, rng) - sample_psd(n, 3.0, rng);
    const SymmetricMatrix y = sample_psd(n, 3.0, rng) - sample_psd(n, 3.0, rng);
    const std::vector<double> sx = singular_values(x).values();
    const std::vector<double> sy = singular_values(y).values();
    std::vector<double> sum;
    for (int i = 0; i < n; ++i) sum.push_back(sx[static_cast<std::size_t>(i)] + sy[static_cast<std::size_t>(i)]);
    CHECK(weak_majorize(singular_values(x + y).values(), sum, 1e-9).holds);
  }
}

TEST_CASE("the diagonal is majorized by the spectrum") {
  Rng rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 4;
    const SymmetricMatrix a = sample_psd(n, 5.0, rng);
    CHECK(majorize(a.diag(), sym_eig(a).values.values(), 1e-9).holds);
  }
}

TEST_CASE("entrywise-vs-spectral eigenvalue comparison for monotone functions") {
  SECTION("closed-form fixture") {
    // f = x^2 on the fixture A: entrywise eigenvalues (sqrt5 + 1, 0, 1 - sqrt5)
    // never beat the spectral side prefix-wise after the f(0) shifts cancel.
    const VerifyResult r = verify_thm61(parse_fn_spec("phi:2"), fix_a);
    CHECK(r.verdict.holds);
    REQUIRE(r.lhs.size() == 3);
    CHECK(dec_rearrange(r.lhs)[0] == Catch::Approx(2.0));  // f[A] = A has top eigenvalue 2
    CHECK(dec_rearrange(r.rhs)[0] == Catch::Approx(4.0));  // f(A) has eigenvalue 2^2
    CHECK(r.assumptions.front() == "f:s-mono:caller-asserted");
  }

  SECTION("sampled monotone functions") {
    Rng rng(41);
    for (const char* fn : {"exp", "neglog1m", "negpow:0.5", "phi:3"}) {
      const ScalarFunction f = parse_fn_spec(fn);
      for (int rep = 0; rep < 20; ++rep) {
        const SymmetricMatrix a = sample_inside(f, 3, 5.0, rng);
        const VerifyResult r = verify_thm61(f, a);
        INFO(fn << " rep " << rep);
        CHECK(r.verdict.holds);
      }
    }
  }

  SECTION("boundary of the domain is rejected, inside passes") {
    const ScalarFunction f = parse_fn_spec("neglog1m");
    CHECK_THROWS_WITH(verify_thm61(f, SymmetricMatrix::identity(2)),
                      Catch::Matchers::ContainsSubstring("boundary case rejected"));
    CHECK_NOTHROW(verify_thm61(f, 0.999 * SymmetricMatrix::identity(2)));
    CHECK_THROWS_WITH(verify_thm61(f, SymmetricMatrix::from_rows({{1, 2}, {2, 1}})),
                      Catch::Matchers::ContainsSubstring("not positive semidefinite"));
  }
}

TEST_CASE("difference comparison against first divided differences") {
  SECTION("closed-form fixture values") {
    const VerifyResult r = verify_thm63(parse_fn_spec("phi:2"), fix_a, fix_b);
    CHECK(r.verdict.holds);
    const std::vector<double> lhs = dec_rearrange(r.lhs);
    CHECK(lhs[0] == Catch::Approx(rt5 + 1).epsilon(1e-9));
    CHECK(lhs[1] == Catch::Approx(rt5 - 1).epsilon(1e-9));
    CHECK(lhs[2] == Catch::Approx(0.0).margin(1e-9));
    const std::vector<double> rhs = dec_rearrange(r.rhs);
    CHECK(rhs[0] == Catch::Approx(4 * rt2).epsilon(1e-9));
    CHECK(rhs[0] == Catch::Approx(5.656854).epsilon(1e-6));
    CHECK(rhs[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(r.assumptions.front() == "f:s-conv-and-deriv0-nonneg:caller-asserted");
  }

  SECTION("zero second argument reduces to the spectral comparison") {
    // With B = 0 and f(0) = 0 both checks compare the same two vectors.
    Rng rng(43);
    for (const char* fn : {"neglog1m", "sum:(exp|series:-1@inf)"}) {
      const ScalarFunction f = parse_fn_spec(fn);
      for (int rep = 0; rep < 10; ++rep) {
        const SymmetricMatrix a = sample_inside(f, 3, 5.0, rng);
        const SymmetricMatrix z = SymmetricMatrix::zero(3);
        const VerifyResult r61 = verify_thm61(f, a);
        const VerifyResult r63 = verify_thm63(f, a, z);
        CHECK(r61.verdict.holds);
        CHECK(r63.verdict.holds);
        const auto l61 = dec_rearrange(r61.lhs), l63 = dec_rearrange(r63.lhs);
        const auto h61 = dec_rearrange(r61.rhs), h63 = dec_rearrange(r63.rhs);
        for (std::size_t i = 0; i < 3; ++i) {
          CHECK(l61[i] == Catch::Approx(l63[i]).margin(1e-9));
          CHECK(h61[i] == Catch::Approx(h63[i]).margin(1e-9));
        }
      }
    }
  }

  SECTION("sampled convex functions with nonnegative slope at zero") {
    Rng rng(47);
    for (const char* fn : {"exp", "neglog1m", "phi:4", "psi:3"}) {
      const ScalarFunction f = parse_fn_spec(fn);
      for (int rep = 0; rep < 15; ++rep) {
        const SymmetricMatrix a = sample_inside(f, 3, 4.0, rng);
        const SymmetricMatrix b = sample_inside(f, 3, 4.0, rng);
        INFO(fn << " rep " << rep);
        CHECK(verify_thm63(f, a, b).verdict.holds);
      }
    }
  }

  SECTION("input validation") {
    const ScalarFunction f = parse_fn_spec("phi:2");
    CHECK_THROWS_AS(verify_thm63(f, fix_a, SymmetricMatrix::identity(2)), std::invalid_argument);
    CHECK_THROWS_AS(verify_thm63(f, SymmetricMatrix::identity(1), SymmetricMatrix::identity(1)),
                    std::invalid_argument);
  }
}

TEST_CASE("scaled-by-diagonal difference comparison") {
  SECTION("closed-form fixture values") {
    const VerifyResult r = verify_prop66(parse_fn_spec("phi:2"), fix_a, fix_b);
    CHECK(r.verdict.holds);
    // Largest diagonal divided difference is (1^2 - 2^2) / (1 - 2) = 3.
    const std::vector<double> rhs = dec_rearrange(r.rhs);
    CHECK(rhs[0] == Catch::Approx(3 * rt2).epsilon(1e-9));
    CHECK(rhs[0] == Catch::Approx(4.242641).epsilon(1e-6));
    CHECK(rhs[1] == Catch::Approx(3 * rt2).epsilon(1e-9));
    CHECK(rhs[2] == Catch::Approx(0.0).margin(1e-9));
    // Prefix-two slack against the trace pair: 6 sqrt2 - 2 sqrt5.
    CHECK(r.verdict.prefix_margins[1] == Catch::Approx(6 * rt2 - 2 * rt5).epsilon(1e-9));
    CHECK(r.verdict.prefix_margins[1] == Catch::Approx(4.013145).epsilon(1e-6));
  }

  SECTION("the two right-hand sides are incomparable on the fixture") {
    const VerifyResult r63 = verify_thm63(parse_fn_spec("phi:2"), fix_a, fix_b);
    const VerifyResult r66 = verify_prop66(parse_fn_spec("phi:2"), fix_a, fix_b);
    const MajorizationVerdict a_under_b = weak_majorize(r63.rhs, r66.rhs);
    const MajorizationVerdict b_under_a = weak_majorize(r66.rhs, r63.rhs);
    CHECK_FALSE(a_under_b.holds);  // top value 4 sqrt2 exceeds 3 sqrt2
    CHECK_FALSE(b_under_a.holds);  // pair total 6 sqrt2 exceeds 4 sqrt2
    REQUIRE(a_under_b.first_violation.has_value());
    REQUIRE(b_under_a.first_violation.has_value());
    CHECK(*a_under_b.first_violation == 1);
    CHECK(*b_under_a.first_violation == 2);
  }

  SECTION("order-two case carries the extra smoothness assumption") {
    const SymmetricMatrix a2 = SymmetricMatrix::from_rows({{2, 1}, {1, 2}});
    const SymmetricMatrix b2 = SymmetricMatrix::identity(2);
    const VerifyResult r = verify_prop66(parse_fn_spec("exp"), a2, b2);
    CHECK(r.verdict.holds);
    bool tagged = false;
    for (const auto& s : r.assumptions) tagged = tagged || s.find("continuously-differentiable") != std::string::npos;
    CHECK(tagged);
  }

  SECTION("sampled monotone functions") {
    Rng rng(53);
    for (const char* fn : {"exp", "neglog1m", "negpow:0.5"}) {
      const ScalarFunction f = parse_fn_spec(fn);
      for (int rep = 0; rep < 15; ++rep) {
        const SymmetricMatrix a = sample_inside(f, 4, 4.0, rng);
        const SymmetricMatrix b = sample_inside(f, 4, 4.0, rng);
        INFO(fn << " rep " << rep);
        CHECK(verify_prop66(f, a, b).verdict.holds);
      }
    }
  }
}

TEST_CASE("second-order remainder comparisons") {
  SECTION("paired-eigenvalue weights") {
    Rng rng(59);
    for (const char* fn : {"exp", "psi:3", "neglog1m"}) {
      const ScalarFunction f = parse_fn_spec(fn);
      for (int rep = 0; rep < 15; ++rep) {
        const SymmetricMatrix a = sample_inside(f, 3, 3.0, rng);
        const SymmetricMatrix b = sample_inside(f, 3, 3.0, rng);
        const RemainderResult r = verify_prop65(f, a, b);
        INFO(fn << " rep " << rep);
        CHECK(r.hadamard.holds);
        CHECK(r.square.holds);
        CHECK(r.chain.holds);
        REQUIRE(r.lhs.size() == 3);
        REQUIRE(r.rhs_hadamard.size() == 3);
        REQUIRE(r.rhs_square.size() == 3);
      }
    }
  }

  SECTION("scalar diagonal weight variant needs order three") {
    Rng rng(61);
    const ScalarFunction f = parse_fn_spec("exp");
    CHECK_THROWS_AS(verify_prop67(f, SymmetricMatrix::identity(2), SymmetricMatrix::identity(2)),
                    std::invalid_argument);
    for (int rep = 0; rep < 15; ++rep) {
      const SymmetricMatrix a = sample_psd(3, 3.0, rng);
      const SymmetricMatrix b = sample_psd(3, 3.0, rng);
      const RemainderResult r = verify_prop67(f, a, b);
      CHECK(r.hadamard.holds);
      CHECK(r.square.holds);
      CHECK(r.chain.holds);
      CHECK(r.assumptions.front() == "f:s-conv:caller-asserted");
    }
  }

  SECTION("remainder definition matches a direct expansion") {
    // For f = x^2 the remainder is exactly (A-B) o (A-B), making the
    // Hadamard-side comparison an equality up to the pairing weights.
    const ScalarFunction f = parse_fn_spec("phi:2");
    const SymmetricMatrix a = SymmetricMatrix::from_rows({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
    const SymmetricMatrix b = SymmetricMatrix::identity(3);
    const RemainderResult r = verify_prop65(f, a, b);
    const SymmetricMatrix d = a - b;
    const std::vector<double> expect = singular_values(schur_product(d, d)).values();
    REQUIRE(r.lhs.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
      CHECK(r.lhs[i] == Catch::Approx(expect[i]).margin(1e-12));
    // Second divided difference of x^2 is identically 1.
    for (std::size_t i = 0; i < expect.size(); ++i)
      CHECK(r.rhs_hadamard[i] == Catch::Approx(expect[i]).margin(1e-12));
    CHECK(r.hadamard.holds);
  }
}

TEST_CASE("unitarily invariant norm comparison table") {
  const std::vector<NormKind> kinds = {NormKind::operator_norm(), NormKind::ky_fan_norm(2),
                                       NormKind::trace_norm(), NormKind::frobenius_norm(),
                                       NormKind::schatten_norm(3.0)};
  const auto rows = norm_inequality_report(parse_fn_spec("phi:2"), fix_a, fix_b, kinds);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].norm == "operator");
  CHECK(rows[1].norm == "kyfan:2");
  CHECK(rows[2].norm == "trace");
  CHECK(rows[3].norm == "frobenius");
  CHECK(rows[4].norm == "schatten:3");

  for (const auto& row : rows) {
    INFO(row.norm);
    CHECK(row.slack >= 0.0);
    CHECK(row.slack == Catch::Approx(row.rhs - row.lhs));
  }
  // Trace row: 6 sqrt2 bound against lhs total 2 sqrt5.
  CHECK(rows[2].lhs == Catch::Approx(2 * rt5).epsilon(1e-9));
  CHECK(rows[2].rhs == Catch::Approx(6 * rt2).epsilon(1e-9));
  CHECK(rows[2].slack == Catch::Approx(4.013145).epsilon(1e-6));
  // Operator row reuses the top singular values.
  CHECK(rows[0].lhs == Catch::Approx(rt5 + 1).epsilon(1e-9));
  CHECK(rows[0].rhs == Catch::Approx(3 * rt2).epsilon(1e-9));
}

TEST_CASE("entrywise-vs-spectral comparison fails without monotonicity-style hypotheses") {
  SECTION("fractional power at order two breaks the spectral domination") {
    // Half power of the rank-one half projector: entrywise top value sqrt2,
    // spectral top value 1, so the very first prefix fails.
    const SymmetricMatrix half = SymmetricMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    const VerifyResult r = verify_thm61(parse_fn_spec("phi:0.5"), half);
    CHECK_FALSE(r.verdict.holds);
    REQUIRE(r.verdict.first_violation.has_value());
    CHECK(*r.verdict.first_violation == 1);
    CHECK(r.verdict.prefix_margins[0] == Catch::Approx(1.0 - rt2).epsilon(1e-9));
    CHECK(r.verdict.prefix_margins[0] == Catch::Approx(-0.414214).epsilon(1e-5));
  }

  SECTION("odd power below the convexity threshold breaks the pair prefix") {
    const SymmetricMatrix j2 = SymmetricMatrix::ones(2);
    const SymmetricMatrix r2 = SymmetricMatrix::from_rows({{1, -1}, {-1, 1}});
    const VerifyResult bad = verify_thm63(parse_fn_spec("psi:1.2"), j2, r2);
    CHECK_FALSE(bad.verdict.holds);
    REQUIRE(bad.verdict.first_violation.has_value());
    CHECK(*bad.verdict.first_violation == 2);
    CHECK(bad.verdict.prefix_margins[1] ==
          Catch::Approx(2.4 * std::pow(2.0, 0.2) - 4.0).epsilon(1e-9));
    CHECK(bad.verdict.prefix_margins[1] == Catch::Approx(-1.243124).epsilon(1e-6));

    const VerifyResult good = verify_thm63(parse_fn_spec("psi:1.5"), j2, r2);
    CHECK(good.verdict.holds);
    CHECK(good.verdict.prefix_margins[1] == Catch::Approx(3 * rt2 - 4.0).epsilon(1e-9));
    CHECK(good.verdict.prefix_margins[1] == Catch::Approx(0.242641).margin(5e-7));
  }
}
