#pragma once

#include <cctype>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schur_order/scalar_function.hpp"

namespace schur {

/// Parse failure with the byte offset of the offending token.
struct FnParseError : std::invalid_argument {
  std::size_t pos;
  FnParseError(std::size_t at, const std::string& msg)
      : std::invalid_argument("fn spec, position " + std::to_string(at) + ": " + msg), pos(at) {}
};

namespace detail {

struct FnParser {
  std::string_view s;
  std::size_t pos = 0;

  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }
  void expect(char c, const char* what) {
    if (peek() != c) throw FnParseError(pos, std::string("expected ") + what);
    ++pos;
  }
  std::string_view word() {
    const std::size_t start = pos;
    while (!eof() && std::isalnum(static_cast<unsigned char>(s[pos])) != 0) ++pos;
    if (pos == start) throw FnParseError(pos, "expected a function name");
    return s.substr(start, pos - start);
  }
  double number() {
    double v = 0.0;
    const auto res = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw FnParseError(pos, "expected a number");
    pos = static_cast<std::size_t>(res.ptr - s.data());
    return v;
  }
};

inline ScalarFunction parse_fn(FnParser& p);

template <class Factory>
inline ScalarFunction checked(std::size_t at, Factory&& make) {
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    throw FnParseError(at, e.what());
  }
}

inline ScalarFunction parse_fn(FnParser& p) {
  const std::size_t at = p.pos;
  const std::string_view name = p.word();
  if (name == "exp") return ScalarFunction::exp_fn();
  if (name == "neglog1m") return ScalarFunction::neglog1m();
  if (name == "phi") {
    p.expect(':', "':' after phi");
    const std::size_t arg = p.pos;
    const double v = p.number();
    return checked(arg, [&] { return ScalarFunction::abs_power(v); });
  }
  if (name == "psi") {
    p.expect(':', "':' after psi");
    const std::size_t arg = p.pos;
    const double v = p.number();
    return checked(arg, [&] { return ScalarFunction::signed_power(v); });
  }
  if (name == "negpow") {
    p.expect(':', "':' after negpow");
    const std::size_t arg = p.pos;
    const double v = p.number();
    return checked(arg, [&] { return ScalarFunction::neg_power(v); });
  }
  if (name == "series") {
    p.expect(':', "':' after series");
    const std::size_t arg = p.pos;
    std::vector<double> coeffs;
    coeffs.push_back(p.number());
    while (p.peek() == ',') {
      ++p.pos;
      coeffs.push_back(p.number());
    }
    p.expect('@', "'@<radius>' after the coefficients");
    const std::size_t rad_at = p.pos;
    double radius;
    if (p.s.substr(p.pos, 3) == "inf") {
      p.pos += 3;
      radius = std::numeric_limits<double>::infinity();
    } else {
      radius = p.number();
    }
    if (!(radius > 0.0)) throw FnParseError(rad_at, "radius must be positive");
    return checked(arg, [&] { return ScalarFunction::power_series(std::move(coeffs), radius); });
  }
  if (name == "shift") {
    p.expect(':', "':' after shift");
    const std::size_t arg = p.pos;
    const double offset = p.number();
    p.expect(':', "':' before the inner function");
    ScalarFunction inner = parse_fn(p);
    return checked(arg, [&] { return ScalarFunction::shifted(std::move(inner), offset); });
  }
  if (name == "scale") {
    p.expect(':', "':' after scale");
    const std::size_t arg = p.pos;
    const double factor = p.number();
    p.expect(':', "':' before the inner function");
    ScalarFunction inner = parse_fn(p);
    return checked(arg, [&] { return ScalarFunction::scaled(factor, std::move(inner)); });
  }
  if (name == "reflect") {
    p.expect(':', "':' after reflect");
    return ScalarFunction::reflected(parse_fn(p));
  }
  if (name == "sum") {
    p.expect(':', "':' after sum");
    p.expect('(', "'(' opening the term list");
    std::vector<ScalarFunction> terms;
    terms.push_back(parse_fn(p));
    while (p.peek() == '|') {
      ++p.pos;
      terms.push_back(parse_fn(p));
    }
    p.expect(')', "'|' or ')' in the term list");
    return ScalarFunction::sum(std::move(terms));
  }
  throw FnParseError(at, "unknown function name '" + std::string(name) + "'");
}

}  // namespace detail

/// Parse the textual function notation produced by ScalarFunction::describe().
/// Grammar: exp | neglog1m | phi:<p> | psi:<p> | negpow:<p> |
/// series:<c0>,...,<ck>@<radius|inf> | shift:<a>:<fn> | scale:<c>:<fn> |
/// reflect:<fn> | sum:(<fn>|...|<fn>)
inline ScalarFunction parse_fn_spec(std::string_view spec) {
  detail::FnParser p{spec, 0};
  ScalarFunction f = detail::parse_fn(p);
  if (!p.eof()) throw FnParseError(p.pos, "trailing characters");
  return f;
}

}  // namespace schur
