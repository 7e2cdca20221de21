#pragma once

#include <algorithm>
#include <cmath>

#include "schur_order/matrix.hpp"
#include "schur_order/scalar_function.hpp"

namespace schur {

/// First divided difference f[a,b]. Near-coincident arguments switch to the
/// exact derivative at the midpoint instead of a cancellation-prone quotient.
inline double div_diff1(const ScalarFunction& f, double a, double b,
                        double dd_switch = defaults::dd_switch) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= dd_switch * scale) return f.deriv(0.5 * (a + b), 1);
  return (f.eval(a) - f.eval(b)) / (a - b);
}

/// Second divided difference f[a,b,c], symmetric in its arguments.
/// Coincidence patterns use the exact limits:
///   f[x,y,y] = (f(x) - f(y) - f'(y)(x-y)) / (x-y)^2,  f[y,y,y] = f''(y)/2.
inline double div_diff2(const ScalarFunction& f, double a, double b, double c,
                        double dd_switch = defaults::dd_switch) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
  double x = a, y = b, z = c;  // sort ascending
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);

  const auto close = [&](double u, double v) { return std::abs(u - v) <= dd_switch * scale; };

  if (close(x, z)) return 0.5 * f.deriv((x + y + z) / 3.0, 2);
  if (close(x, y)) {
    const double m = 0.5 * (x + y);
    const double d = z - m;
    return (f.eval(z) - f.eval(m) - f.deriv(m, 1) * d) / (d * d);
  }
  if (close(y, z)) {
    const double m = 0.5 * (y + z);
    const double d = x - m;
    return (f.eval(x) - f.eval(m) - f.deriv(m, 1) * d) / (d * d);
  }
  const double f_xy = (f.eval(x) - f.eval(y)) / (x - y);
  const double f_yz = (f.eval(y) - f.eval(z)) / (y - z);
  return (f_xy - f_yz) / (x - z);
}

}  // namespace schur
