#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "schur_order/matrix.hpp"

namespace schur {

inline std::vector<double> dec_rearrange(std::vector<double> v) {
  std::stable_sort(v.begin(), v.end(), [](double a, double b) { return a > b; });
  return v;
}

struct MajorizationVerdict {
  bool holds = false;
  // prefix_margins[k-1] = (sum of k largest of b) - (sum of k largest of a);
  // all must be >= -tol * scale for a to be weakly majorized by b.
  std::vector<double> prefix_margins;
  std::optional<int> first_violation;  // 1-based prefix length
};

/// Weak majorization a <_w b: every prefix sum of the decreasing
/// rearrangement of a is dominated by the matching prefix sum of b.
/// The tolerance is relative to the largest prefix-sum magnitude.
inline MajorizationVerdict weak_majorize(const std::vector<double>& a,
                                         const std::vector<double>& b,
                                         double tol = defaults::check_tol) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("weak_majorize: vectors must be non-empty and equally sized");
  if (tol < 0.0) throw std::invalid_argument("weak_majorize: tolerance must be nonnegative");
  const std::vector<double> da = dec_rearrange(a);
  const std::vector<double> db = dec_rearrange(b);

  MajorizationVerdict v;
  v.holds = true;
  double pa = 0.0, pb = 0.0, scale = 0.0;
  v.prefix_margins.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    pa += da[k];
    pb += db[k];
    v.prefix_margins.push_back(pb - pa);
    scale = std::max({scale, std::abs(pa), std::abs(pb)});
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (v.prefix_margins[k] < -tol * scale) {
      v.holds = false;
      v.first_violation = static_cast<int>(k) + 1;
      break;
    }
  }
  return v;
}

/// Majorization a < b: weak majorization plus equality of the total sums.
inline MajorizationVerdict majorize(const std::vector<double>& a, const std::vector<double>& b,
                                    double tol = defaults::check_tol) {
  MajorizationVerdict v = weak_majorize(a, b, tol);
  double sa = 0.0, sb = 0.0, scale = 0.0;
  for (double x : a) sa += x;
  for (double x : b) sb += x;
  double pa = 0.0, pb = 0.0;
  const std::vector<double> da = dec_rearrange(a), db = dec_rearrange(b);
  for (std::size_t k = 0; k < a.size(); ++k) {
    pa += da[k];
    pb += db[k];
    scale = std::max({scale, std::abs(pa), std::abs(pb)});
  }
  if (std::abs(sb - sa) > tol * scale) {
    v.holds = false;
    if (!v.first_violation) v.first_violation = static_cast<int>(a.size());
  }
  return v;
}

}  // namespace schur
