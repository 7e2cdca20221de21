#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "schur_order/jacobi.hpp"
#include "schur_order/matrix.hpp"

namespace schur {

namespace detail {
inline std::string norm_param_str(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}
}  // namespace detail

/// Unitarily invariant norm selector.
struct NormKind {
  enum class Tag { op, ky_fan, schatten, trace, frobenius };

  Tag tag = Tag::op;
  int k = 1;       // ky_fan only
  double p = 2.0;  // schatten only

  static NormKind operator_norm() { return NormKind{Tag::op, 1, 2.0}; }
  static NormKind ky_fan_norm(int k) {
    if (k < 1) throw std::invalid_argument("ky_fan_norm: k must be >= 1");
    return NormKind{Tag::ky_fan, k, 2.0};
  }
  static NormKind schatten_norm(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
    return NormKind{Tag::schatten, 1, p};
  }
  static NormKind trace_norm() { return NormKind{Tag::trace, 1, 2.0}; }
  static NormKind frobenius_norm() { return NormKind{Tag::frobenius, 1, 2.0}; }

  std::string name() const {
    switch (tag) {
      case Tag::op: return "operator";
      case Tag::ky_fan: return "kyfan:" + std::to_string(k);
      case Tag::schatten: return "schatten:" + detail::norm_param_str(p);
      case Tag::trace: return "trace";
      case Tag::frobenius: return "frobenius";
    }
    return "?";
  }
};

/// Inverse of NormKind::name(): "operator", "trace", "frobenius",
/// "kyfan:<k>", "schatten:<p>".
inline NormKind norm_from_string(const std::string& s) {
  if (s == "operator" || s == "op") return NormKind::operator_norm();
  if (s == "trace") return NormKind::trace_norm();
  if (s == "frobenius") return NormKind::frobenius_norm();
  const auto parse_tail = [&](std::size_t off) {
    double v = 0.0;
    const char* first = s.data() + off;
    const auto res = std::from_chars(first, s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw std::invalid_argument("norm_from_string: bad parameter in '" + s + "'");
    return v;
  };
  if (s.rfind("kyfan:", 0) == 0) {
    const double k = parse_tail(6);
    if (k != static_cast<int>(k)) throw std::invalid_argument("norm_from_string: k must be integer");
    return NormKind::ky_fan_norm(static_cast<int>(k));
  }
  if (s.rfind("schatten:", 0) == 0) return NormKind::schatten_norm(parse_tail(9));
  throw std::invalid_argument("norm_from_string: unknown norm '" + s + "'");
}

inline double ui_norm(const Spectrum& sv, const NormKind& kind) {
  const int n = sv.size();
  switch (kind.tag) {
    case NormKind::Tag::op:
      return sv[0];
    case NormKind::Tag::ky_fan: {
      if (kind.k > n) throw std::invalid_argument("ui_norm: Ky Fan k exceeds dimension");
      double s = 0.0;
      for (int i = 0; i < kind.k; ++i) s += sv[i];
      return s;
    }
    case NormKind::Tag::schatten: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::pow(sv[i], kind.p);
      return std::pow(s, 1.0 / kind.p);
    }
    case NormKind::Tag::trace:
      return sv.sum();
    case NormKind::Tag::frobenius: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += sv[i] * sv[i];
      return std::sqrt(s);
    }
  }
  throw std::logic_error("ui_norm: unknown kind");
}

inline double ui_norm(const Matrix& m, const NormKind& kind) {
  return ui_norm(singular_values(m), kind);
}

inline double ui_norm(const SymmetricMatrix& m, const NormKind& kind) {
  return ui_norm(singular_values(m), kind);
}

}  // namespace schur
