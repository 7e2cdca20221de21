#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "schur_order/jacobi.hpp"
#include "schur_order/matrix.hpp"

namespace schur {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Substream seed for trial `index` of a run seeded with `seed`. Trials draw
/// from independent streams so a verdict never depends on how many numbers
/// an earlier trial consumed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return detail::splitmix64(seed ^ detail::splitmix64(index + 1));
}

/// Deterministic random source. All transforms are implemented here (not via
/// std distributions) so identical seeds give identical bytes everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

/// alpha with the unbounded case replaced by the working box.
inline double effective_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return std::isinf(alpha) ? defaults::working_box : alpha;
}

/// Random PSD matrix: Gram matrix of a standard normal square factor,
/// rescaled to a log-uniform size with max diagonal strictly below
/// alpha * headroom. Entry bounds follow since |m_ij| <= max_k m_kk for PSD.
inline SymmetricMatrix sample_psd(int n, double alpha, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_psd: dimension must be >= 1");
  const double box = effective_alpha(alpha) * defaults::headroom;
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = rng.normal();
  Matrix m = gram(g);
  double maxdiag = 0.0;
  for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, m.at(i, i));
  const double size = rng.log_uniform(1e-3, 0.999);
  if (maxdiag > 0.0) m *= box * size / maxdiag;
  return SymmetricMatrix(std::move(m));
}

/// Loewner-ordered pair A >= B >= 0 with recorded eigenvalue certificates.
struct PsdPair {
  SymmetricMatrix a;
  SymmetricMatrix b;
  double min_eig_b;     // certificate for B >= 0
  double min_eig_diff;  // certificate for A - B >= 0
};

/// Pair sampler: B is a shrunk PSD sample; the increment A - B is a mixture
/// of a full Gram sample (0.6), a rank-one spike (0.3), and zero (0.1).
/// Both are jointly rescaled so A keeps max diagonal below alpha * headroom.
inline PsdPair sample_psd_pair(int n, double alpha, Rng& rng) {
  const double box = effective_alpha(alpha) * defaults::headroom;
  SymmetricMatrix b = rng.uniform(0.0, 1.0) * sample_psd(n, alpha, rng);

  const double branch = rng.uniform();
  SymmetricMatrix p = SymmetricMatrix::zero(n);
  if (branch < 0.6) {
    p = sample_psd(n, alpha, rng);
  } else if (branch < 0.9) {
    std::vector<double> xi(static_cast<std::size_t>(n));
    double maxsq = 0.0;
    for (auto& x : xi) {
      x = rng.normal();
      maxsq = std::max(maxsq, x * x);
    }
    p = SymmetricMatrix::outer(xi);
    if (maxsq > 0.0) p = (box * rng.log_uniform(1e-3, 0.999) / maxsq) * p;
  }

  SymmetricMatrix a = b + p;
  double maxdiag = 0.0;
  for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, a.at(i, i));
  if (maxdiag >= box) {
    const double c = 0.9995 * box / maxdiag;
    a = c * a;
    b = c * b;
  }
  const double eig_b = sym_eig(b).values[n - 1];
  const double eig_diff = sym_eig(a - b).values[n - 1];
  return PsdPair{std::move(a), std::move(b), eig_b, eig_diff};
}

}  // namespace schur
