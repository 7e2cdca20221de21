#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur_order/class_certify.hpp"
#include "schur_order/entrywise.hpp"
#include "schur_order/jacobi.hpp"
#include "schur_order/matrix.hpp"
#include "schur_order/sampling.hpp"
#include "schur_order/scalar_function.hpp"

namespace schur {

struct TrialConfig {
  int n = 3;
  double alpha = std::numeric_limits<double>::infinity();
  int trials = 200;
  std::uint64_t seed = 42;
  double psd_tol = defaults::psd_tol;
  double check_tol = defaults::check_tol;
  std::vector<double> lambdas = {0.25, 0.5, 0.75};

  void validate() const {
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("config: alpha must be positive");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (psd_tol < 0.0 || check_tol < 0.0)
      throw std::invalid_argument("config: tolerances must be nonnegative");
    if (lambdas.empty()) throw std::invalid_argument("config: lambdas must be non-empty");
    for (double l : lambdas)
      if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("config: lambdas must lie in (0,1)");
  }
};

/// Parse a key=value config file ('#' starts a comment). Every key optional:
/// n, alpha (number or inf), trials, seed, psd_tol, check_tol,
/// lambdas (comma-separated).
inline TrialConfig parse_trial_config(std::istream& in) {
  TrialConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const auto bad = [&](const std::string& what) {
      return std::invalid_argument("config line " + std::to_string(line_no) + ": " + what);
    };
    static const std::vector<std::string> known = {"n",    "alpha",   "trials",    "seed",
                                                   "psd_tol", "check_tol", "lambdas"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw bad("unknown key '" + key + "'");
    try {
      if (key == "n") cfg.n = std::stoi(value);
      else if (key == "alpha")
        cfg.alpha = (value == "inf") ? std::numeric_limits<double>::infinity() : std::stod(value);
      else if (key == "trials") cfg.trials = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "psd_tol") cfg.psd_tol = std::stod(value);
      else if (key == "check_tol") cfg.check_tol = std::stod(value);
      else {  // lambdas
        cfg.lambdas.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.lambdas.push_back(std::stod(trim(tok)));
      }
    } catch (const std::exception&) {
      throw bad("bad value '" + value + "' for key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline TrialConfig parse_trial_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  return parse_trial_config(in);
}

namespace detail {

inline double normalized_min_eig(const SymmetricMatrix& m) {
  const Spectrum ev = sym_eig(m).values;
  const double lo = ev[ev.size() - 1];
  const double op = std::max(std::abs(ev[0]), std::abs(lo));
  return lo / std::max(1.0, op);
}

}  // namespace detail

/// Randomized falsification of class membership of order cfg.n. A pass is
/// evidence, not proof; a failure carries the witness instance. The margin
/// is the most negative eigenvalue seen, relative to max(1, operator norm).
inline ClassVerdict test_class(const ScalarFunction& f, SClass cls, const TrialConfig& cfg) {
  cfg.validate();
  const double alpha = std::min(cfg.alpha, f.domain_alpha());
  ClassVerdict v;
  v.holds = true;
  bool first = true;

  const auto consider = [&](double margin, int trial, const SymmetricMatrix& a,
                            const SymmetricMatrix* b, const char* what) {
    if (first || margin < v.margin) {
      v.margin = margin;
      first = false;
    }
    if (margin < -cfg.psd_tol && v.holds) {
      v.holds = false;
      v.witness = std::string(what) + " fails at trial " + std::to_string(trial) +
                  " (normalized min eigenvalue " + detail::fmt_num(margin) + ")";
      v.witness_a = a;
      v.witness_b = b ? std::optional<SymmetricMatrix>(*b) : std::nullopt;
      v.witness_trial = trial;
    }
    return !v.holds;
  };

  for (int trial = 0; trial < cfg.trials && v.holds; ++trial) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    switch (cls) {
      case SClass::s_pos: {
        const SymmetricMatrix a = sample_psd(cfg.n, alpha, rng);
        consider(detail::normalized_min_eig(apply_entrywise(f, a)), trial, a, nullptr,
                 "entrywise positivity");
        break;
      }
      case SClass::s_mono: {
        const PsdPair pr = sample_psd_pair(cfg.n, alpha, rng);
        const SymmetricMatrix d = apply_entrywise(f, pr.a) - apply_entrywise(f, pr.b);
        consider(detail::normalized_min_eig(d), trial, pr.a, &pr.b, "entrywise monotonicity");
        break;
      }
      case SClass::s_conv: {
        const PsdPair pr = sample_psd_pair(cfg.n, alpha, rng);
        const SymmetricMatrix fa = apply_entrywise(f, pr.a);
        const SymmetricMatrix fb = apply_entrywise(f, pr.b);
        for (double lam : cfg.lambdas) {
          const SymmetricMatrix mid = lam * pr.a + (1.0 - lam) * pr.b;
          const SymmetricMatrix gap =
              lam * fa + (1.0 - lam) * fb - apply_entrywise(f, mid);
          if (consider(detail::normalized_min_eig(gap), trial, pr.a, &pr.b,
                       "entrywise convexity"))
            break;
        }
        break;
      }
    }
  }
  return v;
}

/// Chain A = A_0 >= A_1 >= ... >= A_n = B with rank-one consecutive steps,
/// peeling eigencomponents of A - B from the largest down.
inline std::vector<SymmetricMatrix> chain_decompose(const SymmetricMatrix& a,
                                                    const SymmetricMatrix& b,
                                                    double psd_tol = defaults::psd_tol) {
  if (a.n() != b.n()) throw std::invalid_argument("chain_decompose: dimension mismatch");
  const SymmetricMatrix diff = a - b;
  const EigDecomposition e = sym_eig(diff);
  const int n = a.n();
  if (e.values[n - 1] < -psd_tol * std::max(1.0, op_norm(diff)))
    throw std::invalid_argument("chain_decompose: matrices are not Loewner-ordered (A >= B fails)");

  std::vector<SymmetricMatrix> chain;
  chain.reserve(static_cast<std::size_t>(n) + 1);
  chain.push_back(a);
  for (int k = 1; k < n; ++k) {
    Matrix rem(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = k; m < n; ++m) s += e.values[m] * e.basis.at(i, m) * e.basis.at(j, m);
        rem.at(i, j) = s;
      }
    chain.push_back(b + SymmetricMatrix(std::move(rem), 1e-9));
  }
  chain.push_back(b);
  return chain;
}

/// Doubling embedding [[A, B], [B, B]], PSD whenever A >= B >= 0.
inline SymmetricMatrix embed_doubling(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("embed_doubling: dimension mismatch");
  const int n = a.n();
  Matrix m(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.at(i, j) = a.at(i, j);
      m.at(i, n + j) = b.at(i, j);
      m.at(n + i, j) = b.at(i, j);
      m.at(n + i, n + j) = b.at(i, j);
    }
  return SymmetricMatrix(std::move(m));
}

struct CrossCheckResult {
  bool consistent;
  ClassVerdict conv_f;   // convexity tester on f
  ClassVerdict mono_df;  // monotonicity tester on f'
  std::optional<ClassVerdict> mono_f;  // n >= 3 only
  std::optional<ClassVerdict> pos_df;  // n >= 3 only
};

/// Consistency harness for the derivative transfer: the convexity verdict
/// for f must match the monotonicity verdict for f', and (order >= 3) the
/// monotonicity verdict for f must match the positivity verdict for f'.
/// All four testers share the seed; disagreement indicates a bug somewhere.
inline CrossCheckResult cross_check_derivative_relation(const ScalarFunction& f,
                                                        const TrialConfig& cfg) {
  const ScalarFunction df = f.derivative();
  CrossCheckResult r{true, test_class(f, SClass::s_conv, cfg), test_class(df, SClass::s_mono, cfg),
                     std::nullopt, std::nullopt};
  r.consistent = (r.conv_f.holds == r.mono_df.holds);
  if (cfg.n >= 3) {
    r.mono_f = test_class(f, SClass::s_mono, cfg);
    r.pos_df = test_class(df, SClass::s_pos, cfg);
    r.consistent = r.consistent && (r.mono_f->holds == r.pos_df->holds);
  }
  return r;
}

}  // namespace schur
