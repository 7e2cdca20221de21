#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "schur_order/class_certify.hpp"
#include "schur_order/counterexamples.hpp"
#include "schur_order/fn_dsl.hpp"
#include "schur_order/majorization_verify.hpp"
#include "schur_order/matrix.hpp"
#include "schur_order/norms.hpp"
#include "schur_order/order_testing.hpp"

namespace schur {

using ordered_json = nlohmann::ordered_json;

inline ordered_json matrix_to_json(const SymmetricMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.n(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline SymmetricMatrix matrix_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix json: expected array of rows");
  const int n = static_cast<int>(j.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix json: row " + std::to_string(i) + " has wrong length");
    for (int c = 0; c < n; ++c) m.at(i, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return SymmetricMatrix(std::move(m));
}

inline ordered_json vec_to_json(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline std::vector<double> vec_from_json(const ordered_json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector json: expected array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

/// JSON has no infinity literal; an unbounded domain travels as "inf".
inline ordered_json alpha_to_json(double a) {
  return std::isinf(a) ? ordered_json("inf") : ordered_json(a);
}

inline double alpha_from_json(const ordered_json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("alpha json: expected number or \"inf\"");
  }
  return j.get<double>();
}

inline ordered_json witness_to_json(const Witness& w) {
  ordered_json j;
  j["kind"] = w.kind;
  j["description"] = w.description;
  j["fn"] = w.fn;
  ordered_json mats = ordered_json::array();
  for (const auto& m : w.matrices) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  j["eta"] = w.eta ? vec_to_json(*w.eta) : ordered_json(nullptr);
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : w.params) params[k] = v;
  j["params"] = std::move(params);
  j["violated_quantity"] = w.violated_quantity;
  j["expected_sign"] = w.expected_sign;
  return j;
}

inline Witness witness_from_json(const ordered_json& j) {
  Witness w;
  w.kind = j.at("kind").get<std::string>();
  w.description = j.at("description").get<std::string>();
  w.fn = j.at("fn").get<std::string>();
  for (const auto& m : j.at("matrices")) w.matrices.push_back(matrix_from_json(m));
  if (!j.at("eta").is_null()) w.eta = vec_from_json(j.at("eta"));
  for (const auto& [k, v] : j.at("params").items()) w.params[k] = v.get<double>();
  w.violated_quantity = j.at("violated_quantity").get<double>();
  w.expected_sign = j.at("expected_sign").get<int>();
  return w;
}

/// Recompute the violated quantity of a loaded witness from its stored
/// matrices and check it against the stored value and the claimed sign,
/// with an independent secondary evaluation where one exists. Throws
/// std::runtime_error with a reason on any mismatch.
inline void revalidate_witness(const Witness& w, const CheckConfig& cfg = {}) {
  const auto fail = [&](const std::string& why) {
    throw std::runtime_error("witness '" + w.kind + "' failed re-validation: " + why);
  };
  const auto close = [](double got, double stored) {
    return std::abs(got - stored) <= 1e-9 * std::max(1.0, std::abs(stored));
  };
  const auto need = [&](std::size_t mats, bool eta) {
    if (w.matrices.size() != mats) fail("wrong matrix count");
    if (eta && !w.eta) fail("missing eta vector");
  };
  const ScalarFunction f = parse_fn_spec(w.fn);

  if (w.kind == "lemma52" || w.kind == "fh-smono") {
    need(2, true);
    const SymmetricMatrix& lo = w.matrices[0];
    const SymmetricMatrix& hi = w.matrices[1];
    if (!is_psd(lo, cfg.psd_tol).psd) fail("first matrix not PSD");
    if (!is_psd(hi - lo, cfg.psd_tol).psd) fail("pair is not ordered");
    SymmetricMatrix d = SymmetricMatrix::zero(lo.n());
    if (w.kind == "lemma52") {
      const SymmetricMatrix mid = 0.5 * (lo + hi);
      d = 0.5 * (apply_entrywise(f, lo) + apply_entrywise(f, hi)) - apply_entrywise(f, mid);
    } else {
      d = apply_entrywise(f, hi) - apply_entrywise(f, lo);
    }
    const double mineig = sym_eig(d).values[d.n() - 1];
    if (!close(mineig, w.violated_quantity)) fail("recomputed eigenvalue drifted");
    if (!(mineig < 0.0)) fail("no violation on recompute");
    if (!(d.quadratic_form(*w.eta) < 0.0)) fail("quadratic form along eta is not negative");
    return;
  }
  if (w.kind == "fh-spos") {
    need(1, true);
    if (!is_psd(w.matrices[0], cfg.psd_tol).psd) fail("matrix not PSD");
    const SymmetricMatrix fa = apply_entrywise(f, w.matrices[0]);
    const double mineig = sym_eig(fa).values[fa.n() - 1];
    if (!close(mineig, w.violated_quantity)) fail("recomputed eigenvalue drifted");
    if (!(mineig < 0.0)) fail("no violation on recompute");
    if (!(fa.quadratic_form(*w.eta) < 0.0)) fail("quadratic form along eta is not negative");
    return;
  }
  if (w.kind == "remark64-opnorm") {
    need(1, false);
    const double lhs = ui_norm(apply_entrywise(f, w.matrices[0]), NormKind::operator_norm());
    const double rhs = ui_norm(functional_calculus(f, w.matrices[0]), NormKind::operator_norm());
    if (!close(lhs - rhs, w.violated_quantity)) fail("recomputed norm gap drifted");
    if (!(lhs - rhs > 0.0)) fail("no violation on recompute");
    if (verify_thm61(f, w.matrices[0], cfg).verdict.holds) fail("prefix comparison unexpectedly holds");
    return;
  }
  if (w.kind == "remark64-prefix" || w.kind == "remark64-prefix-control") {
    need(2, false);
    const VerifyResult vr = verify_thm63(f, w.matrices[0], w.matrices[1], cfg);
    if (vr.verdict.prefix_margins.size() < 2) fail("missing prefix margins");
    const double q = -vr.verdict.prefix_margins[1];
    if (!close(q, w.violated_quantity)) fail("recomputed prefix gap drifted");
    if (w.kind == "remark64-prefix") {
      if (vr.verdict.holds || !(q > 0.0)) fail("no violation on recompute");
    } else if (!vr.verdict.holds || !(q < 0.0)) {
      fail("control case no longer holds");
    }
    return;
  }
  if (w.kind == "prop12-affinity") {
    need(2, false);
    const SymmetricMatrix d =
        apply_entrywise(f, w.matrices[0]) - apply_entrywise(f, w.matrices[1]);
    const double mineig = sym_eig(d).values[d.n() - 1];
    if (!close(mineig, w.violated_quantity)) fail("recomputed eigenvalue drifted");
    if (!(mineig < 0.0)) fail("no violation on recompute");
    return;
  }
  if (w.kind == "prop12-none") {
    const Witness again =
        prop12_affinity_witness(f, w.params.at("a"), w.params.at("lambda"), cfg.check_tol);
    if (again.kind != w.kind) fail("a violation appeared on recompute");
    if (!close(again.violated_quantity, w.violated_quantity)) fail("recomputed margin drifted");
    if (!(w.violated_quantity >= -cfg.check_tol)) fail("stored margin is negative");
    return;
  }
  fail("unknown kind");
}

/// One replayable unit of work: everything under `params` plus the seed
/// determines the outcome fields below it.
struct CheckRecord {
  std::string module;
  std::string check;
  std::string anchor;
  ordered_json params = ordered_json::object();
  std::uint64_t seed = 0;
  std::string config_hash;
  bool holds = false;
  std::vector<double> margins;
  ordered_json values = nullptr;   // check-specific outputs (lhs/rhs vectors, tags)
  ordered_json witness = nullptr;  // falsification evidence, when any
  std::string detail;
  double runtime_ms = 0.0;
};

namespace detail {
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xF];
    h >>= 4;
  }
  return std::string(buf, 16);
}
}  // namespace detail

inline std::string config_hash_of(const std::string& module, const std::string& check,
                                  const ordered_json& params, std::uint64_t seed) {
  return detail::fnv1a_hex(module + '\x1f' + check + '\x1f' + params.dump() + '\x1f' +
                           std::to_string(seed));
}

inline ordered_json record_to_json(const CheckRecord& r) {
  ordered_json j;
  j["module"] = r.module;
  j["check"] = r.check;
  j["anchor"] = r.anchor;
  j["params"] = r.params;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["holds"] = r.holds;
  j["margins"] = vec_to_json(r.margins);
  j["values"] = r.values;
  j["witness"] = r.witness;
  j["detail"] = r.detail;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

inline CheckRecord record_from_json(const ordered_json& j) {
  CheckRecord r;
  r.module = j.at("module").get<std::string>();
  r.check = j.at("check").get<std::string>();
  r.anchor = j.at("anchor").get<std::string>();
  r.params = j.at("params");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.holds = j.at("holds").get<bool>();
  r.margins = vec_from_json(j.at("margins"));
  r.values = j.at("values");
  r.witness = j.at("witness");
  r.detail = j.at("detail").get<std::string>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  return r;
}

struct Report {
  std::string tool_version = "0.1.0";
  std::uint64_t seed = 0;
  std::string command;
  std::vector<CheckRecord> records;
};

inline ordered_json report_to_json(const Report& rep) {
  ordered_json j;
  j["tool_version"] = rep.tool_version;
  j["seed"] = rep.seed;
  j["command"] = rep.command;
  ordered_json recs = ordered_json::array();
  int held = 0;
  for (const auto& r : rep.records) {
    if (r.holds) ++held;
    recs.push_back(record_to_json(r));
  }
  j["records"] = std::move(recs);
  j["summary"] = {{"checks", rep.records.size()},
                  {"holds", held},
                  {"violations", rep.records.size() - static_cast<std::size_t>(held)}};
  return j;
}

inline std::string report_dump(const Report& rep) { return report_to_json(rep).dump(2) + "\n"; }

inline Report report_from_json(const ordered_json& j) {
  Report rep;
  rep.tool_version = j.at("tool_version").get<std::string>();
  rep.seed = j.at("seed").get<std::uint64_t>();
  rep.command = j.at("command").get<std::string>();
  for (const auto& r : j.at("records")) rep.records.push_back(record_from_json(r));
  return rep;
}

inline Report load_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("report: cannot open '" + path + "'");
  ordered_json j;
  in >> j;
  return report_from_json(j);
}

namespace detail {

inline CheckConfig check_config_from(const ordered_json& params) {
  CheckConfig cfg;
  cfg.psd_tol = params.value("psd_tol", defaults::psd_tol);
  cfg.check_tol = params.value("check_tol", defaults::check_tol);
  cfg.dd_switch = params.value("dd_switch", defaults::dd_switch);
  return cfg;
}

inline ordered_json check_config_json(const CheckConfig& cfg) {
  return {{"psd_tol", cfg.psd_tol}, {"check_tol", cfg.check_tol}, {"dd_switch", cfg.dd_switch}};
}

inline HypothesisStatus meet(HypothesisStatus a, HypothesisStatus b) {
  const auto rank = [](HypothesisStatus h) {
    return h == HypothesisStatus::invalid ? 0 : (h == HypothesisStatus::unknown ? 1 : 2);
  };
  return rank(a) <= rank(b) ? a : b;
}

/// Membership status for the class each comparison theorem assumes of f.
inline HypothesisStatus verify_hypothesis_status(const std::string& check,
                                                 const ScalarFunction& f, int n) {
  const auto deriv_sign_status = [&](int order) {
    try {
      const double v = f.deriv(0.0, order);
      return v >= 0.0 ? HypothesisStatus::valid : HypothesisStatus::invalid;
    } catch (const std::domain_error&) {
      return HypothesisStatus::unknown;
    }
  };
  if (check == "thm61" || check == "prop66") return hypothesis_status(f, SClass::s_mono, n);
  if (check == "thm63")
    return meet(hypothesis_status(f, SClass::s_conv, n), deriv_sign_status(1));
  if (check == "prop67") return hypothesis_status(f, SClass::s_conv, n);
  if (check == "prop65") {
    HypothesisStatus ds = HypothesisStatus::unknown;
    try {
      ds = hypothesis_status(f.derivative(), SClass::s_conv, n);
    } catch (const std::domain_error&) {
    } catch (const std::invalid_argument&) {
    }
    return meet(ds, deriv_sign_status(2));
  }
  throw std::invalid_argument("verify: unknown check '" + check + "'");
}

}  // namespace detail

/// Execute one check identified by (module, check) with the given parameters
/// and seed, returning a fully populated record. Re-invoking with a record's
/// own params and seed reproduces it exactly (runtime aside); the dispatcher
/// canonicalizes params so the round trip is stable.
inline CheckRecord run_check(const std::string& module, const std::string& check,
                             const ordered_json& params, std::uint64_t seed, bool timing = false) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.module = module;
  rec.check = check;
  rec.seed = seed;

  if (module == "scalarfn" && check == "certify") {
    const ScalarFunction f = parse_fn_spec(params.at("fn").get<std::string>());
    const SClass cls = sclass_from_string(params.at("class").get<std::string>());
    const int depth = params.value("depth", defaults::coeff_depth);
    const double coeff_tol = params.value("coeff_tol", defaults::coeff_tol);
    const ClassVerdict v = certify_class_by_coeffs(f, cls, depth, coeff_tol);
    rec.anchor = "thm41";
    rec.params = {{"fn", f.describe()},
                  {"class", to_string(cls)},
                  {"depth", depth},
                  {"coeff_tol", coeff_tol}};
    rec.holds = v.holds;
    rec.margins = {v.margin};
    rec.detail = v.holds ? "coefficients nonnegative from the class start index" : v.witness;
  } else if (module == "order-testing" && (check == "test-class" || check == "cross-check")) {
    const ScalarFunction f = parse_fn_spec(params.at("fn").get<std::string>());
    TrialConfig cfg;
    cfg.n = params.at("n").get<int>();
    cfg.alpha = params.contains("alpha") ? alpha_from_json(params.at("alpha"))
                                         : std::numeric_limits<double>::infinity();
    cfg.trials = params.value("trials", 200);
    cfg.seed = seed;
    cfg.psd_tol = params.value("psd_tol", defaults::psd_tol);
    cfg.check_tol = params.value("check_tol", defaults::check_tol);
    if (params.contains("lambdas")) cfg.lambdas = vec_from_json(params.at("lambdas"));
    ordered_json rp = {{"fn", f.describe()}};
    if (check == "test-class") rp["class"] = params.at("class").get<std::string>();
    rp["n"] = cfg.n;
    rp["alpha"] = alpha_to_json(cfg.alpha);
    rp["trials"] = cfg.trials;
    rp["lambdas"] = vec_to_json(cfg.lambdas);
    rp["psd_tol"] = cfg.psd_tol;
    rp["check_tol"] = cfg.check_tol;
    rec.params = std::move(rp);
    if (check == "test-class") {
      const SClass cls = sclass_from_string(params.at("class").get<std::string>());
      const ClassVerdict v = test_class(f, cls, cfg);
      rec.anchor = "classdef";
      rec.holds = v.holds;
      rec.margins = {v.margin};
      rec.values = {{"hypothesis", to_string(hypothesis_status(f, cls, cfg.n))}};
      if (!v.holds && v.witness_a) {
        ordered_json w;
        w["trial"] = v.witness_trial;
        w["note"] = v.witness;
        w["a"] = matrix_to_json(*v.witness_a);
        w["b"] = v.witness_b ? matrix_to_json(*v.witness_b) : ordered_json(nullptr);
        rec.witness = std::move(w);
      }
      rec.detail = v.holds ? "no violation in " + std::to_string(cfg.trials) + " trials"
                           : v.witness;
    } else {
      const CrossCheckResult v = cross_check_derivative_relation(f, cfg);
      rec.anchor = "thm32";
      rec.holds = v.consistent;
      rec.margins = {v.conv_f.margin, v.mono_df.margin};
      ordered_json vals;
      vals["conv_f"] = v.conv_f.holds;
      vals["mono_df"] = v.mono_df.holds;
      if (v.mono_f) {
        rec.margins.push_back(v.mono_f->margin);
        rec.margins.push_back(v.pos_df->margin);
        vals["mono_f"] = v.mono_f->holds;
        vals["pos_df"] = v.pos_df->holds;
      }
      rec.values = std::move(vals);
      rec.detail = v.consistent ? "derivative-transfer verdicts agree"
                                : "derivative-transfer verdicts disagree";
    }
  } else if (module == "majorization" && check != "norm-table") {
    if (check != "thm61" && check != "thm63" && check != "prop65" && check != "prop66" &&
        check != "prop67")
      throw std::invalid_argument("run_check: unknown majorization check '" + check + "'");
    const ScalarFunction f = parse_fn_spec(params.at("fn").get<std::string>());
    const SymmetricMatrix a = matrix_from_json(params.at("a"));
    const CheckConfig cfg = detail::check_config_from(params);
    rec.anchor = check;
    ordered_json rp = {{"fn", f.describe()}, {"a", matrix_to_json(a)}};
    ordered_json vals;
    if (check == "thm61") {
      const VerifyResult v = verify_thm61(f, a, cfg);
      rec.holds = v.verdict.holds;
      rec.margins = v.verdict.prefix_margins;
      vals["lhs"] = vec_to_json(v.lhs);
      vals["rhs"] = vec_to_json(v.rhs);
      vals["assumptions"] = v.assumptions;
    } else {
      const SymmetricMatrix b = matrix_from_json(params.at("b"));
      rp["b"] = matrix_to_json(b);
      if (check == "thm63" || check == "prop66") {
        const VerifyResult v =
            check == "thm63" ? verify_thm63(f, a, b, cfg) : verify_prop66(f, a, b, cfg);
        rec.holds = v.verdict.holds;
        rec.margins = v.verdict.prefix_margins;
        vals["lhs"] = vec_to_json(v.lhs);
        vals["rhs"] = vec_to_json(v.rhs);
        vals["assumptions"] = v.assumptions;
      } else {  // prop65 / prop67
        const RemainderResult v =
            check == "prop65" ? verify_prop65(f, a, b, cfg) : verify_prop67(f, a, b, cfg);
        rec.holds = v.hadamard.holds && v.square.holds && v.chain.holds;
        rec.margins = v.hadamard.prefix_margins;
        rec.margins.insert(rec.margins.end(), v.square.prefix_margins.begin(),
                           v.square.prefix_margins.end());
        rec.margins.insert(rec.margins.end(), v.chain.prefix_margins.begin(),
                           v.chain.prefix_margins.end());
        vals["lhs"] = vec_to_json(v.lhs);
        vals["rhs_hadamard"] = vec_to_json(v.rhs_hadamard);
        vals["rhs_square"] = vec_to_json(v.rhs_square);
        vals["holds_hadamard"] = v.hadamard.holds;
        vals["holds_square"] = v.square.holds;
        vals["holds_chain"] = v.chain.holds;
        vals["assumptions"] = v.assumptions;
      }
    }
    const ordered_json cfg_json = detail::check_config_json(cfg);
    for (const auto& [k, v] : cfg_json.items()) rp[k] = v;
    rec.params = std::move(rp);
    vals["hypothesis"] =
        to_string(detail::verify_hypothesis_status(check, f, a.n()));
    rec.values = std::move(vals);
    rec.detail = rec.holds ? "all prefix comparisons hold" : "prefix comparison violated";
  } else if (module == "majorization" && check == "norm-table") {
    const ScalarFunction f = parse_fn_spec(params.at("fn").get<std::string>());
    const SymmetricMatrix a = matrix_from_json(params.at("a"));
    const SymmetricMatrix b = matrix_from_json(params.at("b"));
    const CheckConfig cfg = detail::check_config_from(params);
    std::vector<NormKind> kinds;
    ordered_json names = ordered_json::array();
    for (const auto& s : params.at("norms")) {
      kinds.push_back(norm_from_string(s.get<std::string>()));
      names.push_back(kinds.back().name());
    }
    const std::vector<NormRow> rows = norm_inequality_report(f, a, b, kinds, cfg);
    rec.anchor = "uinorms";
    rec.params = {{"fn", f.describe()},
                  {"a", matrix_to_json(a)},
                  {"b", matrix_to_json(b)},
                  {"norms", std::move(names)}};
    const ordered_json cfg_json = detail::check_config_json(cfg);
    for (const auto& [k, v] : cfg_json.items()) rec.params[k] = v;
    rec.holds = true;
    ordered_json tab = ordered_json::array();
    for (const NormRow& row : rows) {
      rec.margins.push_back(row.slack);
      const double scale = std::max({1.0, std::abs(row.lhs), std::abs(row.rhs)});
      if (row.slack < -cfg.check_tol * scale) rec.holds = false;
      tab.push_back(
          {{"norm", row.norm}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"slack", row.slack}});
    }
    rec.values = {{"rows", std::move(tab)},
                  {"hypothesis", to_string(detail::verify_hypothesis_status("prop66", f, a.n()))}};
    rec.detail = rec.holds ? "all norm comparisons hold" : "norm comparison violated";
  } else if (module == "counterexamples") {
    const double check_tol = params.value("check_tol", defaults::check_tol);
    if (check == "lemma52" || check == "fh") {
      const int n = params.at("n").get<int>();
      const double p = params.at("p").get<double>();
      Witness w;
      if (check == "lemma52") {
        w = lemma52_witness(n, p, check_tol);
        rec.anchor = "lemma52";
        rec.params = {{"n", n}, {"p", p}, {"check_tol", check_tol}};
      } else {
        const SClass cls = sclass_from_string(params.at("class").get<std::string>());
        w = fh_sharpness_witness(n, p, cls, check_tol);
        rec.anchor = "fh-sharpness";
        rec.params = {{"n", n}, {"p", p}, {"class", to_string(cls)}, {"check_tol", check_tol}};
      }
      rec.holds = true;
      rec.margins = {w.violated_quantity};
      rec.witness = witness_to_json(w);
      rec.detail = w.description;
    } else if (check == "remark64") {
      rec.anchor = "remark64";
      rec.params = ordered_json::object();
      rec.holds = true;
      ordered_json ws = ordered_json::array();
      for (const Witness& w : remark64_suite()) {
        rec.margins.push_back(w.violated_quantity);
        ws.push_back(witness_to_json(w));
      }
      rec.witness = std::move(ws);
      rec.detail = "two failing fixtures plus the pass-side control";
    } else if (check == "prop12") {
      const ScalarFunction f = parse_fn_spec(params.at("fn").get<std::string>());
      const double a = params.at("a").get<double>();
      const double lambda = params.at("lambda").get<double>();
      const Witness w = prop12_affinity_witness(f, a, lambda, check_tol);
      rec.anchor = "prop12";
      rec.params = {
          {"fn", f.describe()}, {"a", a}, {"lambda", lambda}, {"check_tol", check_tol}};
      rec.holds = true;
      rec.margins = {w.violated_quantity};
      rec.witness = witness_to_json(w);
      rec.detail = w.description;
    } else {
      throw std::invalid_argument("run_check: unknown counterexample kind '" + check + "'");
    }
  } else {
    throw std::invalid_argument("run_check: unknown check " + module + "/" + check);
  }

  rec.config_hash = config_hash_of(rec.module, rec.check, rec.params, rec.seed);
  if (timing) {
    const auto t1 = std::chrono::steady_clock::now();
    rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return rec;
}

/// Outcome-field equality, ignoring runtime.
inline bool records_equivalent(const CheckRecord& a, const CheckRecord& b) {
  ordered_json ja = record_to_json(a), jb = record_to_json(b);
  ja["runtime_ms"] = 0.0;
  jb["runtime_ms"] = 0.0;
  return ja == jb;
}

struct ReplayOutcome {
  CheckRecord rerun;
  bool match = false;
};

/// Re-execute a record from its own params and seed; also re-validates any
/// embedded witness evidence.
inline ReplayOutcome replay_record(const CheckRecord& original) {
  ReplayOutcome out{run_check(original.module, original.check, original.params, original.seed),
                    false};
  out.match = records_equivalent(out.rerun, original);
  if (!original.witness.is_null() && original.module == "counterexamples") {
    const CheckConfig cfg = detail::check_config_from(original.params);
    if (original.witness.is_array()) {
      for (const auto& wj : original.witness) revalidate_witness(witness_from_json(wj), cfg);
    } else {
      revalidate_witness(witness_from_json(original.witness), cfg);
    }
  }
  return out;
}

}  // namespace schur
