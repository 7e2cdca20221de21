// schur-order: entrywise matrix calculus under the PSD order.
// Classify functions into the entrywise positivity/monotonicity/convexity
// classes, check the weak-majorization comparisons between entrywise and
// spectral calculus, construct sharpness counterexamples, and replay the
// JSON reports any of those commands emit.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "schur_order/matrix_io.hpp"
#include "schur_order/report.hpp"
#include "schur_order/sampling.hpp"

namespace {

struct SampleSpec {
  int n = 3;
  int trials = 50;
};

SampleSpec parse_sample_spec(const std::string& text) {
  SampleSpec s;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find(',', pos);
    const std::string item = text.substr(pos, end == std::string::npos ? end : end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--sample: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const int value = std::stoi(item.substr(eq + 1));
    if (key == "n") {
      s.n = value;
    } else if (key == "trials") {
      s.trials = value;
    } else {
      throw std::invalid_argument("--sample: unknown key '" + key + "'");
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (s.n < 1 || s.trials < 1) throw std::invalid_argument("--sample: n and trials must be >= 1");
  return s;
}

schur::SymmetricMatrix load_matrix(const std::string& path) {
  const schur::MatrixCsv csv = schur::load_matrix_csv_file(path);
  if (csv.symmetrized)
    std::fprintf(stderr, "note: %s was asymmetric (max %.3g) and has been averaged\n",
                 path.c_str(), csv.max_asymmetry);
  return csv.matrix;
}

void print_summary(const schur::Report& rep) {
  for (const auto& r : rep.records) {
    double worst = 0.0;
    for (std::size_t i = 0; i < r.margins.size(); ++i)
      if (i == 0 || r.margins[i] < worst) worst = r.margins[i];
    std::fprintf(stderr, "%-14s %-11s %-9s margin=%-12.5g %s\n",
                 (r.module + "/" + r.check).c_str(), r.anchor.c_str(),
                 r.holds ? "holds" : "VIOLATED", worst, r.detail.c_str());
  }
  std::size_t held = 0;
  for (const auto& r : rep.records) held += r.holds ? 1 : 0;
  std::fprintf(stderr, "seed=%llu checks=%zu holds=%zu violations=%zu\n",
               static_cast<unsigned long long>(rep.seed), rep.records.size(), held,
               rep.records.size() - held);
}

void emit_report(const schur::Report& rep, const std::string& out_path) {
  const std::string text = schur::report_dump(rep);
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write report to '" + out_path + "'");
    out << text;
  }
  print_summary(rep);
}

bool violated_under_valid_hypothesis(const schur::CheckRecord& r) {
  if (r.holds) return false;
  if (!r.values.is_object() || !r.values.contains("hypothesis")) return true;
  return r.values.at("hypothesis").get<std::string>() == "valid";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entrywise (Hadamard) matrix calculus under the PSD order"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  double tol = schur::defaults::check_tol;
  int trials = 200;
  std::string config_path, out_path;
  bool timing = false;
  app.add_option("--seed", seed, "base seed for all randomized checks");
  app.add_option("--tol", tol, "comparison tolerance (check_tol)");
  app.add_option("--trials", trials, "trials per randomized check");
  app.add_option("--config", config_path, "trial configuration file (key=value lines)");
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_flag("--timing", timing, "record wall-clock runtime per check");

  auto* classify = app.add_subcommand("classify", "test class membership of a function");
  classify->fallthrough();
  std::string cl_fn;
  std::vector<int> cl_ns;
  classify->add_option("--fn", cl_fn, "function spec")->required();
  classify->add_option("--n", cl_ns, "orders to test (repeatable)");

  auto* verify = app.add_subcommand("verify", "check a weak-majorization comparison");
  verify->fallthrough();
  std::string vf_theorem, vf_fn, vf_a, vf_b, vf_sample;
  verify->add_option("theorem", vf_theorem, "one of thm61 thm63 prop65 prop66 prop67")
      ->required()
      ->check(CLI::IsMember({"thm61", "thm63", "prop65", "prop66", "prop67"}));
  verify->add_option("--fn", vf_fn, "function spec")->required();
  verify->add_option("--A", vf_a, "left matrix (CSV)");
  verify->add_option("--B", vf_b, "right matrix (CSV)");
  verify->add_option("--sample", vf_sample, "sample instances, e.g. n=3,trials=50");

  auto* cx = app.add_subcommand("counterexample", "construct falsification evidence");
  cx->fallthrough();
  std::string cx_kind, cx_class = "s-conv", cx_fn = "exp", cx_witness_out = "witness.json";
  int cx_n = 2;
  double cx_p = 1.5, cx_a = 0.8, cx_lambda = 0.5;
  cx->add_option("kind", cx_kind, "one of lemma52 fh remark64 prop12")
      ->required()
      ->check(CLI::IsMember({"lemma52", "fh", "remark64", "prop12"}));
  cx->add_option("--n", cx_n, "matrix order");
  cx->add_option("--p", cx_p, "power exponent");
  cx->add_option("--class", cx_class, "target class for fh (s-pos or s-mono)");
  cx->add_option("--fn", cx_fn, "function spec for prop12");
  cx->add_option("--a", cx_a, "scale parameter for prop12");
  cx->add_option("--lambda", cx_lambda, "mixing parameter for prop12");
  cx->add_option("--witness-out", cx_witness_out, "witness file path ('' to skip)");

  auto* replay = app.add_subcommand("replay", "re-run every record of a report");
  replay->fallthrough();
  std::string rp_path;
  replay->add_option("report", rp_path, "report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("SCHUR_ORDER_SEED")) {
    char* endp = nullptr;
    const unsigned long long v = std::strtoull(env, &endp, 10);
    if (endp == env || *endp != '\0') {
      std::fprintf(stderr, "error: SCHUR_ORDER_SEED is not a number: '%s'\n", env);
      return 2;
    }
    seed = v;
  }

  schur::Report rep;
  for (int i = 0; i < argc; ++i) rep.command += (i ? " " : "") + std::string(argv[i]);

  std::optional<schur::TrialConfig> file_cfg;
  try {
    if (!config_path.empty()) file_cfg = schur::parse_trial_config_file(config_path);
    if (file_cfg && app.count("--seed") == 0 && std::getenv("SCHUR_ORDER_SEED") == nullptr)
      seed = file_cfg->seed;
    rep.seed = seed;
    const int eff_trials = (app.count("--trials") > 0 || !file_cfg) ? trials : file_cfg->trials;

    if (classify->parsed()) {
      const schur::ScalarFunction f = schur::parse_fn_spec(cl_fn);
      const char* classes[] = {"s-pos", "s-mono", "s-conv"};
      if (f.analytic_at_zero())
        for (const char* cls : classes)
          rep.records.push_back(schur::run_check(
              "scalarfn", "certify", {{"fn", cl_fn}, {"class", cls}}, seed, timing));
      std::vector<int> ns = cl_ns;
      if (ns.empty()) ns.push_back(file_cfg ? file_cfg->n : 3);
      for (int n : ns)
        for (const char* cls : classes) {
          schur::ordered_json params = {
              {"fn", cl_fn}, {"class", cls}, {"n", n}, {"trials", eff_trials}, {"check_tol", tol}};
          if (file_cfg) {
            params["alpha"] = schur::alpha_to_json(file_cfg->alpha);
            params["lambdas"] = schur::vec_to_json(file_cfg->lambdas);
            params["psd_tol"] = file_cfg->psd_tol;
          }
          rep.records.push_back(schur::run_check("order-testing", "test-class", params, seed, timing));
        }
      emit_report(rep, out_path);
      return 0;
    }

    if (verify->parsed()) {
      const schur::ScalarFunction f = schur::parse_fn_spec(vf_fn);
      const bool one_matrix = vf_theorem == "thm61";
      if (!vf_a.empty()) {
        if (one_matrix && !vf_b.empty())
          throw std::invalid_argument("thm61 compares f[A] with f(A); it takes only --A");
        if (!one_matrix && vf_b.empty())
          throw std::invalid_argument(vf_theorem + " needs both --A and --B");
        schur::ordered_json params = {{"fn", vf_fn},
                                      {"a", schur::matrix_to_json(load_matrix(vf_a))}};
        if (!one_matrix) params["b"] = schur::matrix_to_json(load_matrix(vf_b));
        params["check_tol"] = tol;
        rep.records.push_back(schur::run_check("majorization", vf_theorem, params, seed, timing));
      } else if (!vf_sample.empty()) {
        const SampleSpec spec = parse_sample_spec(vf_sample);
        const double alpha =
            std::min(file_cfg ? file_cfg->alpha : std::numeric_limits<double>::infinity(),
                     f.domain_alpha());
        for (int i = 0; i < spec.trials; ++i) {
          const std::uint64_t s_i = schur::derive_seed(seed, static_cast<std::uint64_t>(i));
          schur::Rng rng(s_i);
          schur::SymmetricMatrix a = schur::sample_psd(spec.n, alpha, rng);
          std::optional<schur::SymmetricMatrix> b;
          if (!one_matrix) b = schur::sample_psd(spec.n, alpha, rng);
          if (std::isfinite(alpha)) {
            // the samplers bound entries; the comparisons need operator norms
            // strictly inside the domain, so rescale jointly
            double no = schur::op_norm(a);
            if (b) no = std::max(no, schur::op_norm(*b));
            if (no >= 0.95 * alpha) {
              const double c = 0.95 * alpha / no;
              a = c * a;
              if (b) *b = c * (*b);
            }
          }
          schur::ordered_json params = {{"fn", vf_fn}, {"a", schur::matrix_to_json(a)}};
          if (b) params["b"] = schur::matrix_to_json(*b);
          params["check_tol"] = tol;
          rep.records.push_back(schur::run_check("majorization", vf_theorem, params, s_i, timing));
        }
      } else {
        throw std::invalid_argument("verify needs either --A (and --B) or --sample");
      }
      emit_report(rep, out_path);
      for (const auto& r : rep.records)
        if (violated_under_valid_hypothesis(r)) return 1;
      return 0;
    }

    if (cx->parsed()) {
      schur::ordered_json params;
      if (cx_kind == "lemma52") {
        params = {{"n", cx_n}, {"p", cx_p}, {"check_tol", tol}};
      } else if (cx_kind == "fh") {
        params = {{"n", cx_n}, {"p", cx_p}, {"class", cx_class}, {"check_tol", tol}};
      } else if (cx_kind == "prop12") {
        params = {{"fn", cx_fn}, {"a", cx_a}, {"lambda", cx_lambda}, {"check_tol", tol}};
      } else {
        params = schur::ordered_json::object();
      }
      const schur::CheckRecord rec =
          schur::run_check("counterexamples", cx_kind, params, seed, timing);
      rep.records.push_back(rec);
      if (!cx_witness_out.empty()) {
        std::ofstream wout(cx_witness_out);
        if (!wout) throw std::invalid_argument("cannot write witness to '" + cx_witness_out + "'");
        wout << rec.witness.dump(2) << "\n";
      }
      emit_report(rep, out_path);
      return 0;
    }

    // replay
    const schur::Report original = schur::load_report_file(rp_path);
    rep.seed = original.seed;
    int mismatches = 0;
    for (const auto& r : original.records) {
      const schur::ReplayOutcome outcome = schur::replay_record(r);
      rep.records.push_back(outcome.rerun);
      if (!outcome.match) {
        ++mismatches;
        std::fprintf(stderr, "replay mismatch: %s/%s (config %s)\n", r.module.c_str(),
                     r.check.c_str(), r.config_hash.c_str());
      }
    }
    emit_report(rep, out_path);
    if (mismatches > 0) {
      std::fprintf(stderr, "replay: %d record(s) diverged\n", mismatches);
      return 1;
    }
    std::fprintf(stderr, "replay: all %zu record(s) reproduced\n", rep.records.size());
    return 0;
  } catch (const schur::SearchInconclusive& e) {
    std::fprintf(stderr, "inconclusive: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failed: %s\n", e.what());
    return 1;
  }
}
