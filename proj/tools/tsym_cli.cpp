// Batch front end: load experiment / behavior / extension documents, run a
// verb, emit a report.  Exit codes: 0 all checks passed, 1 a check failed,
// 2 malformed input or usage error.

#include "tsym/classical.hpp"
#include "tsym/lhv.hpp"
#include "tsym/serialize.hpp"
#include "tsym/timerev.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw tsym::ParseError("cannot write " + path);
  out << text;
}

int run_predict(const std::string& exp_path, const std::string& out_path,
                const tsym::Tolerances& tol) {
  const tsym::Experiment e = tsym::load_experiment(exp_path, tol);
  emit(out_path, tsym::behavior_to_csv(tsym::born_predict(e, tol)));
  return kExitOk;
}

int run_reverse(const std::string& exp_path, const std::string& out_path,
                const tsym::Tolerances& tol) {
  const tsym::Experiment e = tsym::load_experiment(exp_path, tol);
  const tsym::Experiment rev = tsym::operational_time_reverse(e, tol);
  emit(out_path, tsym::experiment_to_json(rev));
  const double dev = tsym::time_reverse_deviation(e, rev, tol);
  std::cout << "reverse deviation: " << std::setprecision(17) << dev << '\n';
  if (dev > tol.prob) {
    std::cout << "verification: FAIL\n";
    return kExitCheckFailed;
  }
  std::cout << "verification: PASS\n";
  return kExitOk;
}

int run_verify_reverse(const std::string& path1, const std::string& path2,
                       const tsym::Tolerances& tol) {
  const tsym::Experiment e1 = tsym::load_experiment(path1, tol);
  const tsym::Experiment e2 = tsym::load_experiment(path2, tol);
  const double dev = tsym::time_reverse_deviation(e1, e2, tol);
  std::cout << "max |p2(b,a|y,x) - p1(a,b|x,y)| = " << std::setprecision(17)
            << dev << '\n';
  const bool ok = dev <= tol.prob;
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int run_bipartite(const std::string& exp_path, const std::string& out_path,
                  const tsym::Tolerances& tol) {
  const tsym::Experiment e = tsym::load_experiment(exp_path, tol);
  const tsym::Mat rho_a = e.preparation.ensemble_average(0);
  const tsym::BipartiteState rho_ab =
      tsym::experiment_to_bipartite(rho_a, e.channel, tol);
  emit(out_path, tsym::matrix_to_json(rho_ab.matrix));
  const tsym::IsomorphismReport report =
      tsym::prediction_isomorphism_check(e, tol);
  std::cout << std::setprecision(17)
            << "prediction mapping deviation: " << report.max_deviation
            << '\n'
            << "naive (untransposed) deviation: "
            << report.max_deviation_no_transpose << '\n';
  if (report.max_deviation > tol.prob) {
    std::cout << "verification: FAIL\n";
    return kExitCheckFailed;
  }
  std::cout << "verification: PASS\n";
  return kExitOk;
}

int run_chsh(const std::string& exp_path, const tsym::Tolerances& tol) {
  const tsym::Experiment e = tsym::load_experiment(exp_path, tol);
  const tsym::ChshReport report = tsym::chsh_violation_report(e);
  std::cout << report.to_string();
  return report.consistent ? kExitOk : kExitCheckFailed;
}

int run_lhv_check(const std::string& csv_path, const std::string& out_path,
                  const tsym::Tolerances& tol) {
  const tsym::BehaviorTable t = tsym::load_behavior(csv_path, tol);
  const tsym::LhvCertificate cert = tsym::lhv_feasibility(t);
  emit(out_path, tsym::certificate_to_text(cert, t));
  return kExitOk;
}

int print_reports(const tsym::OnticExtension& ext) {
  const std::vector<tsym::CheckReport> reports = {
      tsym::check_no_retrocausality(ext),
      tsym::check_lambda_mediation(ext),
      tsym::check_lambda_mediation(ext, true),
      tsym::check_local_causality(ext),
      tsym::check_independences(ext).measurement_independence,
      tsym::check_independences(ext).parameter_independence,
      tsym::check_independences(ext).outcome_independence,
  };
  bool all_hold = true;
  for (const tsym::CheckReport& r : reports) {
    std::cout << r.to_string() << '\n';
    all_hold = all_hold && r.holds;
  }
  return all_hold ? kExitOk : kExitCheckFailed;
}

int run_ontic_check(const std::string& ext_path) {
  return print_reports(tsym::load_ontic(ext_path));
}

int run_toy_model() {
  const tsym::OnticExtension ext = tsym::build_toy_model_extension();
  const int status = print_reports(ext);

  const tsym::BehaviorTable marginal = tsym::marginalize(ext);
  const tsym::BehaviorTable price =
      tsym::born_predict(tsym::build_price_experiment(true));
  double dev = 0.0;
  for (std::size_t i = 0; i < marginal.table.size(); ++i) {
    dev = std::max(dev, std::abs(marginal.table[i] - price.table[i]));
  }
  std::cout << "marginal matches the matched-basis experiment, deviation "
            << dev << '\n';

  const auto bijection = tsym::find_ontological_time_reverse(
      ext, tsym::swap_roles(ext));
  std::cout << "ontological time reverse under role swap: "
            << (bijection ? "found" : "none") << '\n';

  // state ids: (x=0,a) prepares the same pure state as (x=1,a') iff they
  // share the id; all four branches here are distinct pure states.
  const tsym::PsiClassification cls =
      tsym::check_psi_ontic(ext, {0, 1, 2, 3});
  std::cout << "epistemic overlap: "
            << (cls.psi_ontic ? "none (psi-ontic)" : cls.witness) << '\n';

  const bool ok = status == kExitOk && dev == 0.0 && bijection.has_value();
  return ok ? kExitOk : kExitCheckFailed;
}

int run_price_demo() {
  const tsym::PriceDemoReport report = tsym::price_contradiction_demo();
  std::cout << report.to_string(
                   tsym::build_price_psi_ontic_extension().lambda)
            << '\n';
  return report.contradiction ? kExitOk : kExitCheckFailed;
}

int run_cr_family(int n_max, const std::string& out_path) {
  emit(out_path, tsym::cr_report_to_csv(tsym::cr_family_report(n_max)));
  return kExitOk;
}

int run_paper_suite() {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  const tsym::Experiment chsh = tsym::build_chsh_experiment();
  const tsym::ChshReport chsh_report = tsym::chsh_violation_report(chsh);
  check("chsh value (2+sqrt(2))/4",
        std::abs(chsh_report.value - (2.0 + std::sqrt(2.0)) / 4.0) <= 1e-9);
  check("chsh lhv infeasible", !chsh_report.certificate.feasible &&
                                   chsh_report.certificate.exactly_verified);

  const tsym::Experiment rev = tsym::operational_time_reverse(chsh);
  check("chsh reverse satisfies the defining identity",
        tsym::is_operational_time_reverse(chsh, rev));
  check("chsh self-reverse gauge exists",
        tsym::find_self_reverse_gauge(chsh).has_value());

  const tsym::IsomorphismReport iso = tsym::prediction_isomorphism_check(chsh);
  check("timelike/spacelike prediction mapping", iso.max_deviation <= 1e-9);

  const tsym::OnticExtension toy = tsym::build_toy_model_extension();
  check("toy model: no retrocausality",
        tsym::check_no_retrocausality(toy).holds);
  check("toy model: lambda mediation",
        tsym::check_lambda_mediation(toy).holds);
  check("toy model: local causality",
        tsym::check_local_causality(toy).holds);
  check("toy model: role swap is its own time reverse",
        tsym::find_ontological_time_reverse(toy, tsym::swap_roles(toy))
            .has_value());
  check("toy model: epistemic overlap witnessed",
        !tsym::check_psi_ontic(toy, {0, 1, 2, 3}).psi_ontic);

  const tsym::BehaviorTable price =
      tsym::born_predict(tsym::build_price_experiment(true));
  double marg_dev = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      double m = 0.0;
      for (int b = 0; b < 2; ++b) m += price.at(x, a, 0, b);
      marg_dev = std::max(marg_dev, std::abs(m - 0.5));
    }
  check("uniform preparation marginals p(a|x) = 1/2", marg_dev == 0.0);
  check("psi-ontic contradiction demo",
        tsym::price_contradiction_demo().contradiction);

  return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prepare-transform-measure workbench"};
  app.require_subcommand(1);

  tsym::Tolerances tol;
  app.add_option("--eps-prob", tol.prob, "probability comparison tolerance");
  app.add_option("--eps-herm", tol.herm, "hermiticity tolerance");
  app.add_option("--eps-psd", tol.psd, "positivity tolerance");
  app.add_option("--eps-support", tol.support,
                 "relative support cutoff for pseudo-inverses");

  std::string in1, in2, out_path;
  int n_max = 6;

  auto* predict = app.add_subcommand("predict", "behavior table of an experiment");
  predict->add_option("experiment", in1)->required();
  predict->add_option("-o,--output", out_path);

  auto* reverse = app.add_subcommand("reverse", "construct and verify the time reverse");
  reverse->add_option("experiment", in1)->required();
  reverse->add_option("-o,--output", out_path);

  auto* verify = app.add_subcommand("verify-reverse", "check two experiments against the reversal identity");
  verify->add_option("experiment", in1)->required();
  verify->add_option("candidate", in2)->required();

  auto* bipartite = app.add_subcommand("bipartite", "spacelike image of an experiment");
  bipartite->add_option("experiment", in1)->required();
  bipartite->add_option("-o,--output", out_path);

  auto* chsh = app.add_subcommand("chsh", "CHSH value, LHV verdict, and consistency report");
  chsh->add_option("experiment", in1)->required();

  auto* lhv = app.add_subcommand("lhv-check", "LHV feasibility certificate for a behavior CSV");
  lhv->add_option("behavior", in1)->required();
  lhv->add_option("-o,--output", out_path);

  auto* ontic = app.add_subcommand("ontic-check", "conditional-independence checks for an ontic extension");
  ontic->add_option("extension", in1)->required();

  app.add_subcommand("toy-model", "build the two-bit toy extension and run the full check suite");
  app.add_subcommand("price-demo", "psi-ontology contradiction demo");

  auto* cr = app.add_subcommand("cr-family", "chained-measurement family report");
  cr->add_option("--n-max", n_max, "largest number of settings")
      ->check(CLI::Range(1, 12));
  cr->add_option("-o,--output", out_path);

  app.add_subcommand("paper-suite", "reproduce every published example and print pass/fail");

  CLI11_PARSE(app, argc, argv);

  try {
    if (predict->parsed()) return run_predict(in1, out_path, tol);
    if (reverse->parsed()) return run_reverse(in1, out_path, tol);
    if (verify->parsed()) return run_verify_reverse(in1, in2, tol);
    if (bipartite->parsed()) return run_bipartite(in1, out_path, tol);
    if (chsh->parsed()) return run_chsh(in1, tol);
    if (lhv->parsed()) return run_lhv_check(in1, out_path, tol);
    if (ontic->parsed()) return run_ontic_check(in1);
    if (app.get_subcommand("toy-model")->parsed()) return run_toy_model();
    if (app.get_subcommand("price-demo")->parsed()) return run_price_demo();
    if (cr->parsed()) return run_cr_family(n_max, out_path);
    if (app.get_subcommand("paper-suite")->parsed()) return run_paper_suite();
  } catch (const tsym::ParseError& ex) {
    std::cerr << "error: input: " << ex.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitInputError;
  }
  std::cerr << "error: no verb\n";
  return kExitInputError;
}
