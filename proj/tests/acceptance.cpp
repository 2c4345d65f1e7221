// End-to-end acceptance suite: one line per criterion, nonzero exit if any
// fails.  Each criterion re-verifies its claim with arithmetic independent
// of the code path under test wherever possible.

#include "tsym/classical.hpp"
#include "tsym/lhv.hpp"
#include "tsym/serialize.hpp"
#include "tsym/timerev.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

using namespace tsym;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion
            << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << '\n';
  if (!ok) ++failures;
}

double behavior_distance(const BehaviorTable& a, const BehaviorTable& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.table.size(); ++i) {
    worst = std::max(worst, std::abs(a.table[i] - b.table[i]));
  }
  return worst;
}

// 1. Temporal CHSH: value (2+sqrt(2))/4 within 1e-9, LP infeasible with a
//    verified separating functional, in under a second.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const ChshReport r = chsh_violation_report(build_chsh_experiment());
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool value_ok = std::abs(r.value - (2.0 + std::sqrt(2.0)) / 4.0) <= 1e-9;
  const bool lp_ok = !r.certificate.feasible &&
                     r.certificate.exactly_verified &&
                     r.certificate.achieved > r.certificate.bound;
  std::ostringstream detail;
  detail << "value " << r.value << ", " << elapsed << " s";
  report(1, "temporal CHSH value and infeasibility", value_ok && lp_ok &&
             r.consistent && elapsed < 1.0, detail.str());
}

// 2. 200 random no-signalling experiments (qubit and qutrit) reverse
//    correctly within 1e-9.
void criterion_2(const std::vector<Experiment>& batch) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool ok = true;
  for (const Experiment& e : batch) {
    const Experiment rev = operational_time_reverse(e);
    const double dev = time_reverse_deviation(e, rev);
    worst = std::max(worst, dev);
    ok = ok && is_operational_time_reverse(e, rev);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream detail;
  detail << batch.size() << " experiments, worst deviation " << worst << ", "
         << elapsed << " s";
  report(2, "reversal identity on randomized experiments",
         ok && worst <= 1e-9 && elapsed < 30.0, detail.str());
}

// 3. Prediction mapping within 1e-9 on the same batch; CHSH spacelike image
//    is the maximally entangled state with the same CHSH value.
void criterion_3(const std::vector<Experiment>& batch) {
  double worst = 0.0;
  for (const Experiment& e : batch) {
    worst = std::max(worst, prediction_isomorphism_check(e).max_deviation);
  }
  const Experiment chsh = build_chsh_experiment();
  const BipartiteState rho_ab = experiment_to_bipartite(
      chsh.preparation.ensemble_average(0), chsh.channel);
  Mat phi = Mat::Zero(4, 4);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) phi(j * 2 + j, k * 2 + k) = 0.5;
  const double state_dev = (rho_ab.matrix - phi).cwiseAbs().maxCoeff();

  // CHSH value recomputed on the spacelike side only.
  const Measurement retro = retro_povm(chsh.preparation);
  BehaviorTable spacelike = born_predict(chsh);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) {
          const Mat op = tensor(retro.effect(x, a).transpose(),
                                chsh.measurement.effect(y, b));
          spacelike.at(x, a, y, b) = (op * rho_ab.matrix).trace().real();
        }
  const double value_dev =
      std::abs(chsh_value(spacelike) - (2.0 + std::sqrt(2.0)) / 4.0);

  std::ostringstream detail;
  detail << "worst mapping deviation " << worst << ", state deviation "
         << state_dev;
  report(3, "timelike/spacelike prediction mapping",
         worst <= 1e-9 && state_dev <= 1e-12 && value_dev <= 1e-9,
         detail.str());
}

// 4. Toy-model suite, all exact in rational arithmetic.
void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  const OnticExtension toy = build_toy_model_extension();
  bool ok = true;

  const std::vector<Rat> marginal = marginalize_exact(toy);
  const BehaviorTable price = born_predict(build_price_experiment(true));
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    ok = ok && marginal[i] == Rat(price.table[i]);
  }

  ok = ok && check_no_retrocausality(toy).worst_violation == 0.0;
  ok = ok && check_lambda_mediation(toy).worst_violation == 0.0;
  ok = ok && check_local_causality(toy).worst_violation == 0.0;
  const IndependenceReports ind = check_independences(toy);
  ok = ok && ind.all_hold() &&
       ind.measurement_independence.worst_violation == 0.0 &&
       ind.parameter_independence.worst_violation == 0.0 &&
       ind.outcome_independence.worst_violation == 0.0;

  const auto f = find_ontological_time_reverse(toy, swap_roles(toy));
  ok = ok && f.has_value();
  if (f) {
    for (std::size_t l = 0; l < f->size(); ++l) {
      ok = ok && (*f)[l] == static_cast<int>(l);
    }
  }

  const PsiClassification cls = check_psi_ontic(toy, {0, 1, 2, 3});
  ok = ok && !cls.psi_ontic &&
       cls.witness.find("lambda=00") != std::string::npos;

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(4, "toy-model suite, exact arithmetic", ok && elapsed < 1.0);
}

// 5. Psi-ontology contradiction demo.
void criterion_5() {
  const PriceDemoReport r = price_contradiction_demo();
  const bool ok = r.applicable && r.supports_disjoint &&
                  !r.reversed_measurement_independence.holds &&
                  !r.reversed_measurement_independence.witness.empty() &&
                  r.contradiction;
  report(5, "psi-ontic supports force retrocausal statistics", ok);
}

// 6. LHV certificate soundness on 1000 random behaviors plus agreement of
//    timelike and spacelike verdicts.
void criterion_6() {
  Rng rng(601);
  bool ok = true;
  int feasible_count = 0;
  const auto strategies = enumerate_strategies(2, 2, 2, 2);
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    const BehaviorTable t = (trial % 2 == 0)
                                ? random_behavior(2, 2, 2, 2, rng)
                                : random_local_behavior(2, 2, 2, 2, rng);
    const LhvCertificate cert = lhv_feasibility(t);
    if (cert.feasible) {
      ++feasible_count;
      std::vector<double> mix(t.table.size(), 0.0);
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        if (cert.weights[s] < -1e-8) ok = false;
        const auto p = strategy_behavior(strategies[s], 2, 2, 2, 2);
        for (std::size_t i = 0; i < mix.size(); ++i)
          mix[i] += cert.weights[s] * p[i];
      }
      for (std::size_t i = 0; i < mix.size(); ++i) {
        ok = ok && std::abs(mix[i] - t.table[i]) <= 1e-8;
      }
    } else {
      // Exact re-evaluation of the separating functional.
      Rat bound;
      bool first = true;
      for (const auto& s : strategies) {
        const auto p = strategy_behavior(s, 2, 2, 2, 2);
        Rat v = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
          if (p[i] > 0.0) v += Rat(cert.functional[i]);
        if (first || v > bound) bound = v;
        first = false;
      }
      Rat achieved = 0;
      for (std::size_t i = 0; i < t.table.size(); ++i)
        achieved += Rat(cert.functional[i]) * Rat(t.table[i]);
      ok = ok && achieved > bound;
    }
  }

  bool verdict_agreement = true;
  Rng rng2(602);
  for (int trial = 0; trial < 50; ++trial) {
    const Experiment e = random_no_signalling_experiment(2, rng2);
    const BehaviorTable timelike = born_predict(e);
    // Spacelike table: local measurements on the bipartite image.
    const BipartiteState rho_ab = experiment_to_bipartite(
        e.preparation.ensemble_average(0), e.channel);
    const Measurement retro = retro_povm(e.preparation);
    BehaviorTable spacelike = timelike;
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        for (int y = 0; y < 2; ++y)
          for (int b = 0; b < 2; ++b) {
            const Mat op = tensor(retro.effect(x, a).transpose(),
                                  e.measurement.effect(y, b));
            spacelike.at(x, a, y, b) = (op * rho_ab.matrix).trace().real();
          }
    verdict_agreement = verdict_agreement &&
                        lhv_feasibility(timelike).feasible ==
                            lhv_feasibility(spacelike).feasible;
  }

  std::ostringstream detail;
  detail << feasible_count << "/1000 feasible";
  report(6, "LHV certificate soundness and verdict agreement",
         ok && verdict_agreement, detail.str());
}

// 7. Chained family N = 1..6.
void criterion_7() {
  bool ok = true;
  const std::vector<CrRow> rows = cr_family_report(6);
  for (const CrRow& row : rows) {
    ok = ok && row.marginal_deviation <= 1e-12;
    ok = ok && row.feasible == (row.n == 1);
    ok = ok && row.max_pair_deviation <= 1e-10;
    ok = ok && std::abs(row.chained - row.chained_closed_form) <= 1e-9;
  }
  report(7, "chained family: marginals, verdicts, overlaps", ok);
}

// 8. Diagonal experiments: the reversal construction equals brute-force
//    Bayes inversion, exactly in rationals, for alphabets up to size 4.
void criterion_8() {
  Rng rng(801);
  bool exact_ok = true;
  bool float_ok = true;
  for (int size = 2; size <= 4 && exact_ok; ++size) {
    for (int trial = 0; trial < 4; ++trial) {
      const ClassicalExperiment c = random_classical_experiment(
          size, size, size, size, size, size, rng);
      const ClassicalExperiment ratio = classical_time_reverse(c);
      const ClassicalExperiment oracle = classical_bayes_oracle(c);
      exact_ok = exact_ok && classical_equal(ratio, oracle);

      // The reversal identity holds exactly on the rational tables.
      const std::vector<Rat> fwd = classical_behavior(c);
      const std::vector<Rat> rev = classical_behavior(ratio);
      for (int x = 0; x < c.nx && exact_ok; ++x)
        for (int a = 0; a < c.na; ++a)
          for (int y = 0; y < c.ny; ++y)
            for (int b = 0; b < c.nb; ++b) {
              const Rat p_fwd = fwd[((x * c.na + a) * c.ny + y) * c.nb + b];
              const Rat p_rev = rev[((y * c.nb + b) * c.nx + x) * c.na + a];
              exact_ok = exact_ok && p_fwd == p_rev;
            }

      // Floating cross-check: the operator-level reversal of the diagonal
      // embedding reproduces the oracle's behavior.
      const Experiment q = to_quantum(c);
      const double dev = behavior_distance(
          born_predict(operational_time_reverse(q)),
          born_predict(to_quantum(oracle)));
      float_ok = float_ok && dev <= 1e-9;
    }
  }
  report(8, "diagonal reversal equals Bayes inversion",
         exact_ok && float_ok);
}

}  // namespace

int main() {
  criterion_1();

  std::vector<Experiment> batch;
  Rng rng(200);
  for (int i = 0; i < 200; ++i) {
    batch.push_back(random_no_signalling_experiment(2 + i % 2, rng));
  }
  criterion_2(batch);
  criterion_3(batch);
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
