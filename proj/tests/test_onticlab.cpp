#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsym/onticlab.hpp"
#include "tsym/opmodel.hpp"

#include <algorithm>

using namespace tsym;

namespace {

// lambda copies the measurement input y (and b copies lambda): retrocausal.
OnticExtension lambda_copies_y() {
  OnticExtension ext;
  ext.X = ext.A = ext.Y = ext.B = default_labels(2);
  ext.lambda = default_labels(2);
  ext.joint.assign(ext.size(), Rat(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a) ext.at(x, y, a, y, y) = Rat(1, 2);
  return ext;
}

// lambda copies the preparation input x: measurement independence fails.
OnticExtension lambda_copies_x() {
  OnticExtension ext;
  ext.X = ext.A = ext.Y = ext.B = default_labels(2);
  ext.lambda = default_labels(2);
  ext.joint.assign(ext.size(), Rat(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b) ext.at(x, y, x, b, x) = Rat(1, 2);
  return ext;
}

// b wired directly to a while lambda carries no information.
OnticExtension b_copies_a() {
  OnticExtension ext;
  ext.X = ext.A = ext.Y = ext.B = default_labels(2);
  ext.lambda = {"0"};
  ext.joint.assign(ext.size(), Rat(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a) ext.at(x, y, a, a, 0) = Rat(1, 2);
  return ext;
}

}  // namespace

TEST_CASE("toy model extension: exact construction and marginal") {
  const OnticExtension toy = build_toy_model_extension();
  toy.validate();
  const std::vector<Rat> marginal = marginalize_exact(toy);
  const BehaviorTable price = born_predict(build_price_experiment(true));
  REQUIRE(marginal.size() == price.table.size());
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    CHECK(marginal[i] == Rat(price.table[i]));
  }
  // p(a|x) = 1/2 exactly.
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      Rat m = 0;
      for (int b = 0; b < 2; ++b)
        m += marginal[((x * 2 + a) * 2 + 0) * 2 + b];
      CHECK(m == Rat(1, 2));
    }
}

TEST_CASE("toy model extension passes every condition exactly") {
  const OnticExtension toy = build_toy_model_extension();
  CHECK(check_no_retrocausality(toy).holds);
  CHECK(check_no_retrocausality(toy).worst_violation == 0.0);
  CHECK(check_lambda_mediation(toy).holds);
  CHECK(check_lambda_mediation(toy, true).holds);
  CHECK(check_local_causality(toy).holds);
  const IndependenceReports reports = check_independences(toy);
  CHECK(reports.all_hold());
  CHECK(reports.measurement_independence.worst_violation == 0.0);
}

TEST_CASE("toy model is invariant under role exchange") {
  const OnticExtension toy = build_toy_model_extension();
  CHECK(swap_roles(toy).joint == toy.joint);
  const auto f = find_ontological_time_reverse(toy, swap_roles(toy));
  REQUIRE(f.has_value());
  // Identity bijection comes first in the search order.
  for (int l = 0; l < 4; ++l) CHECK((*f)[l] == l);
}

TEST_CASE("time reverse search finds permutations and certifies absence") {
  const OnticExtension toy = build_toy_model_extension();
  OnticExtension permuted = swap_roles(toy);
  // Relabel lambda by the permutation (0 1 2 3) -> (3 2 1 0).
  OnticExtension shuffled = permuted;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int l = 0; l < 4; ++l)
            shuffled.at(x, y, a, b, 3 - l) = permuted.at(x, y, a, b, l);
  const auto f = find_ontological_time_reverse(toy, shuffled);
  REQUIRE(f.has_value());
  for (int l = 0; l < 4; ++l) CHECK((*f)[l] == 3 - l);

  // An extension whose lambda copies x is not its own time reverse.
  CHECK_FALSE(
      find_ontological_time_reverse(lambda_copies_x(), lambda_copies_x())
          .has_value());
}

TEST_CASE("no-retrocausality catches a lambda that copies y") {
  const CheckReport report = check_no_retrocausality(lambda_copies_y());
  CHECK_FALSE(report.holds);
  CHECK(report.worst_violation > 0.1);
  CHECK_FALSE(report.witness.empty());
}

TEST_CASE("measurement independence catches a lambda that copies x") {
  const IndependenceReports reports = check_independences(lambda_copies_x());
  CHECK_FALSE(reports.measurement_independence.holds);
}

TEST_CASE("lambda mediation catches a direct a-to-b wire") {
  CHECK_FALSE(check_lambda_mediation(b_copies_a()).holds);
  CHECK_FALSE(check_lambda_mediation(b_copies_a(), true).holds);
  CHECK_FALSE(check_independences(b_copies_a()).outcome_independence.holds);
}

TEST_CASE("single-lambda product behavior is locally causal") {
  OnticExtension ext;
  ext.X = ext.A = ext.Y = ext.B = default_labels(2);
  ext.lambda = {"0"};
  ext.joint.assign(ext.size(), Rat(1, 4));
  CHECK(check_local_causality(ext).holds);
  CHECK(check_independences(ext).all_hold());
}

TEST_CASE("random ontological models satisfy their construction laws") {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const OnticExtension ext = random_ontological_model(2, 2, 2, 2, 3, rng);
    ext.validate();
    CHECK(check_no_retrocausality(ext).holds);
    CHECK(check_lambda_mediation(ext).holds);
  }
}

TEST_CASE("locally causal extensions pass every derived independence") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const OnticExtension ext =
        random_locally_causal_extension(2, 2, 2, 2, 3, rng);
    ext.validate();
    CHECK(check_local_causality(ext).holds);
    const IndependenceReports reports = check_independences(ext);
    CHECK(reports.all_hold());
    CHECK(check_no_retrocausality(ext).holds);
  }
}

TEST_CASE("marginalize preserves normalization on random extensions") {
  Rng rng(53);
  const OnticExtension ext = random_ontological_model(2, 3, 2, 2, 4, rng);
  const BehaviorTable t = marginalize(ext);
  t.validate();
}

TEST_CASE("psi classification") {
  const OnticExtension toy = build_toy_model_extension();
  const PsiClassification epi = check_psi_ontic(toy, {0, 1, 2, 3});
  CHECK_FALSE(epi.psi_ontic);
  // (a=0,x=0) and (a=0,x=1) overlap on lambda = (0,0).
  CHECK(epi.witness.find("lambda=00") != std::string::npos);

  const OnticExtension price = build_price_psi_ontic_extension();
  CHECK(check_psi_ontic(price, {0, 1, 2, 3}).psi_ontic);

  // All labels identical: vacuously psi-ontic.
  const PsiClassification vac = check_psi_ontic(toy, {7, 7, 7, 7});
  CHECK(vac.psi_ontic);
  CHECK_FALSE(vac.applicable);
}

TEST_CASE("psi-ontology contradiction demo") {
  const PriceDemoReport report = price_contradiction_demo();
  CHECK(report.applicable);
  CHECK(report.supports_disjoint);
  CHECK_FALSE(report.reversed_measurement_independence.holds);
  CHECK_FALSE(report.reversed_measurement_independence.witness.empty());
  CHECK(report.contradiction);

  // The toy model is psi-epistemic: demo inapplicable.
  const PriceDemoReport toy_report =
      price_contradiction_demo(build_toy_model_extension(), {0, 1, 2, 3});
  CHECK_FALSE(toy_report.applicable);

  // Single ontic state cannot carry four distinct pure states.
  OnticExtension tiny;
  tiny.X = tiny.A = default_labels(2);
  tiny.Y = tiny.B = {"0"};
  tiny.lambda = {"0"};
  tiny.joint.assign(tiny.size(), Rat(1, 2));
  const PriceDemoReport tiny_report =
      price_contradiction_demo(tiny, {0, 1, 2, 3});
  CHECK_FALSE(tiny_report.applicable);
}

TEST_CASE("validation rejects malformed extensions") {
  OnticExtension bad;
  bad.X = bad.A = bad.Y = bad.B = default_labels(2);
  bad.lambda = {"0"};
  bad.joint.assign(bad.size(), Rat(1, 8));  // sums to 1/2 per setting
  CHECK_THROWS(bad.validate());
  bad.joint.assign(bad.size(), Rat(1, 4));
  bad.joint[0] = Rat(-1, 4);
  CHECK_THROWS(bad.validate());
}
