#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsym/opmodel.hpp"
#include "tsym/random.hpp"

#include <cmath>
#include <numbers>

using namespace tsym;

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Kraus operators from the Choi eigendecomposition; independent of
// Channel::apply's partial-trace route.
std::vector<Mat> kraus_from_choi(const Channel& c) {
  const EigSystem eig = eig_hermitian(c.choi);
  std::vector<Mat> ops;
  for (int i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= 1e-12) continue;
    Mat k = Mat::Zero(c.dim_out, c.dim_in);
    for (int j = 0; j < c.dim_in; ++j)
      for (int b = 0; b < c.dim_out; ++b)
        k(b, j) = std::sqrt(eig.values(i)) * eig.vectors(j * c.dim_out + b, i);
    ops.push_back(k);
  }
  return ops;
}

}  // namespace

TEST_CASE("born_predict: deterministic Z-basis experiment") {
  Experiment e;
  e.preparation.dim = 2;
  e.preparation.inputs = {"0"};
  e.preparation.outputs = {"0"};
  e.preparation.states = {projector_from_angle(0.0)};
  e.channel = Channel::identity(2);
  e.measurement.dim = 2;
  e.measurement.inputs = {"0"};
  e.measurement.outputs = {"0", "1"};
  e.measurement.effects = {projector_from_angle(0.0),
                           projector_from_angle(kPi)};
  const BehaviorTable t = born_predict(e);
  CHECK(t.at(0, 0, 0, 0) == doctest::Approx(1.0));
  CHECK(t.at(0, 0, 0, 1) == doctest::Approx(0.0));
}

TEST_CASE("born_predict: uniform marginals of the four-state preparation") {
  const BehaviorTable t = born_predict(build_price_experiment(false));
  CHECK(t.Y.size() == 1);
  CHECK(t.B.size() == 1);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) CHECK(t.at(x, a, 0, 0) == 0.5);
}

TEST_CASE("born_predict matches a Kraus-form oracle on random experiments") {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const Experiment e = random_no_signalling_experiment(2, rng);
    const BehaviorTable t = born_predict(e);
    const auto kraus = kraus_from_choi(e.channel);
    for (std::size_t x = 0; x < t.X.size(); ++x)
      for (std::size_t a = 0; a < t.A.size(); ++a)
        for (std::size_t y = 0; y < t.Y.size(); ++y)
          for (std::size_t b = 0; b < t.B.size(); ++b) {
            Mat out = Mat::Zero(2, 2);
            for (const Mat& k : kraus)
              out += k * e.preparation.state(x, a) * k.adjoint();
            const double expect =
                (e.measurement.effect(y, b) * out).trace().real();
            CHECK(std::abs(t.at(x, a, y, b) - expect) < 1e-9);
          }
  }
}

TEST_CASE("is_no_signalling") {
  CHECK(is_no_signalling(build_price_experiment(false).preparation));
  CHECK(is_no_signalling(build_chsh_experiment().preparation));
  for (int n = 1; n <= 4; ++n) {
    CHECK(is_no_signalling(build_cr_experiment(n).preparation));
  }
  // x chooses between distinct deterministic pure states: signalling.
  Preparation p;
  p.dim = 2;
  p.inputs = {"0", "1"};
  p.outputs = {"0"};
  p.states = {projector_from_angle(0.0), projector_from_angle(kPi)};
  CHECK_FALSE(is_no_signalling(p));
}

TEST_CASE("check_forward_no_signalling") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(check_forward_no_signalling(
        born_predict(random_no_signalling_experiment(3, rng))));
  }
  BehaviorTable uniform;
  uniform.X = uniform.A = uniform.Y = uniform.B = default_labels(2);
  uniform.table.assign(16, 0.25);
  CHECK(check_forward_no_signalling(uniform));

  // a copies y: the preparation-side marginal depends on y.
  BehaviorTable copy = uniform;
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) copy.at(x, a, y, b) = (a == y) ? 0.5 : 0.0;
  CHECK_FALSE(check_forward_no_signalling(copy));
}

TEST_CASE("chsh_value") {
  const BehaviorTable chsh = born_predict(build_chsh_experiment());
  CHECK(std::abs(chsh_value(chsh) - (2.0 + std::sqrt(2.0)) / 4.0) < 1e-9);

  BehaviorTable uniform;
  uniform.X = uniform.A = uniform.Y = uniform.B = default_labels(2);
  uniform.table.assign(16, 0.25);
  CHECK(chsh_value(uniform) == doctest::Approx(0.5));

  BehaviorTable det = uniform;
  det.table.assign(16, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) det.at(x, 0, y, 0) = 1.0;
  CHECK(chsh_value(det) == doctest::Approx(0.75));
}

TEST_CASE("build_chsh_experiment operators") {
  const Experiment e = build_chsh_experiment();
  CHECK(dist(e.preparation.state(0, 0), 0.5 * projector_from_angle(0.0)) == 0.0);
  CHECK(dist(e.preparation.state(0, 1), 0.5 * projector_from_angle(kPi)) == 0.0);
  CHECK(dist(e.preparation.state(1, 0), 0.5 * projector_from_angle(kPi / 2)) == 0.0);
  CHECK(dist(e.preparation.state(1, 1), 0.5 * projector_from_angle(-kPi / 2)) == 0.0);
  CHECK(dist(e.measurement.effect(0, 0), projector_from_angle(kPi / 4)) == 0.0);
  CHECK(dist(e.measurement.effect(0, 1), projector_from_angle(-3 * kPi / 4)) == 0.0);
  CHECK(dist(e.measurement.effect(1, 0), projector_from_angle(-kPi / 4)) == 0.0);
  CHECK(dist(e.measurement.effect(1, 1), projector_from_angle(3 * kPi / 4)) == 0.0);
  const BehaviorTable t = born_predict(e);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      double marginal = 0.0;
      for (int b = 0; b < 2; ++b) marginal += t.at(x, a, 0, b);
      CHECK(std::abs(marginal - 0.5) < 1e-15);
    }
}

TEST_CASE("build_price_experiment with matched-basis measurement") {
  const BehaviorTable t = born_predict(build_price_experiment(true));
  for (int x = 0; x < 2; ++x) {
    // matched bases: perfect correlation
    CHECK(t.at(x, 0, x, 0) == doctest::Approx(0.5));
    CHECK(t.at(x, 0, x, 1) == doctest::Approx(0.0));
    CHECK(t.at(x, 1, x, 1) == doctest::Approx(0.5));
    // crossed bases: uniform
    CHECK(t.at(x, 0, 1 - x, 0) == doctest::Approx(0.25));
    CHECK(t.at(x, 1, 1 - x, 0) == doctest::Approx(0.25));
  }
}

TEST_CASE("build_cr_experiment") {
  const Experiment one = build_cr_experiment(1);
  CHECK(one.preparation.inputs.size() == 1);
  CHECK(one.measurement.inputs.size() == 1);

  const BehaviorTable t = born_predict(build_cr_experiment(2));
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      double marginal = 0.0;
      for (int b = 0; b < 2; ++b) marginal += t.at(x, a, 0, b);
      CHECK(std::abs(marginal - 0.5) < 1e-15);
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) {
      double marginal = 0.0;
      for (int a = 0; a < 2; ++a) marginal += t.at(0, a, y, b);
      CHECK(std::abs(marginal - 0.5) < 1e-15);
    }
}

TEST_CASE("validation rejects broken components") {
  Measurement m;
  m.dim = 2;
  m.inputs = {"0"};
  m.outputs = {"0", "1"};
  m.effects = {projector_from_angle(0.0), projector_from_angle(0.0)};
  CHECK_THROWS(m.validate());  // effects do not sum to I

  Preparation p;
  p.dim = 2;
  p.inputs = {"0"};
  p.outputs = {"0"};
  p.states = {identity(2)};  // trace 2
  CHECK_THROWS(p.validate());

  BehaviorTable t;
  t.X = t.A = t.Y = t.B = default_labels(2);
  t.table.assign(16, 0.0);
  CHECK_THROWS(t.validate());
}

TEST_CASE("no-signalling preparations give x-independent measurement marginals") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const BehaviorTable t =
        born_predict(random_no_signalling_experiment(2, rng));
    for (std::size_t y = 0; y < t.Y.size(); ++y)
      for (std::size_t b = 0; b < t.B.size(); ++b) {
        double ref = 0.0;
        for (std::size_t a = 0; a < t.A.size(); ++a) ref += t.at(0, a, y, b);
        for (std::size_t x = 1; x < t.X.size(); ++x) {
          double m = 0.0;
          for (std::size_t a = 0; a < t.A.size(); ++a) m += t.at(x, a, y, b);
          CHECK(std::abs(m - ref) < 1e-9);
        }
      }
  }
}
