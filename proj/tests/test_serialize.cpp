#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsym/serialize.hpp"

#include <cmath>
#include <sstream>

using namespace tsym;

TEST_CASE("experiment JSON round trip preserves the behavior") {
  const Experiment e = build_chsh_experiment();
  const Experiment back = experiment_from_json(experiment_to_json(e));
  const BehaviorTable t1 = born_predict(e);
  const BehaviorTable t2 = born_predict(back);
  REQUIRE(t1.table.size() == t2.table.size());
  for (std::size_t i = 0; i < t1.table.size(); ++i) {
    CHECK(std::abs(t1.table[i] - t2.table[i]) < 1e-12);
  }
  CHECK(back.preparation.inputs == e.preparation.inputs);
  CHECK(back.measurement.outputs == e.measurement.outputs);
}

TEST_CASE("experiment JSON rejects invariant violations") {
  Experiment e = build_chsh_experiment();
  e.measurement.effects[0] *= 2.0;  // effects no longer sum to I
  const std::string text = experiment_to_json(e);
  CHECK_THROWS_AS(experiment_from_json(text), std::exception);

  Experiment empty = build_chsh_experiment();
  empty.preparation.inputs.clear();
  CHECK_THROWS_AS(experiment_from_json(experiment_to_json(empty)),
                  std::exception);

  CHECK_THROWS_AS(experiment_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(experiment_from_json("{\"schema_version\": 99}"), ParseError);
}

TEST_CASE("behavior CSV round trip") {
  const BehaviorTable t = born_predict(build_chsh_experiment());
  std::istringstream in(behavior_to_csv(t));
  const BehaviorTable back = behavior_from_csv(in);
  REQUIRE(back.table.size() == t.table.size());
  for (std::size_t i = 0; i < t.table.size(); ++i) {
    CHECK(back.table[i] == t.table[i]);  // 17 significant digits: lossless
  }
}

TEST_CASE("behavior CSV rejects malformed input") {
  std::istringstream bad_header("x,a,b,y,p\n0,0,0,0,1\n");
  CHECK_THROWS_AS(behavior_from_csv(bad_header), ParseError);

  // Labels imply a 2x1x1x2 grid but only two of its four cells are given.
  std::istringstream incomplete("x,a,y,b,p\n0,0,0,0,1\n1,0,0,1,1\n");
  CHECK_THROWS_AS(behavior_from_csv(incomplete), ParseError);

  std::istringstream bad_number("x,a,y,b,p\n0,0,0,0,zebra\n");
  CHECK_THROWS_AS(behavior_from_csv(bad_number), ParseError);
}

TEST_CASE("ontic extension JSON round trip is exact") {
  const OnticExtension toy = build_toy_model_extension();
  const OnticExtension back = ontic_from_json(ontic_to_json(toy));
  CHECK(back.lambda == toy.lambda);
  CHECK(back.joint == toy.joint);
}

TEST_CASE("ontic extension JSON rejects malformed documents") {
  CHECK_THROWS_AS(ontic_from_json("{}"), ParseError);
  const OnticExtension toy = build_toy_model_extension();
  std::string text = ontic_to_json(toy);
  // Corrupt one probability: the table no longer normalizes.
  const std::string needle = "\"1/4\"";
  text.replace(text.find(needle), needle.size(), "\"1/3\"");
  CHECK_THROWS_AS(ontic_from_json(text), std::exception);

  std::string bad_rat = ontic_to_json(toy);
  bad_rat.replace(bad_rat.find(needle), needle.size(), "\"x/y\"");
  CHECK_THROWS_AS(ontic_from_json(bad_rat), ParseError);
}
