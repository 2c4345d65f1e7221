#pragma once

#include "tsym/onticlab.hpp"
#include "tsym/opmodel.hpp"

#include <iosfwd>
#include <string>

// Document formats.
//
// Experiments are stored as schema-versioned JSON; complex entries are
// [re, im] pairs in decimal text.  Behavior tables are CSV with header
// x,a,y,b,p.  Loading always re-validates every invariant.

namespace tsym {

inline constexpr int kSchemaVersion = 1;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string experiment_to_json(const Experiment& e);
Experiment experiment_from_json(const std::string& text,
                                const Tolerances& tol = {});

std::string matrix_to_json(const Mat& m);

void write_behavior_csv(std::ostream& out, const BehaviorTable& t);
std::string behavior_to_csv(const BehaviorTable& t);
BehaviorTable behavior_from_csv(std::istream& in, const Tolerances& tol = {});

Experiment load_experiment(const std::string& path,
                           const Tolerances& tol = {});
void save_experiment(const std::string& path, const Experiment& e);

BehaviorTable load_behavior(const std::string& path,
                            const Tolerances& tol = {});
void save_behavior(const std::string& path, const BehaviorTable& t);

// Ontic extensions: JSON with probabilities as exact rational strings
// ("1/4") or plain integers.
std::string ontic_to_json(const OnticExtension& ext);
OnticExtension ontic_from_json(const std::string& text);
OnticExtension load_ontic(const std::string& path);
void save_ontic(const std::string& path, const OnticExtension& ext);

}  // namespace tsym
