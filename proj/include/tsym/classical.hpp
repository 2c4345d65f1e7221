#pragma once

#include "tsym/onticlab.hpp"
#include "tsym/opmodel.hpp"
#include "tsym/random.hpp"

#include <vector>

// Diagonal (classical stochastic) experiments with exact rational tables.
// These are the sanity anchor for the reversal machinery: on diagonal
// inputs the reverse construction collapses to Bayes inversion, which a
// brute-force oracle over the full joint distribution can check exactly.

namespace tsym {

struct ClassicalExperiment {
  int dim_in = 0;   // input register size |J|
  int dim_out = 0;  // output register size |K|
  int nx = 0, na = 0, ny = 0, nb = 0;
  // p(a, j | x): subnormalized distribution over j per (x, a).
  std::vector<std::vector<std::vector<Rat>>> prep;  // [x][a][j]
  std::vector<std::vector<Rat>> chan;               // [k][j] = p(k|j)
  std::vector<std::vector<std::vector<Rat>>> meas;  // [y][b][k] = p(b|y,k)

  void validate() const;  // includes x-independence of the input marginal
  std::vector<Rat> input_marginal() const;   // p(j) = sum_a prep[x][a][j]
  std::vector<Rat> output_marginal() const;  // p(k) = sum_j p(k|j) p(j)
};

// Exact behavior, BehaviorTable-indexed [((x*na+a)*ny+y)*nb+b].
std::vector<Rat> classical_behavior(const ClassicalExperiment& c);

// Reverse experiment via the diagonal specialization of the reversal
// construction: effects prep/p(j), states meas * p(k), channel Bayes ratio
// p(k|j) p(j) / p(k).
ClassicalExperiment classical_time_reverse(const ClassicalExperiment& c);

// Brute-force oracle: materializes the joint p(a, j, k, b | x, y) and reads
// every reverse component off by conditioning, with no ratio shortcuts.
ClassicalExperiment classical_bayes_oracle(const ClassicalExperiment& c);

bool classical_equal(const ClassicalExperiment& lhs,
                     const ClassicalExperiment& rhs);

// Diagonal embedding: distributions to diagonal density matrices, response
// tables to diagonal POVMs, the stochastic map to its Choi matrix.
Experiment to_quantum(const ClassicalExperiment& c);

// Full-support random instance (strictly positive tables).
ClassicalExperiment random_classical_experiment(int dim_in, int dim_out,
                                                int nx, int na, int ny,
                                                int nb, Rng& rng);

}  // namespace tsym
