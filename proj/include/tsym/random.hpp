#pragma once

#include "tsym/opmodel.hpp"

#include <random>

// Deterministic random generators for experiments, channels, and behaviors.
// Used by the verification batches and the property tests.

namespace tsym {

using Rng = std::mt19937_64;

Mat random_ginibre(int rows, int cols, Rng& rng);
Mat random_unitary(int dim, Rng& rng);

// Full-rank density operator G G^dagger / Tr.
Mat random_density(int dim, Rng& rng);

// POVM with n outcomes: S^{-1/2} G_i G_i^dagger S^{-1/2}.
std::vector<Mat> random_povm(int dim, int n_outcomes, Rng& rng);

// Random CPT map via a normalized random Choi operator.
Channel random_channel(int dim_in, int dim_out, Rng& rng);

// Preparation with ensemble average rho_A for every input: the states are
// rho_A^{1/2} F_{a|x} rho_A^{1/2} for random POVMs {F_{a|x}}.
Preparation random_no_signalling_preparation(const Mat& rho_a, int n_inputs,
                                             int n_outputs, Rng& rng);

Measurement random_measurement(int dim, int n_inputs, int n_outputs, Rng& rng);

// Full experiment with random full-rank rho_A, random channel dim->dim,
// random measurement; preparation is no-signalling by construction.
Experiment random_no_signalling_experiment(int dim, Rng& rng);

// Arbitrary normalized conditional distribution p(a,b|x,y).
BehaviorTable random_behavior(int nx, int na, int ny, int nb, Rng& rng);

// Convex mixture of deterministic strategies (locally causal by
// construction), for soundness tests of the feasible branch.
BehaviorTable random_local_behavior(int nx, int na, int ny, int nb, Rng& rng);

}  // namespace tsym
