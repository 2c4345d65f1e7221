#pragma once

#include "tsym/opmodel.hpp"

// The channel <-> conditional-state isomorphism and the timelike <->
// spacelike mapping of prediction tables.
//
// Transpose convention: the conditional state is the Choi operator
//     rho_{B|A} = sum_{jk} |j><k|_A (x) E(|j><k|)_B
// in the computational basis (never configurable).  The A factor of the
// spacelike picture is the transposed copy of the timelike system: the
// bipartite state is built with (rho_A^T)^{1/2} factors and the A-side
// retrodictive effects enter transposed, i.e.
//     Tr[E_{b|y} E(rho_{a|x})] = Tr[(E_{a|x}^T (x) E_{b|y}) rho_AB].
// For real-amplitude experiments (every example in scope) the transpose is
// invisible and Tr_B rho_AB = rho_A; for complex amplitudes Tr_B rho_AB =
// rho_A^T and the deviation of the convention-free reading of the equality
// is reported as a diagnostic rather than hidden.

namespace tsym {

struct ConditionalState {
  int dim_a = 0;
  int dim_b = 0;
  Mat matrix;  // PSD, trace dim_a, Tr_B = I_A

  void validate(const Tolerances& tol = {}) const;
};

struct BipartiteState {
  int dim_a = 0;
  int dim_b = 0;
  Mat matrix;  // PSD, unit trace

  void validate(const Tolerances& tol = {}) const;
};

ConditionalState channel_to_conditional_state(const Channel& c);
Channel conditional_state_to_channel(const ConditionalState& cs,
                                     const Tolerances& tol = {});

BipartiteState experiment_to_bipartite(const Mat& rho_a, const Channel& c,
                                       const Tolerances& tol = {});

// Inverts experiment_to_bipartite: recovers (rho_A, channel on supp(rho_A)).
std::pair<Mat, Channel> bipartite_round_trip(const BipartiteState& rho_ab,
                                             const Tolerances& tol = {});

struct IsomorphismReport {
  double max_deviation = 0.0;            // under the stored convention
  double max_deviation_no_transpose = 0.0;  // diagnostic: naive reading
};

// Checks Tr[E_{b|y} E(rho_{a|x})] = Tr[(E_{a|x}^T (x) E_{b|y}) rho_AB] over
// every (x,a,y,b), with E_{a|x} the retrodictive POVM of the preparation.
IsomorphismReport prediction_isomorphism_check(const Experiment& e,
                                               const Tolerances& tol = {});

}  // namespace tsym
