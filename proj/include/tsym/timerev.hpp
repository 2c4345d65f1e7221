#pragma once

#include "tsym/opmodel.hpp"

#include <optional>

// Constructive operational time reversal of no-signalling experiments.
//
// Support convention: when rho_A (or rho_B) is rank-deficient, every
// reversed object is compressed onto the support via the eigenvector
// isometry and the support dimension becomes the reversed experiment's
// Hilbert dimension.  Full-rank operators are left in the original basis.

namespace tsym {

// Retrodictive POVM E_{a|x} = rho_A^{-1/2} rho_{aA|x} rho_A^{-1/2} on
// supp(rho_A); requires a no-signalling preparation.
Measurement retro_povm(const Preparation& p, const Tolerances& tol = {});

// Retrodictive states rho_{bB|y} = rho_B^{1/2} E_{b|yB} rho_B^{1/2},
// compressed onto supp(rho_B); rho_B must be a normalized density operator.
Preparation retro_states(const Measurement& m, const Mat& rho_b,
                         const Tolerances& tol = {});

// Petz-type reverse of a channel with respect to the input state rho_A:
//   E'(.) = rho_A^{1/2} E^dagger(rho_B^{-1/2} (.) rho_B^{-1/2}) rho_A^{1/2},
// with rho_B = E(rho_A); a CPT map from supp(rho_B) to supp(rho_A).
Channel reverse_channel(const Channel& c, const Mat& rho_a,
                        const Tolerances& tol = {});

// Choi operator of the adjoint map: factors swapped and conjugated.
Mat adjoint_choi(const Mat& choi, int dim_in, int dim_out);

// Applies a Choi operator to an input operator:
// E(M) = Tr_in[ C^{T_in} (M (x) I_out) ].
Mat apply_choi(const Mat& choi, int dim_in, int dim_out, const Mat& m);

// Assembles (P', M', T') per the constructive proof that the no-signalling
// sector is operationally time symmetric.
Experiment operational_time_reverse(const Experiment& e,
                                    const Tolerances& tol = {});

// Max |p_{e2}(b,a|y,x) - p_{e1}(a,b|x,y)| over all labels.
double time_reverse_deviation(const Experiment& e1, const Experiment& e2,
                              const Tolerances& tol = {});

// True iff e2 realizes Definition 1 for e1 within tol.prob.
bool is_operational_time_reverse(const Experiment& e1, const Experiment& e2,
                                 const Tolerances& tol = {});

// States rho -> U rho U^dagger, effects E -> U^dagger E U; identity-channel
// experiments only (the behavior is invariant).
Experiment apply_unitary_gauge(const Experiment& e, const Mat& u,
                               const Tolerances& tol = {});

// Searches SO(2) rotations in the X-Z Bloch plane, with and without the
// Z-axis reflection, for a gauge mapping operational_time_reverse(e) back
// onto e operator-by-operator.  Identity-channel qubit experiments only.
std::optional<Mat> find_self_reverse_gauge(const Experiment& e,
                                           const Tolerances& tol = {});

}  // namespace tsym
