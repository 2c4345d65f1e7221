#include "tsym/choibridge.hpp"

#include <cmath>

namespace tsym {

void ConditionalState::validate(const Tolerances& tol) const {
  require_dim(dim_a, "ConditionalState");
  require_dim(dim_b, "ConditionalState");
  if (matrix.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
      matrix.cols() != matrix.rows()) {
    throw DimensionError("ConditionalState: dimension mismatch");
  }
  if (!is_psd(matrix, tol.psd * matrix.rows())) {
    throw NumericalError("ConditionalState: not PSD");
  }
  const Mat marg = partial_trace(matrix, dim_a, dim_b, Subsystem::B);
  if ((marg - identity(dim_a)).cwiseAbs().maxCoeff() > tol.prob) {
    throw NumericalError("ConditionalState: Tr_B is not the identity");
  }
}

void BipartiteState::validate(const Tolerances& tol) const {
  require_dim(dim_a, "BipartiteState");
  require_dim(dim_b, "BipartiteState");
  if (matrix.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
      matrix.cols() != matrix.rows()) {
    throw DimensionError("BipartiteState: dimension mismatch");
  }
  if (!is_psd(matrix, tol.psd * matrix.rows())) {
    throw NumericalError("BipartiteState: not PSD");
  }
  if (std::abs(matrix.trace().real() - 1.0) > tol.prob) {
    throw NumericalError("BipartiteState: trace is not 1");
  }
}

ConditionalState channel_to_conditional_state(const Channel& c) {
  ConditionalState cs;
  cs.dim_a = c.dim_in;
  cs.dim_b = c.dim_out;
  cs.matrix = c.choi;
  return cs;
}

Channel conditional_state_to_channel(const ConditionalState& cs,
                                     const Tolerances& tol) {
  cs.validate(tol);
  Channel c;
  c.dim_in = cs.dim_a;
  c.dim_out = cs.dim_b;
  c.choi = cs.matrix;
  return c;
}

BipartiteState experiment_to_bipartite(const Mat& rho_a, const Channel& c,
                                       const Tolerances& tol) {
  if (rho_a.rows() != c.dim_in || rho_a.cols() != c.dim_in) {
    throw DimensionError("experiment_to_bipartite: dimension mismatch");
  }
  if (std::abs(rho_a.trace().real() - 1.0) > tol.prob) {
    throw NumericalError("experiment_to_bipartite: rho_A is not normalized");
  }
  // A carries the transposed copy; for real rho_A this is just rho_A^{1/2}.
  const Mat root = sqrt_psd(rho_a.transpose(), tol);
  const Mat sandwich = tensor(root, identity(c.dim_out));
  BipartiteState out;
  out.dim_a = c.dim_in;
  out.dim_b = c.dim_out;
  out.matrix = hermitize(sandwich * c.choi * sandwich, tol.herm,
                         "experiment_to_bipartite");
  return out;
}

std::pair<Mat, Channel> bipartite_round_trip(const BipartiteState& rho_ab,
                                             const Tolerances& tol) {
  rho_ab.validate(tol);
  const Mat rho_a_t = partial_trace(rho_ab.matrix, rho_ab.dim_a, rho_ab.dim_b,
                                    Subsystem::B);
  const Mat rho_a = rho_a_t.transpose();
  const Mat inv_root = pinv_sqrt_psd(rho_a_t, tol);
  const Mat sandwich = tensor(inv_root, identity(rho_ab.dim_b));
  Channel c;
  c.dim_in = rho_ab.dim_a;
  c.dim_out = rho_ab.dim_b;
  c.choi = hermitize(sandwich * rho_ab.matrix * sandwich, tol.herm,
                     "bipartite_round_trip");
  // Outside supp(rho_A) the Choi marginal is zero; pad with a constant
  // branch so the result is trace preserving on the whole input space.
  const Mat marg = partial_trace(c.choi, c.dim_in, c.dim_out, Subsystem::B);
  const Mat gap = identity(c.dim_in) - marg;
  if (gap.cwiseAbs().maxCoeff() > tol.prob) {
    Mat uniform = Mat::Identity(c.dim_out, c.dim_out) / c.dim_out;
    c.choi += tensor(gap, uniform);
  }
  return {rho_a, c};
}

IsomorphismReport prediction_isomorphism_check(const Experiment& e,
                                               const Tolerances& tol) {
  e.validate(tol);
  if (!is_no_signalling(e.preparation, tol)) {
    throw NumericalError("prediction_isomorphism_check: signalling preparation");
  }
  const Mat rho_a = e.preparation.ensemble_average(0);
  const Mat inv_root = pinv_sqrt_psd(rho_a, tol);
  const BipartiteState rho_ab = experiment_to_bipartite(rho_a, e.channel, tol);

  IsomorphismReport report;
  const std::size_t nx = e.preparation.inputs.size();
  const std::size_t na = e.preparation.outputs.size();
  const std::size_t ny = e.measurement.inputs.size();
  const std::size_t nb = e.measurement.outputs.size();
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t a = 0; a < na; ++a) {
      const Mat retro = inv_root * e.preparation.state(x, a) * inv_root;
      const Mat lhs_state = e.channel.apply(e.preparation.state(x, a));
      for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t b = 0; b < nb; ++b) {
          const Mat& effect = e.measurement.effect(y, b);
          const double lhs = (effect * lhs_state).trace().real();
          const double rhs =
              (tensor(retro.transpose(), effect) * rho_ab.matrix)
                  .trace()
                  .real();
          const double naive =
              (tensor(retro, effect) * rho_ab.matrix).trace().real();
          report.max_deviation = std::max(report.max_deviation,
                                          std::abs(lhs - rhs));
          report.max_deviation_no_transpose =
              std::max(report.max_deviation_no_transpose,
                       std::abs(lhs - naive));
        }
      }
    }
  }
  return report;
}

}  // namespace tsym
