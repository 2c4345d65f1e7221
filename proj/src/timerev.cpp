#include "tsym/timerev.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace tsym {

namespace {

struct SupportBasis {
  Mat isometry;  // columns orthonormal, spanning the support
  bool compressed = false;
  int rank = 0;
};

SupportBasis support_basis(const Mat& h, const Tolerances& tol) {
  SupportBasis sb;
  sb.rank = support_rank(h, tol);
  if (sb.rank == h.rows()) {
    sb.isometry = Mat::Identity(h.rows(), h.cols());
    sb.compressed = false;
  } else {
    sb.isometry = support_isometry(h, tol);
    sb.compressed = true;
  }
  return sb;
}

}  // namespace

Measurement retro_povm(const Preparation& p, const Tolerances& tol) {
  p.validate(tol);
  if (!is_no_signalling(p, tol)) {
    throw NumericalError("retro_povm: preparation is signalling");
  }
  const Mat rho_a = p.ensemble_average(0);
  const Mat inv_root = pinv_sqrt_psd(rho_a, tol);
  const SupportBasis sb = support_basis(rho_a, tol);

  Measurement m;
  m.dim = sb.rank;
  m.inputs = p.inputs;
  m.outputs = p.outputs;
  for (std::size_t x = 0; x < p.inputs.size(); ++x) {
    for (std::size_t a = 0; a < p.outputs.size(); ++a) {
      Mat effect = inv_root * p.state(x, a) * inv_root;
      if (sb.compressed) effect = sb.isometry.adjoint() * effect * sb.isometry;
      m.effects.push_back(hermitize(effect, tol.herm, "retro_povm"));
    }
  }
  m.validate(tol);
  return m;
}

Preparation retro_states(const Measurement& m, const Mat& rho_b,
                         const Tolerances& tol) {
  m.validate(tol);
  if (rho_b.rows() != m.dim || rho_b.cols() != m.dim) {
    throw DimensionError("retro_states: rho_B dimension mismatch");
  }
  if (std::abs(rho_b.trace().real() - 1.0) > tol.prob ||
      !is_psd(rho_b, tol.psd)) {
    throw NumericalError("retro_states: rho_B is not a density operator");
  }
  const Mat root = sqrt_psd(rho_b, tol);
  const SupportBasis sb = support_basis(rho_b, tol);

  Preparation p;
  p.dim = sb.rank;
  p.inputs = m.inputs;
  p.outputs = m.outputs;
  for (std::size_t y = 0; y < m.inputs.size(); ++y) {
    for (std::size_t b = 0; b < m.outputs.size(); ++b) {
      Mat state = root * m.effect(y, b) * root;
      if (sb.compressed) state = sb.isometry.adjoint() * state * sb.isometry;
      p.states.push_back(hermitize(state, tol.herm, "retro_states"));
    }
  }
  p.validate(tol);
  return p;
}

Mat adjoint_choi(const Mat& choi, int dim_in, int dim_out) {
  return swap_factors(choi, dim_in, dim_out).conjugate();
}

Mat apply_choi(const Mat& choi, int dim_in, int dim_out, const Mat& m) {
  if (m.rows() != dim_in || m.cols() != dim_in) {
    throw DimensionError("apply_choi: input dimension mismatch");
  }
  const Mat flipped = partial_transpose(choi, dim_in, dim_out, Subsystem::A);
  return partial_trace(flipped * tensor(m, identity(dim_out)), dim_in,
                       dim_out, Subsystem::A);
}

Channel reverse_channel(const Channel& c, const Mat& rho_a,
                        const Tolerances& tol) {
  c.validate(tol);
  if (rho_a.rows() != c.dim_in || rho_a.cols() != c.dim_in) {
    throw DimensionError("reverse_channel: rho_A dimension mismatch");
  }
  if (std::abs(rho_a.trace().real() - 1.0) > tol.prob ||
      !is_psd(rho_a, tol.psd)) {
    throw NumericalError("reverse_channel: rho_A is not a density operator");
  }
  const Mat rho_b = c.apply(rho_a);
  const Mat root_a = sqrt_psd(rho_a, tol);
  const Mat inv_root_b = pinv_sqrt_psd(rho_b, tol);
  const SupportBasis basis_a = support_basis(rho_a, tol);
  const SupportBasis basis_b = support_basis(rho_b, tol);
  const Mat adj = adjoint_choi(c.choi, c.dim_in, c.dim_out);

  const auto action = [&](const Mat& m) {
    Mat lifted = basis_b.isometry * m * basis_b.isometry.adjoint();
    Mat inner = inv_root_b * lifted * inv_root_b;
    Mat back = apply_choi(adj, c.dim_out, c.dim_in, inner);
    Mat out = root_a * back * root_a;
    return Mat(basis_a.isometry.adjoint() * out * basis_a.isometry);
  };
  Channel rev = Channel::from_action(basis_b.rank, basis_a.rank, action);
  rev.validate(tol);
  return rev;
}

Experiment operational_time_reverse(const Experiment& e,
                                    const Tolerances& tol) {
  e.validate(tol);
  if (!is_no_signalling(e.preparation, tol)) {
    throw NumericalError("operational_time_reverse: signalling preparation");
  }
  const Mat rho_a = e.preparation.ensemble_average(0);
  const Mat rho_b = e.channel.apply(rho_a);

  Experiment rev;
  rev.preparation = retro_states(e.measurement, rho_b, tol);
  rev.channel = reverse_channel(e.channel, rho_a, tol);
  rev.measurement = retro_povm(e.preparation, tol);
  rev.validate(tol);
  return rev;
}

double time_reverse_deviation(const Experiment& e1, const Experiment& e2,
                              const Tolerances& tol) {
  if (e2.preparation.inputs != e1.measurement.inputs ||
      e2.preparation.outputs != e1.measurement.outputs ||
      e2.measurement.inputs != e1.preparation.inputs ||
      e2.measurement.outputs != e1.preparation.outputs) {
    throw DimensionError("time_reverse_deviation: alphabet mismatch");
  }
  const BehaviorTable t1 = born_predict(e1, tol);
  const BehaviorTable t2 = born_predict(e2, tol);
  double worst = 0.0;
  for (std::size_t x = 0; x < t1.X.size(); ++x)
    for (std::size_t a = 0; a < t1.A.size(); ++a)
      for (std::size_t y = 0; y < t1.Y.size(); ++y)
        for (std::size_t b = 0; b < t1.B.size(); ++b)
          worst = std::max(worst, std::abs(t2.at(y, b, x, a) -
                                           t1.at(x, a, y, b)));
  return worst;
}

bool is_operational_time_reverse(const Experiment& e1, const Experiment& e2,
                                 const Tolerances& tol) {
  return time_reverse_deviation(e1, e2, tol) <= tol.prob;
}

Experiment apply_unitary_gauge(const Experiment& e, const Mat& u,
                               const Tolerances& tol) {
  e.validate(tol);
  if (u.rows() != e.preparation.dim || u.cols() != e.preparation.dim) {
    throw DimensionError("apply_unitary_gauge: dimension mismatch");
  }
  if ((u * u.adjoint() - identity(u.rows())).cwiseAbs().maxCoeff() >
      tol.herm * 10) {
    throw NumericalError("apply_unitary_gauge: matrix is not unitary");
  }
  const Channel id = Channel::identity(e.preparation.dim);
  if ((e.channel.choi - id.choi).cwiseAbs().maxCoeff() > tol.prob) {
    throw NumericalError(
        "apply_unitary_gauge: only identity-channel experiments supported");
  }
  Experiment out = e;
  // Both families conjugate the same way so that Tr[E rho] is unchanged.
  for (Mat& s : out.preparation.states) s = u * s * u.adjoint();
  for (Mat& f : out.measurement.effects) f = u * f * u.adjoint();
  return out;
}

namespace {

// Rotation by phi in the X-Z Bloch plane: maps [theta] to [theta + phi].
Mat xz_rotation(double phi) {
  Mat u(2, 2);
  u(0, 0) = std::cos(phi / 2);
  u(0, 1) = -std::sin(phi / 2);
  u(1, 0) = std::sin(phi / 2);
  u(1, 1) = std::cos(phi / 2);
  return u;
}

double gauge_distance(const Experiment& target, const Experiment& rev,
                      const Mat& u) {
  double worst = 0.0;
  for (std::size_t i = 0; i < rev.preparation.states.size(); ++i) {
    worst = std::max(
        worst, (u * rev.preparation.states[i] * u.adjoint() -
                target.preparation.states[i]).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 0; i < rev.measurement.effects.size(); ++i) {
    worst = std::max(
        worst, (u * rev.measurement.effects[i] * u.adjoint() -
                target.measurement.effects[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

std::optional<Mat> find_self_reverse_gauge(const Experiment& e,
                                           const Tolerances& tol) {
  if (e.preparation.dim != 2) return std::nullopt;
  const Experiment rev = operational_time_reverse(e, tol);
  if (rev.preparation.dim != 2 || rev.measurement.dim != 2) {
    return std::nullopt;
  }
  if (rev.preparation.inputs != e.preparation.inputs ||
      rev.preparation.outputs != e.preparation.outputs ||
      rev.measurement.inputs != e.measurement.inputs ||
      rev.measurement.outputs != e.measurement.outputs) {
    return std::nullopt;
  }

  const Mat reflection = (Mat(2, 2) << 1, 0, 0, -1).finished();
  constexpr int kGrid = 4096;
  constexpr double kTau = 2 * std::numbers::pi;

  std::optional<Mat> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int use_reflection = 0; use_reflection < 2; ++use_reflection) {
    auto candidate = [&](double phi) {
      Mat u = xz_rotation(phi);
      if (use_reflection) u = u * reflection;
      return u;
    };
    auto dist = [&](double phi) {
      return gauge_distance(e, rev, candidate(phi));
    };
    // Coarse grid, then golden-section refinement around the best cell.
    double coarse_best = 0.0;
    double coarse_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
      const double phi = kTau * i / kGrid;
      const double d = dist(phi);
      if (d < coarse_val) {
        coarse_val = d;
        coarse_best = phi;
      }
    }
    double lo = coarse_best - kTau / kGrid;
    double hi = coarse_best + kTau / kGrid;
    constexpr double kGolden = 0.6180339887498949;
    for (int it = 0; it < 80; ++it) {
      const double m1 = hi - kGolden * (hi - lo);
      const double m2 = lo + kGolden * (hi - lo);
      if (dist(m1) <= dist(m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    const double phi = 0.5 * (lo + hi);
    const double d = dist(phi);
    if (d < best_dist) {
      best_dist = d;
      best = candidate(phi);
    }
  }
  if (best && best_dist <= tol.prob) return best;
  return std::nullopt;
}

}  // namespace tsym
