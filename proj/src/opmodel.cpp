#include "tsym/opmodel.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace tsym {

Labels default_labels(int n) {
  Labels out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

namespace {

void require_alphabet(const Labels& l, const std::string& who) {
  if (l.empty()) throw DimensionError(who + ": empty alphabet");
}

}  // namespace

Mat Preparation::ensemble_average(int x) const {
  Mat sum = Mat::Zero(dim, dim);
  for (std::size_t a = 0; a < outputs.size(); ++a) sum += state(x, a);
  return sum;
}

void Preparation::validate(const Tolerances& tol) const {
  require_dim(dim, "Preparation");
  require_alphabet(inputs, "Preparation.inputs");
  require_alphabet(outputs, "Preparation.outputs");
  if (states.size() != inputs.size() * outputs.size()) {
    throw DimensionError("Preparation: state table size mismatch");
  }
  for (std::size_t x = 0; x < inputs.size(); ++x) {
    for (std::size_t a = 0; a < outputs.size(); ++a) {
      const Mat& s = state(x, a);
      if (s.rows() != dim || s.cols() != dim) {
        throw DimensionError("Preparation: state dimension mismatch");
      }
      if (!is_psd(s, tol.psd)) {
        throw NumericalError("Preparation: state (" + inputs[x] + "," +
                             outputs[a] + ") is not PSD");
      }
    }
    const double trace = ensemble_average(x).trace().real();
    if (std::abs(trace - 1.0) > tol.prob) {
      throw NumericalError("Preparation: ensemble for input " + inputs[x] +
                           " has trace " + std::to_string(trace));
    }
  }
}

Measurement Measurement::trivial(int dim) {
  Measurement m;
  m.dim = dim;
  m.inputs = {"0"};
  m.outputs = {"0"};
  m.effects = {identity(dim)};
  return m;
}

void Measurement::validate(const Tolerances& tol) const {
  require_dim(dim, "Measurement");
  require_alphabet(inputs, "Measurement.inputs");
  require_alphabet(outputs, "Measurement.outputs");
  if (effects.size() != inputs.size() * outputs.size()) {
    throw DimensionError("Measurement: effect table size mismatch");
  }
  for (std::size_t y = 0; y < inputs.size(); ++y) {
    Mat sum = Mat::Zero(dim, dim);
    for (std::size_t b = 0; b < outputs.size(); ++b) {
      const Mat& e = effect(y, b);
      if (e.rows() != dim || e.cols() != dim) {
        throw DimensionError("Measurement: effect dimension mismatch");
      }
      if (!is_psd(e, tol.psd)) {
        throw NumericalError("Measurement: effect (" + inputs[y] + "," +
                             outputs[b] + ") is not PSD");
      }
      sum += e;
    }
    if ((sum - identity(dim)).cwiseAbs().maxCoeff() > tol.prob) {
      throw NumericalError("Measurement: POVM for input " + inputs[y] +
                           " does not sum to identity");
    }
  }
}

Mat Channel::apply(const Mat& rho) const {
  if (rho.rows() != dim_in || rho.cols() != dim_in) {
    throw DimensionError("Channel::apply: input dimension mismatch");
  }
  const Mat flipped = partial_transpose(choi, dim_in, dim_out, Subsystem::A);
  return partial_trace(flipped * tensor(rho, tsym::identity(dim_out)), dim_in,
                       dim_out, Subsystem::A);
}

Channel Channel::identity(int dim) {
  require_dim(dim, "Channel::identity");
  Channel c;
  c.dim_in = dim;
  c.dim_out = dim;
  c.choi = Mat::Zero(dim * dim, dim * dim);
  // Unnormalized maximally entangled projector sum_{jk} |jj><kk|.
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) c.choi(j * dim + j, k * dim + k) = 1.0;
  return c;
}

Channel Channel::constant(int dim_in, const Mat& sigma) {
  require_dim(dim_in, "Channel::constant");
  Channel c;
  c.dim_in = dim_in;
  c.dim_out = static_cast<int>(sigma.rows());
  c.choi = tensor(tsym::identity(dim_in), sigma);
  return c;
}

Channel Channel::from_action(int dim_in, int dim_out,
                             const std::function<Mat(const Mat&)>& action) {
  Channel c;
  c.dim_in = dim_in;
  c.dim_out = dim_out;
  c.choi = Mat::Zero(dim_in * dim_out, dim_in * dim_out);
  for (int j = 0; j < dim_in; ++j) {
    for (int k = 0; k < dim_in; ++k) {
      Mat unit = Mat::Zero(dim_in, dim_in);
      unit(j, k) = 1.0;
      const Mat img = action(unit);
      c.choi.block(j * dim_out, k * dim_out, dim_out, dim_out) = img;
    }
  }
  return c;
}

void Channel::validate(const Tolerances& tol) const {
  require_dim(dim_in, "Channel");
  require_dim(dim_out, "Channel");
  if (choi.rows() != static_cast<Eigen::Index>(dim_in) * dim_out ||
      choi.cols() != choi.rows()) {
    throw DimensionError("Channel: Choi dimension mismatch");
  }
  if (!is_psd(choi, tol.psd * choi.rows())) {
    throw NumericalError("Channel: Choi operator is not PSD");
  }
  const Mat marg = partial_trace(choi, dim_in, dim_out, Subsystem::B);
  if ((marg - tsym::identity(dim_in)).cwiseAbs().maxCoeff() > tol.prob) {
    throw NumericalError("Channel: not trace preserving");
  }
}

void Experiment::validate(const Tolerances& tol) const {
  preparation.validate(tol);
  channel.validate(tol);
  measurement.validate(tol);
  if (preparation.dim != channel.dim_in) {
    throw DimensionError("Experiment: preparation/channel dimension mismatch");
  }
  if (channel.dim_out != measurement.dim) {
    throw DimensionError("Experiment: channel/measurement dimension mismatch");
  }
}

double BehaviorTable::at(int x, int a, int y, int b) const {
  return table[((x * A.size() + a) * Y.size() + y) * B.size() + b];
}

double& BehaviorTable::at(int x, int a, int y, int b) {
  return table[((x * A.size() + a) * Y.size() + y) * B.size() + b];
}

void BehaviorTable::validate(const Tolerances& tol) const {
  require_alphabet(X, "BehaviorTable.X");
  require_alphabet(A, "BehaviorTable.A");
  require_alphabet(Y, "BehaviorTable.Y");
  require_alphabet(B, "BehaviorTable.B");
  if (table.size() != size()) {
    throw DimensionError("BehaviorTable: table size mismatch");
  }
  for (std::size_t x = 0; x < X.size(); ++x) {
    for (std::size_t y = 0; y < Y.size(); ++y) {
      double sum = 0.0;
      for (std::size_t a = 0; a < A.size(); ++a) {
        for (std::size_t b = 0; b < B.size(); ++b) {
          const double p = at(x, a, y, b);
          if (!(p >= -tol.prob && p <= 1.0 + tol.prob)) {
            throw NumericalError("BehaviorTable: entry out of [0,1]");
          }
          sum += p;
        }
      }
      if (std::abs(sum - 1.0) > tol.prob) {
        throw NumericalError("BehaviorTable: setting (" + X[x] + "," + Y[y] +
                             ") sums to " + std::to_string(sum));
      }
    }
  }
}

BehaviorTable born_predict(const Experiment& e, const Tolerances& tol) {
  e.validate(tol);
  BehaviorTable t;
  t.X = e.preparation.inputs;
  t.A = e.preparation.outputs;
  t.Y = e.measurement.inputs;
  t.B = e.measurement.outputs;
  t.table.resize(t.size());
  for (std::size_t x = 0; x < t.X.size(); ++x) {
    for (std::size_t a = 0; a < t.A.size(); ++a) {
      const Mat out = e.channel.apply(e.preparation.state(x, a));
      for (std::size_t y = 0; y < t.Y.size(); ++y) {
        for (std::size_t b = 0; b < t.B.size(); ++b) {
          t.at(x, a, y, b) = (e.measurement.effect(y, b) * out).trace().real();
        }
      }
    }
  }
  t.validate(tol);
  return t;
}

bool is_no_signalling(const Preparation& p, const Tolerances& tol) {
  const Mat ref = p.ensemble_average(0);
  for (std::size_t x = 1; x < p.inputs.size(); ++x) {
    if ((p.ensemble_average(x) - ref).norm() > tol.prob) return false;
  }
  return true;
}

bool check_forward_no_signalling(const BehaviorTable& t,
                                 const Tolerances& tol) {
  for (std::size_t x = 0; x < t.X.size(); ++x) {
    for (std::size_t a = 0; a < t.A.size(); ++a) {
      double ref = 0.0;
      for (std::size_t b = 0; b < t.B.size(); ++b) ref += t.at(x, a, 0, b);
      for (std::size_t y = 1; y < t.Y.size(); ++y) {
        double sum = 0.0;
        for (std::size_t b = 0; b < t.B.size(); ++b) sum += t.at(x, a, y, b);
        if (std::abs(sum - ref) > tol.prob) return false;
      }
    }
  }
  return true;
}

double chsh_value(const BehaviorTable& t) {
  if (t.X.size() != 2 || t.A.size() != 2 || t.Y.size() != 2 ||
      t.B.size() != 2) {
    throw DimensionError("chsh_value: alphabets must be binary");
  }
  double value = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          if ((a ^ b) == (x & y)) value += t.at(x, a, y, b);
        }
      }
    }
  }
  return value / 4.0;
}

namespace {

constexpr double kPi = std::numbers::pi;

Preparation angle_preparation(const std::vector<double>& angles, int n_inputs) {
  // angles indexed [x * n_outputs + a], each state (1/2)[angle].
  Preparation p;
  p.dim = 2;
  const int n_outputs = static_cast<int>(angles.size()) / n_inputs;
  p.inputs = default_labels(n_inputs);
  p.outputs = default_labels(n_outputs);
  for (double theta : angles) {
    p.states.push_back(0.5 * projector_from_angle(theta));
  }
  return p;
}

Measurement angle_measurement(const std::vector<double>& angles,
                              int n_inputs) {
  Measurement m;
  m.dim = 2;
  const int n_outputs = static_cast<int>(angles.size()) / n_inputs;
  m.inputs = default_labels(n_inputs);
  m.outputs = default_labels(n_outputs);
  for (double theta : angles) {
    m.effects.push_back(projector_from_angle(theta));
  }
  return m;
}

}  // namespace

Experiment build_chsh_experiment() {
  Experiment e;
  e.preparation = angle_preparation({0.0, kPi, kPi / 2, -kPi / 2}, 2);
  e.channel = Channel::identity(2);
  e.measurement =
      angle_measurement({kPi / 4, -3 * kPi / 4, -kPi / 4, 3 * kPi / 4}, 2);
  return e;
}

Experiment build_price_experiment(bool with_measurement) {
  Experiment e;
  e.preparation = angle_preparation({0.0, kPi, kPi / 2, -kPi / 2}, 2);
  e.channel = Channel::identity(2);
  if (with_measurement) {
    e.measurement =
        angle_measurement({0.0, kPi, kPi / 2, -kPi / 2}, 2);
  } else {
    e.measurement = Measurement::trivial(2);
  }
  return e;
}

Experiment build_cr_experiment(int n_settings) {
  if (n_settings < 1) {
    throw DimensionError("build_cr_experiment: N must be >= 1");
  }
  std::vector<double> prep_angles, meas_angles;
  for (int x = 0; x < n_settings; ++x) {
    for (int a = 0; a < 2; ++a) {
      prep_angles.push_back((static_cast<double>(x) / n_settings + a) * kPi);
    }
  }
  for (int y = 0; y < n_settings; ++y) {
    for (int b = 0; b < 2; ++b) {
      meas_angles.push_back(((2.0 * y + 1.0) / (2.0 * n_settings) + b) * kPi);
    }
  }
  Experiment e;
  e.preparation = angle_preparation(prep_angles, n_settings);
  e.channel = Channel::identity(2);
  e.measurement = angle_measurement(meas_angles, n_settings);
  return e;
}

}  // namespace tsym
