#pragma once

#include "tsym/matcore.hpp"

#include <functional>
#include <string>
#include <vector>

// Prepare-transform-measure experiments and their Born-rule behaviors.
//
// Conventions:
//  - Alphabets are explicit ordered label lists; tables are keyed by label
//    position, so serialized experiments are order-stable.
//  - The unnormalized states rho_{aA|x} are the stored primitive; p(a|x)
//    is always derived as Tr rho_{aA|x}.
//  - Channels are stored canonically as Choi operators
//        C = sum_{jk} |j><k|_A (x) E(|j><k|)_B
//    on H_A (x) H_B, with C PSD and Tr_B C = I_A.  The channel acts via
//    E(M) = Tr_A[ C^{T_A} (M (x) I_B) ].

namespace tsym {

using Labels = std::vector<std::string>;

Labels default_labels(int n);

struct Preparation {
  int dim = 0;
  Labels inputs;   // X
  Labels outputs;  // A
  std::vector<Mat> states;  // indexed [x * |A| + a], unnormalized rho_{aA|x}

  const Mat& state(int x, int a) const { return states[x * outputs.size() + a]; }
  Mat& state(int x, int a) { return states[x * outputs.size() + a]; }

  Mat ensemble_average(int x) const;

  void validate(const Tolerances& tol = {}) const;
};

struct Measurement {
  int dim = 0;
  Labels inputs;   // Y
  Labels outputs;  // B
  std::vector<Mat> effects;  // indexed [y * |B| + b]

  const Mat& effect(int y, int b) const { return effects[y * outputs.size() + b]; }
  Mat& effect(int y, int b) { return effects[y * outputs.size() + b]; }

  // Trivial single-outcome POVM {I} on the given dimension.
  static Measurement trivial(int dim);

  void validate(const Tolerances& tol = {}) const;
};

struct Channel {
  int dim_in = 0;
  int dim_out = 0;
  Mat choi;  // on dim_in * dim_out, A factor first

  Mat apply(const Mat& rho) const;

  static Channel identity(int dim);
  // Constant channel discarding the input and emitting sigma.
  static Channel constant(int dim_in, const Mat& sigma);
  static Channel from_action(int dim_in, int dim_out,
                             const std::function<Mat(const Mat&)>& action);

  void validate(const Tolerances& tol = {}) const;
};

struct Experiment {
  Preparation preparation;
  Channel channel;
  Measurement measurement;

  void validate(const Tolerances& tol = {}) const;
};

struct BehaviorTable {
  Labels X, A, Y, B;
  std::vector<double> table;  // indexed [((x*|A|+a)*|Y|+y)*|B|+b]

  double at(int x, int a, int y, int b) const;
  double& at(int x, int a, int y, int b);

  std::size_t size() const { return X.size() * A.size() * Y.size() * B.size(); }

  void validate(const Tolerances& tol = {}) const;
};

BehaviorTable born_predict(const Experiment& e, const Tolerances& tol = {});

// True iff the ensemble average state is the same for all inputs x.
bool is_no_signalling(const Preparation& p, const Tolerances& tol = {});

// True iff sum_b p(a,b|x,y) is independent of y.
bool check_forward_no_signalling(const BehaviorTable& t,
                                 const Tolerances& tol = {});

// (1/4) sum_{x,y} p(a xor b = xy | x,y); binary alphabets only.
double chsh_value(const BehaviorTable& t);

// The temporal CHSH experiment: qubit states at angles {0, pi, pi/2, -pi/2}
// (halved), identity channel, effects at {pi/4, -3pi/4, -pi/4, 3pi/4}.
Experiment build_chsh_experiment();

// Price's four-state qubit experiment; with_measurement=false uses the
// trivial single-outcome POVM, otherwise the Z/X-basis projectors.
Experiment build_price_experiment(bool with_measurement);

// Chained family: states (1/2)[(x/N + a) pi], effects [((2y+1)/2N + b) pi],
// identity channel, inputs 0..N-1, binary outputs.
Experiment build_cr_experiment(int n_settings);

}  // namespace tsym
