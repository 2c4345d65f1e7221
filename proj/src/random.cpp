#include "tsym/random.hpp"

namespace tsym {

Mat random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

Mat random_unitary(int dim, Rng& rng) {
  const Mat g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  // Fix the phase convention so the distribution is Haar.
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

Mat random_density(int dim, Rng& rng) {
  const Mat g = random_ginibre(dim, dim, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

std::vector<Mat> random_povm(int dim, int n_outcomes, Rng& rng) {
  std::vector<Mat> raw;
  Mat sum = Mat::Zero(dim, dim);
  for (int i = 0; i < n_outcomes; ++i) {
    const Mat g = random_ginibre(dim, dim, rng);
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  const Mat inv_root = pinv_sqrt_psd(sum);
  std::vector<Mat> povm;
  for (const Mat& m : raw) povm.push_back(inv_root * m * inv_root);
  return povm;
}

Channel random_channel(int dim_in, int dim_out, Rng& rng) {
  const Mat g = random_ginibre(dim_in * dim_out, dim_in * dim_out, rng);
  const Mat w = g * g.adjoint();
  const Mat marg = partial_trace(w, dim_in, dim_out, Subsystem::B);
  const Mat fix = tensor(pinv_sqrt_psd(marg), identity(dim_out));
  Channel c;
  c.dim_in = dim_in;
  c.dim_out = dim_out;
  c.choi = hermitize(fix * w * fix, Tolerances{}.herm, "random_channel");
  return c;
}

Preparation random_no_signalling_preparation(const Mat& rho_a, int n_inputs,
                                             int n_outputs, Rng& rng) {
  const int dim = static_cast<int>(rho_a.rows());
  const Mat root = sqrt_psd(rho_a);
  Preparation p;
  p.dim = dim;
  p.inputs = default_labels(n_inputs);
  p.outputs = default_labels(n_outputs);
  for (int x = 0; x < n_inputs; ++x) {
    for (const Mat& f : random_povm(dim, n_outputs, rng)) {
      p.states.push_back(root * f * root);
    }
  }
  return p;
}

Measurement random_measurement(int dim, int n_inputs, int n_outputs,
                               Rng& rng) {
  Measurement m;
  m.dim = dim;
  m.inputs = default_labels(n_inputs);
  m.outputs = default_labels(n_outputs);
  for (int y = 0; y < n_inputs; ++y) {
    for (const Mat& e : random_povm(dim, n_outputs, rng)) {
      m.effects.push_back(e);
    }
  }
  return m;
}

Experiment random_no_signalling_experiment(int dim, Rng& rng) {
  Experiment e;
  e.preparation =
      random_no_signalling_preparation(random_density(dim, rng), 2, 2, rng);
  e.channel = random_channel(dim, dim, rng);
  e.measurement = random_measurement(dim, 2, 2, rng);
  return e;
}

BehaviorTable random_behavior(int nx, int na, int ny, int nb, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  BehaviorTable t;
  t.X = default_labels(nx);
  t.A = default_labels(na);
  t.Y = default_labels(ny);
  t.B = default_labels(nb);
  t.table.assign(t.size(), 0.0);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      double sum = 0.0;
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) sum += (t.at(x, a, y, b) = unif(rng));
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) t.at(x, a, y, b) /= sum;
    }
  }
  return t;
}

BehaviorTable random_local_behavior(int nx, int na, int ny, int nb, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> pick_a(0, na - 1);
  std::uniform_int_distribution<int> pick_b(0, nb - 1);
  BehaviorTable t;
  t.X = default_labels(nx);
  t.A = default_labels(na);
  t.Y = default_labels(ny);
  t.B = default_labels(nb);
  t.table.assign(t.size(), 0.0);
  const int n_terms = 1 + static_cast<int>(unif(rng) * 6);
  std::vector<double> weights(n_terms);
  double total = 0.0;
  for (double& w : weights) total += (w = unif(rng));
  for (double w : weights) {
    w /= total;
    std::vector<int> fa(nx), fb(ny);
    for (int x = 0; x < nx; ++x) fa[x] = pick_a(rng);
    for (int y = 0; y < ny; ++y) fb[y] = pick_b(rng);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y) t.at(x, fa[x], y, fb[y]) += w;
  }
  return t;
}

}  // namespace tsym
