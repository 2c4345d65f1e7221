#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

// Dense complex linear algebra primitives shared by every module.
//
// All operators are stored as dense Eigen matrices of std::complex<double>.
// Dimensions are capped at kMaxDim; everything here is desk scale and pure,
// so every function is safe to call concurrently.

namespace tsym {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr int kMaxDim = 64;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tolerance policy. All defaults are far below the 1e-3 ceiling; `support`
// is relative to the largest eigenvalue of the operator being decomposed.
struct Tolerances {
  double herm = 1e-9;      // max-norm drift allowed in M - M^dagger
  double psd = 1e-9;       // eigenvalue floor for PSD checks
  double support = 1e-10;  // relative cutoff for support projections
  double prob = 1e-9;      // probability comparisons
};

enum class Subsystem { A, B };

void require_square(const Mat& m, const std::string& who);
void require_finite(const Mat& m, const std::string& who);
void require_dim(int dim, const std::string& who);

bool is_hermitian(const Mat& m, double eps);

// Symmetrizes (M + M^dagger)/2 when the drift is below eps, hard error above.
Mat hermitize(const Mat& m, double eps, const std::string& who = "operator");

double min_eigenvalue(const Mat& hermitian);
bool is_psd(const Mat& m, double eps);

Mat identity(int dim);

// Kronecker product with index convention (i_A, i_B) -> i_A * d_B + i_B.
Mat tensor(const Mat& a, const Mat& b);

Mat partial_trace(const Mat& m, int dim_a, int dim_b, Subsystem traced);
Mat partial_transpose(const Mat& m, int dim_a, int dim_b, Subsystem which);

// Exchanges the two tensor factors: A (x) B -> B (x) A.
Mat swap_factors(const Mat& m, int dim_a, int dim_b);

// Eigenvalues in descending order, eigenvectors as orthonormal columns in
// the matching order.
struct EigSystem {
  Eigen::VectorXd values;
  Mat vectors;
};

EigSystem eig_hermitian(const Mat& h, double eps_herm = Tolerances{}.herm);

// Principal square root of a PSD operator, supported on supp(h).
Mat sqrt_psd(const Mat& h, const Tolerances& tol = {});

// h^{-1/2} on supp(h): eigenvalues above the support cutoff are inverted
// under the square root, the rest are zeroed.
Mat pinv_sqrt_psd(const Mat& h, const Tolerances& tol = {});

// Projector onto supp(h) and its dimension, per the same cutoff.
Mat support_projector(const Mat& h, const Tolerances& tol = {});
int support_rank(const Mat& h, const Tolerances& tol = {});

// Orthonormal columns spanning supp(h) (eigenvectors above the cutoff).
Mat support_isometry(const Mat& h, const Tolerances& tol = {});

// Rank-1 projector (cos(t/2)|0> + sin(t/2)|1>)(...)^dagger on dim 2.
// Entries at multiples of pi/2 are snapped to exact dyadic values so the
// classical and toy-model identities hold exactly.
Mat projector_from_angle(double theta);

}  // namespace tsym
