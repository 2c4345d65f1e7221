#include "tsym/matcore.hpp"

#include <cmath>

namespace tsym {

void require_square(const Mat& m, const std::string& who) {
  if (m.rows() != m.cols()) {
    throw DimensionError(who + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

void require_finite(const Mat& m, const std::string& who) {
  if (!m.allFinite()) {
    throw NumericalError(who + ": matrix has non-finite entries");
  }
}

void require_dim(int dim, const std::string& who) {
  if (dim < 1) {
    throw DimensionError(who + ": dimension must be positive");
  }
  if (dim > kMaxDim) {
    throw DimensionError(who + ": dimension " + std::to_string(dim) +
                         " exceeds the cap of " + std::to_string(kMaxDim));
  }
}

bool is_hermitian(const Mat& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

Mat hermitize(const Mat& m, double eps, const std::string& who) {
  require_square(m, who);
  require_finite(m, who);
  const double drift = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (drift > eps) {
    throw NumericalError(who + ": Hermiticity drift " + std::to_string(drift) +
                         " exceeds tolerance");
  }
  return 0.5 * (m + m.adjoint().eval());
}

double min_eigenvalue(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitian,
                                            Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_psd(const Mat& m, double eps) {
  if (!is_hermitian(m, eps)) return false;
  return min_eigenvalue(0.5 * (m + m.adjoint().eval())) >= -eps;
}

Mat identity(int dim) {
  require_dim(dim, "identity");
  return Mat::Identity(dim, dim);
}

Mat tensor(const Mat& a, const Mat& b) {
  require_finite(a, "tensor");
  require_finite(b, "tensor");
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

void require_product_dim(const Mat& m, int dim_a, int dim_b,
                         const std::string& who) {
  require_square(m, who);
  require_dim(dim_a, who);
  require_dim(dim_b, who);
  if (m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw DimensionError(who + ": matrix dimension " +
                         std::to_string(m.rows()) + " is not " +
                         std::to_string(dim_a) + "*" + std::to_string(dim_b));
  }
}

}  // namespace

Mat partial_trace(const Mat& m, int dim_a, int dim_b, Subsystem traced) {
  require_product_dim(m, dim_a, dim_b, "partial_trace");
  if (traced == Subsystem::B) {
    Mat out = Mat::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Mat out = Mat::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

Mat partial_transpose(const Mat& m, int dim_a, int dim_b, Subsystem which) {
  require_product_dim(m, dim_a, dim_b, "partial_transpose");
  Mat out(m.rows(), m.cols());
  for (int ia = 0; ia < dim_a; ++ia)
    for (int ib = 0; ib < dim_b; ++ib)
      for (int ja = 0; ja < dim_a; ++ja)
        for (int jb = 0; jb < dim_b; ++jb) {
          if (which == Subsystem::A) {
            out(ia * dim_b + ib, ja * dim_b + jb) =
                m(ja * dim_b + ib, ia * dim_b + jb);
          } else {
            out(ia * dim_b + ib, ja * dim_b + jb) =
                m(ia * dim_b + jb, ja * dim_b + ib);
          }
        }
  return out;
}

Mat swap_factors(const Mat& m, int dim_a, int dim_b) {
  require_product_dim(m, dim_a, dim_b, "swap_factors");
  Mat out(m.rows(), m.cols());
  for (int ia = 0; ia < dim_a; ++ia)
    for (int ib = 0; ib < dim_b; ++ib)
      for (int ja = 0; ja < dim_a; ++ja)
        for (int jb = 0; jb < dim_b; ++jb)
          out(ib * dim_a + ia, jb * dim_a + ja) =
              m(ia * dim_b + ib, ja * dim_b + jb);
  return out;
}

EigSystem eig_hermitian(const Mat& h, double eps_herm) {
  const Mat sym = hermitize(h, eps_herm, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = sym.rows();
  EigSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

namespace {

double support_cutoff(const Eigen::VectorXd& values, double rel) {
  const double top = values.size() ? values.maxCoeff() : 0.0;
  return (top > 0.0) ? rel * top : rel;
}

}  // namespace

Mat sqrt_psd(const Mat& h, const Tolerances& tol) {
  const EigSystem eig = eig_hermitian(h, tol.herm);
  if (eig.values.size() && eig.values.minCoeff() < -tol.psd) {
    throw NumericalError("sqrt_psd: negative eigenvalue " +
                         std::to_string(eig.values.minCoeff()));
  }
  const double cutoff = support_cutoff(eig.values, tol.support);
  Mat out = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > cutoff) {
      out += std::sqrt(eig.values(i)) * eig.vectors.col(i) *
             eig.vectors.col(i).adjoint();
    }
  }
  return out;
}

Mat pinv_sqrt_psd(const Mat& h, const Tolerances& tol) {
  const EigSystem eig = eig_hermitian(h, tol.herm);
  if (eig.values.size() && eig.values.minCoeff() < -tol.psd) {
    throw NumericalError("pinv_sqrt_psd: negative eigenvalue " +
                         std::to_string(eig.values.minCoeff()));
  }
  const double cutoff = support_cutoff(eig.values, tol.support);
  Mat out = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > cutoff) {
      out += (1.0 / std::sqrt(eig.values(i))) * eig.vectors.col(i) *
             eig.vectors.col(i).adjoint();
    }
  }
  return out;
}

Mat support_projector(const Mat& h, const Tolerances& tol) {
  const Mat iso = support_isometry(h, tol);
  return iso * iso.adjoint();
}

int support_rank(const Mat& h, const Tolerances& tol) {
  const EigSystem eig = eig_hermitian(h, tol.herm);
  const double cutoff = support_cutoff(eig.values, tol.support);
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > cutoff) ++rank;
  }
  return rank;
}

Mat support_isometry(const Mat& h, const Tolerances& tol) {
  const EigSystem eig = eig_hermitian(h, tol.herm);
  const double cutoff = support_cutoff(eig.values, tol.support);
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > cutoff) ++rank;
  }
  Mat iso(h.rows(), rank);
  for (int i = 0; i < rank; ++i) iso.col(i) = eig.vectors.col(i);
  return iso;
}

namespace {

// Snaps values that are a rounding error away from -1, 0, or 1 so that
// projectors at multiples of pi/2 come out with exact dyadic entries.
double snap_trig(double v) {
  constexpr double eps = 1e-12;
  if (std::abs(v) < eps) return 0.0;
  if (std::abs(v - 1.0) < eps) return 1.0;
  if (std::abs(v + 1.0) < eps) return -1.0;
  return v;
}

}  // namespace

Mat projector_from_angle(double theta) {
  const double c = snap_trig(std::cos(theta));
  const double s = snap_trig(std::sin(theta));
  Mat out(2, 2);
  // Half-angle identities keep dyadic angles exact.
  out(0, 0) = 0.5 * (1.0 + c);
  out(0, 1) = 0.5 * s;
  out(1, 0) = 0.5 * s;
  out(1, 1) = 0.5 * (1.0 - c);
  return out;
}

}  // namespace tsym
