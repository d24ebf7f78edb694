#ifndef FCSKIT_NUMERICS_HPP
#define FCSKIT_NUMERICS_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fcskit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Error taxonomy. The CLI maps each class onto a distinct exit code.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GuardError : std::length_error {
  using std::length_error::length_error;
};
struct UnsupportedError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rank-k operator V = sum_s u^(s) v^(s)^T, stored column-wise: column s of
/// `u` is u^(s), column s of `v` is v^(s). Both are dim x rank.
template <typename Scalar>
struct LowRank {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix u;
  Matrix v;

  LowRank() = default;
  LowRank(Matrix u_, Matrix v_) : u(std::move(u_)), v(std::move(v_)) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
      throw DimensionError("LowRank: u and v must have identical shape");
  }

  static LowRank zero(Eigen::Index dim) { return LowRank(Matrix(dim, 0), Matrix(dim, 0)); }

  Eigen::Index dim() const { return u.rows(); }
  Eigen::Index rank() const { return u.cols(); }
};

using LowRankOperator = LowRank<Complex>;

/// Checked matrix product a * b.
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Determinant via partial-pivot LU.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols())
    throw DimensionError("determinant: matrix is not square");
  if (m.rows() == 0) return typename Derived::Scalar(1);
  return m.eval().partialPivLu().determinant();
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> lowrank_to_dense(const LowRank<Scalar>& v) {
  return v.u * v.v.transpose();
}

/// Numerical-rank factorization through column-pivoted Householder QR.
/// Pivots below `tol` times the largest column norm are dropped.
LowRankOperator dense_to_lowrank(const ComplexMatrix& m, double tol = 1e-10);

/// Rejects NaN / Inf entries.
template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

}  // namespace fcskit

#endif  // FCSKIT_NUMERICS_HPP
