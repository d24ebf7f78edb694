#include "fcskit/numerics.hpp"

namespace fcskit {

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("mat_mul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  return a * b;
}

LowRankOperator dense_to_lowrank(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw DimensionError("dense_to_lowrank: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cwiseAbs().maxCoeff() == 0.0) return LowRankOperator::zero(n);

  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m);
  qr.setThreshold(tol);
  const Eigen::Index r = qr.rank();

  // m P = Q R  =>  m = Q_r (R_r P^T)
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, r);
  ComplexMatrix rt = qr.matrixR().topRows(r).template triangularView<Eigen::Upper>();
  ComplexMatrix rows = rt * qr.colsPermutation().transpose();
  return LowRankOperator(std::move(q), rows.transpose());
}

}  // namespace fcskit
