#ifndef FCSKIT_RANDOM_HPP
#define FCSKIT_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "fcskit/numerics.hpp"

namespace fcskit {

// Seeded instance generators. Uniform variates are built from raw 53-bit
// draws so sequences do not depend on the standard library's distributions.

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return double(rng() >> 11) * 0x1.0p-53; }

/// Uniform in the closed unit disk.
inline Complex unit_disk(Rng& rng) {
  const double r = std::sqrt(uniform01(rng));
  return std::polar(r, 2.0 * std::numbers::pi * uniform01(rng));
}

/// Standard complex normal via Box-Muller.
inline Complex complex_normal(Rng& rng) {
  const double r = std::sqrt(-std::log1p(-uniform01(rng)));
  return std::polar(r, 2.0 * std::numbers::pi * uniform01(rng));
}

inline ComplexMatrix random_disk_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = unit_disk(rng);
  return m;
}

/// n x k matrix with orthonormal columns (Haar-distributed for k = n).
inline ComplexMatrix random_isometry(Eigen::Index n, Eigen::Index k, Rng& rng) {
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = complex_normal(rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  // fix column phases so the distribution is Haar
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = qr.matrixQR()(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q.leftCols(k);
}

inline ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) { return random_isometry(n, n, rng); }

inline LowRankOperator random_lowrank(Eigen::Index dim, Eigen::Index rank, Rng& rng, double scale = 1.0) {
  return LowRankOperator(random_disk_matrix(dim, rank, rng) * scale, random_disk_matrix(dim, rank, rng) * scale);
}

/// |a - b| / (1 + |b|)
inline double scaled_error(Complex a, Complex b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace fcskit

#endif  // FCSKIT_RANDOM_HPP
