#ifndef FCSKIT_PERMANENT_HPP
#define FCSKIT_PERMANENT_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "fcskit/numerics.hpp"

namespace fcskit {

inline constexpr Eigen::Index kRyserMaxSize = 30;

/// Exact permanent by Ryser inclusion-exclusion, visiting column subsets in
/// Gray-code order with running row sums. O(2^n n).
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw DimensionError("permanent_ryser: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n > kRyserMaxSize)
    throw GuardError("permanent_ryser: size " + std::to_string(n) + " exceeds limit " +
                     std::to_string(kRyserMaxSize));
  if (n == 0) return Scalar(1);

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  Scalar total(0);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t g = 1; g < subsets; ++g) {
    const int j = std::countr_zero(g);
    gray ^= std::uint64_t{1} << j;
    if (gray & (std::uint64_t{1} << j))
      row_sums += m.col(j);
    else
      row_sums -= m.col(j);
    const Scalar prod = row_sums.prod();
    // (-1)^{n - |S|}
    if ((n - std::popcount(gray)) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

/// Permanent of the matrix obtained by repeating row i row_occ[i] times and
/// column j col_occ[j] times.
Complex permanent_submatrix(const ComplexMatrix& m, std::span<const int> row_occ, std::span<const int> col_occ);

/// Coefficient table of
///   F(a_u, a_v) = prod_x [1 + sum_{s,s'} a_u^(s) a_v^(s') u^(s)_x v^(s')_x]
/// indexed by the multi-degrees (n_1..n_k ; n'_1..n'_k).
///
/// Two storage layouts:
///  - dense: full (N+1)^{2k} array, row-major over (n, n'). Every factor
///    multiplication sweeps all cells in descending linear order so the
///    update is in place; cells with sum(n) != sum(n') are skipped.
///  - degree_sliced: one block per total degree d holding only balanced
///    pairs of weak compositions of d, allocated as degrees are reached.
/// Dense is used for k <= 2 while the table fits in kDenseCellLimit cells.
class DiagonalCoeffTable {
 public:
  enum class Layout { dense, degree_sliced };

  static constexpr std::size_t kDenseCellLimit = std::size_t{1} << 25;

  DiagonalCoeffTable(int rank, int max_degree);
  DiagonalCoeffTable(int rank, int max_degree, Layout layout);

  int rank() const { return rank_; }
  int max_degree() const { return max_degree_; }
  Layout layout() const { return layout_; }

  /// Coefficient at (n_u ; n_v). Out-of-range or unbalanced degrees give 0.
  Complex coeff(std::span<const int> n_u, std::span<const int> n_v) const;

  /// Multiplies the polynomial by [1 + sum_{s,s'} pair(s,s') a_u^(s) a_v^(s')].
  void multiply_factor(const ComplexMatrix& pair);

  /// Calls f(n, F_{n,n}) for every diagonal multi-degree n with sum(n) <= N.
  template <typename F>
  void for_each_diagonal(F&& f) const;

  /// Number of stored coefficients.
  std::size_t storage_size() const;

 private:
  struct Slice {
    std::vector<std::vector<int>> compositions;
    // down[c * k + s]: index in slice d-1 of compositions[c] - e_s, or -1
    std::vector<long> down;
    std::vector<Complex> values;  // compositions.size()^2, row = n_u, col = n_v
  };

  void multiply_dense(const ComplexMatrix& pair);
  void multiply_sliced(const ComplexMatrix& pair);
  void ensure_slice(int degree);
  long composition_index(int degree, std::span<const int> n) const;

  int rank_;
  int max_degree_;
  Layout layout_;
  int factors_applied_ = 0;

  // dense layout
  std::vector<std::size_t> strides_;
  std::vector<Complex> dense_;

  // degree-sliced layout
  std::vector<Slice> slices_;
};

template <typename F>
void DiagonalCoeffTable::for_each_diagonal(F&& f) const {
  const int k = rank_;
  std::vector<int> n(k, 0);
  if (layout_ == Layout::dense) {
    // odometer over n in [0, N]^k with sum(n) <= N
    while (true) {
      int total = 0;
      std::size_t idx = 0;
      for (int r = 0; r < k; ++r) {
        total += n[r];
        idx += n[r] * (strides_[r] + strides_[k + r]);
      }
      if (total <= max_degree_) f(std::span<const int>(n), dense_[idx]);
      int r = k - 1;
      while (r >= 0 && n[r] == max_degree_) n[r--] = 0;
      if (r < 0) break;
      ++n[r];
    }
    return;
  }
  for (std::size_t d = 0; d < slices_.size(); ++d) {
    const Slice& slice = slices_[d];
    const std::size_t m = slice.compositions.size();
    for (std::size_t c = 0; c < m; ++c) f(std::span<const int>(slice.compositions[c]), slice.values[c * m + c]);
  }
}

/// Builds F by N successive in-place factor multiplications. O(N^{2k+1}).
DiagonalCoeffTable build_aux_polynomial(const LowRankOperator& v);
DiagonalCoeffTable build_aux_polynomial(const LowRankOperator& v, DiagonalCoeffTable::Layout layout);

/// Per(1 + V) = sum_n F_{n,n} prod_r n_r!
Complex contract_diagonal(const DiagonalCoeffTable& table);

/// Per(1 + V) for rank-k V.
Complex permanent_lowrank(const LowRankOperator& v);

}  // namespace fcskit

#endif  // FCSKIT_PERMANENT_HPP
