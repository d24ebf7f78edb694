#include "fcskit/permanent.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace fcskit {

Complex permanent_submatrix(const ComplexMatrix& m, std::span<const int> row_occ, std::span<const int> col_occ) {
  if (static_cast<Eigen::Index>(row_occ.size()) != m.rows() ||
      static_cast<Eigen::Index>(col_occ.size()) != m.cols())
    throw DimensionError("permanent_submatrix: occupation length does not match matrix shape");
  for (int o : row_occ)
    if (o < 0) throw std::invalid_argument("permanent_submatrix: negative occupation");
  for (int o : col_occ)
    if (o < 0) throw std::invalid_argument("permanent_submatrix: negative occupation");
  const int rows = std::accumulate(row_occ.begin(), row_occ.end(), 0);
  const int cols = std::accumulate(col_occ.begin(), col_occ.end(), 0);
  if (rows != cols) throw std::invalid_argument("permanent_submatrix: unbalanced occupations");
  if (rows > kRyserMaxSize) throw GuardError("permanent_submatrix: total occupation exceeds Ryser limit");

  std::vector<Eigen::Index> row_idx, col_idx;
  for (Eigen::Index i = 0; i < m.rows(); ++i) row_idx.insert(row_idx.end(), row_occ[i], i);
  for (Eigen::Index j = 0; j < m.cols(); ++j) col_idx.insert(col_idx.end(), col_occ[j], j);
  return permanent_ryser(m(row_idx, col_idx));
}

namespace {

std::vector<std::vector<int>> weak_compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[pos] = a;
      self(self, pos + 1, left - a);
    }
  };
  if (parts == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, total);
  return out;
}

DiagonalCoeffTable::Layout default_layout(int rank, int max_degree) {
  if (rank > 2) return DiagonalCoeffTable::Layout::degree_sliced;
  const double cells = std::pow(double(max_degree) + 1.0, 2.0 * rank);
  return cells <= double(DiagonalCoeffTable::kDenseCellLimit) ? DiagonalCoeffTable::Layout::dense
                                                                : DiagonalCoeffTable::Layout::degree_sliced;
}

}  // namespace

DiagonalCoeffTable::DiagonalCoeffTable(int rank, int max_degree)
    : DiagonalCoeffTable(rank, max_degree, default_layout(rank, max_degree)) {}

DiagonalCoeffTable::DiagonalCoeffTable(int rank, int max_degree, Layout layout)
    : rank_(rank), max_degree_(max_degree), layout_(layout) {
  if (rank < 0 || max_degree < 0) throw std::invalid_argument("DiagonalCoeffTable: negative rank or degree");
  if (layout_ == Layout::dense) {
    const double cells = std::pow(double(max_degree) + 1.0, 2.0 * rank);
    if (cells > double(kDenseCellLimit)) throw GuardError("DiagonalCoeffTable: dense layout too large");
    strides_.assign(2 * rank, 1);
    for (int i = 2 * rank - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * (max_degree + 1);
    dense_.assign(static_cast<std::size_t>(cells), Complex(0));
    dense_[0] = 1.0;
  } else {
    ensure_slice(0);
    slices_[0].values[0] = 1.0;
  }
}

std::size_t DiagonalCoeffTable::storage_size() const {
  if (layout_ == Layout::dense) return dense_.size();
  std::size_t total = 0;
  for (const auto& s : slices_) total += s.values.size();
  return total;
}

void DiagonalCoeffTable::ensure_slice(int degree) {
  while (static_cast<int>(slices_.size()) <= degree) {
    const int d = static_cast<int>(slices_.size());
    Slice slice;
    slice.compositions = weak_compositions(d, rank_);
    const std::size_t m = slice.compositions.size();
    slice.values.assign(m * m, Complex(0));
    slice.down.assign(m * rank_, -1);
    if (d > 0) {
      for (std::size_t c = 0; c < m; ++c) {
        std::vector<int> lower = slice.compositions[c];
        for (int s = 0; s < rank_; ++s) {
          if (lower[s] == 0) continue;
          --lower[s];
          slice.down[c * rank_ + s] = composition_index(d - 1, lower);
          ++lower[s];
        }
      }
    }
    slices_.push_back(std::move(slice));
  }
}

long DiagonalCoeffTable::composition_index(int degree, std::span<const int> n) const {
  // compositions are generated in descending lexicographic order
  const auto& comps = slices_[degree].compositions;
  auto it = std::lower_bound(comps.begin(), comps.end(), n, [](const std::vector<int>& a, std::span<const int> b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  if (it == comps.end() || !std::equal(it->begin(), it->end(), n.begin(), n.end())) return -1;
  return static_cast<long>(it - comps.begin());
}

Complex DiagonalCoeffTable::coeff(std::span<const int> n_u, std::span<const int> n_v) const {
  if (static_cast<int>(n_u.size()) != rank_ || static_cast<int>(n_v.size()) != rank_)
    throw DimensionError("DiagonalCoeffTable::coeff: multi-degree length differs from rank");
  int su = 0, sv = 0;
  for (int r = 0; r < rank_; ++r) {
    if (n_u[r] < 0 || n_v[r] < 0 || n_u[r] > max_degree_ || n_v[r] > max_degree_) return 0.0;
    su += n_u[r];
    sv += n_v[r];
  }
  if (su != sv || su > max_degree_) return 0.0;
  if (layout_ == Layout::dense) {
    std::size_t idx = 0;
    for (int r = 0; r < rank_; ++r) idx += n_u[r] * strides_[r] + n_v[r] * strides_[rank_ + r];
    return dense_[idx];
  }
  if (su >= static_cast<int>(slices_.size())) return 0.0;
  const long a = composition_index(su, n_u);
  const long b = composition_index(su, n_v);
  const std::size_t m = slices_[su].compositions.size();
  return slices_[su].values[a * m + b];
}

void DiagonalCoeffTable::multiply_factor(const ComplexMatrix& pair) {
  if (pair.rows() != rank_ || pair.cols() != rank_)
    throw DimensionError("DiagonalCoeffTable::multiply_factor: pair matrix must be rank x rank");
  if (layout_ == Layout::dense)
    multiply_dense(pair);
  else
    multiply_sliced(pair);
  ++factors_applied_;
}

void DiagonalCoeffTable::multiply_dense(const ComplexMatrix& pair) {
  const int k = rank_;
  const int top = max_degree_;
  if (k == 0) return;
  // Outer odometer over every digit but the last (n'_k); the last digit runs
  // in the inner loop. Both go in descending order, so the whole sweep is in
  // descending linear order and every F[idx - stride] read below is still the
  // coefficient from before this multiplication.
  const int outer = 2 * k - 1;
  const std::size_t row = static_cast<std::size_t>(top) + 1;
  std::vector<int> digit(outer, top);
  int sum_u = k * top;
  int sum_v_outer = (k - 1) * top;

  for (std::size_t base = dense_.size() - row;; base -= row) {
    for (int last = top; last >= 0; --last) {
      if (sum_u != sum_v_outer + last || sum_u == 0) continue;
      const std::size_t idx = base + last;
      Complex acc(0);
      for (int s = 0; s < k; ++s) {
        if (digit[s] == 0) continue;
        for (int t = 0; t < k; ++t) {
          const int d = t + 1 == k ? last : digit[k + t];
          if (d == 0) continue;
          acc += pair(s, t) * dense_[idx - strides_[s] - strides_[k + t]];
        }
      }
      dense_[idx] += acc;
    }
    if (base == 0) break;
    int r = outer - 1;
    while (digit[r] == 0) {
      digit[r] = top;
      (r < k ? sum_u : sum_v_outer) += top;
      --r;
    }
    --digit[r];
    --(r < k ? sum_u : sum_v_outer);
  }
}

void DiagonalCoeffTable::multiply_sliced(const ComplexMatrix& pair) {
  const int k = rank_;
  if (k == 0) return;
  const int reach = std::min(factors_applied_ + 1, max_degree_);
  ensure_slice(reach);
  for (int d = reach; d >= 1; --d) {
    Slice& hi = slices_[d];
    const Slice& lo = slices_[d - 1];
    const std::size_t m_hi = hi.compositions.size();
    const std::size_t m_lo = lo.compositions.size();
    for (std::size_t a = 0; a < m_hi; ++a) {
      for (std::size_t b = 0; b < m_hi; ++b) {
        Complex acc(0);
        for (int s = 0; s < k; ++s) {
          const long da = hi.down[a * k + s];
          if (da < 0) continue;
          for (int t = 0; t < k; ++t) {
            const long db = hi.down[b * k + t];
            if (db < 0) continue;
            acc += pair(s, t) * lo.values[da * m_lo + db];
          }
        }
        hi.values[a * m_hi + b] += acc;
      }
    }
  }
}

DiagonalCoeffTable build_aux_polynomial(const LowRankOperator& v) {
  return build_aux_polynomial(v, default_layout(static_cast<int>(v.rank()), static_cast<int>(v.dim())));
}

DiagonalCoeffTable build_aux_polynomial(const LowRankOperator& v, DiagonalCoeffTable::Layout layout) {
  require_finite(v.u, "build_aux_polynomial");
  require_finite(v.v, "build_aux_polynomial");
  const int k = static_cast<int>(v.rank());
  const int n = static_cast<int>(v.dim());
  DiagonalCoeffTable table(k, n, layout);
  ComplexMatrix pair(k, k);
  for (int x = 0; x < n; ++x) {
    // pair(s, s') = u^(s)_x v^(s')_x
    pair.noalias() = v.u.row(x).transpose() * v.v.row(x);
    table.multiply_factor(pair);
  }
  return table;
}

Complex contract_diagonal(const DiagonalCoeffTable& table) {
  const int n = table.max_degree();
  Complex total(0);
  if (n <= 170) {
    std::vector<double> fact(n + 1, 1.0);
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    table.for_each_diagonal([&](std::span<const int> deg, const Complex& f) {
      double w = 1.0;
      for (int r : deg) w *= fact[r];
      total += f * w;
    });
    return total;
  }
  // log-domain weights; magnitude and phase of each term tracked separately
  table.for_each_diagonal([&](std::span<const int> deg, const Complex& f) {
    if (f == Complex(0)) return;
    double log_w = 0.0;
    for (int r : deg) log_w += std::lgamma(r + 1.0);
    total += std::polar(std::exp(std::log(std::abs(f)) + log_w), std::arg(f));
  });
  return total;
}

Complex permanent_lowrank(const LowRankOperator& v) {
  if (v.rank() == 0) return 1.0;
  return contract_diagonal(build_aux_polynomial(v));
}

}  // namespace fcskit
