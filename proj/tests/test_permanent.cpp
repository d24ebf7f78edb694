#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fcskit/permanent.hpp"
#include "fcskit/random.hpp"

using namespace fcskit;

namespace {

// Sum over permutations; the oracle for Ryser itself.
Complex naive_permanent(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Complex total(0);
  do {
    Complex term(1);
    for (int i = 0; i < n; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

ComplexMatrix one_plus(const LowRankOperator& v) {
  return ComplexMatrix::Identity(v.dim(), v.dim()) + lowrank_to_dense(v);
}

}  // namespace

TEST_CASE("permanent_ryser examples") {
  CHECK(permanent_ryser(ComplexMatrix::Identity(3, 3)) == Complex(1));
  ComplexMatrix m(2, 2);
  m << 1, 2, 3, 4;
  CHECK(permanent_ryser(m) == Complex(10));
  CHECK(std::abs(permanent_ryser(ComplexMatrix::Ones(4, 4)) - 24.0) < 1e-12);
  CHECK(permanent_ryser(ComplexMatrix(0, 0)) == Complex(1));
  CHECK_THROWS_AS(permanent_ryser(ComplexMatrix::Ones(31, 31)), GuardError);
  CHECK_THROWS_AS(permanent_ryser(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("permanent_ryser matches the permutation sum") {
  Rng rng(3);
  for (int n = 1; n <= 7; ++n) {
    const ComplexMatrix m = random_disk_matrix(n, n, rng);
    CHECK(scaled_error(permanent_ryser(m), naive_permanent(m)) < 1e-12);
  }
}

TEST_CASE("permanent_ryser is invariant under row and column permutations") {
  Rng rng(4);
  const ComplexMatrix m = random_disk_matrix(6, 6, rng);
  std::vector<int> rows = {3, 0, 5, 1, 4, 2}, cols = {1, 2, 0, 5, 3, 4};
  const ComplexMatrix p = m(rows, cols);
  CHECK(scaled_error(permanent_ryser(p), permanent_ryser(m)) < 1e-13);
}

TEST_CASE("permanent_submatrix examples") {
  const std::vector<int> ones{1, 1};
  CHECK(permanent_submatrix(ComplexMatrix::Identity(2, 2), ones, ones) == Complex(1));
  const Complex c(0.3, -1.2);
  ComplexMatrix one(1, 1);
  one << c;
  const std::vector<int> two{2};
  CHECK(std::abs(permanent_submatrix(one, two, two) - 2.0 * c * c) < 1e-15);
  ComplexMatrix m(2, 2);
  m << Complex(1, 1), 2.0, Complex(0, 3), 4.0;
  const std::vector<int> col{2, 0};
  CHECK(std::abs(permanent_submatrix(m, ones, col) - 2.0 * m(0, 0) * m(1, 0)) < 1e-14);
  const std::vector<int> unbalanced{1, 0};
  CHECK_THROWS_AS(permanent_submatrix(m, ones, unbalanced), std::invalid_argument);
}

TEST_CASE("build_aux_polynomial examples") {
  SUBCASE("single factor") {
    ComplexMatrix u(1, 1), v(1, 1);
    u << Complex(0.5, 1);
    v << Complex(-2, 0.25);
    const DiagonalCoeffTable t = build_aux_polynomial(LowRankOperator(u, v));
    const std::vector<int> zero{0}, one{1};
    CHECK(t.coeff(zero, zero) == Complex(1));
    CHECK(std::abs(t.coeff(one, one) - u(0, 0) * v(0, 0)) < 1e-15);
  }
  SUBCASE("N=2 all ones") {
    const ComplexMatrix ones = ComplexMatrix::Ones(2, 1);
    for (auto layout : {DiagonalCoeffTable::Layout::dense, DiagonalCoeffTable::Layout::degree_sliced}) {
      const DiagonalCoeffTable t = build_aux_polynomial(LowRankOperator(ones, ones), layout);
      for (int d = 0; d <= 2; ++d) {
        const std::vector<int> n{d};
        CHECK(std::abs(t.coeff(n, n) - Complex(d == 1 ? 2.0 : 1.0)) < 1e-15);
      }
      const std::vector<int> a{1}, b{0};
      CHECK(t.coeff(a, b) == Complex(0));
    }
  }
  SUBCASE("rank 0") {
    const DiagonalCoeffTable t = build_aux_polynomial(LowRankOperator::zero(4));
    const std::vector<int> none;
    CHECK(t.coeff(none, none) == Complex(1));
  }
}

TEST_CASE("permanent_lowrank examples") {
  CHECK(permanent_lowrank(LowRankOperator::zero(5)) == Complex(1));
  const ComplexMatrix ones = ComplexMatrix::Ones(2, 1);
  CHECK(std::abs(permanent_lowrank(LowRankOperator(ones, ones)) - 5.0) < 1e-14);
  Rng rng(8);
  const LowRankOperator v = random_lowrank(8, 2, rng);
  CHECK(scaled_error(permanent_lowrank(v), naive_permanent(one_plus(v))) < 1e-8);
}

TEST_CASE("permanent_lowrank matches Ryser across sizes and ranks") {
  Rng rng(99);
  double worst = 0;
  for (int n = 2; n <= 10; ++n)
    for (int k = 1; k <= 3; ++k)
      for (int i = 0; i < 10; ++i) {
        const LowRankOperator v = random_lowrank(n, k, rng);
        worst = std::max(worst, scaled_error(permanent_lowrank(v), permanent_ryser(one_plus(v))));
      }
  CHECK(worst < 1e-8);
}

TEST_CASE("dense and degree-sliced layouts agree, off-diagonal degrees vanish") {
  Rng rng(21);
  for (int k = 1; k <= 2; ++k) {
    const LowRankOperator v = random_lowrank(5, k, rng);
    const DiagonalCoeffTable a = build_aux_polynomial(v, DiagonalCoeffTable::Layout::dense);
    const DiagonalCoeffTable b = build_aux_polynomial(v, DiagonalCoeffTable::Layout::degree_sliced);
    std::vector<int> nu(k), nv(k);
    const int base = 6;
    int cells = 1;
    for (int i = 0; i < 2 * k; ++i) cells *= base;
    for (int idx = 0; idx < cells; ++idx) {
      int x = idx;
      for (int r = 0; r < k; ++r) nu[r] = x % base, x /= base;
      for (int r = 0; r < k; ++r) nv[r] = x % base, x /= base;
      const Complex ca = a.coeff(nu, nv), cb = b.coeff(nu, nv);
      CHECK(std::abs(ca - cb) < 1e-12);
      if (std::accumulate(nu.begin(), nu.end(), 0) != std::accumulate(nv.begin(), nv.end(), 0)) {
        CHECK(ca == Complex(0));
        CHECK(cb == Complex(0));
      }
    }
    CHECK(std::abs(contract_diagonal(a) - contract_diagonal(b)) < 1e-12);
  }
}

TEST_CASE("log-domain contraction beyond factorial overflow") {
  // V = u v^T with v = e_1: 1 + V differs from the identity only in column 1,
  // so Per(1 + V) = 1 + u_1.
  const int n = 200;
  ComplexMatrix u = ComplexMatrix::Constant(n, 1, Complex(0.01, 0.02));
  ComplexMatrix v = ComplexMatrix::Zero(n, 1);
  v(0) = 1.0;
  CHECK(scaled_error(permanent_lowrank(LowRankOperator(u, v)), 1.0 + u(0)) < 1e-12);
}
