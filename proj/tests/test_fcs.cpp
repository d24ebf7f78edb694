#include <doctest.h>

#include <map>

#include "brute_force.hpp"
#include "fcskit/fcs.hpp"
#include "fcskit/random.hpp"

using namespace fcskit;

namespace {

std::map<Occupation, double> brute_distribution(const ProductState& s, const ComplexMatrix& u0,
                                                const std::vector<int>& modes) {
  return brute::count_distribution(expand_product(s), u0, modes);
}

Complex brute_chi(const ProductState& s, const CountingSpec& spec) {
  std::vector<int> modes;
  std::vector<Complex> z;
  for (const auto& c : spec.counted) modes.push_back(c.mode), z.push_back(c.z);
  return brute::generating_function(brute_distribution(s, spec.u0, modes), z);
}

ComplexMatrix beam_splitter() {
  ComplexMatrix u(2, 2);
  u << 1.0, 1.0, -1.0, 1.0;
  return u * M_SQRT1_2;
}

ProductState single_fermion() { return make_fermi_sea(ComplexMatrix::Identity(2, 1), 1); }

ProductState random_supported_state(int which, Rng& rng) {
  switch (which % 3) {
    case 0: return make_single_boson(3);
    case 1: return make_fermi_sea(random_isometry(2, 1, rng), 2);
    default: return make_psi4(1);
  }
}

}  // namespace

TEST_CASE("build_fcs_operator examples") {
  Rng rng(1);
  const ComplexMatrix u0 = random_unitary(4, rng);
  const ComplexMatrix id = build_fcs_operator({u0, {{0, 1.0}, {2, 1.0}}});
  CHECK((id - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  const Complex z(0.6, 0.8);
  ComplexMatrix d = ComplexMatrix::Identity(3, 3);
  d(1, 1) = z;
  CHECK((build_fcs_operator({ComplexMatrix::Identity(3, 3), {{1, z}}}) - d).cwiseAbs().maxCoeff() == 0.0);
  d(1, 1) = 0.0;
  CHECK((build_fcs_operator({ComplexMatrix::Identity(3, 3), {{1, 0.0}}}) - d).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(build_fcs_operator({ComplexMatrix::Zero(2, 2), {}}), NumericalError);
  CHECK_THROWS_AS(build_fcs_operator({ComplexMatrix::Identity(2, 2), {{2, 0.0}}}), DimensionError);
  CHECK_THROWS(build_fcs_operator({ComplexMatrix::Identity(2, 2), {{1, 0.0}, {1, 1.0}}}));
}

TEST_CASE("build_fcs_lowrank examples") {
  Rng rng(2);
  const ComplexMatrix u0 = random_unitary(5, rng);
  CHECK(build_fcs_lowrank({u0, {}}).rank() == 0);
  CHECK(build_fcs_lowrank({u0, {{3, 1.0}}}).rank() == 0);
  const CountingSpec spec{u0, {{3, -1.0}}};
  const LowRankOperator v = build_fcs_lowrank(spec);
  CHECK(v.rank() == 1);
  const ComplexMatrix dense = build_fcs_operator(spec) - ComplexMatrix::Identity(5, 5);
  CHECK((lowrank_to_dense(v) - dense).cwiseAbs().maxCoeff() < 1e-12);

  const CountingSpec several{u0, {{0, Complex(0.3, -0.2)}, {2, 0.0}, {4, 1.0}}};
  const LowRankOperator w = build_fcs_lowrank(several);
  CHECK(w.rank() == 2);
  CHECK((lowrank_to_dense(w) - (build_fcs_operator(several) - ComplexMatrix::Identity(5, 5))).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("chi examples") {
  Rng rng(3);
  const ComplexMatrix u0 = random_unitary(4, rng);
  CHECK(std::abs(chi(make_psi4(1), {u0, {{0, 1.0}, {3, 1.0}}}) - 1.0) < 1e-10);

  const Complex z(0.2, -0.9);
  CHECK(std::abs(chi(single_fermion(), {ComplexMatrix::Identity(2, 2), {{0, z}}}) - z) < 1e-15);
  CHECK(std::abs(chi(single_fermion(), {beam_splitter(), {{0, z}}}) - (1.0 + z) / 2.0) < 1e-15);
}

TEST_CASE("chi(all z = 1) = 1") {
  Rng rng(4);
  for (int i = 0; i < 9; ++i) {
    const ProductState s = random_supported_state(i, rng);
    const ComplexMatrix u0 = random_unitary(s.total_modes(), rng);
    CHECK(std::abs(chi(s, {u0, {{0, 1.0}, {1, 1.0}}}) - 1.0) < 1e-10);
  }
}

TEST_CASE("fast path against brute force") {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const ProductState s = random_supported_state(i, rng);
    const int n = s.total_modes();
    CountingSpec spec{random_unitary(n, rng), {}};
    for (int m = 0; m < n; ++m)
      if (uniform01(rng) < 0.5) spec.counted.push_back({m, uniform01(rng) < 0.25 ? Complex(0) : unit_disk(rng)});
    const Complex fast = chi(s, spec);
    CHECK(scaled_error(fast, brute_chi(s, spec)) < 1e-9);
    CHECK(scaled_error(fast, chi_fock_oracle(s, spec)) < 1e-9);
  }
}

TEST_CASE("unsupported bosonic states") {
  FockVector two(Flavor::boson, 1);
  two.add({2}, 1.0);
  const ProductState s({FactorState(two)});
  CHECK_THROWS_AS(chi(s, {ComplexMatrix::Identity(1, 1), {{0, 0.5}}}), UnsupportedError);
}

TEST_CASE("probabilities_from_chi examples") {
  const std::vector<int> first{0};
  const CountDistribution det = probabilities_from_chi(single_fermion(), ComplexMatrix::Identity(2, 2), first);
  REQUIRE(det.probs.size() == 2);
  CHECK(std::abs(det.probs[0]) < 1e-15);
  CHECK(std::abs(det.probs[1] - 1.0) < 1e-15);

  const CountDistribution bs = probabilities_from_chi(single_fermion(), beam_splitter(), first);
  CHECK(bs.support == std::vector<Occupation>{{0}, {1}});
  CHECK(std::abs(bs.probs[0] - 0.5) < 1e-10);
  CHECK(std::abs(bs.probs[1] - 0.5) < 1e-10);
}

TEST_CASE("probabilities are a normalized distribution matching brute force") {
  Rng rng(6);
  for (int i = 0; i < 9; ++i) {
    const ProductState s = random_supported_state(i, rng);
    const ComplexMatrix u0 = random_unitary(s.total_modes(), rng);
    const std::vector<int> modes{2, 0};
    const CountDistribution d = probabilities_from_chi(s, u0, modes);
    CHECK(d.min_raw >= -1e-9);
    CHECK(d.max_imag <= 1e-10);
    CHECK(std::abs(d.total() - 1.0) < 1e-9);
    const auto expected = brute_distribution(s, u0, modes);
    for (std::size_t j = 0; j < d.support.size(); ++j) {
      const auto it = expected.find(d.support[j]);
      CHECK(std::abs(d.probs[j] - (it == expected.end() ? 0.0 : it->second)) < 1e-10);
    }
    // Fourier round trip at off-grid multipliers
    const std::vector<Complex> z{unit_disk(rng), unit_disk(rng)};
    CountingSpec spec{u0, {{2, z[0]}, {0, z[1]}}};
    CHECK(std::abs(chi_from_distribution(d, z) - chi(s, spec)) < 1e-9);
  }
}

TEST_CASE("probabilities_from_chi guards") {
  const ProductState s = make_psi4(3);
  const std::vector<int> nine{0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK_THROWS_AS(probabilities_from_chi(s, ComplexMatrix::Identity(12, 12), nine), GuardError);
}

TEST_CASE("sample_counts") {
  CountDistribution point;
  point.modes = {0};
  point.support = {{0}, {1}};
  point.probs = {0.0, 1.0};
  for (const Occupation& o : sample_counts(point, 100, 1)) CHECK(o == Occupation{1});

  const std::vector<int> first{0};
  const CountDistribution bs = probabilities_from_chi(single_fermion(), beam_splitter(), first);
  CHECK(sample_counts(bs, 1000, 42) == sample_counts(bs, 1000, 42));
  const auto draws = sample_counts(bs, 100000, 7);
  double ones = 0;
  for (const Occupation& o : draws) ones += o[0];
  CHECK(std::abs(ones / draws.size() - 0.5) < 0.01);
}
