#include <doctest.h>

#include "brute_force.hpp"
#include "fcskit/fock.hpp"
#include "fcskit/permanent.hpp"
#include "fcskit/random.hpp"
#include "fcskit/states.hpp"

using namespace fcskit;

namespace {

double distance(const FockVector& a, const FockVector& b) {
  double d = 0;
  for (const auto& [occ, amp] : a.amplitudes()) d += std::norm(amp - b.amplitude(occ));
  for (const auto& [occ, amp] : b.amplitudes())
    if (!a.amplitudes().count(occ)) d += std::norm(amp);
  return std::sqrt(d);
}

FockVector random_state(Flavor flavor, int modes, int particles, Rng& rng) {
  FockVector v(flavor, modes);
  for (const Occupation& occ : enumerate_configs(flavor, modes, particles)) v.add(occ, complex_normal(rng));
  v *= 1.0 / v.norm();
  return v;
}

}  // namespace

TEST_CASE("apply_noninteracting examples") {
  Rng rng(1);
  for (Flavor f : {Flavor::boson, Flavor::fermion}) {
    const FockVector psi = random_state(f, 4, 2, rng);
    CHECK(distance(apply_noninteracting(ComplexMatrix::Identity(4, 4), psi), psi) < 1e-15);
  }
  const Complex c(0.7, -0.2);
  ComplexMatrix one(1, 1);
  one << c;
  const FockVector b = apply_noninteracting(one, FockVector::basis(Flavor::boson, {1}));
  CHECK(std::abs(b.amplitude({1}) - c) < 1e-15);

  const ComplexMatrix u = random_disk_matrix(2, 2, rng);
  const FockVector f = apply_noninteracting(u, FockVector::basis(Flavor::fermion, {1, 1}));
  CHECK(f.size() == 1);
  CHECK(std::abs(f.amplitude({1, 1}) - determinant(u)) < 1e-15);
}

TEST_CASE("apply_noninteracting matches creation-operator brute force") {
  Rng rng(2);
  for (Flavor f : {Flavor::boson, Flavor::fermion})
    for (int modes = 1; modes <= 5; ++modes)
      for (int particles = 0; particles <= std::min(f == Flavor::boson ? 4 : modes, 4); ++particles) {
        const ComplexMatrix u = random_disk_matrix(modes, modes, rng);
        const FockVector psi = random_state(f, modes, particles, rng);
        const FockVector fast = apply_noninteracting(u, psi);
        CHECK(distance(fast, brute::apply(u, psi)) < 1e-12);
        CHECK(distance(fast, apply_noninteracting_direct(u, psi)) < 1e-12);
      }
}

TEST_CASE("unitarity and multiplicativity") {
  Rng rng(3);
  for (Flavor f : {Flavor::boson, Flavor::fermion}) {
    const FockVector psi = random_state(f, 5, 3, rng);
    const ComplexMatrix u1 = random_unitary(5, rng);
    CHECK(std::abs(apply_noninteracting(u1, psi).norm() - psi.norm()) < 1e-10);
    const ComplexMatrix a = random_disk_matrix(5, 5, rng);
    const ComplexMatrix b = random_disk_matrix(5, 5, rng);
    const FockVector two_step = apply_noninteracting(b, apply_noninteracting(a, psi));
    CHECK(distance(two_step, apply_noninteracting(mat_mul(b, a), psi)) < 1e-10 * std::max(1.0, two_step.norm()));
  }
}

TEST_CASE("permanent identity for single-boson products") {
  Rng rng(4);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix u = random_disk_matrix(n, n, rng);
    const FockVector psi = expand_product(make_single_boson(n));
    CHECK(scaled_error(inner(psi, apply_noninteracting(u, psi)), permanent_ryser(u)) < 1e-10);
  }
}

TEST_CASE("guards and dimension checks") {
  CHECK_THROWS_AS(apply_noninteracting(ComplexMatrix::Identity(3, 3), FockVector::basis(Flavor::boson, {1, 0})),
                  DimensionError);
  CHECK_THROWS_AS(apply_noninteracting(ComplexMatrix::Identity(1, 1), FockVector::basis(Flavor::boson, {13})),
                  GuardError);
  FockVector f(Flavor::fermion, 2);
  CHECK_THROWS(f.add({2, 0}, 1.0));
}

TEST_CASE("inner examples") {
  Rng rng(5);
  const FockVector psi = random_state(Flavor::boson, 3, 2, rng);
  CHECK(std::abs(inner(psi, psi) - 1.0) < 1e-14);
  CHECK(inner(FockVector::basis(Flavor::fermion, {1, 0}), FockVector::basis(Flavor::fermion, {0, 1})) == Complex(0));
  const FockVector psi4 = expand_product(make_psi4(1));
  CHECK(std::abs(inner(psi4, psi4) - 1.0) < 1e-15);
  CHECK_THROWS(inner(FockVector::vacuum(Flavor::boson, 2), FockVector::vacuum(Flavor::fermion, 2)));
}

TEST_CASE("tensor_product examples") {
  const FockVector one = FockVector::basis(Flavor::boson, {1});
  const FockVector t = tensor_product(one, one);
  CHECK(t.size() == 1);
  CHECK(t.amplitude({1, 1}) == Complex(1));

  Rng rng(6);
  const FockVector psi = random_state(Flavor::fermion, 3, 2, rng);
  const FockVector shifted = tensor_product(FockVector::vacuum(Flavor::fermion, 2), psi);
  CHECK(shifted.modes() == 5);
  for (const auto& [occ, amp] : psi.amplitudes()) CHECK(shifted.amplitude({0, 0, occ[0], occ[1], occ[2]}) == amp);

  const FockVector p = expand_product(make_psi4(1));
  const FockVector pp = tensor_product(p, p);
  CHECK(pp.size() == 4);
  for (const auto& [occ, amp] : pp.amplitudes()) CHECK(std::abs(amp - 0.5) < 1e-15);
}

TEST_CASE("tensor products compose with the operator") {
  // (U1 + U2)^ on a (x) b equals U1^ a (x) U2^ b
  Rng rng(7);
  for (Flavor f : {Flavor::boson, Flavor::fermion}) {
    const FockVector a = random_state(f, 2, 1, rng);
    const FockVector b = random_state(f, 3, 2, rng);
    const ComplexMatrix u1 = random_disk_matrix(2, 2, rng), u2 = random_disk_matrix(3, 3, rng);
    ComplexMatrix u = ComplexMatrix::Zero(5, 5);
    u.topLeftCorner(2, 2) = u1;
    u.bottomRightCorner(3, 3) = u2;
    const FockVector lhs = apply_noninteracting(u, tensor_product(a, b));
    const FockVector rhs = tensor_product(apply_noninteracting(u1, a), apply_noninteracting(u2, b));
    CHECK(distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("project_number_op examples") {
  Rng rng(8);
  const FockVector psi = random_state(Flavor::boson, 3, 3, rng);
  CHECK(distance(project_number_op(psi, 1, 1.0), psi) == 0.0);
  CHECK(project_number_op(FockVector::basis(Flavor::fermion, {0, 1}), 1, 0.0).empty());
  const double l = 0.4, m = 1.1;
  const FockVector twice = project_number_op(project_number_op(psi, 2, std::polar(1.0, l)), 2, std::polar(1.0, m));
  CHECK(distance(twice, project_number_op(psi, 2, std::polar(1.0, l + m))) < 1e-14);
  // agrees with the single-particle operator diag(.., z, ..)
  ComplexMatrix d = ComplexMatrix::Identity(3, 3);
  d(0, 0) = Complex(0.3, 0.8);
  CHECK(distance(project_number_op(psi, 0, d(0, 0)), apply_noninteracting(d, psi)) < 1e-14);
}
