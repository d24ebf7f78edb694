#include "fcskit/states.hpp"

#include <cmath>

namespace fcskit {

const char* to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    default: return "indefinite";
  }
}

FactorState::FactorState(FockVector local) : local_(std::move(local)), parity_(Parity::indefinite) {
  if (std::abs(local_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("FactorState: state is not normalized (norm " + std::to_string(local_.norm()) + ")");
  bool has_even = false, has_odd = false;
  for (const auto& [occ, amp] : local_.amplitudes()) {
    if (amp == Complex(0)) continue;
    (particle_count(occ) % 2 ? has_odd : has_even) = true;
  }
  if (has_even != has_odd) parity_ = has_even ? Parity::even : Parity::odd;
}

ProductState::ProductState(std::vector<FactorState> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("ProductState: no factors");
  offsets_.push_back(0);
  for (const auto& f : factors_) {
    if (f.flavor() != factors_.front().flavor()) throw std::invalid_argument("ProductState: mixed flavors");
    offsets_.push_back(offsets_.back() + f.local_modes());
  }
}

void require_orthonormal(const ComplexMatrix& orbitals, double tol) {
  const Eigen::Index k = orbitals.cols();
  if (k == 0) return;
  const ComplexMatrix gram = orbitals.adjoint() * orbitals;
  if ((gram - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("orbitals are not orthonormal");
}

FockVector fermi_sea_vector(const ComplexMatrix& orbitals) {
  const int n = static_cast<int>(orbitals.rows());
  const int k = static_cast<int>(orbitals.cols());
  if (k > n) throw DimensionError("fermi_sea_vector: more orbitals than modes");
  FockVector out(Flavor::fermion, n);
  for (const Occupation& occ : enumerate_configs(Flavor::fermion, n, k)) {
    std::vector<Eigen::Index> rows;
    for (int j = 0; j < n; ++j)
      if (occ[j]) rows.push_back(j);
    const Complex amp = determinant(orbitals(rows, Eigen::all));
    if (amp != Complex(0)) out.add(occ, amp);
  }
  return out;
}

ProductState make_single_boson(int n_factors) {
  if (n_factors < 1) throw std::invalid_argument("make_single_boson: need at least one factor");
  return ProductState(std::vector<FactorState>(n_factors, FactorState(FockVector::basis(Flavor::boson, {1}))));
}

ProductState make_fermi_sea(const ComplexMatrix& orbitals, int n_factors) {
  if (n_factors < 1) throw std::invalid_argument("make_fermi_sea: need at least one factor");
  require_orthonormal(orbitals);
  return ProductState(std::vector<FactorState>(n_factors, FactorState(fermi_sea_vector(orbitals))));
}

ProductState make_psi4(int n_factors) {
  if (n_factors < 1) throw std::invalid_argument("make_psi4: need at least one factor");
  FockVector local(Flavor::fermion, 4);
  local.add({1, 1, 0, 0}, M_SQRT1_2);
  local.add({0, 0, 1, 1}, M_SQRT1_2);
  return ProductState(std::vector<FactorState>(n_factors, FactorState(local)));
}

FactorState make_truncated_coherent_factor(double alpha, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("make_truncated_coherent_factor: negative cutoff");
  FockVector local(Flavor::boson, 1);
  double term = 1.0;  // alpha^n / sqrt(n!)
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) term *= alpha / std::sqrt(double(n));
    local.add({n}, term);
  }
  local *= 1.0 / local.norm();
  return FactorState(local);
}

FockVector expand_product(const ProductState& p) {
  if (p.total_modes() > kFockMaxModes)
    throw GuardError("expand_product: " + std::to_string(p.total_modes()) + " modes exceeds oracle limit");
  double configs = 1.0;
  for (const auto& f : p.factors()) configs *= double(f.local().size());
  if (configs > double(kExpandMaxConfigs)) throw GuardError("expand_product: too many configurations");

  FockVector out = p.factors().front().local();
  for (std::size_t i = 1; i < p.size(); ++i) out = tensor_product(out, p.factors()[i].local());
  if (out.max_particles() > kFockMaxParticles) throw GuardError("expand_product: particle number exceeds oracle limit");
  return out;
}

FockVector coherent_product_truncated(double alpha, int n_factors, int max_total) {
  if (n_factors < 1 || n_factors > kFockMaxModes) throw GuardError("coherent_product_truncated: bad mode count");
  if (max_total > kFockMaxParticles) throw GuardError("coherent_product_truncated: particle cutoff too large");
  FockVector out(Flavor::boson, n_factors);
  const double vac = std::exp(-0.5 * alpha * alpha * n_factors);
  for (int t = 0; t <= max_total; ++t) {
    for (const Occupation& occ : enumerate_configs(Flavor::boson, n_factors, t)) {
      double amp = vac;
      for (int n : occ)
        for (int i = 1; i <= n; ++i) amp *= alpha / std::sqrt(double(i));
      out.add(occ, amp);
    }
  }
  return out;
}

Complex coherent_expectation(double alpha, const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("coherent_expectation: matrix is not square");
  if (!std::isfinite(alpha)) throw std::invalid_argument("coherent_expectation: alpha must be finite");
  return std::exp(alpha * alpha * (u.sum() - double(u.rows())));
}

namespace {

ComplexMatrix embed_orbitals(const ComplexMatrix& orbitals, int n_factors) {
  const Eigen::Index n = orbitals.rows();
  const Eigen::Index k = orbitals.cols();
  ComplexMatrix phi = ComplexMatrix::Zero(n * n_factors, k * n_factors);
  for (int i = 0; i < n_factors; ++i) phi.block(i * n, i * k, n, k) = orbitals;
  return phi;
}

}  // namespace

Complex fermi_sea_expectation(const ComplexMatrix& orbitals, int n_factors, const ComplexMatrix& u) {
  if (n_factors < 1) throw std::invalid_argument("fermi_sea_expectation: need at least one factor");
  const Eigen::Index modes = orbitals.rows() * n_factors;
  if (u.rows() != modes || u.cols() != modes)
    throw DimensionError("fermi_sea_expectation: operator must be " + std::to_string(modes) + "x" +
                         std::to_string(modes));
  require_orthonormal(orbitals);
  const ComplexMatrix phi = embed_orbitals(orbitals, n_factors);
  return determinant(phi.adjoint() * u * phi);
}

ComplexMatrix psi4_reduction_operator(const ComplexMatrix& orbitals) {
  const Eigen::Index modes = orbitals.rows();
  ComplexMatrix targets = ComplexMatrix::Zero(modes, orbitals.cols());
  for (Eigen::Index m = 0; m < orbitals.cols(); ++m) targets(4 * (m / 2) + m % 2, m) = 1.0;
  return targets * orbitals.adjoint();
}

ReductionSides psi4_reduction_check(const ComplexMatrix& u, int n_factors, const ComplexMatrix& orbitals) {
  if (n_factors < 1 || n_factors > kPsi4ReductionMaxFactors)
    throw GuardError("psi4_reduction_check: factor count must be in [1, " +
                     std::to_string(kPsi4ReductionMaxFactors) + "]");
  const Eigen::Index modes = 4 * n_factors;
  if (u.rows() != modes || u.cols() != modes) throw DimensionError("psi4_reduction_check: operator size mismatch");
  if (orbitals.rows() != modes || orbitals.cols() != 2 * n_factors)
    throw DimensionError("psi4_reduction_check: need 2N orbitals over 4N modes");
  require_orthonormal(orbitals);

  const FockVector psi = expand_product(make_psi4(n_factors));
  const FockVector evolved = apply_noninteracting(u, psi);
  const ComplexMatrix y = psi4_reduction_operator(orbitals);
  const FockVector x = fermi_sea_vector(orbitals);

  ReductionSides sides;
  sides.lhs = inner(psi, apply_noninteracting(y, evolved));
  sides.rhs = std::pow(2.0, -0.5 * n_factors) * inner(x, evolved);
  return sides;
}

}  // namespace fcskit
