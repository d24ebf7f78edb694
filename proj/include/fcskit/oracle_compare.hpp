#ifndef FCSKIT_ORACLE_COMPARE_HPP
#define FCSKIT_ORACLE_COMPARE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fcskit/parallel.hpp"

namespace fcskit {

struct OracleCase {
  std::string label;
  double error = 0.0;  // |fast - oracle| / (1 + |oracle|)
};

struct OracleReport {
  std::string family;
  std::vector<OracleCase> cases;
  double max_error = 0.0;
};

/// Families:
///   lowrank-permanent  Per(1+V) low-rank vs Ryser, N in [2, max_n], k in [1, max_k]
///   fermion-lowrank    expectation_lowrank vs Fock oracle on Fermi-sea
///                      (N n <= 10) and Psi4 (N <= 3) products, k <= max_k
///   psi4-reduction     both sides of the Psi4 reduction identity, N <= 3
///   fermi-sea          determinant formula vs Fock oracle
///   single-boson       Fock oracle vs Ryser permanent, N <= 6
///   fcs                chi through the finite-rank paths vs the Fock oracle
/// `instances` seeded random instances per size point.
OracleReport oracle_compare(const std::string& family, int max_n, int max_k, int instances, std::uint64_t seed,
                            const ExecOptions& opts = {});

const std::vector<std::string>& oracle_families();

}  // namespace fcskit

#endif  // FCSKIT_ORACLE_COMPARE_HPP
