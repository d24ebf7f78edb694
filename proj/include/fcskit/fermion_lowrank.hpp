#ifndef FCSKIT_FERMION_LOWRANK_HPP
#define FCSKIT_FERMION_LOWRANK_HPP

#include <span>
#include <vector>

#include "fcskit/parallel.hpp"
#include "fcskit/states.hpp"

namespace fcskit {

/// A linear combination of local creation (sum_j c_j f^dag_j) or annihilation
/// (sum_j c_j f_j) operators on one factor's modes.
struct LocalOp {
  enum class Kind { create, annihilate };
  Kind kind;
  ComplexVector coeffs;
};

/// Applies one local operator with the ascending-mode sign convention.
FockVector apply_local_op(const LocalOp& op, const FockVector& state);

/// <Psi| o_1 o_2 ... o_m |Psi>, operators applied right to left.
Complex local_word_expectation(const FactorState& factor, std::span<const LocalOp> ops);

/// Slices a global single-particle vector into per-factor pieces.
std::vector<ComplexVector> split_vector(const ComplexVector& w, const ProductState& state);

/// u^dag_{s_1} ... u^dag_{s_r} v_{s_r} ... v_{s_1} for s_1 < ... < s_r.
/// Position p < r holds u^dag_{s_p}; position r + q holds v_{s_{r-1-q}}.
struct OperatorWord {
  std::vector<int> labels;

  int degree() const { return static_cast<int>(labels.size()); }
  int length() const { return 2 * degree(); }
  bool is_creation(int position) const { return position < degree(); }
  int label_at(int position) const {
    return is_creation(position) ? labels[position] : labels[length() - 1 - position];
  }
};

/// Factor index for each of the 2r word positions.
using FactorAssignment = std::vector<int>;

/// Sign relating the ordered product of factor components to the product of
/// per-factor expectations: (-1) per pair of positions p < q with
/// assignment[p] > assignment[q], times the parity of every factor preceding
/// each component's factor.
int crossing_sign(const OperatorWord& word, const FactorAssignment& assignment, std::span<const Parity> parities);

/// <Phi_0| U^ |Phi_0> for U = 1 + V, V of rank k, and Phi_0 any fermionic
/// product of definite-parity factors. Sums the 2^k operator words of the
/// normal-ordered expansion over all N^{2r} factor assignments.
Complex expectation_lowrank(const ProductState& state, const LowRankOperator& v, const ExecOptions& opts = {});

}  // namespace fcskit

#endif  // FCSKIT_FERMION_LOWRANK_HPP
