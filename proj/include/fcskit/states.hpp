#ifndef FCSKIT_STATES_HPP
#define FCSKIT_STATES_HPP

#include <utility>
#include <vector>

#include "fcskit/fock.hpp"

namespace fcskit {

enum class Parity { even, odd, indefinite };

const char* to_string(Parity p);

/// Normalized state on a few local modes; one factor of a product state.
class FactorState {
 public:
  explicit FactorState(FockVector local);

  Flavor flavor() const { return local_.flavor(); }
  int local_modes() const { return local_.modes(); }
  const FockVector& local() const { return local_; }
  Parity parity() const { return parity_; }

 private:
  FockVector local_;
  Parity parity_;
};

/// Tensor product of factors; factor i owns the global modes
/// [offset(i), offset(i) + factors()[i].local_modes()).
class ProductState {
 public:
  explicit ProductState(std::vector<FactorState> factors);

  Flavor flavor() const { return factors_.front().flavor(); }
  const std::vector<FactorState>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  int total_modes() const { return offsets_.back(); }
  int offset(std::size_t factor) const { return offsets_[factor]; }

 private:
  std::vector<FactorState> factors_;
  std::vector<int> offsets_;
};

/// psi_1^dag ... psi_k^dag |vac> over `modes` modes; orbitals are the
/// columns of `orbitals`. Amplitude on subset S is det orbitals(S, :).
FockVector fermi_sea_vector(const ComplexMatrix& orbitals);

/// Throws unless the columns are orthonormal within `tol`.
void require_orthonormal(const ComplexMatrix& orbitals, double tol = 1e-10);

ProductState make_single_boson(int n_factors);
ProductState make_fermi_sea(const ComplexMatrix& orbitals, int n_factors);
ProductState make_psi4(int n_factors);

/// exp(alpha b^dag) |vac> truncated at `cutoff` bosons and renormalized.
FactorState make_truncated_coherent_factor(double alpha, int cutoff);

inline constexpr std::size_t kExpandMaxConfigs = std::size_t{1} << 20;

/// Iterated tensor product of the factors.
FockVector expand_product(const ProductState& p);

/// Coherent product of n_factors modes truncated to total particle number
/// <= max_total (unnormalized, exact coherent amplitudes).
FockVector coherent_product_truncated(double alpha, int n_factors, int max_total);

/// exp[alpha^2 (sum_ij U_ij - N)]
Complex coherent_expectation(double alpha, const ComplexMatrix& u);

/// det <phi_a|U|phi_b> over the N*k occupied orbitals, factor i's orbitals
/// embedded in global modes [i n, (i+1) n).
Complex fermi_sea_expectation(const ComplexMatrix& orbitals, int n_factors, const ComplexMatrix& u);

struct ReductionSides {
  Complex lhs;
  Complex rhs;
};

inline constexpr int kPsi4ReductionMaxFactors = 3;

/// Y maps orbital m (column m of `orbitals`) onto the basis mode
/// 4*(m/2) + (m%2), i.e. f1, f2, f5, f6, ..., and kills their complement.
ComplexMatrix psi4_reduction_operator(const ComplexMatrix& orbitals);

/// lhs = <Psi4^N| Y^ U^ |Psi4^N>, rhs = 2^{-N/2} <x| U^ |Psi4^N>, with
/// |x> the Fermi sea of the 2N orbitals. Both evaluated by the Fock oracle.
ReductionSides psi4_reduction_check(const ComplexMatrix& u, int n_factors, const ComplexMatrix& orbitals);

}  // namespace fcskit

#endif  // FCSKIT_STATES_HPP
