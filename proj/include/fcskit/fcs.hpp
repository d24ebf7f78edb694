#ifndef FCSKIT_FCS_HPP
#define FCSKIT_FCS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fcskit/parallel.hpp"
#include "fcskit/states.hpp"

namespace fcskit {

/// Counting multiplier z = e^{i lambda} on one output mode. z = 0 projects
/// onto zero occupancy of that mode.
struct CountedMode {
  int mode;
  Complex z;
};

/// Evolution U0 plus the counted modes; uncounted modes carry z = 1.
struct CountingSpec {
  ComplexMatrix u0;
  std::vector<CountedMode> counted;

  void validate() const;
};

struct CountDistribution {
  std::vector<int> modes;           // counted modes, column order
  std::vector<Occupation> support;  // count tuple per entry
  std::vector<double> probs;
  double max_imag = 0.0;       // largest |Im P| discarded by the inversion
  double min_raw = 0.0;        // smallest real part before clamping
  double total() const;
};

inline constexpr double kMaxConditionNumber = 1e12;
inline constexpr std::size_t kMaxCountedModes = 8;
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 16;

/// U0^{-1} D U0 with D = diag(z on counted modes, 1 elsewhere).
ComplexMatrix build_fcs_operator(const CountingSpec& spec);

/// V = U0^{-1} (D - 1) U0, so that U0^{-1} D U0 = 1 + V, as a rank-r operator
/// with one term per counted mode with z != 1: u = (z - 1) U0^{-1}(:, m),
/// v = U0(m, :).
LowRankOperator build_fcs_lowrank(const CountingSpec& spec);

/// chi = <Phi_0| U^ |Phi_0> with U = U0^{-1} D U0, through the finite-rank
/// fast paths: fermionic product states, or the single-boson product state.
Complex chi(const ProductState& state, const CountingSpec& spec, const ExecOptions& opts = {});

/// Same quantity from the Fock oracle (dense operator, full expansion).
Complex chi_fock_oracle(const ProductState& state, const CountingSpec& spec);

bool is_single_boson_product(const ProductState& state);

/// Evaluates chi on the discrete Fourier grid over `modes` and inverts it.
/// Count cutoff per mode: 1 for fermions, total particle number for bosons.
CountDistribution probabilities_from_chi(const ProductState& state, const ComplexMatrix& u0, std::span<const int> modes,
                                         const ExecOptions& opts = {});

/// sum_n P(n) prod_m z_m^{n_m}: re-synthesizes chi from a distribution.
Complex chi_from_distribution(const CountDistribution& dist, std::span<const Complex> z);

/// i.i.d. draws by inverse CDF; bit-reproducible for a given seed.
std::vector<Occupation> sample_counts(const CountDistribution& dist, std::size_t n_samples, std::uint64_t seed);

}  // namespace fcskit

#endif  // FCSKIT_FCS_HPP
