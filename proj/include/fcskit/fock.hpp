#ifndef FCSKIT_FOCK_HPP
#define FCSKIT_FOCK_HPP

#include <map>
#include <set>
#include <vector>

#include "fcskit/numerics.hpp"

namespace fcskit {

enum class Flavor { boson, fermion };

const char* to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

/// Occupation counts per mode. Fermionic counts are 0 or 1.
using Occupation = std::vector<int>;

int particle_count(const Occupation& occ);

// Oracle limits.
inline constexpr int kFockMaxParticles = 12;
inline constexpr int kFockMaxModes = 24;

/// Sparse Fock-space vector: occupation configuration -> amplitude.
///
/// Fermionic amplitudes refer to the reference state obtained by applying
/// creation operators in ascending mode order to the vacuum,
///   |n> = f^dag_{j_1} ... f^dag_{j_T} |vac>,  j_1 < ... < j_T.
/// Bosonic amplitudes refer to normalized occupation states.
///
/// Configurations of several particle numbers may coexist; every operation
/// here treats each particle-number sector independently.
class FockVector {
 public:
  FockVector(Flavor flavor, int modes);

  static FockVector basis(Flavor flavor, const Occupation& occ, Complex amp = 1.0);
  static FockVector vacuum(Flavor flavor, int modes) { return basis(flavor, Occupation(modes, 0)); }

  Flavor flavor() const { return flavor_; }
  int modes() const { return modes_; }
  const std::map<Occupation, Complex>& amplitudes() const { return amps_; }
  bool empty() const { return amps_.empty(); }
  std::size_t size() const { return amps_.size(); }

  /// Adds `amp` to the amplitude of `occ`, validating the configuration.
  void add(const Occupation& occ, Complex amp);
  Complex amplitude(const Occupation& occ) const;

  std::set<int> particle_numbers() const;
  int max_particles() const;
  double norm() const;

  FockVector& operator*=(Complex c);

 private:
  void validate(const Occupation& occ) const;

  Flavor flavor_;
  int modes_;
  std::map<Occupation, Complex> amps_;
};

/// Every configuration of `particles` particles over `modes` modes.
std::vector<Occupation> enumerate_configs(Flavor flavor, int modes, int particles);

/// <m| U^ |n> for single configurations of equal particle number:
/// Per(U[m|n]) / sqrt(prod m_i! prod n_i!) for bosons, det U[m|n] for fermions.
Complex transition_element(Flavor flavor, const ComplexMatrix& u, const Occupation& out, const Occupation& in);

/// Action of the multi-particle operator generated by u, assembled from
/// transition elements over every output configuration.
FockVector apply_noninteracting(const ComplexMatrix& u, const FockVector& state);

inline constexpr int kDirectMaxParticles = 4;

/// Same action by literal expansion over index tuples (i_1..i_T) of
/// U_{i_1 j_1} ... U_{i_T j_T} a^dag_{i_1} ... a^dag_{i_T}. Cross-check path.
FockVector apply_noninteracting_direct(const ComplexMatrix& u, const FockVector& state);

/// sum_n conj(a_n) b_n
Complex inner(const FockVector& a, const FockVector& b);

/// Modes of b follow those of a; amplitudes multiply with no extra sign.
FockVector tensor_product(const FockVector& a, const FockVector& b);

/// Multiplies each amplitude by z^{n_mode} (0^0 = 1).
FockVector project_number_op(const FockVector& state, int mode, Complex z);

}  // namespace fcskit

#endif  // FCSKIT_FOCK_HPP
