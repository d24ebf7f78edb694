#include "fcskit/oracle_compare.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>

#include "fcskit/fcs.hpp"
#include "fcskit/fermion_lowrank.hpp"
#include "fcskit/permanent.hpp"
#include "fcskit/random.hpp"

namespace fcskit {

namespace {

template <typename... Args>
std::string label(const char* fmt, Args... args) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

int uniform_int(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

Complex fock_expectation(const ProductState& state, const ComplexMatrix& u) {
  const FockVector phi = expand_product(state);
  return inner(phi, apply_noninteracting(u, phi));
}

void record(OracleReport& rep, std::string what, double err) {
  rep.max_error = std::max(rep.max_error, err);
  rep.cases.push_back({std::move(what), err});
}

void lowrank_permanent(OracleReport& rep, int max_n, int max_k, int instances, Rng& rng) {
  for (int n = 2; n <= max_n; ++n)
    for (int k = 1; k <= max_k; ++k)
      for (int i = 0; i < instances; ++i) {
        const LowRankOperator v = random_lowrank(n, k, rng);
        const ComplexMatrix dense = ComplexMatrix::Identity(n, n) + lowrank_to_dense(v);
        record(rep, label("N=%d k=%d #%d", n, k, i), scaled_error(permanent_lowrank(v), permanent_ryser(dense)));
      }
}

void fermion_lowrank(OracleReport& rep, int max_n, int max_k, int instances, Rng& rng, const ExecOptions& opts) {
  for (int k = 1; k <= max_k; ++k) {
    for (int i = 0; i < instances; ++i) {
      const int n = 1 + i % 3;
      const int factors = uniform_int(rng, 1, std::max(1, std::min(max_n, 10 / n)));
      const int orbitals = uniform_int(rng, 0, n);
      const ProductState state = make_fermi_sea(random_isometry(n, orbitals, rng), factors);
      const LowRankOperator v = random_lowrank(state.total_modes(), k, rng);
      const ComplexMatrix u = ComplexMatrix::Identity(v.dim(), v.dim()) + lowrank_to_dense(v);
      record(rep, label("fermi-sea N=%d n=%d k=%d", factors, n, k) + " orbitals=" + std::to_string(orbitals),
             scaled_error(expectation_lowrank(state, v, opts), fock_expectation(state, u)));
    }
    for (int i = 0; i < instances; ++i) {
      const int factors = uniform_int(rng, 1, std::max(1, std::min(max_n, 3)));
      const ProductState state = make_psi4(factors);
      const LowRankOperator v = random_lowrank(state.total_modes(), k, rng);
      const ComplexMatrix u = ComplexMatrix::Identity(v.dim(), v.dim()) + lowrank_to_dense(v);
      record(rep, label("psi4 N=%d k=%d #%d", factors, k, i),
             scaled_error(expectation_lowrank(state, v, opts), fock_expectation(state, u)));
    }
  }
}

void psi4_reduction(OracleReport& rep, int max_n, int instances, Rng& rng) {
  for (int n = 1; n <= std::min(max_n, kPsi4ReductionMaxFactors); ++n)
    for (int i = 0; i < instances; ++i) {
      const ComplexMatrix u = random_unitary(4 * n, rng);
      const ComplexMatrix psi = random_isometry(4 * n, 2 * n, rng);
      const ReductionSides s = psi4_reduction_check(u, n, psi);
      record(rep, label("N=%d #%d", n, i), scaled_error(s.lhs, s.rhs));
    }
}

void fermi_sea(OracleReport& rep, int max_n, int instances, Rng& rng) {
  for (int n = 1; n <= 3; ++n)
    for (int factors = 1; factors <= std::min(max_n, 10 / n); ++factors)
      for (int i = 0; i < instances; ++i) {
        const int k = uniform_int(rng, 0, n);
        const ComplexMatrix psi = random_isometry(n, k, rng);
        const ComplexMatrix u = random_disk_matrix(n * factors, n * factors, rng);
        record(rep, label("N=%d n=%d k=%d", factors, n, k),
               scaled_error(fermi_sea_expectation(psi, factors, u), fock_expectation(make_fermi_sea(psi, factors), u)));
      }
}

void single_boson(OracleReport& rep, int max_n, int instances, Rng& rng) {
  for (int n = 1; n <= std::min(max_n, 6); ++n)
    for (int i = 0; i < instances; ++i) {
      const ComplexMatrix u = random_disk_matrix(n, n, rng);
      record(rep, label("N=%d #%d", n, i),
             scaled_error(fock_expectation(make_single_boson(n), u), permanent_ryser(u)));
    }
}

void fcs_family(OracleReport& rep, int max_n, int max_k, int instances, Rng& rng, const ExecOptions& opts) {
  for (int n = 1; n <= std::min(max_n, 4); ++n)
    for (int i = 0; i < instances; ++i) {
      ProductState state = make_single_boson(n);
      std::string kind = "single-boson";
      switch (i % 3) {
        case 1:
          state = make_fermi_sea(random_isometry(2, 1, rng), n);
          kind = "fermi-sea";
          break;
        case 2:
          state = make_psi4(std::min(n, 3));
          kind = "psi4";
          break;
        default:
          break;
      }
      const int modes = state.total_modes();
      CountingSpec spec{random_unitary(modes, rng), {}};
      std::vector<int> order(modes);
      for (int m = 0; m < modes; ++m) order[m] = m;
      std::shuffle(order.begin(), order.end(), rng);
      const int counted = std::min(modes, uniform_int(rng, 1, std::max(1, max_k)));
      for (int c = 0; c < counted; ++c) {
        // every fourth multiplier is the zero-occupancy projection
        const Complex z = rng() % 4 == 0 ? Complex(0) : std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
        spec.counted.push_back({order[c], z});
      }
      record(rep, kind + label(" N=%d counted=%d #%d", n, counted, i),
             scaled_error(chi(state, spec, opts), chi_fock_oracle(state, spec)));
    }
}

}  // namespace

const std::vector<std::string>& oracle_families() {
  static const std::vector<std::string> names{"lowrank-permanent", "fermion-lowrank", "psi4-reduction",
                                              "fermi-sea",         "single-boson",    "fcs"};
  return names;
}

OracleReport oracle_compare(const std::string& family, int max_n, int max_k, int instances, std::uint64_t seed,
                            const ExecOptions& opts) {
  if (max_n < 1 || max_k < 0 || instances < 1) throw std::invalid_argument("oracle_compare: bad size range");
  Rng rng(seed);
  OracleReport rep{family, {}, 0.0};
  if (family == "lowrank-permanent") {
    if (max_n > 12 || max_k > 3) throw GuardError("oracle_compare: lowrank-permanent limited to N <= 12, k <= 3");
    lowrank_permanent(rep, max_n, max_k, instances, rng);
  } else if (family == "fermion-lowrank") {
    if (max_k > 2) throw GuardError("oracle_compare: fermion-lowrank limited to k <= 2");
    fermion_lowrank(rep, max_n, max_k, instances, rng, opts);
  } else if (family == "psi4-reduction") {
    psi4_reduction(rep, max_n, instances, rng);
  } else if (family == "fermi-sea") {
    fermi_sea(rep, max_n, instances, rng);
  } else if (family == "single-boson") {
    single_boson(rep, max_n, instances, rng);
  } else if (family == "fcs") {
    fcs_family(rep, max_n, max_k, instances, rng, opts);
  } else {
    throw std::invalid_argument("oracle_compare: unknown family '" + family + "'");
  }
  return rep;
}

}  // namespace fcskit
