#include "fcskit/fermion_lowrank.hpp"

#include <bit>
#include <cmath>
#include <optional>

namespace fcskit {

FockVector apply_local_op(const LocalOp& op, const FockVector& state) {
  if (state.flavor() != Flavor::fermion) throw std::invalid_argument("apply_local_op: fermionic state required");
  if (op.coeffs.size() != state.modes()) throw DimensionError("apply_local_op: coefficient length != modes");
  const bool create = op.kind == LocalOp::Kind::create;
  FockVector out(Flavor::fermion, state.modes());
  for (const auto& [occ, amp] : state.amplitudes()) {
    int before = 0;  // occupied modes below j
    for (int j = 0; j < state.modes(); ++j) {
      const Complex c = op.coeffs[j];
      if (c != Complex(0) && occ[j] == (create ? 0 : 1)) {
        Occupation next = occ;
        next[j] = create ? 1 : 0;
        out.add(next, (before % 2 ? -c : c) * amp);
      }
      before += occ[j];
    }
  }
  return out;
}

Complex local_word_expectation(const FactorState& factor, std::span<const LocalOp> ops) {
  if (factor.flavor() != Flavor::fermion) throw std::invalid_argument("local_word_expectation: fermionic factor required");
  if (factor.local_modes() > kFockMaxModes) throw GuardError("local_word_expectation: factor has too many modes");
  FockVector state = factor.local();
  for (auto it = ops.rbegin(); it != ops.rend() && !state.empty(); ++it) state = apply_local_op(*it, state);
  return inner(factor.local(), state);
}

std::vector<ComplexVector> split_vector(const ComplexVector& w, const ProductState& state) {
  if (w.size() != state.total_modes())
    throw DimensionError("split_vector: vector length " + std::to_string(w.size()) + " != total modes " +
                         std::to_string(state.total_modes()));
  std::vector<ComplexVector> out;
  out.reserve(state.size());
  for (std::size_t i = 0; i < state.size(); ++i)
    out.emplace_back(w.segment(state.offset(i), state.factors()[i].local_modes()));
  return out;
}

int crossing_sign(const OperatorWord& word, const FactorAssignment& assignment, std::span<const Parity> parities) {
  const int len = word.length();
  if (static_cast<int>(assignment.size()) != len) throw DimensionError("crossing_sign: assignment length != word length");
  int flips = 0;
  for (int p = 0; p < len; ++p) {
    for (int q = p + 1; q < len; ++q) flips += assignment[p] > assignment[q];
    for (int b = 0; b < assignment[p]; ++b) {
      if (parities[b] == Parity::indefinite) throw UnsupportedError("crossing_sign: indefinite parity");
      flips += parities[b] == Parity::odd;
    }
  }
  return flips % 2 ? -1 : 1;
}

namespace {

struct WordTables {
  OperatorWord word;
  // memo[b * (1 << len) + mask]: local expectation of the positions in mask
  // (in word order) for factor b
  std::vector<Complex> memo;
};

// Nonzero entries of <Psi| o_{j_1} ... o_{j_m} |Psi> over local mode tuples,
// for one factor state and one creation/annihilation pattern.
struct ElementaryTensor {
  std::vector<std::vector<int>> tuples;
  std::vector<Complex> values;
};

inline constexpr double kMaxElementaryTuples = 4096;

ElementaryTensor elementary_tensor(const FactorState& factor, const std::vector<LocalOp::Kind>& kinds) {
  const int n = factor.local_modes();
  const int m = static_cast<int>(kinds.size());
  ElementaryTensor out;
  std::vector<int> tuple(m, 0);
  std::vector<LocalOp> ops(m);
  for (int p = 0; p < m; ++p) ops[p] = {kinds[p], ComplexVector::Zero(n)};
  while (true) {
    for (int p = 0; p < m; ++p) ops[p].coeffs.setZero(), ops[p].coeffs[tuple[p]] = 1.0;
    const Complex x = local_word_expectation(factor, ops);
    if (x != Complex(0)) {
      out.tuples.push_back(tuple);
      out.values.push_back(x);
    }
    int p = m - 1;
    while (p >= 0 && tuple[p] == n - 1) tuple[p--] = 0;
    if (p < 0) break;
    ++tuple[p];
  }
  return out;
}

WordTables tabulate_word(const OperatorWord& word, const ProductState& state,
                         const std::vector<std::vector<ComplexVector>>& u_split,
                         const std::vector<std::vector<ComplexVector>>& v_split) {
  const int len = word.length();
  const std::size_t masks = std::size_t{1} << len;
  WordTables t{word, std::vector<Complex>(state.size() * masks)};

  // Identical factors share their elementary tensors.
  std::vector<std::size_t> class_of(state.size());
  std::vector<std::size_t> representatives;
  for (std::size_t b = 0; b < state.size(); ++b) {
    const auto& amps = state.factors()[b].local().amplitudes();
    std::size_t c = 0;
    while (c < representatives.size() && state.factors()[representatives[c]].local().amplitudes() != amps) ++c;
    if (c == representatives.size()) representatives.push_back(b);
    class_of[b] = c;
  }
  std::vector<std::vector<std::optional<ElementaryTensor>>> tensors(representatives.size(),
                                                                    std::vector<std::optional<ElementaryTensor>>(masks));

  std::vector<LocalOp> ops;
  std::vector<LocalOp::Kind> kinds;
  std::vector<const ComplexVector*> coeffs;
  for (std::size_t b = 0; b < state.size(); ++b) {
    const FactorState& factor = state.factors()[b];
    t.memo[b * masks] = 1.0;
    for (std::size_t mask = 1; mask < masks; ++mask) {
      kinds.clear();
      coeffs.clear();
      for (int p = 0; p < len; ++p) {
        if (!(mask >> p & 1)) continue;
        const int s = word.label_at(p);
        kinds.push_back(word.is_creation(p) ? LocalOp::Kind::create : LocalOp::Kind::annihilate);
        coeffs.push_back(word.is_creation(p) ? &u_split[s][b] : &v_split[s][b]);
      }
      const double tuples = std::pow(double(factor.local_modes()), double(kinds.size()));
      if (tuples > kMaxElementaryTuples) {
        ops.clear();
        for (std::size_t p = 0; p < kinds.size(); ++p) ops.push_back({kinds[p], *coeffs[p]});
        t.memo[b * masks + mask] = local_word_expectation(factor, ops);
        continue;
      }
      auto& tensor = tensors[class_of[b]][mask];
      if (!tensor) tensor = elementary_tensor(state.factors()[representatives[class_of[b]]], kinds);
      Complex acc(0);
      for (std::size_t e = 0; e < tensor->values.size(); ++e) {
        Complex term = tensor->values[e];
        for (std::size_t p = 0; p < kinds.size(); ++p) term *= (*coeffs[p])[tensor->tuples[e][p]];
        acc += term;
      }
      t.memo[b * masks + mask] = acc;
    }
  }
  return t;
}

// Sum over assignments whose first position sits on `first`.
Complex sum_assignments(const WordTables& t, int n_factors, int first, std::span<const int> prefix_odd) {
  const int len = t.word.length();
  const std::size_t masks = std::size_t{1} << len;
  FactorAssignment a(len, 0);
  a[0] = first;
  Complex total(0);

  int touched[16];
  unsigned touched_mask[16];
  while (true) {
    int distinct = 0;
    int flips = 0;
    for (int p = 0; p < len; ++p) {
      int slot = 0;
      while (slot < distinct && touched[slot] != a[p]) ++slot;
      if (slot == distinct) {
        touched[distinct] = a[p];
        touched_mask[distinct++] = 0;
      }
      touched_mask[slot] |= 1u << p;
      flips += prefix_odd[a[p]];
      for (int q = p + 1; q < len; ++q) flips += a[p] > a[q];
    }
    Complex term(1);
    for (int i = 0; i < distinct && term != Complex(0); ++i) term *= t.memo[touched[i] * masks + touched_mask[i]];
    if (term != Complex(0)) total += flips % 2 ? -term : term;

    int p = len - 1;
    while (p >= 1 && a[p] == n_factors - 1) a[p--] = 0;
    if (p < 1) break;
    ++a[p];
  }
  return total;
}

Complex tree_sum(std::vector<Complex> v) {
  if (v.empty()) return 0.0;
  for (std::size_t width = 1; width < v.size(); width *= 2)
    for (std::size_t i = 0; i + width < v.size(); i += 2 * width) v[i] += v[i + width];
  return v[0];
}

}  // namespace

Complex expectation_lowrank(const ProductState& state, const LowRankOperator& v, const ExecOptions& opts) {
  if (state.flavor() != Flavor::fermion) throw UnsupportedError("expectation_lowrank: fermionic product state required");
  if (v.dim() != state.total_modes())
    throw DimensionError("expectation_lowrank: operator dimension " + std::to_string(v.dim()) + " != total modes " +
                         std::to_string(state.total_modes()));
  if (v.rank() > 7) throw GuardError("expectation_lowrank: rank above 7 not supported");
  require_finite(v.u, "expectation_lowrank");
  require_finite(v.v, "expectation_lowrank");

  const int n_factors = static_cast<int>(state.size());
  std::vector<int> prefix_odd(n_factors, 0);
  for (int b = 0; b < n_factors; ++b) {
    const Parity p = state.factors()[b].parity();
    if (p == Parity::indefinite)
      throw UnsupportedError("expectation_lowrank: factor " + std::to_string(b) + " has indefinite particle parity");
    if (b + 1 < n_factors) prefix_odd[b + 1] = prefix_odd[b] + (p == Parity::odd);
  }
  for (auto& x : prefix_odd) x &= 1;

  const int k = static_cast<int>(v.rank());
  std::vector<std::vector<ComplexVector>> u_split, v_split;
  for (int s = 0; s < k; ++s) {
    u_split.push_back(split_vector(v.u.col(s), state));
    v_split.push_back(split_vector(v.v.col(s), state));
  }

  const unsigned threads = resolve_threads(opts);
  Complex total(1);  // empty word
  for (unsigned subset = 1; subset < (1u << k); ++subset) {
    OperatorWord word;
    for (int s = 0; s < k; ++s)
      if (subset >> s & 1) word.labels.push_back(s);
    const WordTables tables = tabulate_word(word, state, u_split, v_split);

    // Chunks are fixed by the first position, independent of thread count.
    std::vector<Complex> partial(n_factors);
    parallel_for(n_factors, threads, [&](std::size_t first) {
      partial[first] = sum_assignments(tables, n_factors, static_cast<int>(first), prefix_odd);
    });
    if (opts.deterministic) {
      for (const Complex& x : partial) total += x;
    } else {
      total += tree_sum(std::move(partial));
    }
  }
  return total;
}

}  // namespace fcskit
