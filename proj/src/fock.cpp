#include "fcskit/fock.hpp"

#include <cmath>
#include <numeric>

#include "fcskit/permanent.hpp"

namespace fcskit {

const char* to_string(Flavor f) { return f == Flavor::boson ? "boson" : "fermion"; }

Flavor flavor_from_string(const std::string& s) {
  if (s == "boson") return Flavor::boson;
  if (s == "fermion") return Flavor::fermion;
  throw std::invalid_argument("unknown flavor '" + s + "'");
}

int particle_count(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

FockVector::FockVector(Flavor flavor, int modes) : flavor_(flavor), modes_(modes) {
  if (modes < 0) throw std::invalid_argument("FockVector: negative mode count");
}

FockVector FockVector::basis(Flavor flavor, const Occupation& occ, Complex amp) {
  FockVector v(flavor, static_cast<int>(occ.size()));
  v.add(occ, amp);
  return v;
}

void FockVector::validate(const Occupation& occ) const {
  if (static_cast<int>(occ.size()) != modes_) throw DimensionError("FockVector: configuration length != modes");
  for (int n : occ) {
    if (n < 0) throw std::invalid_argument("FockVector: negative occupation");
    if (flavor_ == Flavor::fermion && n > 1) throw std::invalid_argument("FockVector: fermionic occupation > 1");
  }
}

void FockVector::add(const Occupation& occ, Complex amp) {
  validate(occ);
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
    throw std::invalid_argument("FockVector: non-finite amplitude");
  amps_[occ] += amp;
}

Complex FockVector::amplitude(const Occupation& occ) const {
  auto it = amps_.find(occ);
  return it == amps_.end() ? Complex(0) : it->second;
}

std::set<int> FockVector::particle_numbers() const {
  std::set<int> out;
  for (const auto& [occ, amp] : amps_) out.insert(particle_count(occ));
  return out;
}

int FockVector::max_particles() const {
  int m = 0;
  for (const auto& [occ, amp] : amps_) m = std::max(m, particle_count(occ));
  return m;
}

double FockVector::norm() const {
  double s = 0;
  for (const auto& [occ, amp] : amps_) s += std::norm(amp);
  return std::sqrt(s);
}

FockVector& FockVector::operator*=(Complex c) {
  for (auto& [occ, amp] : amps_) amp *= c;
  return *this;
}

std::vector<Occupation> enumerate_configs(Flavor flavor, int modes, int particles) {
  std::vector<Occupation> out;
  Occupation cur(modes, 0);
  const int cap = flavor == Flavor::fermion ? 1 : particles;
  auto rec = [&](auto&& self, int mode, int left) -> void {
    if (mode == modes) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int n = std::min(cap, left); n >= 0; --n) {
      cur[mode] = n;
      self(self, mode + 1, left - n);
    }
    cur[mode] = 0;
  };
  rec(rec, 0, particles);
  return out;
}

namespace {

double sqrt_factorial_product(const Occupation& occ) {
  double p = 1.0;
  for (int n : occ)
    for (int i = 2; i <= n; ++i) p *= i;
  return std::sqrt(p);
}

std::vector<Eigen::Index> occupied_modes(const Occupation& occ) {
  std::vector<Eigen::Index> idx;
  for (std::size_t j = 0; j < occ.size(); ++j)
    if (occ[j]) idx.push_back(static_cast<Eigen::Index>(j));
  return idx;
}

void check_oracle_input(const ComplexMatrix& u, const FockVector& state, int particle_limit) {
  if (u.rows() != state.modes() || u.cols() != state.modes())
    throw DimensionError("apply_noninteracting: matrix is " + std::to_string(u.rows()) + "x" +
                         std::to_string(u.cols()) + " but state has " + std::to_string(state.modes()) + " modes");
  if (state.modes() > kFockMaxModes)
    throw GuardError("apply_noninteracting: " + std::to_string(state.modes()) + " modes exceeds oracle limit");
  if (state.max_particles() > particle_limit)
    throw GuardError("apply_noninteracting: " + std::to_string(state.max_particles()) +
                     " particles exceeds oracle limit " + std::to_string(particle_limit));
  require_finite(u, "apply_noninteracting");
}

}  // namespace

Complex transition_element(Flavor flavor, const ComplexMatrix& u, const Occupation& out, const Occupation& in) {
  if (particle_count(out) != particle_count(in)) return 0.0;
  if (flavor == Flavor::boson)
    return permanent_submatrix(u, out, in) / (sqrt_factorial_product(out) * sqrt_factorial_product(in));
  const auto rows = occupied_modes(out);
  const auto cols = occupied_modes(in);
  return determinant(u(rows, cols));
}

FockVector apply_noninteracting(const ComplexMatrix& u, const FockVector& state) {
  check_oracle_input(u, state, kFockMaxParticles);
  FockVector result(state.flavor(), state.modes());
  for (int sector : state.particle_numbers()) {
    std::vector<std::pair<const Occupation*, Complex>> inputs;
    for (const auto& [occ, amp] : state.amplitudes())
      if (particle_count(occ) == sector) inputs.emplace_back(&occ, amp);
    for (const Occupation& out : enumerate_configs(state.flavor(), state.modes(), sector)) {
      Complex acc(0);
      for (const auto& [in, amp] : inputs) acc += transition_element(state.flavor(), u, out, *in) * amp;
      if (acc != Complex(0)) result.add(out, acc);
    }
  }
  return result;
}

FockVector apply_noninteracting_direct(const ComplexMatrix& u, const FockVector& state) {
  check_oracle_input(u, state, kDirectMaxParticles);
  const int modes = state.modes();
  const bool fermion = state.flavor() == Flavor::fermion;
  FockVector result(state.flavor(), modes);

  for (const auto& [in, amp] : state.amplitudes()) {
    // creation string a^dag_{j_1} ... a^dag_{j_T}, ascending
    std::vector<int> js;
    for (int j = 0; j < modes; ++j) js.insert(js.end(), in[j], j);
    const int t = static_cast<int>(js.size());
    const Complex scaled = fermion ? amp : amp / sqrt_factorial_product(in);

    std::vector<int> is(t, 0);
    while (true) {
      Complex coeff = scaled;
      for (int p = 0; p < t; ++p) coeff *= u(is[p], js[p]);

      Occupation out(modes, 0);
      for (int i : is) ++out[i];
      bool pauli_zero = false;
      double weight = 1.0;
      if (fermion) {
        for (int n : out) pauli_zero |= n > 1;
        // sign of the permutation sorting is
        int inversions = 0;
        for (int p = 0; p < t; ++p)
          for (int q = p + 1; q < t; ++q) inversions += is[p] > is[q];
        weight = inversions % 2 ? -1.0 : 1.0;
      } else {
        weight = sqrt_factorial_product(out);
      }
      if (!pauli_zero && coeff != Complex(0)) result.add(out, coeff * weight);

      int p = t - 1;
      while (p >= 0 && is[p] == modes - 1) is[p--] = 0;
      if (p < 0) break;
      ++is[p];
    }
  }
  return result;
}

Complex inner(const FockVector& a, const FockVector& b) {
  if (a.flavor() != b.flavor()) throw std::invalid_argument("inner: flavor mismatch");
  if (a.modes() != b.modes()) throw DimensionError("inner: mode count mismatch");
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  Complex acc(0);
  for (const auto& [occ, amp] : small.amplitudes()) {
    auto it = large.amplitudes().find(occ);
    if (it == large.amplitudes().end()) continue;
    acc += (&small == &a) ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return acc;
}

FockVector tensor_product(const FockVector& a, const FockVector& b) {
  if (a.flavor() != b.flavor()) throw std::invalid_argument("tensor_product: flavor mismatch");
  FockVector out(a.flavor(), a.modes() + b.modes());
  for (const auto& [oa, xa] : a.amplitudes()) {
    for (const auto& [ob, xb] : b.amplitudes()) {
      Occupation occ = oa;
      occ.insert(occ.end(), ob.begin(), ob.end());
      out.add(occ, xa * xb);
    }
  }
  return out;
}

FockVector project_number_op(const FockVector& state, int mode, Complex z) {
  if (mode < 0 || mode >= state.modes()) throw std::out_of_range("project_number_op: mode out of range");
  FockVector out(state.flavor(), state.modes());
  for (const auto& [occ, amp] : state.amplitudes()) {
    const int n = occ[mode];
    if (n > 0 && z == Complex(0)) continue;
    Complex factor(1);
    for (int i = 0; i < n; ++i) factor *= z;
    out.add(occ, amp * factor);
  }
  return out;
}

}  // namespace fcskit
