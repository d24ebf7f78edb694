#include "fcskit/fcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "fcskit/fermion_lowrank.hpp"
#include "fcskit/permanent.hpp"

namespace fcskit {

void CountingSpec::validate() const {
  if (u0.rows() != u0.cols()) throw DimensionError("CountingSpec: u0 is not square");
  require_finite(u0, "CountingSpec");
  std::set<int> seen;
  for (const auto& c : counted) {
    if (c.mode < 0 || c.mode >= u0.rows())
      throw DimensionError("CountingSpec: counted mode " + std::to_string(c.mode) + " out of range");
    if (!seen.insert(c.mode).second)
      throw std::invalid_argument("CountingSpec: mode " + std::to_string(c.mode) + " counted twice");
    if (!std::isfinite(c.z.real()) || !std::isfinite(c.z.imag()))
      throw std::invalid_argument("CountingSpec: non-finite multiplier");
  }
}

double CountDistribution::total() const {
  double s = 0;
  for (double p : probs) s += p;
  return s;
}

namespace {

Eigen::PartialPivLU<ComplexMatrix> checked_lu(const ComplexMatrix& u0) {
  Eigen::PartialPivLU<ComplexMatrix> lu(u0);
  const double rcond = lu.rcond();
  if (!std::isfinite(rcond) || lu.determinant() == Complex(0)) throw NumericalError("u0 is singular");
  if (!(rcond > 1.0 / kMaxConditionNumber))
    throw NumericalError("u0 is ill-conditioned (reciprocal condition estimate " + std::to_string(rcond) + ")");
  return lu;
}

}  // namespace

ComplexMatrix build_fcs_operator(const CountingSpec& spec) {
  spec.validate();
  const auto lu = checked_lu(spec.u0);
  ComplexMatrix d_u0 = spec.u0;
  for (const auto& c : spec.counted) d_u0.row(c.mode) *= c.z;
  return lu.solve(d_u0);
}

LowRankOperator build_fcs_lowrank(const CountingSpec& spec) {
  spec.validate();
  const Eigen::Index n = spec.u0.rows();
  std::vector<CountedMode> active;
  for (const auto& c : spec.counted)
    if (c.z != Complex(1)) active.push_back(c);
  if (active.empty()) return LowRankOperator::zero(n);

  const auto lu = checked_lu(spec.u0);
  ComplexMatrix selector = ComplexMatrix::Zero(n, static_cast<Eigen::Index>(active.size()));
  for (std::size_t s = 0; s < active.size(); ++s) selector(active[s].mode, s) = 1.0;
  ComplexMatrix u = lu.solve(selector);  // columns of U0^{-1}
  ComplexMatrix v(n, u.cols());
  for (std::size_t s = 0; s < active.size(); ++s) {
    u.col(s) *= active[s].z - 1.0;
    v.col(s) = spec.u0.row(active[s].mode).transpose();
  }
  return LowRankOperator(std::move(u), std::move(v));
}

bool is_single_boson_product(const ProductState& state) {
  if (state.flavor() != Flavor::boson) return false;
  for (const auto& f : state.factors()) {
    if (f.local_modes() != 1 || f.local().size() != 1) return false;
    if (f.local().amplitudes().begin()->first != Occupation{1}) return false;
  }
  return true;
}

Complex chi(const ProductState& state, const CountingSpec& spec, const ExecOptions& opts) {
  if (spec.u0.rows() != state.total_modes())
    throw DimensionError("chi: u0 dimension " + std::to_string(spec.u0.rows()) + " != total modes " +
                         std::to_string(state.total_modes()));
  if (state.flavor() == Flavor::boson && !is_single_boson_product(state))
    throw UnsupportedError("chi: bosonic states other than the single-boson product are not supported");
  const LowRankOperator v = build_fcs_lowrank(spec);
  if (state.flavor() == Flavor::fermion) return expectation_lowrank(state, v, opts);
  return permanent_lowrank(v);
}

Complex chi_fock_oracle(const ProductState& state, const CountingSpec& spec) {
  const FockVector phi = expand_product(state);
  return inner(phi, apply_noninteracting(build_fcs_operator(spec), phi));
}

CountDistribution probabilities_from_chi(const ProductState& state, const ComplexMatrix& u0, std::span<const int> modes,
                                         const ExecOptions& opts) {
  if (modes.size() > kMaxCountedModes)
    throw GuardError("probabilities_from_chi: at most " + std::to_string(kMaxCountedModes) + " counted modes");
  int cutoff = 1;
  if (state.flavor() == Flavor::boson) {
    if (!is_single_boson_product(state))
      throw UnsupportedError("probabilities_from_chi: unsupported bosonic state");
    cutoff = static_cast<int>(state.size());
  }
  const std::size_t base = static_cast<std::size_t>(cutoff) + 1;
  std::size_t grid = 1;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    grid *= base;
    if (grid > kMaxGridPoints) throw GuardError("probabilities_from_chi: Fourier grid too large");
  }

  // roots[t] = exp(2 pi i t / base)
  std::vector<Complex> roots(base);
  for (std::size_t t = 0; t < base; ++t) roots[t] = std::polar(1.0, 2.0 * std::numbers::pi * double(t) / double(base));

  auto digits = [&](std::size_t idx) {
    Occupation d(modes.size());
    for (std::size_t m = modes.size(); m-- > 0;) {
      d[m] = static_cast<int>(idx % base);
      idx /= base;
    }
    return d;
  };

  CountingSpec spec{u0, {}};
  for (int m : modes) spec.counted.push_back({m, 1.0});
  spec.validate();

  std::vector<Complex> chis(grid);
  ExecOptions inner_opts = opts;
  inner_opts.threads = 1;
  parallel_for(grid, resolve_threads(opts), [&](std::size_t g) {
    CountingSpec local = spec;
    const Occupation j = digits(g);
    for (std::size_t m = 0; m < modes.size(); ++m) local.counted[m].z = roots[j[m]];
    chis[g] = chi(state, local, inner_opts);
  });

  CountDistribution dist;
  dist.modes.assign(modes.begin(), modes.end());
  dist.min_raw = 0.0;
  for (std::size_t g = 0; g < grid; ++g) {
    const Occupation n = digits(g);
    Complex acc(0);
    for (std::size_t h = 0; h < grid; ++h) {
      const Occupation j = digits(h);
      std::size_t phase = 0;
      for (std::size_t m = 0; m < modes.size(); ++m) phase += static_cast<std::size_t>(j[m]) * n[m];
      acc += chis[h] * std::conj(roots[phase % base]);
    }
    acc /= double(grid);
    dist.max_imag = std::max(dist.max_imag, std::abs(acc.imag()));
    dist.min_raw = std::min(dist.min_raw, acc.real());
    double p = acc.real();
    if (p < 0 && p > -1e-9) p = 0.0;
    dist.support.push_back(n);
    dist.probs.push_back(p);
  }
  return dist;
}

Complex chi_from_distribution(const CountDistribution& dist, std::span<const Complex> z) {
  if (z.size() != dist.modes.size()) throw DimensionError("chi_from_distribution: multiplier count mismatch");
  Complex acc(0);
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    Complex w = dist.probs[i];
    for (std::size_t m = 0; m < z.size(); ++m)
      for (int c = 0; c < dist.support[i][m]; ++c) w *= z[m];
    acc += w;
  }
  return acc;
}

std::vector<Occupation> sample_counts(const CountDistribution& dist, std::size_t n_samples, std::uint64_t seed) {
  if (dist.probs.empty() || dist.probs.size() != dist.support.size())
    throw std::invalid_argument("sample_counts: empty or inconsistent distribution");
  std::vector<double> cdf(dist.probs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    running += std::max(0.0, dist.probs[i]);
    cdf[i] = running;
  }
  if (!(running > 0.0)) throw std::invalid_argument("sample_counts: distribution has no positive weight");

  std::mt19937_64 rng(seed);
  std::vector<Occupation> out;
  out.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    // 53 random bits -> [0, 1), independent of the standard library's distributions
    const double u = double(rng() >> 11) * 0x1.0p-53 * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(dist.support[static_cast<std::size_t>(it - cdf.begin())]);
  }
  return out;
}

}  // namespace fcskit
