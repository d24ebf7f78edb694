#include "fcskit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "fcskit/fermion_lowrank.hpp"
#include "fcskit/json_io.hpp"
#include "fcskit/permanent.hpp"
#include "fcskit/random.hpp"

namespace fcskit {

namespace {

template <typename F>
BenchRecord time_median(const std::string& algorithm, int n, int k, int reps, F&& run) {
  std::vector<double> times;
  Complex checksum;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    checksum = run();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  const double median = reps % 2 ? times[reps / 2] : 0.5 * (times[reps / 2 - 1] + times[reps / 2]);
  return {algorithm, n, k, median, reps, checksum};
}

}  // namespace

std::vector<BenchRecord> run_bench(const std::string& algorithm, std::span<const int> sizes, int k, int repetitions,
                                   std::uint64_t seed, const ExecOptions& opts) {
  if (repetitions < kMinBenchRepetitions)
    throw std::invalid_argument("run_bench: at least " + std::to_string(kMinBenchRepetitions) + " repetitions");
  std::vector<BenchRecord> out;
  for (int n : sizes) {
    if (n < 1) throw std::invalid_argument("run_bench: sizes must be positive");
    Rng rng(seed + static_cast<std::uint64_t>(n));
    if (algorithm == "lowrank-permanent") {
      // entries of V of order 1/N keep Per(1+V) representable at large N
      const LowRankOperator v = random_lowrank(n, k, rng, 1.0 / std::sqrt(double(n)));
      out.push_back(time_median(algorithm, n, k, repetitions, [&] { return permanent_lowrank(v); }));
    } else if (algorithm == "fermion-lowrank") {
      const ProductState state = make_psi4(n);
      const LowRankOperator v = random_lowrank(4 * n, k, rng, 1.0 / std::sqrt(double(n)));
      out.push_back(time_median(algorithm, n, k, repetitions, [&] { return expectation_lowrank(state, v, opts); }));
    } else if (algorithm == "ryser") {
      const ComplexMatrix m = random_disk_matrix(n, n, rng);
      out.push_back(time_median(algorithm, n, 0, repetitions, [&] { return permanent_ryser(m); }));
    } else {
      throw std::invalid_argument("run_bench: unknown algorithm '" + algorithm + "'");
    }
  }
  return out;
}

double fit_loglog_slope(std::span<const BenchRecord> records) {
  if (records.size() < 2) throw std::invalid_argument("fit_loglog_slope: need at least two points");
  Eigen::MatrixXd a(records.size(), 2);
  Eigen::VectorXd b(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    a(i, 0) = std::log(double(records[i].n));
    a(i, 1) = 1.0;
    b(i) = std::log(std::max(records[i].wall_time_seconds, 1e-12));
  }
  return a.colPivHouseholderQr().solve(b)(0);
}

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << "algorithm,N,k,wall_time_seconds,repetitions,checksum_re,checksum_im\n";
  for (const auto& r : records)
    os << r.algorithm << ',' << r.n << ',' << r.k << ',' << format_real(r.wall_time_seconds, 9) << ',' << r.repetitions
       << ',' << format_real(r.checksum.real()) << ',' << format_real(r.checksum.imag()) << '\n';
}

}  // namespace fcskit
