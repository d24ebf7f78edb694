#ifndef FCSKIT_BENCH_HPP
#define FCSKIT_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fcskit/numerics.hpp"
#include "fcskit/parallel.hpp"

namespace fcskit {

struct BenchRecord {
  std::string algorithm;
  int n = 0;
  int k = 0;
  double wall_time_seconds = 0.0;  // median over repetitions, steady clock
  int repetitions = 0;
  Complex checksum;
};

inline constexpr int kMinBenchRepetitions = 3;

/// Algorithms: "lowrank-permanent" (Per(1+V), N modes),
/// "fermion-lowrank" (Psi4^N with rank-k V), "ryser" (dense N x N permanent).
std::vector<BenchRecord> run_bench(const std::string& algorithm, std::span<const int> sizes, int k, int repetitions,
                                   std::uint64_t seed, const ExecOptions& opts = {});

/// Least-squares slope of log(time) against log(N).
double fit_loglog_slope(std::span<const BenchRecord> records);

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records);

}  // namespace fcskit

#endif  // FCSKIT_BENCH_HPP
