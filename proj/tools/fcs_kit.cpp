// fcs-kit: expectation values of non-interacting operators in product states,
// full counting statistics, oracle comparisons and scaling benchmarks.
//
// Exit codes: 0 ok, 1 oracle mismatch or internal error, 2 parse/input error,
// 3 size guard exceeded, 4 unsupported state class, 5 ill-conditioned U0.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fcskit/bench.hpp"
#include "fcskit/fcs.hpp"
#include "fcskit/json_io.hpp"
#include "fcskit/oracle_compare.hpp"
#include "fcskit/permanent.hpp"

namespace {

using namespace fcskit;

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kGuard = 3, kUnsupported = 4, kNumerical = 5 };

struct Globals {
  int precision = 17;
  bool deterministic = true;
  std::uint64_t seed = 1;
};

struct StateArgs {
  std::string file;
  std::string preset;
  int factors = 1;
  int local_modes = 2;
  int orbitals = 1;
};

void add_state_options(CLI::App* cmd, StateArgs& s) {
  auto* file = cmd->add_option("--state", s.file, "ProductState JSON file");
  auto* preset = cmd->add_option("--preset", s.preset, "single_boson | fermi_sea | psi4")
                     ->check(CLI::IsMember({"single_boson", "fermi_sea", "psi4"}));
  file->excludes(preset);
  cmd->add_option("--factors", s.factors, "number of factors N for presets")->check(CLI::PositiveNumber);
  cmd->add_option("--local-modes", s.local_modes, "fermi_sea: modes per factor")->check(CLI::PositiveNumber);
  cmd->add_option("--orbitals", s.orbitals, "fermi_sea: filled orbitals per factor (first basis modes)")
      ->check(CLI::NonNegativeNumber);
}

ProductState load_state(const StateArgs& s) {
  if (!s.file.empty()) return product_from_json(read_json_file(s.file));
  if (s.preset == "single_boson") return make_single_boson(s.factors);
  if (s.preset == "psi4") return make_psi4(s.factors);
  if (s.preset == "fermi_sea") {
    if (s.orbitals > s.local_modes) throw ParseError("--orbitals exceeds --local-modes");
    return make_fermi_sea(ComplexMatrix::Identity(s.local_modes, s.orbitals), s.factors);
  }
  throw ParseError("one of --state or --preset is required");
}

ExecOptions exec_options(const Globals& g) { return {0, g.deterministic}; }

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("bad size list '" + csv + "'");
    }
  }
  if (out.empty()) throw ParseError("empty size list");
  return out;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnsupported;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact expectation values and counting statistics of free particles in product states"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--precision", g.precision, "significant digits in printed numbers")->check(CLI::Range(1, 17));
  app.add_option("--deterministic", g.deterministic, "thread-count independent reductions (default true)");
  app.add_option("--seed", g.seed, "random seed");

  // permanent
  auto* perm = app.add_subcommand("permanent", "matrix permanent (Ryser), or Per(1+V) with --lowrank");
  std::string perm_file, lowrank_file;
  perm->add_option("matrix", perm_file, "matrix JSON file");
  perm->add_option("--lowrank", lowrank_file, "V as low-rank JSON or dense matrix JSON; prints Per(1+V)");

  // chi / probs
  auto* chi_cmd = app.add_subcommand("chi", "counting generating function chi for a product state");
  StateArgs chi_state;
  std::string chi_spec;
  bool chi_probs = false;
  add_state_options(chi_cmd, chi_state);
  chi_cmd->add_option("--spec", chi_spec, "CountingSpec JSON")->required();
  chi_cmd->add_flag("--probs", chi_probs, "emit the count distribution of the counted modes as CSV");

  auto* probs_cmd = app.add_subcommand("probs", "count distribution over the counted modes (CSV)");
  StateArgs probs_state;
  std::string probs_spec;
  add_state_options(probs_cmd, probs_state);
  probs_cmd->add_option("--spec", probs_spec, "CountingSpec JSON (z values ignored)")->required();

  // oracle-compare
  auto* oracle = app.add_subcommand("oracle-compare", "fast paths against brute-force oracles");
  std::string family;
  int max_n = 4, max_k = 2, instances = 5;
  double tolerance = 1e-8;
  oracle->add_option("--family", family)->required()->check(CLI::IsMember(oracle_families()));
  oracle->add_option("--max-n", max_n)->check(CLI::PositiveNumber);
  oracle->add_option("--max-k", max_k)->check(CLI::NonNegativeNumber);
  oracle->add_option("--instances", instances)->check(CLI::PositiveNumber);
  oracle->add_option("--tolerance", tolerance, "fail if any scaled error exceeds this");
  bool oracle_verbose = false;
  oracle->add_flag("-v,--verbose", oracle_verbose, "print every case");

  // bench
  auto* bench = app.add_subcommand("bench", "wall-time scaling benchmark");
  std::string algorithm, sizes = "250,500,1000,2000", bench_out;
  int bench_k = 1, reps = kMinBenchRepetitions;
  bench->add_option("--algorithm", algorithm)->required()->check(
      CLI::IsMember({"lowrank-permanent", "fermion-lowrank", "ryser"}));
  bench->add_option("--sizes", sizes, "comma-separated N values");
  bench->add_option("--k", bench_k, "rank of V")->check(CLI::NonNegativeNumber);
  bench->add_option("--reps", reps, "repetitions per size (median reported)")->check(CLI::Range(kMinBenchRepetitions, 1000));
  bench->add_option("--output", bench_out, "CSV file (default stdout)");

  // expand-state
  auto* expand = app.add_subcommand("expand-state", "expand a product state into a Fock vector (JSON)");
  StateArgs expand_state;
  add_state_options(expand, expand_state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  const int prec = g.precision;

  if (*perm) {
    return guarded([&] {
      if (!lowrank_file.empty()) {
        const nlohmann::json j = read_json_file(lowrank_file);
        const LowRankOperator v = j.contains("rank") ? lowrank_from_json(j) : dense_to_lowrank(matrix_from_json(j));
        std::cout << format_complex(permanent_lowrank(v), prec) << '\n';
        return int(kOk);
      }
      if (perm_file.empty()) throw ParseError("permanent: matrix file or --lowrank required");
      std::cout << format_complex(permanent_ryser(matrix_from_json(read_json_file(perm_file))), prec) << '\n';
      return int(kOk);
    });
  }

  auto run_probs = [&](const StateArgs& sa, const std::string& spec_file) {
    const ProductState state = load_state(sa);
    const CountingSpec spec = counting_spec_from_json(read_json_file(spec_file));
    std::vector<int> modes;
    for (const auto& c : spec.counted) modes.push_back(c.mode);
    write_distribution_csv(std::cout, probabilities_from_chi(state, spec.u0, modes, exec_options(g)), prec);
    return int(kOk);
  };

  if (*chi_cmd) {
    return guarded([&] {
      if (chi_probs) return run_probs(chi_state, chi_spec);
      const ProductState state = load_state(chi_state);
      const CountingSpec spec = counting_spec_from_json(read_json_file(chi_spec));
      std::cout << format_complex(chi(state, spec, exec_options(g)), prec) << '\n';
      return int(kOk);
    });
  }

  if (*probs_cmd) return guarded([&] { return run_probs(probs_state, probs_spec); });

  if (*oracle) {
    return guarded([&] {
      const OracleReport rep = oracle_compare(family, max_n, max_k, instances, g.seed, exec_options(g));
      if (oracle_verbose)
        for (const auto& c : rep.cases) std::cout << c.label << " err=" << format_real(c.error, 3) << '\n';
      const bool ok = rep.max_error <= tolerance;
      std::cout << "family=" << rep.family << " cases=" << rep.cases.size()
                << " max_error=" << format_real(rep.max_error, 3) << " tolerance=" << format_real(tolerance, 3)
                << (ok ? " PASS" : " FAIL") << '\n';
      return ok ? int(kOk) : int(kFailure);
    });
  }

  if (*bench) {
    return guarded([&] {
      const std::vector<int> ns = parse_sizes(sizes);
      const auto records = run_bench(algorithm, ns, bench_k, reps, g.seed, exec_options(g));
      if (bench_out.empty()) {
        write_bench_csv(std::cout, records);
      } else {
        std::ofstream out(bench_out);
        if (!out) throw std::runtime_error("cannot write '" + bench_out + "'");
        write_bench_csv(out, records);
      }
      if (records.size() >= 2)
        std::cerr << "loglog_slope=" << format_real(fit_loglog_slope(records), 4) << '\n';
      return int(kOk);
    });
  }

  if (*expand) {
    return guarded([&] {
      std::cout << fock_to_json(expand_product(load_state(expand_state))).dump(2) << '\n';
      return int(kOk);
    });
  }
  return kFailure;
}
