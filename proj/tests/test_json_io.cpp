#include <doctest.h>

#include <sstream>

#include "fcskit/json_io.hpp"
#include "fcskit/random.hpp"

using namespace fcskit;
using nlohmann::json;

TEST_CASE("matrix round trip") {
  Rng rng(1);
  const ComplexMatrix m = random_disk_matrix(3, 2, rng);
  const json j = matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  CHECK(matrix_from_json(json::parse(j.dump())) == m);
}

TEST_CASE("matrix parse errors") {
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 2, "cols": 2, "data": [[1, 0]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"cols": 1, "data": [[1, 0]]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"([1, 2])")), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("lowrank, fock, product and counting spec round trips") {
  Rng rng(2);
  const LowRankOperator v = random_lowrank(4, 2, rng);
  const LowRankOperator w = lowrank_from_json(json::parse(lowrank_to_json(v).dump()));
  CHECK(w.u == v.u);
  CHECK(w.v == v.v);

  const ProductState p = make_psi4(2);
  const ProductState q = product_from_json(json::parse(product_to_json(p).dump()));
  CHECK(q.size() == 2);
  CHECK(q.factors()[1].local().amplitudes() == p.factors()[1].local().amplitudes());

  const FockVector f = expand_product(p);
  CHECK(fock_from_json(json::parse(fock_to_json(f).dump())).amplitudes() == f.amplitudes());

  const CountingSpec s{random_unitary(3, rng), {{1, Complex(0.5, -0.5)}, {2, 0.0}}};
  const CountingSpec t = counting_spec_from_json(json::parse(counting_spec_to_json(s).dump()));
  CHECK(t.u0 == s.u0);
  REQUIRE(t.counted.size() == 2);
  CHECK(t.counted[0].mode == 1);
  CHECK(t.counted[0].z == Complex(0.5, -0.5));
}

TEST_CASE("fock parse rejects bad configurations") {
  CHECK_THROWS(fock_from_json(json::parse(R"({"flavor": "fermion", "modes": 2, "amps": [{"occ": [2, 0], "re": 1, "im": 0}]})")));
  CHECK_THROWS(fock_from_json(json::parse(R"({"flavor": "anyon", "modes": 1, "amps": []})")));
}

TEST_CASE("number formatting") {
  CHECK(format_real(10.0) == "10");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(0.1, 3) == "0.1");
  CHECK(format_complex(Complex(5, 0)) == "5");
  CHECK(format_complex(Complex(0.5, -0.25)) == "0.5-0.25i");
}

TEST_CASE("distribution CSV") {
  CountDistribution d;
  d.modes = {0, 3};
  d.support = {{0, 1}, {1, 0}};
  d.probs = {0.25, 0.75};
  std::ostringstream os;
  write_distribution_csv(os, d);
  CHECK(os.str() == "n0,n3,probability\n0,1,0.25\n1,0,0.75\n");
}
