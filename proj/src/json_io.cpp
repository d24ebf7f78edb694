#include "fcskit/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace fcskit {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected complex number as [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return f.get<int>();
}

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

json amps_to_json(const FockVector& v) {
  json amps = json::array();
  for (const auto& [occ, amp] : v.amplitudes()) amps.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
  return amps;
}

void amps_from_json(const json& amps, FockVector& out) {
  if (!amps.is_array()) throw ParseError("'amps' must be an array");
  for (const auto& a : amps) {
    const json& occ = field(a, "occ");
    if (!occ.is_array()) throw ParseError("'occ' must be an array");
    Occupation o;
    for (const auto& n : occ) {
      if (!n.is_number_integer()) throw ParseError("occupations must be integers");
      o.push_back(n.get<int>());
    }
    const double re = a.contains("re") ? a.at("re").get<double>() : 0.0;
    const double im = a.contains("im") ? a.at("im").get<double>() : 0.0;
    try {
      out.add(o, {re, im});
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const int rows = int_field(j, "rows");
  const int cols = int_field(j, "cols");
  const json& data = field(j, "data");
  if (rows < 0 || cols < 0) throw ParseError("matrix: negative shape");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols)
    throw ParseError("matrix: 'data' must hold rows*cols entries");
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(data[static_cast<std::size_t>(i) * cols + c]);
  if (!m.allFinite()) throw ParseError("matrix: non-finite entry");
  return m;
}

json lowrank_to_json(const LowRankOperator& v) {
  json u = json::array(), w = json::array();
  for (Eigen::Index s = 0; s < v.rank(); ++s) {
    u.push_back(vector_to_json(v.u.col(s)));
    w.push_back(vector_to_json(v.v.col(s)));
  }
  return {{"dim", v.dim()}, {"rank", v.rank()}, {"u", u}, {"v", w}};
}

LowRankOperator lowrank_from_json(const json& j) {
  const int dim = int_field(j, "dim");
  const int rank = int_field(j, "rank");
  const json& u = field(j, "u");
  const json& v = field(j, "v");
  if (dim < 0 || rank < 0) throw ParseError("lowrank: negative dim or rank");
  if (!u.is_array() || !v.is_array() || u.size() != static_cast<std::size_t>(rank) ||
      v.size() != static_cast<std::size_t>(rank))
    throw ParseError("lowrank: 'u' and 'v' must each hold 'rank' vectors");
  ComplexMatrix um(dim, rank), vm(dim, rank);
  for (int s = 0; s < rank; ++s) {
    if (!u[s].is_array() || u[s].size() != static_cast<std::size_t>(dim) || !v[s].is_array() ||
        v[s].size() != static_cast<std::size_t>(dim))
      throw ParseError("lowrank: vector length differs from 'dim'");
    for (int i = 0; i < dim; ++i) {
      um(i, s) = complex_from_json(u[s][i]);
      vm(i, s) = complex_from_json(v[s][i]);
    }
  }
  return LowRankOperator(std::move(um), std::move(vm));
}

json fock_to_json(const FockVector& v) {
  return {{"flavor", to_string(v.flavor())}, {"modes", v.modes()}, {"amps", amps_to_json(v)}};
}

FockVector fock_from_json(const json& j) {
  Flavor flavor;
  try {
    flavor = flavor_from_string(field(j, "flavor").get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  FockVector out(flavor, int_field(j, "modes"));
  amps_from_json(field(j, "amps"), out);
  return out;
}

json product_to_json(const ProductState& p) {
  json factors = json::array();
  for (const auto& f : p.factors()) factors.push_back({{"local_modes", f.local_modes()}, {"amps", amps_to_json(f.local())}});
  return {{"flavor", to_string(p.flavor())}, {"factors", factors}};
}

ProductState product_from_json(const json& j) {
  Flavor flavor;
  try {
    flavor = flavor_from_string(field(j, "flavor").get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  const json& factors = field(j, "factors");
  if (!factors.is_array() || factors.empty()) throw ParseError("'factors' must be a non-empty array");
  std::vector<FactorState> out;
  for (const auto& f : factors) {
    FockVector local(flavor, int_field(f, "local_modes"));
    amps_from_json(field(f, "amps"), local);
    try {
      out.emplace_back(std::move(local));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return ProductState(std::move(out));
}

json counting_spec_to_json(const CountingSpec& s) {
  json counted = json::array();
  for (const auto& c : s.counted) counted.push_back({{"mode", c.mode}, {"z", complex_to_json(c.z)}});
  return {{"u0", matrix_to_json(s.u0)}, {"counted", counted}};
}

CountingSpec counting_spec_from_json(const json& j) {
  CountingSpec s;
  s.u0 = matrix_from_json(field(j, "u0"));
  const json& counted = j.contains("counted") ? j.at("counted") : json::array();
  if (!counted.is_array()) throw ParseError("'counted' must be an array");
  for (const auto& c : counted) s.counted.push_back({int_field(c, "mode"), complex_from_json(field(c, "z"))});
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_real(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_complex(Complex z, int digits) {
  if (z.imag() == 0.0) return format_real(z.real(), digits);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, z.real(), digits, z.imag());
  return buf;
}

void write_distribution_csv(std::ostream& os, const CountDistribution& dist, int digits) {
  for (int m : dist.modes) os << "n" << m << ',';
  os << "probability\n";
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    for (int n : dist.support[i]) os << n << ',';
    os << format_real(dist.probs[i], digits) << '\n';
  }
}

}  // namespace fcskit
