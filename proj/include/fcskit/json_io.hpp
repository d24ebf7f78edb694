#ifndef FCSKIT_JSON_IO_HPP
#define FCSKIT_JSON_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fcskit/fcs.hpp"

namespace fcskit {

/// Malformed or schema-violating input document.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix:       {"rows": R, "cols": C, "data": [[re, im], ...]}  (row-major)
// LowRank:      {"dim": N, "rank": k, "u": [vec, ...], "v": [vec, ...]}
//               each vec a list of [re, im]
// FockVector:   {"flavor": "boson"|"fermion", "modes": M,
//                "amps": [{"occ": [...], "re": x, "im": y}, ...]}
// ProductState: {"flavor": ..., "factors": [{"local_modes": n, "amps": [...]}, ...]}
// CountingSpec: {"u0": Matrix, "counted": [{"mode": m, "z": [re, im]}, ...]}

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json lowrank_to_json(const LowRankOperator& v);
LowRankOperator lowrank_from_json(const nlohmann::json& j);

nlohmann::json fock_to_json(const FockVector& v);
FockVector fock_from_json(const nlohmann::json& j);

nlohmann::json product_to_json(const ProductState& p);
ProductState product_from_json(const nlohmann::json& j);

nlohmann::json counting_spec_to_json(const CountingSpec& s);
CountingSpec counting_spec_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

/// Real part alone when the imaginary part is exactly zero, otherwise
/// "re+imi" / "re-imi". `digits` significant digits.
std::string format_complex(Complex z, int digits = 17);
std::string format_real(double x, int digits = 17);

/// One row per support tuple: counts for each counted mode, then P.
void write_distribution_csv(std::ostream& os, const CountDistribution& dist, int digits = 17);

}  // namespace fcskit

#endif  // FCSKIT_JSON_IO_HPP
