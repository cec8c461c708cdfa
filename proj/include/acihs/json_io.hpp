#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "acihs/cubic.hpp"
#include "acihs/mumford.hpp"
#include "acihs/polymat.hpp"

// JSON encodings used by the CLI:
//   complex      number or [re, im]
//   polynomial   ascending array of complex values
//   PolyMatrix   row-major nested array of polynomials
//   CharPoly     {"r", "d", "b": [b_1, ..., b_r]} or a bare array [b_1, ..., b_r]
//   multivariate array of {"c": complex, "e": [exponents]}
namespace acihs::io {

using nlohmann::json;

json to_json(cplx z);
json to_json(const ComplexPolynomial& p);
json to_json(const CMatrix& m);
json to_json(const polymat::PolyMatrix& a);
json to_json(const polymat::CharPoly& b);
json to_json(const mumford::MumfordTriple& m);
json to_json(const std::vector<cplx>& v);

/// All parsers throw ConfigError on malformed input.
cplx complex_from_json(const json& j);
ComplexPolynomial poly_from_json(const json& j);
CMatrix cmatrix_from_json(const json& j);
polymat::PolyMatrix polymatrix_from_json(const json& j);
polymat::CharPoly charpoly_from_json(const json& j);
cubic::MultiPolynomial multipoly_from_json(const json& j);
std::vector<mumford::DivisorPoint> divisor_from_json(const json& j);

/// Inline JSON when the text starts with '[' or '{', otherwise a file path.
json load(const std::string& text_or_path);

/// "1,2,4" -> {1, 2, 4}. Throws ConfigError.
std::vector<double> parse_list(const std::string& text);

/// A JSON number, or null for NaN and infinities.
json number(double v);

}  // namespace acihs::io
