#pragma once

#include "json.hpp"

#include <string>

#include "blinksig/laurent.hpp"
#include "blinksig/seifert.hpp"
#include "blinksig/substitution.hpp"
#include "blinksig/twisted_signature.hpp"

namespace blinksig {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "blinksig";
inline constexpr const char* kToolVersion = "0.1.0";

/// Parses and validates a link document:
///   {"name": str, "m": int, "n": int, "block_sizes": [int], "levels": {"1": [[int]]}}
/// For n = 1, "seifert": [[int]] may replace "levels". Optional
/// "level_block_sizes": {"i": [int]} overrides block_sizes per level; m = 1
/// documents may omit block_sizes. Throws ValidationError.
BoundaryLinkData validate_link(const json& raw);

json link_to_json(const BoundaryLinkData& link);

/// {"k": int, "unitaries": [[[{"re", "im"}]]]} or {"k": 1, "angles": [float]}.
UnitaryTuple rep_from_json(const json& raw, double unitarity_tol = kUnitarityTol);
json rep_to_json(const UnitaryTuple& alpha);

/// {"terms": [{"deg": [int], "coef": int}]}, ascending lexicographic multidegree.
/// Coefficients outside int64 are written as decimal strings.
json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const json& raw, int vars);

json inertia_to_json(const InertiaResult& r);
json margins_to_json(const std::vector<DiscriminantMargin>& margins);
json complex_to_json(Complex z);

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

/// Reads a file into a string; ValidationError when it cannot be opened.
std::string read_file(const std::string& path);
json read_json_file(const std::string& path);

}  // namespace blinksig
