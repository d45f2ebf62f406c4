#include "blinksig/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace blinksig {
namespace {

std::int64_t integer_entry(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  throw ValidationError(where + ": non-integer entry " + v.dump());
}

IntMatrix matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array()) throw ValidationError(where + ": matrix must be an array of rows");
  const int r = static_cast<int>(rows.size());
  int c = -1;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ValidationError(where + ": matrix rows must be arrays");
    if (c < 0) c = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != c) throw ValidationError(where + ": ragged matrix rows");
  }
  IntMatrix out(r, std::max(c, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out(i, j) = integer_entry(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], where);
  if (r != std::max(c, 0) && !(r == 0))
    throw ValidationError(where + ": non-square matrix (" + std::to_string(r) + "x" + std::to_string(c) + ")");
  return out;
}

std::vector<int> sizes_from_json(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + " must be an array of integers");
  std::vector<int> out;
  for (const auto& s : v) {
    const std::int64_t x = integer_entry(s, where);
    if (x < 0 || x > std::numeric_limits<int>::max()) throw ValidationError(where + ": invalid block size");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

int int_field(const json& raw, const char* key, std::optional<int> fallback) {
  if (!raw.contains(key)) {
    if (fallback) return *fallback;
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  const std::int64_t v = integer_entry(raw.at(key), key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ValidationError(std::string("field '") + key + "' out of range");
  return static_cast<int>(v);
}

}  // namespace

BoundaryLinkData validate_link(const json& raw) {
  if (!raw.is_object()) throw ValidationError("link document must be a JSON object");
  const int n = int_field(raw, "n", 1);
  if (n < 1 || n % 2 == 0) throw ValidationError("link dimension n must be odd and positive, got " + std::to_string(n));
  const std::string name = raw.value("name", std::string{});

  std::map<int, IntMatrix> matrices;
  if (raw.contains("levels")) {
    const json& levels = raw.at("levels");
    if (!levels.is_object()) throw ValidationError("'levels' must be an object keyed by level index");
    for (const auto& [key, value] : levels.items()) {
      int i = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ValidationError("level key '" + key + "' is not an integer");
      }
      matrices.emplace(i, matrix_from_json(value, "level " + key));
    }
  }
  if (raw.contains("seifert")) {
    if (n != 1) throw ValidationError("'seifert' shorthand is only valid for n = 1");
    if (!matrices.empty()) throw ValidationError("give either 'seifert' or 'levels', not both");
    matrices.emplace(1, matrix_from_json(raw.at("seifert"), "seifert"));
  }
  if (matrices.empty()) throw ValidationError("no Seifert matrices ('levels' or 'seifert') given");

  std::optional<int> m_fallback;
  if (!raw.contains("block_sizes")) m_fallback = 1;
  const int m = int_field(raw, "m", m_fallback);
  if (m < 1) throw ValidationError("m must be >= 1");

  std::map<int, SeifertLevel> levels;
  for (auto& [i, a] : matrices) {
    std::vector<int> sizes;
    const std::string key = std::to_string(i);
    if (raw.contains("level_block_sizes") && raw.at("level_block_sizes").contains(key))
      sizes = sizes_from_json(raw.at("level_block_sizes").at(key), "level_block_sizes." + key);
    else if (raw.contains("block_sizes"))
      sizes = sizes_from_json(raw.at("block_sizes"), "block_sizes");
    else if (m == 1)
      sizes = {a.rows()};
    else
      throw ValidationError("missing field 'block_sizes'");
    if (static_cast<int>(sizes.size()) != m)
      throw ValidationError("block sizes list has " + std::to_string(sizes.size()) + " entries, expected m = " +
                            std::to_string(m));
    levels.emplace(i, SeifertLevel{std::move(a), BlockStructure(std::move(sizes))});
  }
  return BoundaryLinkData(m, n, std::move(levels), name);
}

json link_to_json(const BoundaryLinkData& link) {
  json out;
  out["name"] = link.name();
  out["m"] = link.m();
  out["n"] = link.n();
  const BlockStructure& first = link.levels().begin()->second.blocks;
  out["block_sizes"] = first.sizes();
  json levels = json::object();
  json overrides = json::object();
  for (const auto& [i, lvl] : link.levels()) {
    levels[std::to_string(i)] = lvl.matrix.to_rows();
    if (!(lvl.blocks == first)) overrides[std::to_string(i)] = lvl.blocks.sizes();
  }
  out["levels"] = std::move(levels);
  if (!overrides.empty()) out["level_block_sizes"] = std::move(overrides);
  return out;
}

UnitaryTuple rep_from_json(const json& raw, double unitarity_tol) {
  if (!raw.is_object()) throw ValidationError("representation document must be a JSON object");
  const int k = int_field(raw, "k", std::nullopt);
  if (raw.contains("angles")) {
    if (k != 1) throw ValidationError("'angles' shorthand requires k = 1");
    const json& angles = raw.at("angles");
    if (!angles.is_array() || angles.empty()) throw ValidationError("'angles' must be a non-empty array");
    std::vector<double> thetas;
    for (const auto& a : angles) {
      if (!a.is_number()) throw ValidationError("angles must be numbers");
      thetas.push_back(a.get<double>());
    }
    return UnitaryTuple::from_angles(thetas);
  }
  if (!raw.contains("unitaries")) throw ValidationError("representation needs 'unitaries' or 'angles'");
  std::vector<ComplexMatrix> us;
  for (const auto& u : raw.at("unitaries")) {
    if (!u.is_array() || static_cast<int>(u.size()) != k) throw ValidationError("each unitary must have k rows");
    ComplexMatrix mat(k, k);
    for (int r = 0; r < k; ++r) {
      const json& row = u[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != k) throw ValidationError("each unitary row must have k entries");
      for (int c = 0; c < k; ++c) {
        const json& e = row[static_cast<std::size_t>(c)];
        if (e.is_number()) {
          mat(r, c) = Complex(e.get<double>(), 0.0);
        } else if (e.is_object() && e.contains("re") && e.contains("im") && e.at("re").is_number() &&
                   e.at("im").is_number()) {
          mat(r, c) = Complex(e.at("re").get<double>(), e.at("im").get<double>());
        } else {
          throw ValidationError("unitary entries must be {\"re\": float, \"im\": float}");
        }
      }
    }
    us.push_back(std::move(mat));
  }
  return UnitaryTuple(k, std::move(us), unitarity_tol);
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json rep_to_json(const UnitaryTuple& alpha) {
  json us = json::array();
  for (const auto& u : alpha.unitaries()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < u.cols(); ++c) row.push_back(complex_to_json(u(r, c)));
      rows.push_back(std::move(row));
    }
    us.push_back(std::move(rows));
  }
  return json{{"k", alpha.k()}, {"unitaries", std::move(us)}};
}

json poly_to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [deg, c] : p.terms()) {
    json coef = c.fits_slong_p() ? json(c.get_si()) : json(c.get_str());
    terms.push_back(json{{"deg", deg}, {"coef", std::move(coef)}});
  }
  return json{{"terms", std::move(terms)}};
}

LaurentPoly poly_from_json(const json& raw, int vars) {
  LaurentPoly p(vars);
  for (const auto& t : raw.at("terms")) {
    const auto deg = t.at("deg").get<Multidegree>();
    const json& c = t.at("coef");
    p.add_term(deg, c.is_string() ? Integer(c.get<std::string>()) : Integer(static_cast<long>(c.get<std::int64_t>())));
  }
  return p;
}

json inertia_to_json(const InertiaResult& r) {
  return json{{"signature", r.signature},   {"nullity", r.nullity},
              {"tol_used", r.tol_used},     {"ambiguous", r.ambiguous},
              {"min_abs_eigenvalue", r.min_abs_eigenvalue}, {"spectral_norm", r.spectral_norm}};
}

json margins_to_json(const std::vector<DiscriminantMargin>& margins) {
  json out = json::array();
  for (const auto& m : margins)
    out.push_back(json{{"level", m.level}, {"det", complex_to_json(m.det_value)}, {"margin", m.margin}});
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace blinksig
