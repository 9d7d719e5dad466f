#pragma once

// File formats: subspace and matrix JSON with complex entries as [re, im]
// pairs, CSV with 17 significant digits, and the run report.

#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "momentkit/linalg.hpp"
#include "momentkit/subspace.hpp"

namespace momentkit::io {

using Json = nlohmann::ordered_json;

class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports "line L, column C" in e.what().
    throw ParseError(origin + ": " + e.what());
  }
}

namespace detail {

inline Complex parse_complex(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": complex entries must be [re, im] pairs of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexVector parse_vector(const Json& j, Index n, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of [re, im] pairs");
  if (static_cast<Index>(j.size()) != n)
    throw ParseError(where + ": has " + std::to_string(j.size()) + " entries, expected n = " +
                     std::to_string(n));
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i)
    v(i) = parse_complex(j[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  return v;
}

inline Index parse_dimension(const Json& j, const std::string& origin) {
  if (!j.is_object()) throw ParseError(origin + ": top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError(origin + ": missing integer field \"n\"");
  const auto n = j["n"].get<long long>();
  if (n < 1) throw ParseError(origin + ": \"n\" must be positive");
  return static_cast<Index>(n);
}

}  // namespace detail

/// {"n": int, "vectors": [[[re, im], ...], ...]}
inline std::vector<ComplexVector> parse_subspace_vectors(const Json& j, const std::string& origin) {
  const Index n = detail::parse_dimension(j, origin);
  if (!j.contains("vectors") || !j["vectors"].is_array())
    throw ParseError(origin + ": missing array field \"vectors\"");
  std::vector<ComplexVector> out;
  for (std::size_t c = 0; c < j["vectors"].size(); ++c)
    out.push_back(detail::parse_vector(j["vectors"][c], n, origin + ": vectors[" + std::to_string(c) + "]"));
  if (out.empty()) throw ParseError(origin + ": \"vectors\" is empty");
  return out;
}

inline Subspace parse_subspace(const std::string& text, const std::string& origin) {
  const auto vectors = parse_subspace_vectors(parse_json(text, origin), origin);
  return Subspace::from_spanning(std::span<const ComplexVector>(vectors));
}

inline Subspace load_subspace(const std::string& path) { return parse_subspace(read_file(path), path); }

/// {"n": int, "entries": [[[re, im], ...], ...]}, rows first.
inline ComplexMatrix parse_matrix(const std::string& text, const std::string& origin) {
  const Json j = parse_json(text, origin);
  const Index n = detail::parse_dimension(j, origin);
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ParseError(origin + ": missing array field \"entries\"");
  if (static_cast<Index>(j["entries"].size()) != n)
    throw ParseError(origin + ": \"entries\" must have n rows");
  ComplexMatrix m(n, n);
  for (Index r = 0; r < n; ++r)
    m.row(r) = detail::parse_vector(j["entries"][static_cast<std::size_t>(r)], n,
                                    origin + ": entries[" + std::to_string(r) + "]")
                   .transpose();
  return m;
}

inline ComplexMatrix load_matrix(const std::string& path) { return parse_matrix(read_file(path), path); }

/// A JSON array of real arrays.
inline std::vector<RealVector> parse_directions(const std::string& text, const std::string& origin,
                                                Index n) {
  const Json j = parse_json(text, origin);
  if (!j.is_array()) throw ParseError(origin + ": directions must be an array of real arrays");
  std::vector<RealVector> out;
  for (std::size_t d = 0; d < j.size(); ++d) {
    const Json& row = j[d];
    const std::string where = origin + ": [" + std::to_string(d) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != n)
      throw ParseError(where + ": expected " + std::to_string(n) + " numbers");
    RealVector u(n);
    for (Index i = 0; i < n; ++i) {
      if (!row[static_cast<std::size_t>(i)].is_number()) throw ParseError(where + ": non-numeric entry");
      u(i) = row[static_cast<std::size_t>(i)].get<double>();
    }
    out.push_back(u);
  }
  return out;
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json vector_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

inline Json real_json(const RealVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Json matrix_json(const ComplexMatrix& m) {
  Json a = Json::array();
  for (Index r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r).transpose()));
  return a;
}

inline Json basis_json(const Subspace& s) {
  Json a = Json::array();
  for (Index c = 0; c < s.dim(); ++c) a.push_back(vector_json(s.basis().col(c)));
  return a;
}

/// 17 significant digits, locale independent.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, res.ptr);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names) { row_strings(names); }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_double(values[i]);
    }
    out_ << '\n';
  }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
};

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return s;
}

struct RunReport {
  std::string command;
  std::vector<std::string> arguments;             ///< argv after the program name
  std::map<std::string, std::string> inputs;      ///< path -> FNV-1a digest
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::vector<std::string> outputs;
  double wall_time_seconds = 0.0;

  Json to_json(bool include_wall_time = true) const {
    Json j;
    j["command"] = command;
    j["arguments"] = arguments;
    Json in = Json::object();
    for (const auto& [path, digest] : inputs) in[path] = "fnv1a64:" + digest;
    j["inputs"] = in;
    j["seed"] = seed;
    Json t = Json::object();
    for (const auto& [k, v] : tolerances) t[k] = v;
    j["tolerances"] = t;
    j["outputs"] = outputs;
    if (include_wall_time) j["wall_time_seconds"] = wall_time_seconds;
    return j;
  }
};

}  // namespace momentkit::io
