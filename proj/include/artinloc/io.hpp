#pragma once

// JSON input (algebra descriptions, elements) and JSON output (reports).
//
// Algebra document:
//   {"scalar": {"prime": p}, "kind": "structure_constants", "dim": d,
//    "one": [..d ints..], "mul_table": [[[..d ints..] x d] x d]}
//   {"scalar": {"prime": p}, "kind": "constructor", "name": NAME, ...params}
// Constructor names: lower_triangular, upper_triangular, full_matrix ("n"); truncated_poly
// ("k"); field; product ("factors": [documents]); opposite ("inner": document);
// matrix_subalgebra ("ambient_n", "generators": [row-major integer matrices]).
// Nested documents may omit "scalar"; they inherit the enclosing prime.
//
// Elements: a flat array of d integers; for matrix-type algebras also an n x n matrix
// literal; for products also {"factors": [element per factor]}.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "artinloc/algebra.hpp"
#include "artinloc/errors.hpp"
#include "artinloc/localization.hpp"
#include "artinloc/structure.hpp"

namespace artinloc::io {

using nlohmann::json;

namespace detail {

inline std::string where(const std::string& path) { return path.empty() ? "/" : path; }

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(where(path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where(path) + ": missing field \"" + key + "\"");
  return *it;
}

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(where(path) + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t as_count(const json& j, const std::string& path) {
  auto v = as_int(j, path);
  if (v < 1) throw InputError(where(path) + ": expected a positive integer");
  return static_cast<std::size_t>(v);
}

inline std::vector<std::int64_t> as_int_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(where(path) + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline std::vector<std::vector<std::int64_t>> as_int_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(where(path) + ": expected a matrix (array of rows)");
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int_vector(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline std::uint32_t read_prime(const json& j, const std::string& path, std::optional<std::uint32_t> inherited) {
  if (!j.is_object()) throw InputError(where(path) + ": expected an object");
  if (!j.contains("scalar")) {
    if (inherited) return *inherited;
    throw InputError(where(path) + ": missing field \"scalar\"");
  }
  const json& pj = field(field(j, "scalar", path), "prime", path + "/scalar");
  auto p = as_int(pj, path + "/scalar/prime");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw InputError(where(path + "/scalar/prime") + ": " + std::to_string(p) + " is not prime");
  if (static_cast<std::uint64_t>(p) > kMaxPrime) throw InputError(where(path + "/scalar/prime") + ": prime exceeds 2^16");
  auto prime = static_cast<std::uint32_t>(p);
  if (inherited && *inherited != prime) throw InputError(where(path + "/scalar/prime") + ": prime differs from enclosing document");
  return prime;
}

}  // namespace detail

inline AlgebraDesc parse_algebra_desc(const json& j, const std::string& path = "",
                                      std::optional<std::uint32_t> inherited = std::nullopt) {
  using namespace detail;
  AlgebraDesc d;
  d.prime = read_prime(j, path, inherited);
  const json& kind = field(j, "kind", path);
  if (!kind.is_string()) throw InputError(where(path + "/kind") + ": expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "structure_constants") {
    AlgebraDesc::StructureConstants sc;
    sc.dim = as_count(field(j, "dim", path), path + "/dim");
    sc.one = as_int_vector(field(j, "one", path), path + "/one");
    const json& mt = field(j, "mul_table", path);
    if (!mt.is_array()) throw InputError(where(path + "/mul_table") + ": expected an array");
    for (std::size_t i = 0; i < mt.size(); ++i) sc.mul_table.push_back(as_int_matrix(mt[i], path + "/mul_table/" + std::to_string(i)));
    d.kind = std::move(sc);
    return d;
  }
  if (k != "constructor") throw InputError(where(path + "/kind") + ": unknown kind \"" + k + "\"");
  const json& nj = field(j, "name", path);
  if (!nj.is_string()) throw InputError(where(path + "/name") + ": expected a string");
  const std::string name = nj.get<std::string>();
  if (name == "lower_triangular" || name == "upper_triangular" || name == "full_matrix") {
    d.kind = AlgebraDesc::Named{name, as_count(field(j, "n", path), path + "/n")};
  } else if (name == "truncated_poly") {
    d.kind = AlgebraDesc::Named{name, as_count(field(j, "k", path), path + "/k")};
  } else if (name == "field") {
    d.kind = AlgebraDesc::Named{name, 1};
  } else if (name == "product") {
    const json& fs = field(j, "factors", path);
    if (!fs.is_array() || fs.empty()) throw InputError(where(path + "/factors") + ": expected a nonempty array");
    AlgebraDesc::Product pr;
    for (std::size_t i = 0; i < fs.size(); ++i) pr.factors.push_back(parse_algebra_desc(fs[i], path + "/factors/" + std::to_string(i), d.prime));
    d.kind = std::move(pr);
  } else if (name == "opposite") {
    d.kind = AlgebraDesc::Opposite{std::make_shared<AlgebraDesc>(parse_algebra_desc(field(j, "inner", path), path + "/inner", d.prime))};
  } else if (name == "matrix_subalgebra") {
    AlgebraDesc::MatrixSubalgebra ms;
    ms.ambient_n = as_count(field(j, "ambient_n", path), path + "/ambient_n");
    const json& gs = field(j, "generators", path);
    if (!gs.is_array()) throw InputError(where(path + "/generators") + ": expected an array of matrices");
    for (std::size_t i = 0; i < gs.size(); ++i) {
      auto g = as_int_matrix(gs[i], path + "/generators/" + std::to_string(i));
      if (g.size() != ms.ambient_n)
        throw InputError(where(path + "/generators/" + std::to_string(i)) + ": expected " + std::to_string(ms.ambient_n) + " rows");
      ms.generators.push_back(std::move(g));
    }
    d.kind = std::move(ms);
  } else {
    throw InputError(where(path + "/name") + ": unknown constructor \"" + name + "\"");
  }
  return d;
}

namespace detail {

// Walks raw JSON text to the value at a "/a/0/b" path and reports its line; stops at the
// deepest existing prefix. Assumes the text already parsed.
class LineLocator {
 public:
  explicit LineLocator(const std::string& text) : t_(text) {}

  std::size_t line_of(const std::string& pointer) {
    std::vector<std::string> parts;
    std::size_t pos = 1;
    while (pointer.size() > 1 && pos <= pointer.size()) {
      std::size_t end = pointer.find('/', pos);
      if (end == std::string::npos) end = pointer.size();
      parts.push_back(pointer.substr(pos, end - pos));
      pos = end + 1;
    }
    i_ = 0;
    line_ = 1;
    return find(parts, 0);
  }

 private:
  const std::string& t_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;

  char peek() const { return i_ < t_.size() ? t_[i_] : '\0'; }
  void ws() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) {
      if (t_[i_] == '\n') ++line_;
      ++i_;
    }
  }
  std::string string() {
    std::string out;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') ++i_;
      if (i_ < t_.size()) out += t_[i_++];
    }
    ++i_;
    return out;
  }
  void skip() {
    ws();
    char c = peek();
    if (c == '"') {
      string();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      for (;;) {
        ws();
        if (peek() == close || peek() == '\0') break;
        if (c == '{') {
          string();
          ws();
          ++i_;  // ':'
        }
        skip();
        ws();
        if (peek() == ',') ++i_;
      }
      ++i_;
    } else {
      while (i_ < t_.size() && std::string(",]} \t\r\n").find(t_[i_]) == std::string::npos) ++i_;
    }
  }
  std::size_t find(const std::vector<std::string>& parts, std::size_t k) {
    ws();
    const std::size_t here = line_;
    if (k == parts.size()) return here;
    char c = peek();
    if (c != '{' && c != '[') return here;
    ++i_;
    for (std::size_t idx = 0;; ++idx) {
      ws();
      if (peek() == '}' || peek() == ']' || peek() == '\0') return here;
      std::string key = std::to_string(idx);
      if (c == '{') {
        key = string();
        ws();
        ++i_;
      }
      if (key == parts[k]) return find(parts, k + 1);
      skip();
      ws();
      if (peek() == ',') ++i_;
    }
  }
};

}  // namespace detail

/// "line N" for the JSON path that prefixes a schema error message, if any.
inline std::string anchor_error(const std::string& text, const std::string& source, const std::string& message) {
  if (message.empty() || message[0] != '/') return source + ": " + message;
  std::string pointer = message.substr(0, message.find(':'));
  detail::LineLocator loc(text);
  return source + ":" + std::to_string(loc.line_of(pointer)) + ": " + message;
}

/// Parses text, reporting JSON syntax errors with their position.
inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parsed description and built algebra; schema errors are anchored to a line of `text`.
inline std::pair<AlgebraDesc, Algebra> parse_algebra_document(const std::string& text, const std::string& source = "input") {
  json doc = parse_json_text(text, source);
  try {
    AlgebraDesc desc = parse_algebra_desc(doc);
    Algebra a = build_algebra(desc);
    return {std::move(desc), std::move(a)};
  } catch (const InputError& e) {
    throw InputError(anchor_error(text, source, e.what()));
  }
}

inline Algebra parse_algebra(const std::string& text, const std::string& source = "input") {
  return parse_algebra_document(text, source).second;
}

/// Element of the algebra described by `desc` (needed for product factors).
inline Element parse_element(const Algebra& a, const AlgebraDesc& desc, const json& j, const std::string& path = "element") {
  using namespace detail;
  if (j.is_object()) {
    auto* pr = std::get_if<AlgebraDesc::Product>(&desc.kind);
    if (!pr) throw InputError(path + ": factor form is only valid for product algebras");
    const json& fs = field(j, "factors", path);
    if (!fs.is_array() || fs.size() != pr->factors.size())
      throw InputError(path + "/factors: expected " + std::to_string(pr->factors.size()) + " factor elements");
    Vec v;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Algebra f = build_algebra(pr->factors[i]);
      Element x = parse_element(f, pr->factors[i], fs[i], path + "/factors/" + std::to_string(i));
      v.insert(v.end(), x.coeffs().begin(), x.coeffs().end());
    }
    return a.element(std::move(v));
  }
  if (!j.is_array()) throw InputError(path + ": expected an array or a factor object");
  if (!j.empty() && j[0].is_array()) {
    auto rows = as_int_matrix(j, path);
    return a.element_from_matrix(Mat::from_rows(rows, rows.front().size(), a.p()));
  }
  return a.element(as_int_vector(j, path));
}

// ---------------------------------------------------------------------------
// Output

inline json to_json(const Vec& v) { return json(std::vector<std::uint64_t>(v.begin(), v.end())); }
inline json to_json(const Element& x) { return to_json(x.coeffs()); }
inline json to_json(const Subspace& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(to_json(s.basis().row_vec(i)));
  return rows;
}

inline Vec vec_from_json(const json& j) {
  Vec v;
  for (auto& x : j) v.push_back(x.get<Residue>());
  return v;
}

/// Plain-data image of a LocalizationReport; serialises to sorted-key JSON and back.
struct ReportData {
  struct Entry {
    std::string set;
    Vec e;
    std::size_t ass_dim = 0;
    std::vector<Vec> ass_basis;
    std::size_t quotient_dim = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::string side;
  std::string label;
  std::uint32_t prime = 0;
  std::size_t dim = 0;
  std::size_t s = 0;
  std::vector<std::size_t> block_dims;
  std::vector<bool> block_commutative;
  std::size_t rad_dim = 0;
  std::vector<Vec> rad_basis;
  std::vector<std::string> minima;
  std::size_t loc_count = 0;
  std::vector<Entry> loc_entries;
  std::vector<Entry> max_den;
  std::size_t l_rad_dim = 0;
  std::vector<Vec> l_rad_basis;
  std::size_t little_rad_dim = 0;
  std::vector<Vec> little_rad_basis;
  bool localization_maximal = false;
  bool semisimple = false;
  bool is_direct_product_of_loc_max = false;
  bool completely_loc_equals_units = false;
  bool nl_ideal = false;
  std::vector<bool> completely_localizable_conditions;

  friend bool operator==(const ReportData&, const ReportData&) = default;
};

inline std::vector<Vec> basis_rows(const Subspace& s) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < s.dim(); ++i) out.push_back(s.basis().row_vec(i));
  return out;
}

inline ReportData summarize(const LocalizationReport& r) {
  ReportData d;
  d.side = to_string(r.side);
  d.label = r.label;
  d.prime = r.p;
  d.dim = r.dim;
  d.s = r.s;
  d.block_dims = r.block_dims;
  d.block_commutative = r.block_commutative;
  d.rad_dim = r.rad.dim();
  d.rad_basis = basis_rows(r.rad.space);
  for (auto b : r.tri.minimal_sets()) d.minima.push_back(format_blockset(b));
  d.loc_count = r.loc_count();
  for (auto& le : r.loc_entries)
    d.loc_entries.push_back({format_blockset(le.set), le.e.coeffs(), le.ass.dim(), basis_rows(le.ass.space), le.quotient_dim});
  for (std::size_t i = 0; i < r.max_den.size(); ++i) {
    const auto& md = r.max_den[i];
    d.max_den.push_back({format_blockset(r.tri.entries[r.tri.minima[i]].set), md.e.coeffs(), md.ass.dim(),
                         basis_rows(md.ass.space), md.quotient.algebra.dim()});
  }
  d.l_rad_dim = r.l_rad.dim();
  d.l_rad_basis = basis_rows(r.l_rad.space);
  d.little_rad_dim = r.little_rad.dim();
  d.little_rad_basis = basis_rows(r.little_rad.space);
  d.localization_maximal = r.flags.localization_maximal;
  d.semisimple = r.flags.semisimple;
  d.is_direct_product_of_loc_max = r.flags.is_direct_product_of_loc_max;
  d.completely_loc_equals_units = r.flags.completely_loc_equals_units;
  d.nl_ideal = r.nl_ideal;
  const auto& b = r.bundle;
  d.completely_localizable_conditions = {b.c_equals_units, b.union_is_all, b.product_of_corners, b.product_of_maximal, b.l_zero};
  return d;
}

inline json entry_to_json(const ReportData::Entry& e) {
  json rows = json::array();
  for (auto& v : e.ass_basis) rows.push_back(to_json(v));
  return {{"set", e.set}, {"e", to_json(e.e)}, {"ass_dim", e.ass_dim}, {"ass_basis", rows}, {"quotient_dim", e.quotient_dim}};
}

inline json rows_to_json(const std::vector<Vec>& rows) {
  json out = json::array();
  for (auto& v : rows) out.push_back(to_json(v));
  return out;
}

inline json to_json(const ReportData& d) {
  json j;
  j["side"] = d.side;
  j["algebra"] = {{"label", d.label}, {"prime", d.prime}, {"dim", d.dim}};
  j["s"] = d.s;
  j["block_dims"] = d.block_dims;
  j["block_commutative"] = d.block_commutative;
  j["rad_dim"] = d.rad_dim;
  j["rad_basis"] = rows_to_json(d.rad_basis);
  j["minima"] = d.minima;
  j["loc_count"] = d.loc_count;
  j["loc_entries"] = json::array();
  for (auto& e : d.loc_entries) j["loc_entries"].push_back(entry_to_json(e));
  j["max_den"] = json::array();
  for (auto& e : d.max_den) j["max_den"].push_back(entry_to_json(e));
  j["l_rad_dim"] = d.l_rad_dim;
  j["l_rad_basis"] = rows_to_json(d.l_rad_basis);
  j["little_rad_dim"] = d.little_rad_dim;
  j["little_rad_basis"] = rows_to_json(d.little_rad_basis);
  j["flags"] = {{"localization_maximal", d.localization_maximal},
                {"semisimple", d.semisimple},
                {"is_direct_product_of_loc_max", d.is_direct_product_of_loc_max},
                {"completely_loc_equals_units", d.completely_loc_equals_units},
                {"nl_ideal", d.nl_ideal}};
  j["completely_localizable_conditions"] = d.completely_localizable_conditions;
  return j;
}

inline ReportData::Entry entry_from_json(const json& j) {
  ReportData::Entry e;
  e.set = j.at("set").get<std::string>();
  e.e = vec_from_json(j.at("e"));
  e.ass_dim = j.at("ass_dim").get<std::size_t>();
  for (auto& r : j.at("ass_basis")) e.ass_basis.push_back(vec_from_json(r));
  e.quotient_dim = j.at("quotient_dim").get<std::size_t>();
  return e;
}

inline ReportData report_from_json(const json& j) {
  ReportData d;
  d.side = j.at("side").get<std::string>();
  d.label = j.at("algebra").at("label").get<std::string>();
  d.prime = j.at("algebra").at("prime").get<std::uint32_t>();
  d.dim = j.at("algebra").at("dim").get<std::size_t>();
  d.s = j.at("s").get<std::size_t>();
  d.block_dims = j.at("block_dims").get<std::vector<std::size_t>>();
  d.block_commutative = j.at("block_commutative").get<std::vector<bool>>();
  d.rad_dim = j.at("rad_dim").get<std::size_t>();
  for (auto& r : j.at("rad_basis")) d.rad_basis.push_back(vec_from_json(r));
  d.minima = j.at("minima").get<std::vector<std::string>>();
  d.loc_count = j.at("loc_count").get<std::size_t>();
  for (auto& e : j.at("loc_entries")) d.loc_entries.push_back(entry_from_json(e));
  for (auto& e : j.at("max_den")) d.max_den.push_back(entry_from_json(e));
  d.l_rad_dim = j.at("l_rad_dim").get<std::size_t>();
  for (auto& r : j.at("l_rad_basis")) d.l_rad_basis.push_back(vec_from_json(r));
  d.little_rad_dim = j.at("little_rad_dim").get<std::size_t>();
  for (auto& r : j.at("little_rad_basis")) d.little_rad_basis.push_back(vec_from_json(r));
  const json& f = j.at("flags");
  d.localization_maximal = f.at("localization_maximal").get<bool>();
  d.semisimple = f.at("semisimple").get<bool>();
  d.is_direct_product_of_loc_max = f.at("is_direct_product_of_loc_max").get<bool>();
  d.completely_loc_equals_units = f.at("completely_loc_equals_units").get<bool>();
  d.nl_ideal = f.at("nl_ideal").get<bool>();
  d.completely_localizable_conditions = j.at("completely_localizable_conditions").get<std::vector<bool>>();
  return d;
}

inline json to_json(const LocalizationReport& r) { return to_json(summarize(r)); }

/// Indented, key-sorted JSON followed by a newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// "key: value" lines, nested objects flattened with dots.
inline std::string to_text(const json& j, const std::string& prefix = "") {
  std::string out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      out += to_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    return out;
  }
  return prefix + ": " + j.dump() + "\n";
}

}  // namespace artinloc::io
