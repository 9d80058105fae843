#pragma once

// JSON graph-spec files: parsing with located diagnostics and normalized output.
//
// A graph spec looks like
//
//   {"n": 3, "k": 0, "theta": 1, "assume_cobounding": true,
//    "graphs": [{"vertices": [{"color": "black", "matrix": [[0,1],[-1,0]]},
//                             {"color": "white", "fiber": {"betti": [1], "boundary_components": 1}}],
//                "edges": [{"u": 0, "v": 1, "u_comp": 0, "v_comp": 0}]}]}
//
// and a product spec as {"products": ["S4", "connsum_2"], "target": "S3"}.
// Integers may be JSON numbers or decimal strings (for values beyond 64 bits).

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfcalc/graphmodel.hpp"
#include "hopfcalc/invariants.hpp"

namespace hopfcalc::cli {

using nlohmann::json;

/// Invalid spec input. `locus` is a JSON pointer into the document (or a
/// line/column for syntax errors).
class SpecError : public Error {
 public:
  SpecError(std::string code, std::string locus, const std::string& message)
      : Error(locus + ": " + message + " [" + code + "]"), code_(std::move(code)), locus_(std::move(locus)) {}

  const std::string& code() const { return code_; }
  const std::string& locus() const { return locus_; }

 private:
  std::string code_;
  std::string locus_;
};

struct SpecFile {
  std::string description;
  int n = 0;
  int k = 0;
  Integer theta = 1;
  bool assume_cobounding = false;
  std::vector<DecoratedGraph> graphs;
  std::vector<ProductFactor> products;  // nonempty for a product spec
  std::string target;

  bool is_product() const { return !products.empty(); }
  friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

inline json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline json rational_to_json(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) return integer_to_json(boost::multiprecision::numerator(x));
  return x.str();
}

inline json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline std::string pointer(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string pointer(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

inline void reject_unknown(const json& obj, const std::string& at, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw SpecError("type", at.empty() ? "/" : at, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items())
    if (!ok.count(item.key())) throw SpecError("unknown-field", pointer(at, item.key()), "unknown field '" + item.key() + "'");
}

inline const json& require(const json& obj, const std::string& at, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError("missing-field", pointer(at, key), std::string("missing required field '") + key + "'");
  return *it;
}

inline Integer parse_integer(const json& v, const std::string& at) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>()) : Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Integer(s);
  }
  throw SpecError("type", at, "expected an integer");
}

inline long long parse_small(const json& v, const std::string& at, long long lo, long long hi) {
  const Integer x = parse_integer(v, at);
  if (x < lo || x > hi)
    throw SpecError("range", at, "value " + x.str() + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<long long>(x);
}

inline IntMatrix parse_matrix(const json& v, const std::string& at) {
  if (!v.is_array() || v.empty()) throw SpecError("type", at, "matrix must be a nonempty array of rows");
  const std::size_t n = v.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_at = pointer(at, i);
    if (!v[i].is_array()) throw SpecError("type", row_at, "matrix row must be an array");
    if (v[i].size() != n)
      throw SpecError("not-square", row_at, "row has " + std::to_string(v[i].size()) + " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_integer(v[i][j], pointer(row_at, j));
  }
  return m;
}

/// Checks symmetry and the zero diagonal with a locus before building the link.
inline HopfLinkSpec parse_link(const json& v, const std::string& at, int n, int k, const Integer& theta) {
  const std::string mat_at = pointer(at, "matrix");
  IntMatrix m = parse_matrix(require(v, at, "matrix"), mat_at);
  const int eps = n % 2 == 0 ? 1 : -1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, i) != 0)
      throw SpecError("zero-diagonal", pointer(pointer(mat_at, i), i),
                      "linking matrix must have zero diagonal, found " + m(i, i).str());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(j, i) != eps * m(i, j))
        throw SpecError("symmetry", pointer(pointer(mat_at, i), j),
                        std::string("n = ") + std::to_string(n) + " requires a " +
                            (eps == 1 ? "symmetric" : "skew-symmetric") + " matrix");
  return HopfLinkSpec(BilinearForm(std::move(m), eps), n, k, theta);
}

inline FiberDescriptor parse_fiber(const json& v, const std::string& at, int dim) {
  reject_unknown(v, at, {"betti", "boundary_components"});
  const json& b = require(v, at, "betti");
  const std::string b_at = pointer(at, "betti");
  if (!b.is_array() || b.empty()) throw SpecError("type", b_at, "betti must be a nonempty array");
  if (b.size() > static_cast<std::size_t>(dim) + 1)
    throw SpecError("fiber-dimension", b_at, "fiber of a vertex in this spec has dimension " + std::to_string(dim) +
                                                 ", got " + std::to_string(b.size()) + " Betti numbers");
  std::vector<long long> betti;
  for (std::size_t i = 0; i < b.size(); ++i) betti.push_back(parse_small(b[i], pointer(b_at, i), 0, 1LL << 40));
  if (betti[0] < 1) throw SpecError("range", pointer(b_at, 0), "b_0 must be at least 1");
  const auto bc = static_cast<std::size_t>(
      parse_small(require(v, at, "boundary_components"), pointer(at, "boundary_components"), 1, 1LL << 20));
  return FiberDescriptor::from_betti(std::move(betti), dim, bc);
}

inline std::string issue_locus(const GraphIssue& issue, std::size_t graph) {
  const std::string base = "/graphs/" + std::to_string(graph);
  if (issue.edge && !issue.vertex) return base + "/edges/" + std::to_string(*issue.edge);
  if (issue.vertex && !issue.edge) return base + "/vertices/" + std::to_string(*issue.vertex);
  if (issue.vertex && issue.edge)
    return base + "/edges/" + std::to_string(*issue.edge) + " (vertex " + std::to_string(*issue.vertex) + ")";
  return base;
}

inline DecoratedGraph parse_graph(const json& v, const std::string& at, int n, int k, const Integer& theta) {
  reject_unknown(v, at, {"vertices", "edges"});
  DecoratedGraph g;
  const json& verts = require(v, at, "vertices");
  const std::string v_at = pointer(at, "vertices");
  if (!verts.is_array()) throw SpecError("type", v_at, "vertices must be an array");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string here = pointer(v_at, i);
    const json& vx = verts[i];
    reject_unknown(vx, here, {"color", "matrix", "fiber"});
    const json& color = require(vx, here, "color");
    if (color == "black") {
      if (vx.contains("fiber")) throw SpecError("unknown-field", pointer(here, "fiber"), "black vertices carry a matrix");
      try {
        g.vertices.push_back(BlackVertex{parse_link(vx, here, n, k, theta)});
      } catch (const SpecError&) {
        throw;
      } catch (const Error& e) {
        throw SpecError("link", here, e.what());
      }
    } else if (color == "white") {
      if (vx.contains("matrix")) throw SpecError("unknown-field", pointer(here, "matrix"), "white vertices carry a fiber");
      g.vertices.push_back(WhiteVertex{parse_fiber(require(vx, here, "fiber"), pointer(here, "fiber"), n + k)});
    } else {
      throw SpecError("color", pointer(here, "color"), "color must be \"black\" or \"white\"");
    }
  }
  const json& edges = require(v, at, "edges");
  const std::string e_at = pointer(at, "edges");
  if (!edges.is_array()) throw SpecError("type", e_at, "edges must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string here = pointer(e_at, i);
    const json& e = edges[i];
    reject_unknown(e, here, {"u", "v", "u_comp", "v_comp", "twist"});
    Edge ed;
    constexpr long long big = 1LL << 30;
    ed.u = static_cast<std::size_t>(parse_small(require(e, here, "u"), pointer(here, "u"), 0, big));
    ed.v = static_cast<std::size_t>(parse_small(require(e, here, "v"), pointer(here, "v"), 0, big));
    ed.u_comp = static_cast<std::size_t>(parse_small(require(e, here, "u_comp"), pointer(here, "u_comp"), 0, big));
    ed.v_comp = static_cast<std::size_t>(parse_small(require(e, here, "v_comp"), pointer(here, "v_comp"), 0, big));
    if (e.contains("twist")) {
      if (!e["twist"].is_string()) throw SpecError("type", pointer(here, "twist"), "twist must be a string");
      ed.twist = e["twist"].get<std::string>();
    }
    g.edges.push_back(std::move(ed));
  }
  return g;
}

}  // namespace detail

/// Parses and fully validates a spec document.
inline SpecFile parse_spec_json(const json& doc) {
  SpecFile s;
  if (!doc.is_object()) throw SpecError("type", "/", "spec must be a JSON object");
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) throw SpecError("type", "/description", "description must be a string");
    s.description = doc["description"].get<std::string>();
  }

  if (doc.contains("products")) {
    detail::reject_unknown(doc, "", {"description", "products", "target"});
    const json& p = doc["products"];
    if (!p.is_array() || p.empty()) throw SpecError("type", "/products", "products must be a nonempty array");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string at = detail::pointer("/products", i);
      if (!p[i].is_string()) throw SpecError("type", at, "product factor must be a string");
      try {
        s.products.push_back(parse_product_factor(p[i].get<std::string>()));
      } catch (const Error& e) {
        throw SpecError("factor", at, e.what());
      }
    }
    s.target = doc.value("target", std::string("S3"));
    if (s.target != "S3") throw SpecError("target", "/target", "only target S3 is supported");
    return s;
  }

  detail::reject_unknown(doc, "", {"description", "n", "k", "theta", "assume_cobounding", "graphs"});
  s.n = static_cast<int>(detail::parse_small(detail::require(doc, "", "n"), "/n", 3, 1000));
  s.k = doc.contains("k") ? static_cast<int>(detail::parse_small(doc["k"], "/k", 0, 1000)) : 0;
  if (s.n - s.k < 2) throw SpecError("range", "/k", "constructions need n - k >= 2");
  if (doc.contains("theta")) {
    s.theta = detail::parse_integer(doc["theta"], "/theta");
    if (s.theta < 1) throw SpecError("range", "/theta", "theta must be at least 1");
  }
  if (doc.contains("assume_cobounding")) {
    if (!doc["assume_cobounding"].is_boolean())
      throw SpecError("type", "/assume_cobounding", "assume_cobounding must be a boolean");
    s.assume_cobounding = doc["assume_cobounding"].get<bool>();
  }
  const json& graphs = detail::require(doc, "", "graphs");
  if (!graphs.is_array() || graphs.empty()) throw SpecError("type", "/graphs", "graphs must be a nonempty array");
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    DecoratedGraph g = detail::parse_graph(graphs[i], detail::pointer("/graphs", i), s.n, s.k, s.theta);
    const ValidationReport r = validate_graph(g);
    if (!r.ok()) throw SpecError(r.issue->code, detail::issue_locus(*r.issue, i), r.issue->message);
    s.graphs.push_back(std::move(g));
  }
  return s;
}

inline SpecFile parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecError("syntax", "line " + std::to_string(line) + ", column " + std::to_string(col), e.what());
  }
  return parse_spec_json(doc);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("io", path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SpecFile parse_spec(const std::string& path) { return parse_spec_text(read_file(path)); }

/// Normalized spec: every optional field written out, Betti vectors padded.
inline json spec_to_json(const SpecFile& s) {
  json doc = json::object();
  if (!s.description.empty()) doc["description"] = s.description;
  if (s.is_product()) {
    json p = json::array();
    for (const auto& f : s.products) p.push_back(f.name());
    doc["products"] = std::move(p);
    doc["target"] = s.target;
    return doc;
  }
  doc["n"] = s.n;
  doc["k"] = s.k;
  doc["theta"] = integer_to_json(s.theta);
  doc["assume_cobounding"] = s.assume_cobounding;
  json graphs = json::array();
  for (const auto& g : s.graphs) {
    json verts = json::array();
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      if (g.is_black(i)) {
        verts.push_back({{"color", "black"}, {"matrix", matrix_to_json(g.link(i).matrix())}});
      } else {
        const auto& f = g.fiber(i);
        verts.push_back({{"color", "white"},
                         {"fiber", {{"betti", f.betti}, {"boundary_components", f.boundary_components}}}});
      }
    }
    json edges = json::array();
    for (const auto& e : g.edges) {
      json je = {{"u", e.u}, {"v", e.v}, {"u_comp", e.u_comp}, {"v_comp", e.v_comp}};
      if (!e.twist.empty()) je["twist"] = e.twist;
      edges.push_back(std::move(je));
    }
    graphs.push_back({{"vertices", std::move(verts)}, {"edges", std::move(edges)}});
  }
  doc["graphs"] = std::move(graphs);
  return doc;
}

/// Reads a bare matrix file: a JSON array of rows.
inline IntMatrix parse_matrix_file(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("syntax", path, e.what());
  }
  if (doc.is_object()) {
    detail::reject_unknown(doc, "", {"matrix"});
    return detail::parse_matrix(detail::require(doc, "", "matrix"), "/matrix");
  }
  return detail::parse_matrix(doc, "");
}

}  // namespace hopfcalc::cli
