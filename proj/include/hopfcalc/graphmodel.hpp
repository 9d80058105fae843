#pragma once

// Decorated bicolored graphs: black vertices carry Hopf links (singular local
// models), white vertices carry trivially fibered pieces, edges glue one link
// component to one boundary component.

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hopfcalc/hopflink.hpp"

namespace hopfcalc {

struct BlackVertex {
  HopfLinkSpec link;
  friend bool operator==(const BlackVertex&, const BlackVertex&) = default;
};

struct WhiteVertex {
  FiberDescriptor fiber;
  friend bool operator==(const WhiteVertex&, const WhiteVertex&) = default;
};

using Vertex = std::variant<BlackVertex, WhiteVertex>;

/// Undirected; u_comp / v_comp index link components (black) or boundary
/// components (white). `twist` is an opaque annotation of the gluing map and is
/// ignored by every invariant.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::size_t u_comp = 0;
  std::size_t v_comp = 0;
  std::string twist;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct DecoratedGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  bool is_black(std::size_t i) const { return std::holds_alternative<BlackVertex>(vertices[i]); }
  const HopfLinkSpec& link(std::size_t i) const { return std::get<BlackVertex>(vertices[i]).link; }
  const FiberDescriptor& fiber(std::size_t i) const { return std::get<WhiteVertex>(vertices[i]).fiber; }

  std::size_t component_count(std::size_t i) const {
    return is_black(i) ? link(i).component_count() : fiber(i).boundary_components;
  }

  /// Self-loops count twice.
  std::size_t degree(std::size_t i) const {
    std::size_t deg = 0;
    for (const auto& e : edges) deg += (e.u == i) + (e.v == i);
    return deg;
  }

  std::vector<std::size_t> black_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (is_black(i)) out.push_back(i);
    return out;
  }

  friend bool operator==(const DecoratedGraph&, const DecoratedGraph&) = default;
};

struct GraphIssue {
  std::string code;
  std::string message;
  std::optional<std::size_t> vertex;
  std::optional<std::size_t> edge;
};

struct ValidationReport {
  std::optional<GraphIssue> issue;
  bool ok() const { return !issue.has_value(); }
};

class GraphError : public Error {
 public:
  explicit GraphError(GraphIssue issue) : Error(issue.message), issue_(std::move(issue)) {}
  const GraphIssue& issue() const { return issue_; }

 private:
  GraphIssue issue_;
};

/// Checks every structural invariant and reports the first violation.
inline ValidationReport validate_graph(const DecoratedGraph& g) {
  auto fail = [](std::string code, std::string msg, std::optional<std::size_t> v = std::nullopt,
                 std::optional<std::size_t> e = std::nullopt) {
    return ValidationReport{GraphIssue{std::move(code), std::move(msg), v, e}};
  };
  const std::size_t nv = g.vertices.size();
  if (nv == 0) return fail("empty-graph", "graph has no vertices");
  const auto blacks = g.black_vertices();
  if (blacks.empty()) return fail("no-black-vertex", "graph has no black vertex");

  const HopfLinkSpec& first = g.link(blacks.front());
  for (auto b : blacks)
    if (g.link(b).n() != first.n() || g.link(b).k() != first.k())
      return fail("parameter-mismatch", "black vertex " + std::to_string(b) + " has (n,k) different from vertex " +
                                            std::to_string(blacks.front()),
                  b);

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.u >= nv || ed.v >= nv)
      return fail("edge-endpoint", "edge " + std::to_string(e) + " references a missing vertex", std::nullopt, e);
  }

  for (auto b : blacks) {
    const std::size_t deg = g.degree(b), want = g.component_count(b);
    if (deg != want)
      return fail("degree-mismatch", "black vertex " + std::to_string(b) + " has degree " + std::to_string(deg) +
                                         " but its link has " + std::to_string(want) + " components",
                  b);
  }
  for (std::size_t i = 0; i < nv; ++i)
    if (g.degree(i) == 0) return fail("isolated-vertex", "vertex " + std::to_string(i) + " is isolated", i);
  for (std::size_t i = 0; i < nv; ++i) {
    if (g.is_black(i)) continue;
    const std::size_t deg = g.degree(i), want = g.component_count(i);
    if (deg != want)
      return fail("degree-mismatch", "white vertex " + std::to_string(i) + " has degree " + std::to_string(deg) +
                                         " but its fiber has " + std::to_string(want) + " boundary components",
                  i);
  }

  std::vector<std::vector<bool>> used(nv);
  for (std::size_t i = 0; i < nv; ++i) used[i].assign(g.component_count(i), false);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    for (auto [vx, c] : {std::pair{ed.u, ed.u_comp}, std::pair{ed.v, ed.v_comp}}) {
      if (c >= used[vx].size())
        return fail("component-range", "edge " + std::to_string(e) + " uses component " + std::to_string(c) +
                                           " of vertex " + std::to_string(vx) + ", which has " +
                                           std::to_string(used[vx].size()),
                    vx, e);
      if (used[vx][c])
        return fail("component-reuse", "component " + std::to_string(c) + " of vertex " + std::to_string(vx) +
                                           " is glued more than once",
                    vx, e);
      used[vx][c] = true;
    }
  }

  for (auto b : blacks) {
    const auto& link = g.link(b);
    if (link.epsilon() == -1 && link.k() == 0 && g.degree(b) % 2 == 0)
      return fail("even-skew-degree", "black vertex " + std::to_string(b) + " carries a skew link but has even degree " +
                                          std::to_string(g.degree(b)) + " (unimodular skew forms have even size)",
                  b);
  }
  return {};
}

inline void require_valid(const DecoratedGraph& g) {
  auto r = validate_graph(g);
  if (!r.ok()) throw GraphError(*r.issue);
}

struct GraphCounts {
  std::size_t m = 0;        // edges
  std::size_t s_black = 0;  // black vertices
  std::size_t vertices = 0;
  std::size_t connected_components = 0;
  long long g = 0;  // first Betti number of the graph
  long long t = 0;  // n-handles contributed by the black vertices
  friend bool operator==(const GraphCounts&, const GraphCounts&) = default;
};

/// t sums d(v) over black vertices; for k = 0 that is deg(v) - 1, which
/// reduces to 2m - s on graphs without white vertices.
inline GraphCounts graph_counts(const DecoratedGraph& g) {
  GraphCounts c;
  c.m = g.edges.size();
  c.vertices = g.vertices.size();
  std::vector<std::size_t> parent(c.vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.u)] = find(e.v);
  for (std::size_t i = 0; i < c.vertices; ++i)
    if (find(i) == i) ++c.connected_components;
  c.g = static_cast<long long>(c.m) - static_cast<long long>(c.vertices) +
        static_cast<long long>(c.connected_components);
  for (auto b : g.black_vertices()) {
    ++c.s_black;
    c.t += static_cast<long long>(g.link(b).d());
  }
  return c;
}

/// Dimensions (n, k) shared by every black vertex of a validated graph.
inline std::pair<int, int> graph_dimensions(const DecoratedGraph& g) {
  const auto blacks = g.black_vertices();
  if (blacks.empty()) throw DomainError("graph has no black vertex");
  return {g.link(blacks.front()).n(), g.link(blacks.front()).k()};
}

struct GlobalFiber {
  long long euler = 0;
  std::optional<FiberDescriptor> descriptor;  // when the diffeomorphism type is determined
  std::string identification;
};

namespace detail {

inline bool is_holed_disk(const FiberDescriptor& f) {
  return f == holed_disk_descriptor(f.dim, f.boundary_components - 1);
}

/// Connected sum of g copies of S^1 x S^{m-1} (S^m for g = 0).
inline FiberDescriptor circle_sphere_sum(int m, long long g) {
  std::vector<long long> b(static_cast<std::size_t>(m) + 1, 0);
  b[0] += 1;
  b[1] += g;
  b[static_cast<std::size_t>(m - 1)] += g;
  b[static_cast<std::size_t>(m)] += 1;
  return FiberDescriptor::from_betti(std::move(b), m, 0);
}

}  // namespace detail

/// Generic fiber of the glued map. The Euler characteristic comes from gluing
/// local fibers along their shared boundary pieces; the Betti numbers are
/// reported only when the shape pins down the diffeomorphism type.
inline GlobalFiber assemble_global_fiber(const DecoratedGraph& g) {
  require_valid(g);
  const auto [n, k] = graph_dimensions(g);
  const int dim = n + k;

  long long chi = 0;
  std::vector<LinkDescriptors> local(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (g.is_black(i)) {
      local[i] = project_link_descriptor(g.link(i));
      chi += local[i].fiber.euler;
    } else {
      const auto& f = g.fiber(i);
      if (f.dim != dim)
        throw DomainError("white vertex " + std::to_string(i) + " has a fiber of dimension " + std::to_string(f.dim) +
                          ", expected " + std::to_string(dim));
      chi += f.euler;
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (k == 0) {
      chi -= sphere_descriptor(n - 1).euler;
    } else if (g.is_black(ed.u) || g.is_black(ed.v)) {
      chi -= local[g.is_black(ed.u) ? ed.u : ed.v].link.euler;
    } else {
      throw DomainError("edge " + std::to_string(e) + " joins two white vertices; unsupported for k >= 1");
    }
  }

  GlobalFiber out;
  out.euler = chi;
  const GraphCounts counts = graph_counts(g);
  if (k == 0) {
    bool disks = true;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (!g.is_black(i) && !detail::is_holed_disk(g.fiber(i))) disks = false;
    if (disks && counts.connected_components == 1) {
      out.descriptor = detail::circle_sphere_sum(n, counts.g);
      out.identification = counts.g == 0 ? "S^" + std::to_string(n)
                                         : "#_" + std::to_string(counts.g) + " S^1 x S^" + std::to_string(n - 1);
      if (out.descriptor->euler != chi)
        throw InternalInvariantError("glued Euler characteristic disagrees with the identified fiber");
    } else {
      out.identification = "not identified (non-disk white pieces)";
    }
    return out;
  }

  if (g.vertices.size() == 2 && g.edges.size() == 1) {
    const std::size_t b = g.is_black(0) ? 0 : 1, w = 1 - b;
    if (g.is_black(b) && !g.is_black(w)) {
      std::vector<long long> wb(static_cast<std::size_t>(dim) + 1, 0);
      wb[0] = 1;
      wb[static_cast<std::size_t>(k)] += static_cast<long long>(g.link(b).d());
      if (g.fiber(w) == FiberDescriptor::from_betti(wb, dim, 1)) {
        out.descriptor = sphere_descriptor(dim);
        out.identification = "S^" + std::to_string(dim);
        if (out.descriptor->euler != chi)
          throw InternalInvariantError("glued Euler characteristic disagrees with S^(n+k)");
        return out;
      }
    }
  }
  out.identification = "depends on the gluing map; Euler characteristic only";
  return out;
}

}  // namespace hopfcalc
