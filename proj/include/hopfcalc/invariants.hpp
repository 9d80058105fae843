#pragma once

// Invariants of the closed manifolds M(G_1, ..., G_p) assembled from decorated
// graphs: the cup product form on the edge classes, its signature and kernel,
// Euler characteristics, homology ranks of the canonical examples and bounds on
// the number of critical points of maps to spheres.

#include <optional>
#include <string>
#include <vector>

#include "hopfcalc/exactlinalg.hpp"
#include "hopfcalc/forms.hpp"
#include "hopfcalc/graphmodel.hpp"
#include "hopfcalc/hopflink.hpp"

namespace hopfcalc {

class UnsupportedShapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Cup product form of X(G) on the edge classes, edges of all graphs
/// concatenated in order. At every black vertex v each ordered pair of edge
/// ends (a, b) adds A*_v[comp(a)][comp(b)] to entry (edge(a), edge(b)); white
/// ends add nothing. This gives the shared-vertex rule for distinct edges, the
/// sum over both endpoints on the diagonal and for parallel edges, and the
/// natural extension to self-loops.
inline BilinearForm assemble_cup_form(const std::vector<DecoratedGraph>& graphs) {
  if (graphs.empty()) throw DomainError("empty graph family");
  std::size_t total = 0;
  std::optional<int> eps;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& g = graphs[gi];
    require_valid(g);
    if (graph_dimensions(g).second != 0) throw DomainError("edge cup form needs k = 0 links");
    const int e = g.link(g.black_vertices().front()).epsilon();
    if (eps && *eps != e) throw SymmetryError("graphs of one family must share n");
    eps = e;
    total += g.edges.size();
  }

  IntMatrix f(total, total);
  std::size_t offset = 0;
  for (const auto& g : graphs) {
    for (auto v : g.black_vertices()) {
      const IntMatrix star = derived_linking_matrix(g.link(v));
      std::vector<std::pair<std::size_t, std::size_t>> ends;  // (edge, component)
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].u == v) ends.emplace_back(e, g.edges[e].u_comp);
        if (g.edges[e].v == v) ends.emplace_back(e, g.edges[e].v_comp);
      }
      for (const auto& [ea, ca] : ends)
        for (const auto& [eb, cb] : ends) f(offset + ea, offset + eb) += star(ca, cb);
    }
    offset += g.edges.size();
  }
  return BilinearForm(std::move(f), *eps);
}

inline BilinearForm assemble_cup_form(const DecoratedGraph& g) { return assemble_cup_form(std::vector{g}); }

enum class KShape { two_black, black_white };

inline const char* to_string(KShape s) { return s == KShape::two_black ? "two-black" : "black-white"; }

/// Form on {1..d} for the two k >= 1 shapes, built from the A^{-1} block of
/// each vertex's linking matrix.
inline BilinearForm assemble_cup_form_k(KShape shape, const HopfLinkSpec& v, const HopfLinkSpec* w = nullptr) {
  if (v.k() < 1) throw DomainError("k >= 1 cup form needs k >= 1 links");
  IntMatrix f = inverse_unimodular(v.matrix());
  if (shape == KShape::two_black) {
    if (w == nullptr) throw DomainError("two-black shape needs a second link");
    if (w->d() != v.d())
      throw UnsupportedShapeError("two-black shape needs links of equal size (" + std::to_string(v.d()) + " vs " +
                                  std::to_string(w->d()) + ")");
    if (w->epsilon() != v.epsilon()) throw SymmetryError("links of different symmetry");
    f = f + inverse_unimodular(w->matrix());
  }
  return BilinearForm(std::move(f), v.epsilon());
}

/// Detects one of the two supported k >= 1 shapes: a single edge joining a
/// black vertex to a black or white vertex.
inline KShape detect_k_shape(const DecoratedGraph& g) {
  if (g.vertices.size() == 2 && g.edges.size() == 1 && g.edges[0].u != g.edges[0].v) {
    const bool b0 = g.is_black(0), b1 = g.is_black(1);
    if (b0 && b1) return KShape::two_black;
    if (b0 || b1) return KShape::black_white;
  }
  throw UnsupportedShapeError("k >= 1 cup form is only defined for one edge joining a black vertex to one other vertex");
}

inline BilinearForm assemble_cup_form_k(const DecoratedGraph& g) {
  require_valid(g);
  const KShape shape = detect_k_shape(g);
  if (shape == KShape::two_black) return assemble_cup_form_k(shape, g.link(0), &g.link(1));
  return assemble_cup_form_k(shape, g.link(g.is_black(0) ? 0 : 1));
}

/// Block sum of the k >= 1 forms over a family.
inline BilinearForm assemble_cup_form_k(const std::vector<DecoratedGraph>& graphs) {
  if (graphs.empty()) throw DomainError("empty graph family");
  BilinearForm out = assemble_cup_form_k(graphs.front());
  for (std::size_t i = 1; i < graphs.size(); ++i) out = direct_sum(out, assemble_cup_form_k(graphs[i]));
  return out;
}

struct CupFormAnalysis {
  std::optional<Inertia> inertia;  // symmetric forms only
  long long sigma = 0;             // zero for skew forms
  std::vector<std::vector<Rational>> kernel_basis;
  std::size_t kernel_dim = 0;
};

inline CupFormAnalysis analyze_cup_form(const BilinearForm& f) {
  CupFormAnalysis a;
  Nullspace ns = nullspace_rational(f.matrix());
  a.kernel_basis = std::move(ns.rational);
  a.kernel_dim = a.kernel_basis.size();
  if (f.is_symmetric_form()) {
    a.inertia = inertia(f.matrix());
    a.sigma = a.inertia->signature();
    if (a.inertia->zero != a.kernel_dim) throw InternalInvariantError("inertia nullity differs from kernel dimension");
  }
  return a;
}

inline long long sphere_euler(int m) { return m % 2 == 0 ? 2 : 0; }

/// chi(M) = chi(S^{n-k}) chi(F) + (-1)^n t, with F the common global fiber and
/// t the total number of index-n handles over the family.
inline long long euler_characteristic(const std::vector<DecoratedGraph>& graphs, int n, int k) {
  if (graphs.empty()) throw DomainError("empty graph family");
  std::optional<long long> g0, chi_f;
  long long t = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    require_valid(g);
    const auto [gn, gk] = graph_dimensions(g);
    if (gn != n || gk != k)
      throw DomainError("graph " + std::to_string(i) + " has (n,k) = (" + std::to_string(gn) + "," +
                        std::to_string(gk) + "), expected (" + std::to_string(n) + "," + std::to_string(k) + ")");
    const GraphCounts c = graph_counts(g);
    if (g0 && *g0 != c.g)
      throw DomainError("graph " + std::to_string(i) + " has first Betti number " + std::to_string(c.g) +
                        ", family needs " + std::to_string(*g0));
    g0 = c.g;
    const long long chi = assemble_global_fiber(g).euler;
    if (chi_f && *chi_f != chi)
      throw DomainError("graph " + std::to_string(i) + " has a global fiber with Euler characteristic " +
                        std::to_string(chi) + ", family needs " + std::to_string(*chi_f));
    chi_f = chi;
    t += c.t;
  }
  return sphere_euler(n - k) * *chi_f + (n % 2 == 0 ? t : -t);
}

enum class CanonicalFamily { even_k0, even_kpos, odd_k0, odd_kpos };

inline const char* to_string(CanonicalFamily f) {
  switch (f) {
    case CanonicalFamily::even_k0: return "even-k0";
    case CanonicalFamily::even_kpos: return "even-kpos";
    case CanonicalFamily::odd_k0: return "odd-k0";
    case CanonicalFamily::odd_kpos: return "odd-kpos";
  }
  return "?";
}

inline std::optional<CanonicalFamily> parse_family(const std::string& s) {
  for (auto f : {CanonicalFamily::even_k0, CanonicalFamily::even_kpos, CanonicalFamily::odd_k0,
                 CanonicalFamily::odd_kpos})
    if (s == to_string(f)) return f;
  return std::nullopt;
}

struct HomologyTable {
  int dim = 0;
  std::vector<long long> ranks;  // b_0 .. b_dim
  long long euler() const {
    long long chi = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * ranks[i];
    return chi;
  }
  friend bool operator==(const HomologyTable&, const HomologyTable&) = default;
};

/// Rational homology of M(G_0) for the four canonical one-black-vertex graphs,
/// of dimension 2n (even families) or 2n+1 (odd families).
inline HomologyTable canonical_homology_ranks(CanonicalFamily family, int n, int k, long long d) {
  if (n < 3) throw DomainError("canonical families need n >= 3");
  const bool kpos = family == CanonicalFamily::even_kpos || family == CanonicalFamily::odd_kpos;
  if (kpos) {
    if (k < 1 || k > n - 2) throw DomainError("k >= 1 families need 1 <= k <= n - 2");
    if (d < 4) throw DomainError("k >= 1 families need a link with at least 5 components (d >= 4)");
  } else {
    if (k != 0) throw DomainError("k = 0 families need k = 0");
    if (d < 1) throw DomainError("k = 0 families need d >= 1");
  }
  const bool even = family == CanonicalFamily::even_k0 || family == CanonicalFamily::even_kpos;
  HomologyTable h;
  h.dim = even ? 2 * n : 2 * n + 1;
  h.ranks.assign(static_cast<std::size_t>(h.dim) + 1, 0);
  h.ranks.front() = 1;
  h.ranks.back() = 1;
  auto at = [&](int i) -> long long& { return h.ranks[static_cast<std::size_t>(i)]; };
  switch (family) {
    case CanonicalFamily::even_k0:
      at(n) += d + 2;
      break;
    case CanonicalFamily::even_kpos:
      at(n - k) += 1;
      at(n + k) += 1;
      at(n) += d;
      break;
    case CanonicalFamily::odd_k0:
      at(n) += d + 1;
      at(n + 1) += d + 1;
      break;
    case CanonicalFamily::odd_kpos:
      at(n - k) += 1;
      at(n + k + 1) += 1;
      at(n) += d;
      at(n + 1) += d;
      break;
  }
  return h;
}

namespace detail {

inline bool is_disk(const FiberDescriptor& f, int dim) { return f == holed_disk_descriptor(dim, 0); }

}  // namespace detail

/// Recognizes the canonical even-dimensional graphs: a tree with one black
/// vertex and white disk leaves (k = 0), or one black vertex joined to a white
/// boundary connected sum of d copies of D^n x S^k (k >= 1, d >= 4).
inline std::optional<CanonicalFamily> detect_canonical_family(const std::vector<DecoratedGraph>& graphs) {
  if (graphs.size() != 1) return std::nullopt;
  const DecoratedGraph& g = graphs.front();
  if (!validate_graph(g).ok()) return std::nullopt;
  const auto blacks = g.black_vertices();
  if (blacks.size() != 1) return std::nullopt;
  const HopfLinkSpec& link = g.link(blacks.front());
  const int n = link.n(), k = link.k();
  if (n < 3) return std::nullopt;
  const GraphCounts c = graph_counts(g);
  if (k == 0) {
    if (c.g != 0 || c.connected_components != 1) return std::nullopt;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (!g.is_black(i) && !detail::is_disk(g.fiber(i), n)) return std::nullopt;
    return CanonicalFamily::even_k0;
  }
  if (k > n - 2 || link.d() < 4 || g.vertices.size() != 2 || g.edges.size() != 1) return std::nullopt;
  const std::size_t w = blacks.front() == 0 ? 1 : 0;
  std::vector<long long> b(static_cast<std::size_t>(n + k) + 1, 0);
  b[0] = 1;
  b[static_cast<std::size_t>(k)] += static_cast<long long>(link.d());
  if (g.fiber(w) != FiberDescriptor::from_betti(b, n + k, 1)) return std::nullopt;
  return CanonicalFamily::even_kpos;
}

struct PhiBounds {
  long long lower = 0;
  long long upper = 0;
  std::vector<std::string> notes;
};

/// Bounds on phi(M, S^{n-k}). Requires the caller to assert that the boundary
/// fibrations of the family cobound, which cannot be checked here.
/// `sigma` is the signature of the assembled cup form when it is available.
inline PhiBounds phi_bounds(const std::vector<DecoratedGraph>& graphs, int n, int k, bool assume_cobounding,
                            std::optional<long long> sigma = std::nullopt) {
  if (!assume_cobounding)
    throw DomainError("phi bounds need assume_cobounding: cobounding of the boundary fibrations is not verifiable");
  if (graphs.empty()) throw DomainError("empty graph family");
  long long s = 0;
  for (const auto& g : graphs) {
    require_valid(g);
    const auto [gn, gk] = graph_dimensions(g);
    if (gn != n || gk != k) throw DomainError("graph dimensions differ from the family (n,k)");
    s += static_cast<long long>(graph_counts(g).s_black);
  }

  PhiBounds out;
  if (auto fam = detect_canonical_family(graphs)) {
    out.lower = out.upper = 1;
    out.notes.push_back(std::string("canonical ") + to_string(*fam) +
                        " graph: M is not a fibration and one critical point suffices");
    return out;
  }
  out.upper = s;
  out.notes.push_back("upper bound: one critical point per black vertex (s = " + std::to_string(s) + ")");
  if ((n - k) % 2 != 0) {
    out.lower = 1;
    out.notes.push_back("lower bound: n - k odd and chi(M) = (-1)^n t with t > 0, so M does not fiber");
  } else if (s % 2 != 0) {
    out.lower = 1;
    out.notes.push_back("lower bound: n - k even and an odd number of black vertices");
  } else if (sigma && *sigma != 0) {
    out.lower = 1;
    out.notes.push_back("lower bound: signature " + std::to_string(*sigma) + " != 0, so M does not fiber");
  } else {
    out.lower = 0;
    out.notes.push_back("no obstruction certified");
  }
  return out;
}

struct ProductFactor {
  enum class Kind { s4, connsum };
  Kind kind = Kind::s4;
  long long r = 0;  // connsum only: number of S^2 x S^2 summands

  std::string name() const { return kind == Kind::s4 ? "S4" : "connsum_" + std::to_string(r); }
  friend bool operator==(const ProductFactor&, const ProductFactor&) = default;
};

/// Parses "S4" or "connsum_<r>" with r >= 1.
inline ProductFactor parse_product_factor(const std::string& s) {
  if (s == "S4") return {ProductFactor::Kind::s4, 0};
  const std::string prefix = "connsum_";
  if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size() && s.size() <= prefix.size() + 12) {
    const std::string digits = s.substr(prefix.size());
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      const long long r = std::stoll(digits);
      if (r >= 1) return {ProductFactor::Kind::connsum, r};
    }
  }
  throw DomainError("unknown product factor '" + s + "' (expected S4 or connsum_<r>, r >= 1)");
}

struct ProductBound {
  Integer lower = 1;
  Integer upper = 1;
  Integer chi = 1;
};

/// Bounds on phi(M_1 x ... x M_m, S^3). phi is submultiplicative, with
/// phi(S^4, S^3) = 2 and phi(#_r S^2 x S^2, S^3) = 2r + 2; each of those equals
/// chi of the factor, and chi is multiplicative, so chi(M) != 0 forces lower = 1.
inline ProductBound product_phi_bound(const std::vector<ProductFactor>& factors, const std::string& target = "S3") {
  if (target != "S3") throw DomainError("product bounds are only known for target S3");
  if (factors.empty()) throw DomainError("product needs at least one factor");
  ProductBound b;
  for (const auto& f : factors) {
    if (f.kind == ProductFactor::Kind::connsum && f.r < 1) throw DomainError("connsum_r needs r >= 1");
    const Integer phi = f.kind == ProductFactor::Kind::s4 ? Integer(2) : Integer(2 * f.r + 2);
    const Integer chi = f.kind == ProductFactor::Kind::s4 ? Integer(2) : Integer(2 + 2 * f.r);
    b.upper *= phi;
    b.chi *= chi;
  }
  b.lower = b.chi != 0 ? 1 : 0;
  return b;
}

struct InvariantReport {
  int n = 0;
  int k = 0;
  long long chi = 0;
  long long s_black = 0;
  long long g = 0;
  long long t = 0;
  std::optional<BilinearForm> cup_form;
  std::optional<Inertia> inertia;
  std::optional<long long> sigma;
  std::vector<std::vector<Rational>> kernel_basis;
  std::optional<std::size_t> kernel_dim;
  std::optional<CanonicalFamily> family;
  std::optional<HomologyTable> homology;
  std::optional<PhiBounds> phi;
  std::vector<std::string> verdicts;
  std::vector<std::string> notes;
};

/// Full pipeline on a validated family.
inline InvariantReport compute_invariants(const std::vector<DecoratedGraph>& graphs, int n, int k,
                                          bool assume_cobounding) {
  InvariantReport r;
  r.n = n;
  r.k = k;
  r.chi = euler_characteristic(graphs, n, k);
  for (const auto& g : graphs) {
    const GraphCounts c = graph_counts(g);
    r.s_black += static_cast<long long>(c.s_black);
    r.t += c.t;
    r.g = c.g;
  }

  try {
    r.cup_form = k == 0 ? assemble_cup_form(graphs) : assemble_cup_form_k(graphs);
    if (k > 0) r.notes.push_back("k >= 1 cup form built from the A^{-1} block of each linking matrix");
  } catch (const UnsupportedShapeError& e) {
    r.notes.push_back(std::string("cup form not computed: ") + e.what());
  }
  if (r.cup_form) {
    CupFormAnalysis a = analyze_cup_form(*r.cup_form);
    r.inertia = a.inertia;
    r.sigma = a.sigma;
    r.kernel_basis = std::move(a.kernel_basis);
    r.kernel_dim = a.kernel_dim;
    if (!r.cup_form->is_symmetric_form()) r.notes.push_back("skew cup form: signature is 0 by convention");
  }

  r.family = detect_canonical_family(graphs);
  if (r.family) {
    r.homology = canonical_homology_ranks(*r.family, n, k, static_cast<long long>(graphs.front().link(
                                                                 graphs.front().black_vertices().front()).d()));
    if (r.homology->euler() != r.chi)
      throw InternalInvariantError("canonical homology table disagrees with the Euler characteristic");
    if (n % 2 == 0 && r.sigma && (r.chi - *r.sigma) % 2 != 0)
      throw InternalInvariantError("chi and sigma have different parity on a canonical 4m-manifold");
  }

  if (assume_cobounding) {
    r.phi = phi_bounds(graphs, n, k, true, r.sigma);
  } else {
    r.notes.push_back("phi bounds not computed: assume_cobounding is false");
  }

  const int base = n - k;
  if (base % 2 != 0 && r.chi != 0)
    r.verdicts.push_back("chi(M) = " + std::to_string(r.chi) + " != 0 = chi(S^" + std::to_string(base) +
                         ") chi(F): M does not fiber over S^" + std::to_string(base));
  if (base % 2 == 0 && r.chi % 2 != 0)
    r.verdicts.push_back("chi(M) = " + std::to_string(r.chi) + " is odd but chi(S^" + std::to_string(base) +
                         ") chi(F) is even: M does not fiber over S^" + std::to_string(base));
  if (r.sigma && *r.sigma != 0 && base >= 2)
    r.verdicts.push_back("sigma(M) = " + std::to_string(*r.sigma) + " != 0 but a fibration over S^" +
                         std::to_string(base) + " has signature 0: M does not fiber over S^" + std::to_string(base));
  if (r.family)
    r.verdicts.push_back(std::string("canonical ") + to_string(*r.family) + " graph: phi(M, S^" +
                         std::to_string(base) + ") = 1");

  if (n % 2 == 0 && k == 0 && r.sigma) {
    const bool agree = ((*r.sigma - r.s_black) % 2) == 0;
    r.notes.push_back(std::string("sigma = s (mod 2): ") + (agree ? "agrees" : "disagrees") +
                      " (reported only, not asserted)");
  }
  return r;
}

}  // namespace hopfcalc
