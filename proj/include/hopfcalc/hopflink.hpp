#pragma once

// Generalized Hopf links K_A described by their matrix data.
//
// A link is given by a zero-diagonal (-1)^n-symmetric d x d matrix A. Its d+1
// components are indexed 0..d, component 0 being the preferred one that every
// other component links once.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopfcalc/exactlinalg.hpp"
#include "hopfcalc/forms.hpp"

namespace hopfcalc {

/// Rational Betti numbers of a compact manifold (possibly with boundary).
struct FiberDescriptor {
  std::vector<long long> betti;  // b_0 .. b_dim
  int dim = 0;
  std::size_t boundary_components = 0;
  long long euler = 0;

  /// Builds a descriptor, padding betti with zeros up to `dim` and filling euler.
  static FiberDescriptor from_betti(std::vector<long long> betti, int dim, std::size_t boundary_components) {
    if (dim < 0) throw DomainError("fiber dimension must be nonnegative");
    if (betti.size() > static_cast<std::size_t>(dim) + 1)
      throw DomainError("betti vector longer than dimension + 1");
    betti.resize(static_cast<std::size_t>(dim) + 1, 0);
    FiberDescriptor f{std::move(betti), dim, boundary_components, 0};
    f.euler = f.alternating_sum();
    f.check();
    return f;
  }

  long long alternating_sum() const {
    long long chi = 0;
    for (std::size_t i = 0; i < betti.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * betti[i];
    return chi;
  }

  void check() const {
    for (auto b : betti)
      if (b < 0) throw DomainError("negative betti number");
    if (betti.empty() || betti[0] < 1) throw DomainError("b_0 must be at least 1");
    if (euler != alternating_sum()) throw InternalInvariantError("euler characteristic disagrees with betti numbers");
  }

  friend bool operator==(const FiberDescriptor&, const FiberDescriptor&) = default;
};

/// Closed sphere S^m.
inline FiberDescriptor sphere_descriptor(int m) {
  std::vector<long long> b(static_cast<std::size_t>(m) + 1, 0);
  b[0] += 1;
  b[static_cast<std::size_t>(m)] += 1;
  return FiberDescriptor::from_betti(std::move(b), m, 0);
}

/// D^m with `holes` open balls removed.
inline FiberDescriptor holed_disk_descriptor(int m, std::size_t holes) {
  std::vector<long long> b(static_cast<std::size_t>(m) + 1, 0);
  b[0] = 1;
  if (m >= 1) b[static_cast<std::size_t>(m - 1)] += static_cast<long long>(holes);
  return FiberDescriptor::from_betti(std::move(b), m, holes + 1);
}

/// A zero-diagonal unimodular-candidate matrix A plus the dimensions of the link.
class HopfLinkSpec {
 public:
  HopfLinkSpec(BilinearForm a, int n, int k = 0, Integer theta = 1)
      : form_(std::move(a)), n_(n), k_(k), theta_(std::move(theta)) {
    if (form_.rank() < 1) throw DomainError("a Hopf link needs d >= 1");
    if (n_ < 2) throw DomainError("n must be at least 2");
    if (!form_.has_zero_diagonal()) throw DomainError("linking matrix must have zero diagonal");
    const int expected = (n_ % 2 == 0) ? 1 : -1;
    if (form_.epsilon() != expected)
      throw SymmetryError("n = " + std::to_string(n_) + " requires a " +
                          (expected == 1 ? "symmetric" : "skew-symmetric") + " linking matrix");
    if (k_ < 0 || k_ > n_ - 1) throw DomainError("k must satisfy 0 <= k <= n - 1");
    if (theta_ < 1) throw DomainError("theta must be a positive integer");
  }

  const BilinearForm& form() const { return form_; }
  const IntMatrix& matrix() const { return form_.matrix(); }
  int epsilon() const { return form_.epsilon(); }
  std::size_t d() const { return form_.rank(); }
  int n() const { return n_; }
  int k() const { return k_; }
  const Integer& theta() const { return theta_; }

  /// d + 1 spheres for k = 0; the projected link is connected for k >= 1.
  std::size_t component_count() const { return k_ == 0 ? d() + 1 : 1; }

  friend bool operator==(const HopfLinkSpec&, const HopfLinkSpec&) = default;

 private:
  BilinearForm form_;
  int n_ = 3;
  int k_ = 0;
  Integer theta_ = 1;
};

/// Linking matrix of K_A in the canonical framing, indexed by components 0..d.
///
/// The interior block is A^{-1}; row 0 carries minus the column sums of A^{-1},
/// the corner is the total sum, and column 0 follows from epsilon-symmetry.
/// Works for any unimodular epsilon-symmetric A (zero diagonal not required).
inline IntMatrix derived_linking_matrix(const BilinearForm& a) {
  const IntMatrix inv = inverse_unimodular(a.matrix());
  const std::size_t d = a.rank();
  IntMatrix star(d + 1, d + 1);
  Integer total = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      star(i + 1, j + 1) = inv(i, j);
      total += inv(i, j);
    }
  for (std::size_t j = 0; j < d; ++j) {
    Integer col = 0;
    for (std::size_t k = 0; k < d; ++k) col += inv(k, j);
    star(0, j + 1) = -col;
    star(j + 1, 0) = a.epsilon() * star(0, j + 1);
  }
  star(0, 0) = total;
  return star;
}

inline IntMatrix derived_linking_matrix(const HopfLinkSpec& link) { return derived_linking_matrix(link.form()); }

/// The presentation of H_{n-1}(X_s) has a cokernel other than Z.
class CokernelError : public Error {
 public:
  CokernelError(std::vector<Integer> torsion, std::size_t free_rank)
      : Error(describe(torsion, free_rank)), torsion_(std::move(torsion)), free_rank_(free_rank) {}

  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t free_rank() const { return free_rank_; }

  static std::string describe(const std::vector<Integer>& torsion, std::size_t free_rank) {
    std::string s = "cokernel is Z^" + std::to_string(free_rank);
    for (const auto& t : torsion) s += " + Z/" + t.str();
    return s + ", expected Z (A is not unimodular)";
  }

 private:
  std::vector<Integer> torsion_;
  std::size_t free_rank_;
};

struct PresentationResult {
  IntMatrix relations;               // rows are relations, columns are generators
  std::vector<std::string> generators;
  std::vector<Integer> linking;      // image of the class of K_j (K_s^# for j = s), j = 0..d
};

/// Rebuilds H_{n-1}(X_s) from its generators-and-relations presentation,
/// identifies the cokernel with Z through Smith normal form, and evaluates the
/// classes of the link components there.
///
/// Generators are mu_0..mu_d followed by delta_i for i in {0..d} \ {s}.
/// The class of K_j is mu_j for j >= 1 and -(mu_1 + ... + mu_d) for j = 0.
/// The identification with Z is unique up to sign, so `linking` equals column
/// s of the derived linking matrix up to one global sign.
inline PresentationResult presentation_oracle(const BilinearForm& a, std::size_t s) {
  const std::size_t d = a.rank();
  if (s > d) throw DomainError("component index " + std::to_string(s) + " out of range 0.." + std::to_string(d));
  const IntMatrix& A = a.matrix();

  PresentationResult out;
  std::vector<std::size_t> delta_of(d + 1, 0);
  for (std::size_t j = 0; j <= d; ++j) out.generators.push_back("mu" + std::to_string(j));
  for (std::size_t i = 0; i <= d; ++i) {
    if (i == s) continue;
    delta_of[i] = out.generators.size();
    out.generators.push_back("delta" + std::to_string(i));
  }
  const std::size_t g = out.generators.size();
  auto mu = [](std::size_t j) { return j; };

  std::vector<std::vector<Integer>> rows;
  auto relation = [&]() -> std::vector<Integer>& { return rows.emplace_back(g, Integer(0)); };

  if (s != 0) {
    auto& r0 = relation();  // delta_0 + sum mu_j
    r0[delta_of[0]] = 1;
    for (std::size_t j = 1; j <= d; ++j) r0[mu(j)] = 1;
    for (std::size_t i = 1; i <= d; ++i) {
      if (i == s) continue;
      auto& r = relation();  // mu_i - delta_i
      r[mu(i)] = 1;
      r[delta_of[i]] = -1;
    }
    relation()[mu(0)] = 1;  // mu_0
    for (std::size_t i = 1; i <= d; ++i) {
      if (i == s) continue;
      auto& r = relation();  // sum_j A_ij mu_j
      for (std::size_t j = 1; j <= d; ++j) r[mu(j)] = A(i - 1, j - 1);
    }
  } else {
    for (std::size_t i = 1; i <= d; ++i) {
      auto& r = relation();  // mu_i - delta_i
      r[mu(i)] = 1;
      r[delta_of[i]] = -1;
    }
    for (std::size_t i = 1; i <= d; ++i) {
      auto& r = relation();  // mu_0 + sum_j A_ij mu_j
      r[mu(0)] = 1;
      for (std::size_t j = 1; j <= d; ++j) r[mu(j)] = A(i - 1, j - 1);
    }
  }
  out.relations = IntMatrix::from_rows(rows);

  const SmithForm snf = smith_normal_form(out.relations);
  const auto diag = snf.diagonal();
  std::vector<Integer> torsion;
  std::size_t rank = 0;
  for (const auto& x : diag) {
    if (x == 0) continue;
    ++rank;
    if (x != 1) torsion.push_back(x);
  }
  const std::size_t free_rank = g - rank;
  if (!torsion.empty() || free_rank != 1) throw CokernelError(std::move(torsion), free_rank);

  // Coordinates in the Smith basis are x * V; the last column is the free one.
  const std::size_t free_col = g - 1;
  auto project = [&](const std::vector<Integer>& x) {
    Integer v = 0;
    for (std::size_t i = 0; i < g; ++i) v += x[i] * snf.V(i, free_col);
    return v;
  };

  out.linking.resize(d + 1);
  std::vector<Integer> cls(g, Integer(0));
  for (std::size_t j = 1; j <= d; ++j) cls[mu(j)] = -1;
  out.linking[0] = project(cls);
  for (std::size_t j = 1; j <= d; ++j) {
    std::fill(cls.begin(), cls.end(), Integer(0));
    cls[mu(j)] = 1;
    out.linking[j] = project(cls);
  }
  return out;
}

inline PresentationResult presentation_oracle(const HopfLinkSpec& link, std::size_t s) {
  return presentation_oracle(link.form(), s);
}

inline bool equal_up_to_sign(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.size() != b.size()) return false;
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus = plus && a[i] == b[i];
    minus = minus && a[i] == -b[i];
  }
  return plus || minus;
}

struct AdmissibilityReport {
  Integer det = 0;
  bool unimodular = false;
  bool skew_size_even = true;  // a unimodular skew form has even rank
  bool admissible = false;     // K_A is fibered in a homotopy sphere
  bool directly_fibered = false;
  // Constructions that turn X_A into the standard sphere when n > 3.
  std::size_t doubled_size = 0;        // A + (-A)
  std::size_t doubled_components = 0;  // 2d + 1
  Integer theta_sum_size = 0;          // theta copies of A
  std::vector<std::string> notes;
};

inline AdmissibilityReport admissibility_check(const HopfLinkSpec& link) {
  AdmissibilityReport r;
  const std::size_t d = link.d();
  r.det = det_bareiss(link.matrix());
  r.unimodular = (r.det == 1 || r.det == -1);
  r.skew_size_even = link.epsilon() == 1 || d % 2 == 0;
  r.admissible = r.unimodular && r.skew_size_even;
  if (!r.skew_size_even) r.notes.push_back("skew form of odd rank has determinant 0");
  if (!r.unimodular) {
    r.notes.push_back("det = " + r.det.str() + ": X_A is not a homotopy sphere, K_A is not fibered in a sphere");
    return r;
  }
  if (link.n() == 3) {
    r.directly_fibered = true;
    r.notes.push_back("n = 3: no exotic 5-spheres, K_A is a fibered link in S^5");
    return r;
  }
  r.doubled_size = 2 * d;
  r.doubled_components = 2 * d + 1;
  r.theta_sum_size = link.theta() * Integer(d);
  r.notes.push_back("K_{A+(-A)} is fibered in S^" + std::to_string(2 * link.n() - 1) + " with " +
                    std::to_string(r.doubled_components) + " components");
  r.notes.push_back("K_{theta*A} is fibered with theta = " + link.theta().str() + " (matrix size " +
                    r.theta_sum_size.str() + ")");
  if (link.theta() == 1) {
    r.directly_fibered = true;
    r.notes.push_back("theta = 1 declared: X_A is the standard sphere");
  }
  return r;
}

struct LinkDescriptors {
  FiberDescriptor fiber;
  FiberDescriptor link;
};

/// Local fiber and link of the k-fold projected singularity.
///
/// k = 0: fiber D^n minus d balls, link d+1 disjoint S^{n-1}.
/// k >= 1: fiber boundary connected sum of d copies of S^{n-1} x D^{k+1},
///         link the connected sum of d copies of S^{n-1} x S^k.
inline LinkDescriptors project_link_descriptor(const HopfLinkSpec& link) {
  const int n = link.n(), k = link.k();
  const auto d = static_cast<long long>(link.d());
  if (k >= n) throw DomainError("k must be below n");
  if (k == 0) {
    std::vector<long long> lb(static_cast<std::size_t>(n), 0);
    lb[0] += d + 1;
    lb[static_cast<std::size_t>(n - 1)] += d + 1;
    return {holed_disk_descriptor(n, link.d()), FiberDescriptor::from_betti(std::move(lb), n - 1, 0)};
  }
  std::vector<long long> fb(static_cast<std::size_t>(n + k) + 1, 0);
  fb[0] = 1;
  fb[static_cast<std::size_t>(n - 1)] += d;
  std::vector<long long> lb(static_cast<std::size_t>(n + k), 0);
  lb[0] += 1;
  lb[static_cast<std::size_t>(k)] += d;
  lb[static_cast<std::size_t>(n - 1)] += d;
  lb[static_cast<std::size_t>(n + k - 1)] += 1;
  return {FiberDescriptor::from_betti(std::move(fb), n + k, 1),
          FiberDescriptor::from_betti(std::move(lb), n + k - 1, 0)};
}

/// (S^1)^circles x S^sphere_dim.
struct LinkComponent {
  int circles = 0;
  int sphere_dim = 0;

  std::string name() const {
    std::string s;
    if (circles == 1) s = "S^1 x ";
    if (circles > 1) s = "(S^1)^" + std::to_string(circles) + " x ";
    return s + "S^" + std::to_string(sphere_dim);
  }
  friend bool operator==(const LinkComponent&, const LinkComponent&) = default;
};

struct SpinDescriptor {
  std::vector<LinkComponent> components;  // indexed like the original link
  FiberDescriptor fiber;
};

/// Spins component i off `times` times.
///
/// The spun component becomes S^{n+times-1}, every other one (S^1)^times x S^{n-1}.
/// The fiber is S^{n+times} minus a ball and d thickened tori (S^1)^times x D^n;
/// by Alexander duality its reduced homology sits in degrees N-1-j with rank
/// d * C(times, j), N = n + times, 0 <= j <= times.
inline SpinDescriptor spin_link_descriptor(const HopfLinkSpec& link, std::size_t i, int times = 1) {
  const std::size_t d = link.d();
  if (i > d) throw DomainError("spun component " + std::to_string(i) + " out of range 0.." + std::to_string(d));
  if (times < 1) throw DomainError("spinning must be applied at least once");
  const int n = link.n();
  SpinDescriptor out;
  for (std::size_t j = 0; j <= d; ++j)
    out.components.push_back(j == i ? LinkComponent{0, n + times - 1} : LinkComponent{times, n - 1});

  const int top = n + times;
  std::vector<long long> b(static_cast<std::size_t>(top) + 1, 0);
  b[0] = 1;
  long long binom = 1;
  for (int j = 0; j <= times; ++j) {
    b[static_cast<std::size_t>(top - 1 - j)] += static_cast<long long>(d) * binom;
    binom = binom * (times - j) / (j + 1);
  }
  out.fiber = FiberDescriptor::from_betti(std::move(b), top, d + 1);
  return out;
}

}  // namespace hopfcalc
