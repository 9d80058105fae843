#pragma once

// Integral epsilon-symmetric bilinear forms and the classification of
// indefinite even unimodular forms as p E8 + q H.

#include <cstdint>
#include <optional>
#include <string>

#include "hopfcalc/exactlinalg.hpp"

namespace hopfcalc {

/// Square integer matrix with a declared symmetry sign: matrix^T = epsilon * matrix.
class BilinearForm {
 public:
  BilinearForm() = default;
  BilinearForm(IntMatrix matrix, int epsilon) : matrix_(std::move(matrix)), epsilon_(epsilon) {
    if (epsilon_ != 1 && epsilon_ != -1) throw DomainError("epsilon must be +1 or -1");
    if (!matrix_.is_square())
      throw DimensionError("bilinear form needs a square matrix, got " + std::to_string(matrix_.rows()) +
                           "x" + std::to_string(matrix_.cols()));
    if (epsilon_ == 1 ? !is_symmetric(matrix_) : !is_skew(matrix_))
      throw SymmetryError(epsilon_ == 1 ? "declared symmetric but matrix^T != matrix"
                                        : "declared skew but matrix^T != -matrix");
  }

  static BilinearForm symmetric(IntMatrix m) { return BilinearForm(std::move(m), 1); }
  static BilinearForm skew(IntMatrix m) { return BilinearForm(std::move(m), -1); }

  const IntMatrix& matrix() const { return matrix_; }
  int epsilon() const { return epsilon_; }
  std::size_t rank() const { return matrix_.rows(); }
  bool is_symmetric_form() const { return epsilon_ == 1; }

  bool has_zero_diagonal() const {
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      if (matrix_(i, i) != 0) return false;
    return true;
  }

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

 private:
  IntMatrix matrix_;
  int epsilon_ = 1;
};

inline BilinearForm direct_sum(const BilinearForm& a, const BilinearForm& b) {
  if (a.epsilon() != b.epsilon()) throw SymmetryError("direct sum of forms with different epsilon");
  return BilinearForm(direct_sum(a.matrix(), b.matrix()), a.epsilon());
}

/// Cartan matrix of E8 in the labelling used throughout this library: a chain
/// 1-2-3-4-5-6-7 with node 8 attached to node 5, off-diagonal entries +1.
inline const IntMatrix& e8_matrix() {
  static const IntMatrix m{
      {2, 1, 0, 0, 0, 0, 0, 0},  //
      {1, 2, 1, 0, 0, 0, 0, 0},  //
      {0, 1, 2, 1, 0, 0, 0, 0},  //
      {0, 0, 1, 2, 1, 0, 0, 0},  //
      {0, 0, 0, 1, 2, 1, 0, 1},  //
      {0, 0, 0, 0, 1, 2, 1, 0},  //
      {0, 0, 0, 0, 0, 1, 2, 0},  //
      {0, 0, 0, 0, 1, 0, 0, 2},
  };
  return m;
}

inline const IntMatrix& h_matrix() {
  static const IntMatrix m{{0, 1}, {1, 0}};
  return m;
}

/// The rank-2 unimodular skew form [[0,1],[-1,0]].
inline const IntMatrix& j_matrix() {
  static const IntMatrix m{{0, 1}, {-1, 0}};
  return m;
}

enum class Parity { even, odd };
enum class Definiteness { positive, negative, indefinite, degenerate, not_applicable };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }
inline const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive: return "positive";
    case Definiteness::negative: return "negative";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::degenerate: return "degenerate";
    case Definiteness::not_applicable: return "not_applicable";
  }
  return "?";
}

struct FormClass {
  Parity parity = Parity::even;
  Definiteness definiteness = Definiteness::not_applicable;
  bool unimodular = false;
  Integer det = 0;
  std::optional<Inertia> inertia;  // symmetric forms only
  // Populated only for even indefinite unimodular symmetric forms.
  std::optional<long long> p;
  std::optional<long long> q;
};

/// Parity, definiteness and unimodularity. Skew forms are even with
/// definiteness `not_applicable`.
inline FormClass form_type(const BilinearForm& f) {
  FormClass c;
  const IntMatrix& m = f.matrix();
  c.parity = Parity::even;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, i) % 2 != 0) c.parity = Parity::odd;
  c.det = det_bareiss(m);
  c.unimodular = (c.det == 1 || c.det == -1);
  if (!f.is_symmetric_form()) {
    c.definiteness = Definiteness::not_applicable;
    return c;
  }
  const Inertia in = inertia(m);
  c.inertia = in;
  if (in.zero > 0)
    c.definiteness = Definiteness::degenerate;
  else if (in.negative == 0)
    c.definiteness = Definiteness::positive;
  else if (in.positive == 0)
    c.definiteness = Definiteness::negative;
  else
    c.definiteness = Definiteness::indefinite;
  const long long sigma = in.signature();
  if (c.parity == Parity::even && c.definiteness == Definiteness::indefinite && c.unimodular && sigma % 8 == 0) {
    const long long p = sigma / 8;
    c.p = p;
    c.q = (static_cast<long long>(f.rank()) - 8 * (p < 0 ? -p : p)) / 2;
  }
  return c;
}

struct IndefiniteClass {
  long long p = 0;  // signed: negative p means |p| copies of -E8
  long long q = 0;
  friend bool operator==(const IndefiniteClass&, const IndefiniteClass&) = default;
};

/// (p, q) with f equivalent to p E8 + q H, for even indefinite unimodular symmetric f.
inline IndefiniteClass classify_indefinite(const BilinearForm& f) {
  if (!f.is_symmetric_form()) throw DomainError("classification needs a symmetric form");
  const FormClass c = form_type(f);
  if (c.parity == Parity::odd) throw DomainError("classification needs an even form (odd diagonal entry found)");
  if (c.definiteness == Definiteness::degenerate) throw DomainError("classification needs a nondegenerate form");
  if (c.definiteness != Definiteness::indefinite) throw DomainError("classification needs an indefinite form");
  const long long sigma = c.inertia->signature();
  if (sigma % 8 != 0)
    throw DomainError("signature " + std::to_string(sigma) +
                      " is not divisible by 8; an even form with this signature is not unimodular");
  if (!c.unimodular) throw DomainError("classification needs a unimodular form (det = " + c.det.str() + ")");
  return {*c.p, *c.q};
}

/// Block diagonal |p| copies of sign(p) E8 followed by q copies of H.
inline BilinearForm build_standard(long long p, long long q) {
  if (q < 0) throw DomainError("q must be nonnegative");
  IntMatrix m;
  const IntMatrix e8 = p < 0 ? IntMatrix(-e8_matrix()) : e8_matrix();
  for (long long i = 0; i < (p < 0 ? -p : p); ++i) m = direct_sum(m, e8);
  for (long long i = 0; i < q; ++i) m = direct_sum(m, h_matrix());
  return BilinearForm::symmetric(std::move(m));
}

/// Basis change e'_i = e_i + f1 - f2 on every E8 basis vector (f1, f2 the
/// first hyperbolic pair); rows of the result are the new basis vectors.
/// For -E8 blocks the correction is f1 + f2.
inline IntMatrix zero_diagonal_basis_change(long long p, long long q) {
  if (q < 1) throw DomainError("zero-diagonal model needs q >= 1 (no isotropic H factor available)");
  const std::size_t e8_dim = static_cast<std::size_t>(8 * (p < 0 ? -p : p));
  const std::size_t n = e8_dim + static_cast<std::size_t>(2 * q);
  IntMatrix m = IntMatrix::identity(n);
  const std::size_t f1 = e8_dim, f2 = e8_dim + 1;
  for (std::size_t i = 0; i < e8_dim; ++i) {
    m(i, f1) = 1;
    m(i, f2) = p < 0 ? 1 : -1;
  }
  return m;
}

/// Full Gram matrix of p E8 + q H in the zero-diagonal basis. Within an E8
/// block every entry drops by 2, but the new vectors also pair with the first
/// H summand (e'.f1 = -1, e'.f2 = 1), so the result is not block diagonal.
inline BilinearForm zero_diagonal_model(long long p, long long q) {
  const IntMatrix change = zero_diagonal_basis_change(p, q);
  return BilinearForm::symmetric(congruence_apply(change, build_standard(p, q).matrix()));
}

/// Ã: border A with a first row of 1s and a first column of epsilon, zero corner.
inline BilinearForm tilde_extend(const BilinearForm& a) {
  if (!a.has_zero_diagonal()) throw DomainError("tilde_extend needs a zero-diagonal matrix");
  const std::size_t d = a.rank();
  IntMatrix m(d + 1, d + 1);
  for (std::size_t j = 1; j <= d; ++j) {
    m(0, j) = 1;
    m(j, 0) = a.epsilon();
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i + 1, j + 1) = a.matrix()(i, j);
  return BilinearForm(std::move(m), a.epsilon());
}

enum class Equivalence { equivalent, inequivalent, unknown };

inline const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::inequivalent: return "inequivalent";
    case Equivalence::unknown: return "unknown";
  }
  return "?";
}

/// Invariant-based equivalence decision over Z. Never searches for a congruence.
inline Equivalence decide_equivalent(const BilinearForm& f, const BilinearForm& g) {
  if (f.epsilon() != g.epsilon()) return Equivalence::inequivalent;
  if (f.rank() != g.rank()) return Equivalence::inequivalent;
  const Integer df = det_bareiss(f.matrix());
  const Integer dg = det_bareiss(g.matrix());
  if (df != dg) return Equivalence::inequivalent;

  if (!f.is_symmetric_form()) {
    // Unimodular skew forms of equal rank are all hyperbolic.
    return (df == 1) ? Equivalence::equivalent : Equivalence::unknown;
  }

  const FormClass cf = form_type(f);
  const FormClass cg = form_type(g);
  if (cf.parity != cg.parity || *cf.inertia != *cg.inertia) return Equivalence::inequivalent;
  if (cf.parity == Parity::even && cf.definiteness == Definiteness::indefinite && cf.unimodular)
    return Equivalence::equivalent;
  return Equivalence::unknown;
}

}  // namespace hopfcalc
