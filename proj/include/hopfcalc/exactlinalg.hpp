#pragma once

// Exact dense linear algebra over Z and Q.
//
// Everything here works on arbitrary-precision values; there is no floating
// point anywhere in the library. Matrices are small (tens of rows at most), so
// the algorithms favour clarity and determinism over asymptotic speed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hopfcalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

class NotUnimodularError : public Error {
 public:
  explicit NotUnimodularError(const Integer& det)
      : Error("matrix is not unimodular (det = " + det.str() + ")"), det_(det) {}
  const Integer& det() const { return det_; }

 private:
  Integer det_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when two independent computations that must agree do not.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

/// Dense row-major matrix with exact entries.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = -x;
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

template <class T>
bool is_symmetric(const Matrix<T>& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

template <class T>
bool is_skew(const Matrix<T>& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (a(i, j) != -a(j, i)) return false;
  return true;
}

template <class T>
T trace(const Matrix<T>& a) {
  T t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

namespace detail {

inline void require_square(const char* what, std::size_t rows, std::size_t cols) {
  if (rows != cols)
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
}

/// Positive integer scale that clears every denominator of a rational matrix.
inline Integer denominator_lcm(const RatMatrix& a) {
  Integer l = 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer d = boost::multiprecision::denominator(a(i, j));
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
  return l;
}

inline IntMatrix clear_denominators(const RatMatrix& a) {
  const Integer l = denominator_lcm(a);
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational scaled = a(i, j) * Rational(l);
      out(i, j) = boost::multiprecision::numerator(scaled);
    }
  return out;
}

inline IntMatrix to_integer_matrix(const IntMatrix& a) { return a; }
inline IntMatrix to_integer_matrix(const RatMatrix& a) { return clear_denominators(a); }

inline int sign(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      m.add_row(i, r, Rational(-m(i, c)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer det_bareiss(const IntMatrix& a) {
  detail::require_square("det_bareiss", a.rows(), a.cols());
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) {
  if (!a.is_square()) return false;
  const Integer d = det_bareiss(a);
  return d == 1 || d == -1;
}

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , all d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& x : diagonal())
      if (x != 0) ++r;
    return r;
  }
};

/// Smith normal form. The pivot is always the nonzero entry of least absolute
/// value in the active block, first in row-major order, so U and V are
/// reproducible for a fixed input.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& D = s.D;

  auto find_pivot = [&](std::size_t t) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (D(i, j) == 0) continue;
        Integer v = abs(D(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
        }
      }
    return best;
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool exhausted = false;
    for (;;) {
      auto pivot = find_pivot(t);
      if (!pivot) {
        exhausted = true;
        break;
      }
      D.swap_rows(t, pivot->first);
      s.U.swap_rows(t, pivot->first);
      D.swap_cols(t, pivot->second);
      s.V.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = D(i, t) / D(t, t);
        D.add_row(i, t, Integer(-q));
        s.U.add_row(i, t, Integer(-q));
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = D(t, j) / D(t, t);
        D.add_col(j, t, Integer(-q));
        s.V.add_col(j, t, Integer(-q));
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_t | every entry of the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, Integer(1));
            s.U.add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (exhausted) break;
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < m; ++j) s.U(t, j) = -s.U(t, j);
    }
  }
  return s;
}

/// Inverse over Q; throws DomainError for singular input.
template <class T>
RatMatrix inverse_rational(const Matrix<T>& a) {
  detail::require_square("inverse_rational", a.rows(), a.cols());
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = Rational(a(i, j));
    aug(i, n + i) = 1;
  }
  auto pivots = detail::rref_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw DomainError("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Integer inverse of a matrix with det = +-1.
inline IntMatrix inverse_unimodular(const IntMatrix& a) {
  detail::require_square("inverse_unimodular", a.rows(), a.cols());
  const Integer d = det_bareiss(a);
  if (d != 1 && d != -1) throw NotUnimodularError(d);
  const RatMatrix inv = inverse_rational(a);
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (boost::multiprecision::denominator(inv(i, j)) != 1)
        throw InternalInvariantError("inverse of a unimodular matrix is not integral");
      out(i, j) = boost::multiprecision::numerator(inv(i, j));
    }
  return out;
}

/// Basis of the right nullspace over Q.
///
/// `rational[i]` has first nonzero coordinate 1; `integral[i]` is the same
/// direction scaled to a primitive integer vector with positive leading entry.
struct Nullspace {
  std::vector<std::vector<Rational>> rational;
  std::vector<std::vector<Integer>> integral;

  std::size_t dimension() const { return rational.size(); }
};

template <class T>
Nullspace nullspace_rational(const Matrix<T>& a) {
  RatMatrix r = a.template cast<Rational>();
  const auto pivots = detail::rref_in_place(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  Nullspace ns;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t row = 0; row < pivots.size(); ++row) v[pivots[row]] = -r(row, f);

    Rational lead = 0;
    for (const auto& x : v)
      if (x != 0) {
        lead = x;
        break;
      }
    for (auto& x : v) x /= lead;

    Integer l = 1;
    for (const auto& x : v) {
      Integer d = boost::multiprecision::denominator(x);
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
    std::vector<Integer> w(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      w[i] = boost::multiprecision::numerator(v[i] * Rational(l));
      g = boost::multiprecision::gcd(g, w[i]);
    }
    if (g > 1)
      for (auto& x : w) x /= g;
    ns.rational.push_back(std::move(v));
    ns.integral.push_back(std::move(w));
  }
  return ns;
}

template <class T>
std::size_t rank_rational(const Matrix<T>& a) {
  RatMatrix r = a.template cast<Rational>();
  return detail::rref_in_place(r).size();
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  long long signature() const {
    return static_cast<long long>(positive) - static_cast<long long>(negative);
  }
  std::size_t dimension() const { return positive + negative + zero; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Inertia& in) {
  return os << '(' << in.positive << ',' << in.negative << ',' << in.zero << ')';
}

/// Inertia by symmetric LDL^T over Q.
///
/// Pivots on the largest-magnitude diagonal entry. When the remaining diagonal
/// is entirely zero but an off-diagonal b survives, the 2x2 block [[0,b],[b,0]]
/// is eliminated at once and contributes one positive and one negative square.
template <class T>
Inertia inertia_ldlt(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("inertia: expected a square matrix");
  if (!is_symmetric(a)) throw SymmetryError("inertia: matrix is not symmetric");
  RatMatrix s = a.template cast<Rational>();
  std::vector<std::size_t> active(a.rows());
  std::iota(active.begin(), active.end(), std::size_t{0});
  Inertia in;

  auto erase = [&](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

  while (!active.empty()) {
    std::optional<std::size_t> diag;
    for (auto i : active)
      if (s(i, i) != 0 && (!diag || abs(s(i, i)) > abs(s(*diag, *diag)))) diag = i;

    if (diag) {
      const std::size_t p = *diag;
      const Rational piv = s(p, p);
      (piv > 0 ? in.positive : in.negative) += 1;
      erase(p);
      for (auto i : active) {
        if (s(i, p) == 0) continue;
        const Rational f = s(i, p) / piv;
        for (auto j : active) s(i, j) -= f * s(p, j);
      }
      continue;
    }

    std::optional<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t x = 0; x < active.size(); ++x)
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const auto i = active[x], j = active[y];
        if (s(i, j) != 0 && (!off || abs(s(i, j)) > abs(s(off->first, off->second)))) off = {i, j};
      }
    if (!off) {
      in.zero += active.size();
      break;
    }

    const auto [p, q] = *off;
    const Rational b = s(p, q);
    in.positive += 1;
    in.negative += 1;
    erase(p);
    erase(q);
    // Schur complement with inverse [[0,1/b],[1/b,0]].
    RatMatrix next = s;
    for (auto i : active)
      for (auto j : active) next(i, j) = s(i, j) - (s(i, p) * s(q, j) + s(i, q) * s(p, j)) / b;
    s = std::move(next);
  }
  return in;
}

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier with exact
/// division; coefficient i multiplies x^i, so the result has size n + 1.
inline std::vector<Integer> characteristic_polynomial(const IntMatrix& a) {
  detail::require_square("characteristic_polynomial", a.rows(), a.cols());
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1, Integer(0));
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    const Integer tr = trace(a * m);
    if (tr % Integer(k) != 0) throw InternalInvariantError("Faddeev-LeVerrier division is not exact");
    c[n - k] = -tr / Integer(k);
  }
  return c;
}

/// Inertia from sign variations of the characteristic polynomial.
///
/// Valid because a symmetric matrix has only real eigenvalues, so Descartes'
/// bound is attained exactly once the x^nullity factor is divided out.
template <class T>
Inertia inertia_charpoly(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("inertia: expected a square matrix");
  if (!is_symmetric(a)) throw SymmetryError("inertia: matrix is not symmetric");
  // A positive rescaling of a rational matrix leaves its inertia unchanged.
  const IntMatrix m = detail::to_integer_matrix(a);
  const auto c = characteristic_polynomial(m);
  std::size_t nz = 0;
  while (nz < c.size() && c[nz] == 0) ++nz;

  auto variations = [&](bool negate_odd) {
    std::size_t v = 0;
    int last = 0;
    for (std::size_t i = nz; i < c.size(); ++i) {
      int sg = detail::sign(c[i]);
      if (sg == 0) continue;
      if (negate_odd && ((i - nz) % 2 == 1)) sg = -sg;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  };

  Inertia in{variations(false), variations(true), nz};
  if (in.positive + in.negative + nz != m.rows())
    throw InternalInvariantError("characteristic polynomial has non-real roots");
  return in;
}

/// Default inertia routine (LDL^T). `inertia_charpoly` is the independent check.
template <class T>
Inertia inertia(const Matrix<T>& a) {
  return inertia_ldlt(a);
}

/// M * A * M^T.
inline IntMatrix congruence_apply(const IntMatrix& m, const IntMatrix& a) {
  detail::require_square("congruence_apply (M)", m.rows(), m.cols());
  detail::require_square("congruence_apply (A)", a.rows(), a.cols());
  if (m.cols() != a.rows())
    throw DimensionError("congruence_apply: M is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " but A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  return m * a * m.transpose();
}

}  // namespace hopfcalc
