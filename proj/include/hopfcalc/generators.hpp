#pragma once

// Seeded random generators for unimodular forms, symmetric matrices and
// single-black-vertex trees. Draws use `engine() % range` rather than the
// standard distributions so that a seed gives the same data on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "hopfcalc/exactlinalg.hpp"
#include "hopfcalc/forms.hpp"
#include "hopfcalc/graphmodel.hpp"

namespace hopfcalc {

class FormGenerator {
 public:
  explicit FormGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(engine_() % span);
  }

  bool coin() { return engine_() & 1u; }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[static_cast<std::size_t>(uniform(0, i - 1))]);
    return p;
  }

  /// Product of random transvections, a permutation and sign changes.
  IntMatrix unimodular(std::size_t n, int steps = 12) {
    IntMatrix m = IntMatrix::identity(n);
    if (n == 0) return m;
    for (int s = 0; s < steps && n > 1; ++s) {
      const auto i = static_cast<std::size_t>(uniform(0, n - 1));
      auto j = static_cast<std::size_t>(uniform(0, n - 2));
      if (j >= i) ++j;
      m.add_row(i, j, Integer(nonzero(2)));
    }
    const auto p = permutation(n);
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const Integer sign = coin() ? 1 : -1;
      for (std::size_t j = 0; j < n; ++j) out(i, j) = sign * m(p[i], j);
    }
    return out;
  }

  /// Random congruence of a zero-diagonal skew form; zero diagonal is automatic.
  BilinearForm skew_congruent(const BilinearForm& seed, int steps = 12) {
    return BilinearForm::skew(congruence_apply(unimodular(seed.rank(), steps), seed.matrix()));
  }

  /// Random congruence of a zero-diagonal symmetric form that keeps the
  /// diagonal zero: e_i -> e_i + c e_j + c' e_k with c b_ij + c' (b_ik + c b_jk) = 0,
  /// followed by a permutation and sign changes. Entries stay within `bound`.
  BilinearForm symmetric_zero_diagonal_congruent(const BilinearForm& seed, int steps = 12, long long bound = 40) {
    IntMatrix a = seed.matrix();
    const std::size_t n = a.rows();
    for (int s = 0, tries = 0; s < steps && n >= 2 && tries < 50 * steps; ++tries) {
      const auto i = static_cast<std::size_t>(uniform(0, n - 1));
      auto j = static_cast<std::size_t>(uniform(0, n - 2));
      if (j >= i) ++j;
      const Integer c = nonzero(2);
      IntMatrix m = IntMatrix::identity(n);
      m(i, j) = c;
      if (a(i, j) != 0) {
        if (n < 3) continue;
        auto k = static_cast<std::size_t>(uniform(0, n - 1));
        if (k == i || k == j) continue;
        const Integer den = a(i, k) + c * a(j, k);
        if (den == 0 || (c * a(i, j)) % den != 0) continue;
        m(i, k) = -(c * a(i, j)) / den;
      }
      IntMatrix next = congruence_apply(m, a);
      if (max_abs(next) > bound) continue;
      a = std::move(next);
      ++s;
    }
    const auto p = permutation(n);
    IntMatrix pm(n, n);
    for (std::size_t i = 0; i < n; ++i) pm(i, p[i]) = coin() ? 1 : -1;
    return BilinearForm::symmetric(congruence_apply(pm, a));
  }

  /// Random symmetric matrix with entries in [-range, range]; about one in four
  /// is built as M D M^T with zeros in D so that degenerate cases occur.
  IntMatrix symmetric(std::size_t n, long long range = 3) {
    IntMatrix a(n, n);
    if (uniform(0, 3) == 0 && n > 1) {
      IntMatrix d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = coin() ? uniform(-2, 2) : 0;
      return congruence_apply(unimodular(n, 4), d);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = uniform(-range, range);
    return a;
  }

  /// Zero-diagonal unimodular form of the symmetry dictated by n, drawn from
  /// congruences of H^m (or J^m) and, for even n, p E8 + q H.
  BilinearForm zero_diagonal_unimodular(int n, std::size_t max_blocks = 3) {
    const auto m = static_cast<std::size_t>(uniform(1, static_cast<long long>(max_blocks)));
    if (n % 2 != 0) {
      IntMatrix j;
      for (std::size_t b = 0; b < m; ++b) j = direct_sum(j, j_matrix());
      return skew_congruent(BilinearForm::skew(j));
    }
    if (uniform(0, 3) == 0) return symmetric_zero_diagonal_congruent(zero_diagonal_model(coin() ? 1 : -1, 1));
    IntMatrix h;
    for (std::size_t b = 0; b < m; ++b) h = direct_sum(h, h_matrix());
    return symmetric_zero_diagonal_congruent(BilinearForm::symmetric(h));
  }

  /// One black vertex decorated by `form`, joined to d+1 white disk leaves in
  /// a random order.
  DecoratedGraph single_black_tree(const BilinearForm& form, int n) {
    DecoratedGraph g;
    g.vertices.push_back(BlackVertex{HopfLinkSpec(form, n)});
    const std::size_t leaves = form.rank() + 1;
    for (std::size_t i = 0; i < leaves; ++i) g.vertices.push_back(WhiteVertex{holed_disk_descriptor(n, 0)});
    const auto comps = permutation(leaves);
    for (std::size_t i = 0; i < leaves; ++i) g.edges.push_back(Edge{0, i + 1, comps[i], 0, ""});
    return g;
  }

 private:
  long long nonzero(long long range) {
    const long long v = uniform(1, range);
    return coin() ? v : -v;
  }

  static long long max_abs(const IntMatrix& a) {
    Integer best = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, Integer(abs(a(i, j))));
    return best > 1000000 ? 1000000 : static_cast<long long>(best);
  }

  std::mt19937_64 engine_;
};

}  // namespace hopfcalc
