// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. All comparisons are exact.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hopfcalc/exactlinalg.hpp"
#include "hopfcalc/forms.hpp"
#include "hopfcalc/generators.hpp"
#include "hopfcalc/graphmodel.hpp"
#include "hopfcalc/hopflink.hpp"
#include "hopfcalc/invariants.hpp"
#include "oracles.hpp"

using namespace hopfcalc;
namespace fs = std::filesystem;

namespace {

/// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string str(const std::vector<Integer>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

BilinearForm decoration(int n) {
  return n % 2 == 0 ? BilinearForm::symmetric(h_matrix()) : BilinearForm::skew(j_matrix());
}

bool rows_sum_to_zero(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
    if (s != 0) return false;
  }
  return true;
}

// 1
void ground_truth(Check& c) {
  c.expect(oracle::cofactor_det(e8_matrix()) == 1 && det_bareiss(e8_matrix()) == 1, "det(E8) != 1");
  c.expect(oracle::cofactor_det(h_matrix()) == -1 && det_bareiss(h_matrix()) == -1, "det(H) != -1");
  c.expect(inertia(e8_matrix()) == Inertia{8, 0, 0}, "inertia(E8) != (8,0,0)");
  c.expect(inertia(h_matrix()) == Inertia{1, 1, 0}, "inertia(H) != (1,1,0)");
  const BilinearForm e8h = BilinearForm::symmetric(direct_sum(e8_matrix(), h_matrix()));
  const FormClass fc = form_type(e8h);
  c.expect(fc.parity == Parity::even && fc.definiteness == Definiteness::indefinite && fc.unimodular,
           "E8+H is not even indefinite unimodular");
  c.expect(classify_indefinite(e8h) == IndefiniteClass{1, 1}, "classify(E8+H) != (1,1)");
}

// 2
std::vector<BilinearForm> presentation_corpus() {
  std::vector<BilinearForm> out;
  for (long long b = -2; b <= 2; ++b) {
    const IntMatrix a{{0, b}, {b, 0}};
    if (abs(det_bareiss(a)) == 1) out.push_back(BilinearForm::symmetric(a));
  }
  for (long long b = -1; b <= 1; ++b)
    if (b != 0) out.push_back(BilinearForm::skew(IntMatrix{{0, b}, {-b, 0}}));
  // 4x4 skew forms with entries in [-1, 1] and Pfaffian +-1.
  for (int code = 0; code < 729; ++code) {
    std::array<long long, 6> e{};
    for (int i = 0, x = code; i < 6; ++i, x /= 3) e[static_cast<std::size_t>(i)] = x % 3 - 1;
    const long long pf = e[0] * e[5] - e[1] * e[4] + e[2] * e[3];
    if (pf != 1 && pf != -1) continue;
    IntMatrix a(4, 4);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        a(i, j) = e[idx];
        a(j, i) = -e[idx];
        ++idx;
      }
    out.push_back(BilinearForm::skew(a));
  }
  out.push_back(BilinearForm::symmetric(h_matrix()));
  out.push_back(BilinearForm::symmetric(direct_sum(e8_matrix(), h_matrix())));
  out.push_back(zero_diagonal_model(1, 1));
  return out;
}

void presentation_equivalence(Check& c) {
  std::size_t forms = 0;
  for (const BilinearForm& a : presentation_corpus()) {
    ++forms;
    const IntMatrix star = derived_linking_matrix(a);
    for (std::size_t s = 0; s <= a.rank(); ++s) {
      try {
        const PresentationResult p = presentation_oracle(a, s);
        // The relation matrix must present Z: rank = #generators - 1, all invariant factors 1.
        const SmithForm snf = smith_normal_form(p.relations);
        bool free_rank_one = snf.rank() + 1 == p.relations.cols();
        for (const auto& x : snf.diagonal())
          if (x != 0 && x != 1) free_rank_one = false;
        c.expect(free_rank_one, "cokernel is not Z for " + a.matrix().str() + " s=" + std::to_string(s));
        c.expect(equal_up_to_sign(p.linking, star.col(s)),
                 "linking " + str(p.linking) + " vs A* column " + str(star.col(s)) + " for " + a.matrix().str());
      } catch (const CokernelError& e) {
        c.expect(false, std::string("cokernel error: ") + e.what());
      }
    }
  }
  c.expect(forms > 300, "corpus unexpectedly small");
}

// 3
void row_sums(Check& c) {
  FormGenerator gen(3);
  int symmetric = 0, skew = 0, e8 = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = t % 2 == 0 ? 4 : 3;
    BilinearForm a = (t % 10 == 0) ? gen.symmetric_zero_diagonal_congruent(zero_diagonal_model(1, 1))
                                   : gen.zero_diagonal_unimodular(n);
    if (t % 10 == 0) ++e8;
    (a.epsilon() == 1 ? symmetric : skew) += 1;
    const Rational det = oracle::gauss_det(a.matrix());
    c.expect(a.has_zero_diagonal() && (det == 1 || det == -1), "generator produced a bad form");
    const IntMatrix star = derived_linking_matrix(a);
    c.expect(rows_sum_to_zero(star), "A* 1 != 0 for " + a.matrix().str());
    // The interior block must invert A.
    const std::size_t d = a.rank();
    IntMatrix inner(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) inner(i, j) = star(i + 1, j + 1);
    c.expect(inner * a.matrix() == IntMatrix::identity(d), "interior block is not A^-1 for " + a.matrix().str());
  }
  c.expect(symmetric > 0 && skew > 0 && e8 > 0, "corpus misses a symmetry sign or the E8+H seed");
}

// 4
void tree_kernel(Check& c) {
  FormGenerator gen(4);
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + t % 4;
    const BilinearForm a = gen.zero_diagonal_unimodular(n);
    const IntMatrix f = assemble_cup_form(gen.single_black_tree(a, n)).matrix();
    // Oracle: the all-ones vector is in the kernel and the rank over Q is rows - 1,
    // computed by exact Gaussian elimination on a rational copy.
    c.expect(rows_sum_to_zero(f), "all-ones vector not in kernel for " + a.matrix().str());
    std::vector<std::vector<Rational>> m(f.rows(), std::vector<Rational>(f.cols()));
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < f.cols(); ++j) m[i][j] = Rational(f(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < f.cols() && rank < f.rows(); ++col) {
      std::size_t p = rank;
      while (p < f.rows() && m[p][col] == 0) ++p;
      if (p == f.rows()) continue;
      std::swap(m[p], m[rank]);
      for (std::size_t r = 0; r < f.rows(); ++r)
        if (r != rank && m[r][col] != 0) {
          const Rational q = m[r][col] / m[rank][col];
          for (std::size_t j = col; j < f.cols(); ++j) m[r][j] -= q * m[rank][j];
        }
      ++rank;
    }
    c.expect(rank + 1 == f.rows(), "kernel dimension != 1 for " + a.matrix().str());
    const CupFormAnalysis an = analyze_cup_form(assemble_cup_form(gen.single_black_tree(a, n)));
    c.expect(an.kernel_dim == 1, "library kernel dimension != 1");
  }
}

// 5
void signature(Check& c) {
  const IntMatrix f = assemble_cup_form(
                          [] {
                            DecoratedGraph g;
                            const BilinearForm a = zero_diagonal_model(1, 1);
                            g.vertices.push_back(BlackVertex{HopfLinkSpec(a, 4)});
                            for (std::size_t i = 0; i <= a.rank(); ++i) {
                              g.vertices.push_back(WhiteVertex{holed_disk_descriptor(4, 0)});
                              g.edges.push_back(Edge{0, i + 1, i, 0, ""});
                            }
                            return g;
                          }())
                          .matrix();
  const oracle::Signs s = oracle::descartes_inertia(f);
  c.expect(static_cast<long long>(s.positive) - static_cast<long long>(s.negative) == 8, "oracle sigma != 8");
  c.expect(analyze_cup_form(BilinearForm::symmetric(f)).sigma == 8, "library sigma != 8");
  for (auto [p, q] : {std::pair{1LL, 1LL}, std::pair{1LL, 2LL}, std::pair{2LL, 1LL}}) {
    const BilinearForm z = zero_diagonal_model(p, q);
    const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    c.expect(z.has_zero_diagonal(), tag + " diagonal not zero");
    const Rational det = oracle::gauss_det(z.matrix());
    c.expect(det == 1 || det == -1, tag + " det != +-1");
    c.expect(form_type(z).parity == Parity::even, tag + " not even");
    const oracle::Signs zs = oracle::descartes_inertia(z.matrix());
    c.expect(static_cast<long long>(zs.positive) - static_cast<long long>(zs.negative) == 8 * p, tag + " sigma != 8p");
  }
}

// 6
DecoratedGraph random_all_black(FormGenerator& gen, int n) {
  DecoratedGraph g;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  const std::size_t s = gen.coin() ? 2 : 4;
  for (std::size_t v = 0; v < s; ++v) {
    const BilinearForm a = gen.zero_diagonal_unimodular(n, 2);
    g.vertices.push_back(BlackVertex{HopfLinkSpec(a, n)});
    for (std::size_t i = 0; i <= a.rank(); ++i) ends.emplace_back(v, i);
  }
  const auto p = gen.permutation(ends.size());
  for (std::size_t i = 0; i < p.size(); i += 2) {
    const auto [u, uc] = ends[p[i]];
    const auto [w, wc] = ends[p[i + 1]];
    g.edges.push_back(Edge{u, w, uc, wc, ""});
  }
  return g;
}

void euler(Check& c) {
  DecoratedGraph tree;
  tree.vertices.push_back(BlackVertex{HopfLinkSpec(decoration(3), 3)});
  for (std::size_t i = 0; i < 3; ++i) {
    tree.vertices.push_back(WhiteVertex{holed_disk_descriptor(3, 0)});
    tree.edges.push_back(Edge{0, i + 1, i, 0, ""});
  }
  c.expect(euler_characteristic({tree}, 3, 0) == -2, "n=3 tree chi != -2");

  FormGenerator gen(6);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + t % 4;
    const DecoratedGraph g = random_all_black(gen, n);
    if (!validate_graph(g).ok()) {
      c.expect(false, "random all-black graph invalid: " + validate_graph(g).issue->message);
      continue;
    }
    const std::vector<DecoratedGraph> family(static_cast<std::size_t>(1 + t % 3), g);
    long long t_sum = 0, s_sum = 0;
    for (const auto& x : family)
      for (auto v : x.black_vertices()) {
        t_sum += static_cast<long long>(x.link(v).d());
        ++s_sum;
      }
    const long long chi = euler_characteristic(family, n, 0);
    if (n % 2 == 1)
      c.expect(chi == -t_sum, "odd n: chi " + std::to_string(chi) + " != -t " + std::to_string(-t_sum));
    else
      c.expect((chi - s_sum) % 2 == 0, "even n: chi " + std::to_string(chi) + " and s " + std::to_string(s_sum) +
                                           " differ mod 2");
  }
}

// 7
void inertia_agreement(Check& c) {
  FormGenerator gen(7);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix a = gen.symmetric(static_cast<std::size_t>(gen.uniform(1, 10)));
    const Inertia l = inertia_ldlt(a);
    const Inertia p = inertia_charpoly(a);
    const oracle::Signs o = oracle::descartes_inertia(a);
    c.expect(l == p, "LDLT and charpoly disagree on " + a.str());
    c.expect(l.positive == o.positive && l.negative == o.negative && l.zero == o.zero,
             "LDLT and interpolation oracle disagree on " + a.str());
  }
}

// 8
void classification_invariance(Check& c) {
  FormGenerator gen(8);
  const std::vector<BilinearForm> seeds{BilinearForm::symmetric(direct_sum(e8_matrix(), h_matrix())),
                                        build_standard(0, 1), build_standard(0, 6), build_standard(-1, 2),
                                        build_standard(1, 2),  zero_diagonal_model(1, 1)};
  for (const auto& seed : seeds) {
    const IndefiniteClass expected = classify_indefinite(seed);
    c.expect(seed.rank() <= 12, "seed rank above 12");
    for (int t = 0; t < 20; ++t) {
      const IntMatrix m = gen.unimodular(seed.rank());
      const Rational det = oracle::gauss_det(m);
      c.expect(det == 1 || det == -1, "congruence matrix not unimodular");
      const BilinearForm moved = BilinearForm::symmetric(congruence_apply(m, seed.matrix()));
      c.expect(classify_indefinite(moved) == expected, "class changed under congruence of " + seed.matrix().str());
    }
  }
}

// 9
void products(Check& c) {
  const auto s4 = product_phi_bound({parse_product_factor("S4"), parse_product_factor("S4")});
  c.expect(s4.lower == 1 && s4.upper == 4, "[S4,S4] != (1,4)");
  const auto c1 = product_phi_bound({parse_product_factor("connsum_1")});
  c.expect(c1.lower == 1 && c1.upper == 4 && c1.chi == 4, "[connsum_1] != (1,4), chi 4");
  const auto c12 = product_phi_bound({parse_product_factor("connsum_1"), parse_product_factor("connsum_2")});
  c.expect(c12.lower == 1 && c12.upper == 24 && c12.chi == 24, "[connsum_1,connsum_2] != (1,24), chi 24");
}

// 10
void homology_tables(Check& c) {
  using F = CanonicalFamily;
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k <= n - 2; ++k)
      for (long long d = 4; d <= 8; ++d)
        for (F fam : {F::even_k0, F::even_kpos, F::odd_k0, F::odd_kpos}) {
          const bool even = fam == F::even_k0 || fam == F::even_kpos;
          const bool kpos = fam == F::even_kpos || fam == F::odd_kpos;
          const std::string tag = std::string(to_string(fam)) + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                  " d=" + std::to_string(d);
          if (kpos != (k > 0)) {
            bool threw = false;
            try {
              canonical_homology_ranks(fam, n, k, d);
            } catch (const DomainError&) {
              threw = true;
            }
            c.expect(threw, tag + " accepted outside its hypotheses");
            continue;
          }
          const int dim = even ? 2 * n : 2 * n + 1;
          std::vector<long long> want(static_cast<std::size_t>(dim) + 1, 0);
          want.front() = want.back() = 1;
          auto at = [&](int i) -> long long& { return want[static_cast<std::size_t>(i)]; };
          if (fam == F::even_k0) at(n) = d + 2;
          if (fam == F::even_kpos) at(n - k) = at(n + k) = 1, at(n) = d;
          if (fam == F::odd_k0) at(n) = at(n + 1) = d + 1;
          if (fam == F::odd_kpos) at(n - k) = at(n + k + 1) = 1, at(n) = at(n + 1) = d;
          const HomologyTable h = canonical_homology_ranks(fam, n, k, d);
          c.expect(h.dim == dim && h.ranks == want, tag + " table mismatch");
        }
  for (auto [fam, n, k, d] : std::vector<std::tuple<F, int, int, long long>>{{F::even_k0, 2, 0, 4},
                                                                             {F::even_kpos, 5, 1, 3},
                                                                             {F::odd_kpos, 5, 4, 5},
                                                                             {F::odd_kpos, 5, 0, 5},
                                                                             {F::even_k0, 4, 1, 4},
                                                                             {F::odd_k0, 4, 0, 0}}) {
    bool threw = false;
    try {
      canonical_homology_ranks(fam, n, k, d);
    } catch (const DomainError&) {
      threw = true;
    }
    c.expect(threw, std::string(to_string(fam)) + " n=" + std::to_string(n) + " k=" + std::to_string(k) + " d=" +
                        std::to_string(d) + " not rejected");
  }
}

// 11
struct RunResult {
  std::string out;
  int status = -1;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

void cli_determinism(Check& c) {
  const std::string cli = HOPFCALC_CLI_PATH;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(HOPFCALC_FIXTURE_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++files;
    const std::string path = "'" + e.path().string() + "'";
    for (const char* fmt : {"text", "json"}) {
      const std::string cmd = cli + " --format " + fmt + " report --oracle " + path;
      const RunResult a = run(cmd), b = run(cmd);
      c.expect(a.status == 0 && b.status == 0, cmd + " exited " + std::to_string(a.status));
      c.expect(!a.out.empty() && a.out == b.out, cmd + " output differs between runs");
    }
    const RunResult o = run(cli + " oracle " + path);
    c.expect(o.status == 0, "oracle exit " + std::to_string(o.status) + " on " + path);
  }
  c.expect(files >= 10, "fixture corpus missing");
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  struct Criterion {
    const char* name;
    std::function<void(Check&)> body;
    double limit_s;  // 0 = no limit
  };
  const std::vector<Criterion> criteria{
      {"E8/H ground truth", ground_truth, 1.0},
      {"presentation oracle matches A* columns", presentation_equivalence, 10.0},
      {"row sums of A* vanish", row_sums, 0},
      {"tree cup-form kernel is span of all-ones", tree_kernel, 0},
      {"signature 8p and zero-diagonal model postconditions", signature, 0},
      {"Euler characteristic", euler, 0},
      {"LDLT and characteristic-polynomial inertia agree", inertia_agreement, 0},
      {"classification invariant under congruence", classification_invariance, 0},
      {"product bounds", products, 0},
      {"canonical homology tables", homology_tables, 0},
      {"CLI determinism and oracle exit codes", cli_determinism, 0},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = clock::now();
    try {
      criteria[i].body(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    if (criteria[i].limit_s > 0 && secs >= criteria[i].limit_s)
      c.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(criteria[i].limit_s) + " s");
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s %2zu %s (%.3f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs);
    for (std::size_t f = 0; f < c.failures.size() && f < 5; ++f) std::printf("       %s\n", c.failures[f].c_str());
    if (c.failures.size() > 5) std::printf("       ... %zu more\n", c.failures.size() - 5);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
