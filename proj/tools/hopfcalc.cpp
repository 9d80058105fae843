// hopfcalc: command-line front end.
//
// Exit codes: 0 report produced, 1 invalid input, 2 internal invariant
// violation (including any oracle mismatch).

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hopfcalc/cli/report.hpp"
#include "hopfcalc/cli/spec_io.hpp"
#include "hopfcalc/generators.hpp"

namespace {

using namespace hopfcalc;
using namespace hopfcalc::cli;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInternal = 2;

struct Options {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string spec_path;
  bool with_oracle = false;
  std::string matrix_path;
  int n = 0;
  int k = 0;
  std::string theta = "1";
  std::string family;
  long long d = 0;
  int trials = 25;
};

Format format_of(const Options& o) { return o.format == "json" ? Format::json : Format::text; }

void print_checks(const std::vector<OracleCheck>& checks, const Options& o) {
  if (format_of(o) == Format::json) {
    std::cout << oracle_to_json(checks).dump(2) << "\n";
    return;
  }
  for (const auto& c : checks) {
    std::cout << (c.pass ? "pass " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << "oracle: " << (all_pass(checks) ? "pass" : "fail") << "\n";
}

int cmd_report(const Options& o) {
  const SpecFile spec = parse_spec(o.spec_path);
  const json doc = build_report(spec, o.with_oracle);
  std::cout << (format_of(o) == Format::json ? doc.dump(2) + "\n" : render_text(doc));
  if (o.with_oracle && doc["oracle"]["status"] != "pass") {
    std::cerr << "oracle mismatch\n";
    return kInternal;
  }
  return kOk;
}

int cmd_oracle(const Options& o) {
  const SpecFile spec = parse_spec(o.spec_path);
  const auto checks = stage("oracle", [&] { return run_oracle(spec); });
  print_checks(checks, o);
  if (!all_pass(checks)) {
    std::cerr << "oracle mismatch\n";
    return kInternal;
  }
  return kOk;
}

int cmd_check_link(const Options& o) {
  if (o.n < 2) throw SpecError("range", "--n", "n must be at least 2");
  const int eps = o.n % 2 == 0 ? 1 : -1;
  IntMatrix m = parse_matrix_file(o.matrix_path);
  SpecFile spec;
  spec.n = o.n;
  spec.k = o.k;
  spec.theta = Integer(o.theta);
  HopfLinkSpec link = stage("hopflink", [&] { return HopfLinkSpec(BilinearForm(m, eps), o.n, o.k, spec.theta); });

  DecoratedGraph g;
  g.vertices.push_back(BlackVertex{link});
  const json vertex = stage("hopflink", [&] { return vertex_to_json(g, 0); });

  // Oracle columns for the link alone.
  spec.graphs.push_back(g);
  std::vector<OracleCheck> checks;
  if (is_unimodular(link.matrix())) {
    const IntMatrix star = derived_linking_matrix(link);
    for (std::size_t s = 0; s <= link.d(); ++s) {
      const PresentationResult p = presentation_oracle(link, s);
      checks.push_back({"presentation column " + std::to_string(s), equal_up_to_sign(p.linking, star.col(s)),
                        vector_str(p.linking) + " vs " + vector_str(star.col(s))});
    }
  }
  json doc = {{"n", o.n}, {"k", o.k}, {"link", vertex}, {"oracle", oracle_to_json(checks)}};
  if (o.k == 0) {
    json spins = json::array();
    for (std::size_t i = 0; i <= link.d(); ++i) {
      const SpinDescriptor sp = spin_link_descriptor(link, i);
      json names = json::array();
      for (const auto& c : sp.components) names.push_back(c.name());
      spins.push_back({{"spun_component", i}, {"components", names}, {"fiber", fiber_to_json(sp.fiber)}});
    }
    doc["spun"] = std::move(spins);
  }

  if (format_of(o) == Format::json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    const json& f = vertex["form"];
    std::cout << "K_A with d = " << link.d() << ", n = " << o.n << ", k = " << o.k << "\n";
    std::cout << "  det = " << cli::detail::scalar(f["det"]) << ", " << f["parity"].get<std::string>() << ", "
              << f["definiteness"].get<std::string>() << "\n";
    std::cout << "  admissible: " << (vertex["admissibility"]["admissible"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& note : vertex["admissibility"]["notes"]) std::cout << "  " << note.get<std::string>() << "\n";
    if (vertex.contains("linking_matrix"))
      std::cout << "  linking matrix A*:\n" << cli::detail::matrix_lines(vertex["linking_matrix"], "    ");
    std::cout << "  local fiber Betti: " << cli::detail::join(vertex["local_fiber"]["betti"], " ") << "\n";
    std::cout << "  local link Betti: " << cli::detail::join(vertex["local_link"]["betti"], " ") << "\n";
    for (const auto& c : checks) std::cout << "  " << (c.pass ? "pass " : "FAIL ") << c.name << " (" << c.detail << ")\n";
  }
  return all_pass(checks) ? kOk : kInternal;
}

int cmd_classify(const Options& o) {
  IntMatrix m = parse_matrix_file(o.matrix_path);
  if (!m.is_square()) throw SpecError("not-square", o.matrix_path, "matrix must be square");
  int eps = 0;
  if (is_symmetric(m))
    eps = 1;
  else if (is_skew(m))
    eps = -1;
  else
    throw SpecError("symmetry", o.matrix_path, "matrix is neither symmetric nor skew-symmetric");
  const BilinearForm f(m, eps);
  const FormClass c = form_type(f);
  json doc = form_class_to_json(c);
  doc["epsilon"] = eps;
  doc["rank"] = f.rank();
  if (c.p && c.q) doc["standard_model"] = matrix_to_json(build_standard(*c.p, *c.q).matrix());
  if (format_of(o) == Format::json) {
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << (eps == 1 ? "symmetric" : "skew-symmetric") << " form of rank " << f.rank() << "\n";
  std::cout << "  det = " << c.det << ", " << to_string(c.parity) << ", " << to_string(c.definiteness)
            << (c.unimodular ? ", unimodular" : ", not unimodular") << "\n";
  if (c.inertia) std::cout << "  inertia (n+, n-, n0) = " << *c.inertia << ", signature " << c.inertia->signature() << "\n";
  if (c.p && c.q) std::cout << "  equivalent to " << *c.p << " E8 + " << *c.q << " H\n";
  return kOk;
}

int cmd_homology(const Options& o) {
  const auto fam = parse_family(o.family);
  if (!fam) throw SpecError("family", "--family", "expected even-k0, even-kpos, odd-k0 or odd-kpos");
  const HomologyTable h = canonical_homology_ranks(*fam, o.n, o.k, o.d);
  if (format_of(o) == Format::json) {
    std::cout << json{{"family", o.family}, {"dim", h.dim}, {"ranks", h.ranks}, {"euler", h.euler()}}.dump(2) << "\n";
    return kOk;
  }
  std::cout << o.family << " (n = " << o.n << ", k = " << o.k << ", d = " << o.d << "), dimension " << h.dim << "\n";
  for (std::size_t i = 0; i < h.ranks.size(); ++i)
    if (h.ranks[i] != 0) std::cout << "  b" << i << " = " << h.ranks[i] << "\n";
  std::cout << "  chi = " << h.euler() << "\n";
  return kOk;
}

/// Randomized properties on fresh data from the seed.
int cmd_selftest(const Options& o) {
  FormGenerator gen(o.seed);
  std::vector<OracleCheck> checks;
  for (int t = 0; t < o.trials; ++t) {
    const int n = gen.coin() ? 3 : 4;
    const BilinearForm a = gen.zero_diagonal_unimodular(n);
    const std::string tag = "trial " + std::to_string(t) + " (n = " + std::to_string(n) + ", d = " +
                            std::to_string(a.rank()) + ")";
    const IntMatrix star = derived_linking_matrix(a);
    bool cols = true;
    for (std::size_t s = 0; s <= a.rank(); ++s)
      cols = cols && equal_up_to_sign(presentation_oracle(a, s).linking, star.col(s));
    checks.push_back({tag + ": presentation matches A*", cols, ""});

    const DecoratedGraph tree = gen.single_black_tree(a, n);
    const CupFormAnalysis an = analyze_cup_form(assemble_cup_form(tree));
    bool ones = an.kernel_dim == 1;
    if (ones)
      for (const auto& x : an.kernel_basis.front()) ones = ones && x == an.kernel_basis.front().front();
    checks.push_back({tag + ": tree kernel is spanned by the all-ones vector", ones, ""});
    if (a.is_symmetric_form())
      checks.push_back({tag + ": tree signature equals sigma(A)", an.sigma == inertia(a.matrix()).signature(), ""});

    const IntMatrix sym = gen.symmetric(static_cast<std::size_t>(gen.uniform(1, 10)));
    checks.push_back({tag + ": LDL^T and characteristic polynomial inertia agree",
                      inertia_ldlt(sym) == inertia_charpoly(sym), ""});
  }
  std::size_t failed = 0;
  for (const auto& c : checks) failed += !c.pass;
  if (format_of(o) == Format::json) {
    std::cout << json{{"seed", o.seed}, {"checks", checks.size()}, {"failed", failed}}.dump(2) << "\n";
  } else {
    for (const auto& c : checks)
      if (!c.pass) std::cout << "FAIL " << c.name << "\n";
    std::cout << "selftest seed " << o.seed << ": " << checks.size() - failed << "/" << checks.size() << " passed\n";
  }
  return failed == 0 ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of manifolds built from generalized Hopf links and decorated graphs"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Seed for randomized subcommands");

  auto* report = app.add_subcommand("report", "Full invariant report for a graph or product spec");
  report->add_option("spec", o.spec_path, "Spec file (JSON)")->required();
  report->add_flag("--oracle", o.with_oracle, "Also run the presentation oracle cross-checks");

  auto* oracle = app.add_subcommand("oracle", "Run the independent cross-checks on a spec");
  oracle->add_option("spec", o.spec_path, "Spec file (JSON)")->required();

  auto* check = app.add_subcommand("check-link", "Admissibility and linking matrix of K_A");
  check->add_option("--matrix", o.matrix_path, "Matrix file (JSON array of rows)")->required();
  check->add_option("--n", o.n, "Dimension parameter n")->required();
  check->add_option("--k", o.k, "Number of projections");
  check->add_option("--theta", o.theta, "Exotic sphere order theta");

  auto* classify = app.add_subcommand("classify", "Parity, definiteness and E8/H classification of a form");
  classify->add_option("--matrix", o.matrix_path, "Matrix file (JSON array of rows)")->required();

  auto* homology = app.add_subcommand("homology", "Rational homology of a canonical example");
  homology->add_option("--family", o.family, "even-k0 | even-kpos | odd-k0 | odd-kpos")->required();
  homology->add_option("--n", o.n, "n")->required();
  homology->add_option("--k", o.k, "k");
  homology->add_option("--d", o.d, "d")->required();

  auto* selftest = app.add_subcommand("selftest", "Randomized property checks");
  selftest->add_option("--trials", o.trials, "Number of trials")->check(CLI::Range(1, 100000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*report) return cmd_report(o);
    if (*oracle) return cmd_oracle(o);
    if (*check) return cmd_check_link(o);
    if (*classify) return cmd_classify(o);
    if (*homology) return cmd_homology(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const SpecError& e) {
    std::cerr << "invalid spec: " << e.what() << "\n";
    return kInvalid;
  } catch (const PipelineError& e) {
    std::cerr << (e.internal() ? "internal error in " : "error in ") << e.what() << "\n";
    return e.internal() ? kInternal : kInvalid;
  } catch (const InternalInvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}
