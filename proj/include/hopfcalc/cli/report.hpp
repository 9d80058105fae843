#pragma once

// Report pipeline behind the command-line tool: runs every computation on a
// parsed spec and renders the result as text or JSON.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfcalc/cli/spec_io.hpp"
#include "hopfcalc/forms.hpp"
#include "hopfcalc/graphmodel.hpp"
#include "hopfcalc/hopflink.hpp"
#include "hopfcalc/invariants.hpp"

namespace hopfcalc::cli {

enum class Format { text, json };

/// A computation failed; `module` names the stage. Internal failures are
/// violated self-consistency checks rather than bad input.
class PipelineError : public Error {
 public:
  PipelineError(std::string module, const std::string& message, bool internal)
      : Error(module + ": " + message), module_(std::move(module)), internal_(internal) {}
  const std::string& module() const { return module_; }
  bool internal() const { return internal_; }

 private:
  std::string module_;
  bool internal_;
};

template <class F>
auto stage(const char* module, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const InternalInvariantError& e) {
    throw PipelineError(module, e.what(), true);
  } catch (const Error& e) {
    throw PipelineError(module, e.what(), false);
  }
}

struct OracleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline json vector_to_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

inline std::string vector_str(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}

/// Independent cross-checks: the presentation of H_{n-1}(X_s) against the
/// closed-form linking matrix, row sums of A*, and the two inertia algorithms
/// on the assembled cup form.
inline std::vector<OracleCheck> run_oracle(const SpecFile& spec) {
  std::vector<OracleCheck> checks;
  if (spec.is_product()) {
    const ProductBound b = product_phi_bound(spec.products, spec.target);
    Integer chi = 1;
    for (const auto& f : spec.products) {
      // chi of S^4 and of #_r S^2 x S^2 from Betti numbers (1,0,b2,0,1).
      const Integer b2 = f.kind == ProductFactor::Kind::s4 ? Integer(0) : Integer(2 * f.r);
      chi *= 2 + b2;
    }
    checks.push_back({"product chi from Betti numbers", chi == b.chi, "chi = " + chi.str()});
    checks.push_back({"product lower <= upper", b.lower <= b.upper, b.lower.str() + " <= " + b.upper.str()});
    return checks;
  }

  for (std::size_t gi = 0; gi < spec.graphs.size(); ++gi) {
    const DecoratedGraph& g = spec.graphs[gi];
    for (auto v : g.black_vertices()) {
      const std::string where = "graph " + std::to_string(gi) + " vertex " + std::to_string(v);
      const HopfLinkSpec& link = g.link(v);
      if (!is_unimodular(link.matrix())) {
        bool rejected = false;
        try {
          presentation_oracle(link, 0);
        } catch (const CokernelError&) {
          rejected = true;
        }
        checks.push_back({where + ": presentation detects non-unimodular A", rejected, ""});
        continue;
      }
      const IntMatrix star = derived_linking_matrix(link);
      bool rows_zero = true;
      for (std::size_t i = 0; i < star.rows(); ++i) {
        Integer sum = 0;
        for (std::size_t j = 0; j < star.cols(); ++j) sum += star(i, j);
        rows_zero = rows_zero && sum == 0;
      }
      checks.push_back({where + ": A* row sums vanish", rows_zero, ""});
      for (std::size_t s = 0; s <= link.d(); ++s) {
        OracleCheck c{where + ": presentation column " + std::to_string(s), false, ""};
        try {
          const PresentationResult p = presentation_oracle(link, s);
          c.pass = equal_up_to_sign(p.linking, star.col(s));
          c.detail = "presentation " + vector_str(p.linking) + " vs A* " + vector_str(star.col(s));
        } catch (const CokernelError& e) {
          c.detail = e.what();
        }
        checks.push_back(std::move(c));
      }
    }
    const GlobalFiber fib = assemble_global_fiber(g);
    if (fib.descriptor)
      checks.push_back({"graph " + std::to_string(gi) + ": global fiber chi matches its Betti numbers",
                        fib.descriptor->alternating_sum() == fib.euler, "chi = " + std::to_string(fib.euler)});
  }

  std::optional<BilinearForm> form;
  try {
    form = spec.k == 0 ? assemble_cup_form(spec.graphs) : assemble_cup_form_k(spec.graphs);
  } catch (const Error&) {
    // Unsupported shapes and non-unimodular decorations leave nothing to compare.
  }
  if (form && form->is_symmetric_form()) {
    const Inertia a = inertia_ldlt(form->matrix());
    const Inertia b = inertia_charpoly(form->matrix());
    std::ostringstream d;
    d << "LDL^T " << a << " vs characteristic polynomial " << b;
    checks.push_back({"cup form inertia, two algorithms", a == b, d.str()});
    const std::size_t null = nullspace_rational(form->matrix()).dimension();
    checks.push_back({"cup form nullity equals kernel dimension", null == a.zero,
                      "kernel " + std::to_string(null) + ", inertia zero " + std::to_string(a.zero)});
  }
  if (form && !form->is_symmetric_form()) {
    const std::size_t null = nullspace_rational(form->matrix()).dimension();
    const std::size_t rank = rank_rational(form->matrix());
    checks.push_back({"skew cup form rank + nullity", rank + null == form->rank() && rank % 2 == 0,
                      "rank " + std::to_string(rank) + ", nullity " + std::to_string(null)});
  }
  return checks;
}

inline bool all_pass(const std::vector<OracleCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

inline json oracle_to_json(const std::vector<OracleCheck>& checks) {
  json list = json::array();
  for (const auto& c : checks) list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"status", all_pass(checks) ? "pass" : "fail"}, {"checks", std::move(list)}};
}

inline json inertia_to_json(const Inertia& in) {
  return {{"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}};
}

inline json form_class_to_json(const FormClass& c) {
  json out = {{"parity", to_string(c.parity)},
              {"definiteness", to_string(c.definiteness)},
              {"unimodular", c.unimodular},
              {"det", integer_to_json(c.det)}};
  if (c.inertia) {
    out["inertia"] = inertia_to_json(*c.inertia);
    out["signature"] = c.inertia->signature();
  }
  if (c.p && c.q) out["classification"] = {{"p", *c.p}, {"q", *c.q}};
  return out;
}

inline json fiber_to_json(const FiberDescriptor& f) {
  return {{"betti", f.betti}, {"dim", f.dim}, {"boundary_components", f.boundary_components}, {"euler", f.euler}};
}

inline json admissibility_to_json(const AdmissibilityReport& a) {
  json out = {{"det", integer_to_json(a.det)},
              {"unimodular", a.unimodular},
              {"admissible", a.admissible},
              {"directly_fibered", a.directly_fibered},
              {"notes", a.notes}};
  if (a.doubled_components) {
    out["doubled_size"] = a.doubled_size;
    out["doubled_components"] = a.doubled_components;
    out["theta_sum_size"] = integer_to_json(a.theta_sum_size);
  }
  return out;
}

inline json vertex_to_json(const DecoratedGraph& g, std::size_t v) {
  const HopfLinkSpec& link = g.link(v);
  const AdmissibilityReport adm = admissibility_check(link);
  const LinkDescriptors local = project_link_descriptor(link);
  json out = {{"vertex", v},
              {"d", link.d()},
              {"admissibility", admissibility_to_json(adm)},
              {"form", form_class_to_json(form_type(link.form()))},
              {"local_fiber", fiber_to_json(local.fiber)},
              {"local_link", fiber_to_json(local.link)}};
  if (adm.unimodular) out["linking_matrix"] = matrix_to_json(derived_linking_matrix(link));
  return out;
}

inline json invariants_to_json(const InvariantReport& r) {
  json out = {{"chi", r.chi}, {"s_black", r.s_black}, {"g", r.g}, {"t", r.t}, {"verdicts", r.verdicts},
              {"notes", r.notes}};
  if (r.cup_form) {
    out["cup_form"] = matrix_to_json(r.cup_form->matrix());
    out["cup_form_epsilon"] = r.cup_form->epsilon();
  }
  if (r.sigma) out["sigma"] = *r.sigma;
  if (r.inertia) out["inertia"] = inertia_to_json(*r.inertia);
  if (r.kernel_dim) {
    out["kernel_dim"] = *r.kernel_dim;
    json basis = json::array();
    for (const auto& vec : r.kernel_basis) {
      json jv = json::array();
      for (const auto& x : vec) jv.push_back(rational_to_json(x));
      basis.push_back(std::move(jv));
    }
    out["kernel_basis"] = std::move(basis);
  }
  if (r.family) out["canonical_family"] = to_string(*r.family);
  if (r.homology) {
    json ranks = json::object();
    for (std::size_t i = 0; i < r.homology->ranks.size(); ++i)
      if (r.homology->ranks[i] != 0) ranks[std::to_string(i)] = r.homology->ranks[i];
    out["homology"] = {{"dim", r.homology->dim}, {"ranks", std::move(ranks)}};
  }
  if (r.phi) out["phi"] = {{"lower", r.phi->lower}, {"upper", r.phi->upper}, {"notes", r.phi->notes}};
  return out;
}

/// The full report document. The embedded "spec" is the normalized input, so
/// parsing it again yields the same SpecFile.
inline json build_report(const SpecFile& spec, bool oracle) {
  json doc = {{"spec", spec_to_json(spec)}};
  if (spec.is_product()) {
    const ProductBound b = stage("invariants", [&] { return product_phi_bound(spec.products, spec.target); });
    json factors = json::array();
    for (const auto& f : spec.products) factors.push_back(f.name());
    doc["products"] = {{"factors", std::move(factors)},
                       {"target", spec.target},
                       {"lower", integer_to_json(b.lower)},
                       {"upper", integer_to_json(b.upper)},
                       {"chi", integer_to_json(b.chi)}};
  } else {
    json graphs = json::array();
    for (const auto& g : spec.graphs) {
      const GraphCounts c = stage("graphmodel", [&] { return graph_counts(g); });
      const GlobalFiber fib = stage("graphmodel", [&] { return assemble_global_fiber(g); });
      json jf = {{"euler", fib.euler}, {"identification", fib.identification}};
      if (fib.descriptor) jf["betti"] = fib.descriptor->betti;
      json blacks = json::array();
      for (auto v : g.black_vertices()) blacks.push_back(stage("hopflink", [&] { return vertex_to_json(g, v); }));
      graphs.push_back({{"counts",
                         {{"m", c.m},
                          {"s_black", c.s_black},
                          {"vertices", c.vertices},
                          {"connected_components", c.connected_components},
                          {"g", c.g},
                          {"t", c.t}}},
                        {"global_fiber", std::move(jf)},
                        {"black_vertices", std::move(blacks)}});
    }
    doc["graphs"] = std::move(graphs);
    const InvariantReport r =
        stage("invariants", [&] { return compute_invariants(spec.graphs, spec.n, spec.k, spec.assume_cobounding); });
    doc["invariants"] = invariants_to_json(r);
  }
  if (oracle) doc["oracle"] = oracle_to_json(stage("oracle", [&] { return run_oracle(spec); }));
  return doc;
}

namespace detail {

inline std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string matrix_lines(const json& m, const std::string& indent) {
  std::string out;
  for (const auto& row : m) {
    out += indent;
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + scalar(row[j]);
    out += "\n";
  }
  return out;
}

inline std::string join(const json& list, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) out += (i ? sep : "") + scalar(list[i]);
  return out;
}

}  // namespace detail

inline std::string render_text(const json& doc) {
  std::ostringstream os;
  const json& spec = doc["spec"];
  if (spec.contains("description")) os << spec["description"].get<std::string>() << "\n\n";
  if (doc.contains("products")) {
    const json& p = doc["products"];
    os << "product of " << detail::join(p["factors"], " x ") << ", target " << p["target"].get<std::string>() << "\n";
    os << "  chi = " << detail::scalar(p["chi"]) << "\n";
    os << "  phi in [" << detail::scalar(p["lower"]) << ", " << detail::scalar(p["upper"]) << "]\n";
  } else {
    os << "n = " << spec["n"] << ", k = " << spec["k"] << ", theta = " << detail::scalar(spec["theta"])
       << ", assume_cobounding = " << (spec["assume_cobounding"].get<bool>() ? "true" : "false") << "\n";
    const json& graphs = doc["graphs"];
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const json& g = graphs[gi];
      const json& c = g["counts"];
      os << "\ngraph " << gi << ": m = " << c["m"] << ", s = " << c["s_black"] << ", g = " << c["g"]
         << ", t = " << c["t"] << "\n";
      os << "  global fiber: " << g["global_fiber"]["identification"].get<std::string>()
         << ", chi = " << g["global_fiber"]["euler"] << "\n";
      for (const auto& b : g["black_vertices"]) {
        const json& f = b["form"];
        os << "  black vertex " << b["vertex"] << ": d = " << b["d"] << ", det = " << detail::scalar(f["det"]) << ", "
           << f["parity"].get<std::string>() << ", " << f["definiteness"].get<std::string>();
        if (f.contains("classification"))
          os << ", (p,q) = (" << f["classification"]["p"] << "," << f["classification"]["q"] << ")";
        os << "\n";
        os << "    admissible: " << (b["admissibility"]["admissible"].get<bool>() ? "yes" : "no") << "\n";
        for (const auto& note : b["admissibility"]["notes"]) os << "    " << note.get<std::string>() << "\n";
        if (b.contains("linking_matrix")) os << "    linking matrix A*:\n" << detail::matrix_lines(b["linking_matrix"], "      ");
      }
    }
    const json& inv = doc["invariants"];
    os << "\ninvariants\n";
    os << "  chi = " << inv["chi"] << "\n";
    if (inv.contains("sigma")) os << "  sigma = " << inv["sigma"] << "\n";
    if (inv.contains("inertia"))
      os << "  inertia (n+, n-, n0) = (" << inv["inertia"]["positive"] << ", " << inv["inertia"]["negative"] << ", "
         << inv["inertia"]["zero"] << ")\n";
    if (inv.contains("kernel_dim")) {
      os << "  kernel dim = " << inv["kernel_dim"] << "\n";
      for (const auto& v : inv["kernel_basis"]) os << "    (" << detail::join(v, ", ") << ")\n";
    }
    if (inv.contains("cup_form")) os << "  cup form:\n" << detail::matrix_lines(inv["cup_form"], "    ");
    if (inv.contains("canonical_family")) {
      os << "  canonical family " << inv["canonical_family"].get<std::string>() << ", homology of M^"
         << inv["homology"]["dim"] << ":";
      std::vector<std::pair<int, long long>> ranks;
      for (const auto& item : inv["homology"]["ranks"].items())
        ranks.emplace_back(std::stoi(item.key()), item.value().get<long long>());
      std::sort(ranks.begin(), ranks.end());
      for (const auto& [i, b] : ranks) os << " b" << i << "=" << b;
      os << "\n";
    }
    if (inv.contains("phi")) {
      os << "  phi in [" << inv["phi"]["lower"] << ", " << inv["phi"]["upper"] << "]\n";
      for (const auto& note : inv["phi"]["notes"]) os << "    " << note.get<std::string>() << "\n";
    }
    for (const auto& v : inv["verdicts"]) os << "  verdict: " << v.get<std::string>() << "\n";
    for (const auto& note : inv["notes"]) os << "  note: " << note.get<std::string>() << "\n";
  }
  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    os << "\noracle: " << o["status"].get<std::string>() << "\n";
    for (const auto& c : o["checks"]) {
      os << "  [" << (c["pass"].get<bool>() ? "pass" : "FAIL") << "] " << c["name"].get<std::string>();
      if (!c["detail"].get<std::string>().empty()) os << " (" << c["detail"].get<std::string>() << ")";
      os << "\n";
    }
  }
  return os.str();
}

inline std::string emit_report(const SpecFile& spec, Format format, bool oracle) {
  const json doc = build_report(spec, oracle);
  return format == Format::json ? doc.dump(2) + "\n" : render_text(doc);
}

}  // namespace hopfcalc::cli
