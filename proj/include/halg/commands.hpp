#pragma once

// The four tool commands as library functions returning a JSON report and an
// exit code: 0 completed, 2 counterexample found, 3 inconclusive.

#include <fstream>
#include <sstream>
#include <string>

#include "halg/suite.hpp"

namespace halg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 2;
inline constexpr int kExitInconclusive = 3;

struct CommonOptions {
  std::size_t horizon = 24;
  std::size_t dim_bound = 8;
  std::uint64_t seed = 0;

  WorkspaceOptions workspace() const {
    WorkspaceOptions w;
    w.homology.horizon = horizon;
    w.homology.search.seed = seed;
    w.dim_bound = dim_bound;
    w.seed = seed;
    return w;
  }
};

struct CommandResult {
  Json report;
  int exit_code = kExitOk;
};

struct LoadedAlgebra {
  std::string source;
  std::string text;
  AlgebraFile file;
  RingPtr ring;
};

/// Reads an algebra file, or a bundled corpus entry given as "corpus:NAME".
inline LoadedAlgebra load_algebra(const std::string& where) {
  LoadedAlgebra out;
  out.source = where;
  if (where.rfind("corpus:", 0) == 0) {
    const auto* e = find_corpus(where.substr(7));
    if (!e) throw std::invalid_argument("no corpus entry named '" + where.substr(7) + "'");
    out.text = e->text;
  } else {
    std::ifstream in(where, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read '" + where + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    out.text = ss.str();
  }
  out.file = parse_algebra_file(out.text);
  out.ring = Ring::make(out.file.presentation);
  return out;
}

/// A module named in the file, or one of simple:V, projective:V, injective:V,
/// regular, zero (on the given side).
inline Module resolve_module(const LoadedAlgebra& a, const std::string& name, Side side = Side::left) {
  if (const auto* spec = a.file.find(name)) return build_module(a.ring, *spec);
  const auto& q = a.file.presentation;
  auto vertex = [&](const std::string& v) {
    for (VertexId i = 0; i < q.vertices.size(); ++i)
      if (q.vertices[i] == v) return i;
    throw std::invalid_argument("unknown vertex '" + v + "'");
  };
  auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  if (colon == std::string::npos) {
    if (kind == "regular") return regular(a.ring, side).module;
    if (kind == "zero") return Module::zero(a.ring, side);
  } else {
    const VertexId v = vertex(name.substr(colon + 1));
    if (kind == "simple") return simple(a.ring, side, v);
    if (kind == "projective") return projective(a.ring, side, v);
    if (kind == "injective") return injective(a.ring, side, v);
  }
  throw std::invalid_argument("no module named '" + name + "'");
}

namespace cmd_detail {

inline std::string provenance(const BoundedDim& b) {
  if (b.zero_module_flag()) return "zero module convention";
  switch (b.tag()) {
    case BoundedDim::Tag::exact:
      return "exact";
    case BoundedDim::Tag::at_least:
      return "horizon";
    default:
      return "periodicity witness";
  }
}

template <class F>
void guarded(Json& results, Json& prov, const std::string& key, F&& f) {
  try {
    f();
  } catch (const ModuleTooLarge& e) {
    results[key] = Json{{"error", e.what()}};
    prov[key] = "budget exceeded";
  } catch (const DecompositionInconclusive& e) {
    results[key] = Json{{"error", e.what()}};
    prov[key] = "inconclusive";
  }
}

}  // namespace cmd_detail

inline CommandResult cmd_invariants(const LoadedAlgebra& a, const std::string& module_name, Side side,
                                    const CommonOptions& opt, bool strong = true) {
  using cmd_detail::guarded;
  using cmd_detail::provenance;
  CommandResult out;
  out.report = make_report("invariants " + module_name, fingerprint(a.file.presentation), opt.seed);
  Workspace ws(a.ring, opt.workspace());
  const Module m = resolve_module(a, module_name, side);
  const auto& h = ws.homology();
  Json res = Json::object(), prov = Json::object();
  res["module"] = to_json(m);

  guarded(res, prov, "grade", [&] {
    auto g = grade(m, h);
    res["grade"] = to_json(g);
    prov["grade"] = provenance(g);
  });
  if (strong)
    guarded(res, prov, "strong_grade", [&] {
      auto g = strong_grade(m, h);
      res["strong_grade"] = to_json(g.value);
      prov["strong_grade"] = provenance(g.value) + (g.submodules_examined
                                                         ? " over " + std::to_string(g.submodules_examined) + " submodules"
                                                         : " from composition factors and socle");
    });
  auto ev = evaluation(m);
  res["torsionless"] = ev.sigma.is_injective();
  res["reflexive"] = ev.sigma.is_isomorphism();
  prov["torsionless"] = prov["reflexive"] = "exact";
  guarded(res, prov, "k_torsionfree", [&] {
    Json tf = Json::object();
    for (std::size_t k = 1; k <= 3; ++k) tf[std::to_string(k)] = k_torsionfree(m, k, h);
    res["k_torsionfree"] = tf;
    prov["k_torsionfree"] = "exact";
  });
  guarded(res, prov, "wt_member", [&] {
    Json wt = Json::object();
    for (std::size_t t = 1; t <= 3; ++t) wt[std::to_string(t)] = wt_member(m, t, h);
    res["wt_member"] = wt;
    prov["wt_member"] = "exact";
  });
  guarded(res, prov, "winf_member", [&] {
    auto w = winf_member(m, h, ws.regular_injdim_exact(m.side()));
    res["winf_member"] = membership_name(w.verdict);
    prov["winf_member"] = w.certificate;
  });
  guarded(res, prov, "pd", [&] {
    auto d = pd(m, h);
    res["pd"] = to_json(d);
    prov["pd"] = provenance(d);
  });
  guarded(res, prov, "id", [&] {
    auto d = id(m, h);
    res["id"] = to_json(d);
    prov["id"] = provenance(d);
  });
  guarded(res, prov, "g_dim", [&] {
    auto d = g_dim(m, ws);
    res["g_dim"] = to_json(d);
    prov["g_dim"] = provenance(d);
  });
  guarded(res, prov, "winf_dim", [&] {
    auto d = winf_dim(m, ws);
    res["winf_dim"] = to_json(d);
    prov["winf_dim"] = provenance(d) + " (first syzygy in W^inf)";
  });
  out.report["results"] = res;
  out.report["certificates"] = Json{{"provenance", prov}, {"horizon", opt.horizon}, {"dim_bound", opt.dim_bound}};
  return out;
}

inline CommandResult cmd_approx(const LoadedAlgebra& a, const std::string& module_name, Side side, std::size_t t,
                                const CommonOptions& opt, bool check_hypothesis = false) {
  if (t < 1) throw std::invalid_argument("--t must be at least 1");
  CommandResult out;
  out.report = make_report("approx " + module_name + " --t " + std::to_string(t), fingerprint(a.file.presentation),
                           opt.seed);
  Workspace ws(a.ring, opt.workspace());
  const Module m = resolve_module(a, module_name, side);
  auto pres = wt_approx_presentation(m, t, ws);
  out.report["results"] = to_json(pres);
  Json cert = to_json(pres.cert);
  auto q = quasi_k_gorenstein(a.ring, t, ws.homology());
  cert["algebra_quasi_t_gorenstein"] = q.quasi();
  if (check_hypothesis) {
    Json hyp = Json::array();
    for (const auto& hc : approx_hypothesis(m, t, ws.homology()))
      hyp.push_back(Json{{"t", hc.t}, {"strong_grade_ext", to_json(hc.strong_grade)}, {"holds", hc.holds}});
    cert["hypothesis"] = hyp;
  }
  out.report["certificates"] = cert;
  if (!pres.cert.green()) out.exit_code = kExitInconclusive;
  return out;
}

struct CheckRequest {
  std::optional<std::size_t> quasi_k, gorenstein_k, property_wk, ultimately_closed;
  bool snc = false;
  std::string replay_module;  // verify this module of the file as a witness instead of searching
  std::string replay_out;     // write the found witness here
};

namespace cmd_detail {

inline std::string replay_text(const LoadedAlgebra& a, const std::string& command, std::uint64_t seed,
                               const Module& witness) {
  AlgebraFile f{a.file.presentation, {module_spec("witness", witness)}};
  return "# halg replay: " + command + " --seed " + std::to_string(seed) + "\n" + serialize(f);
}

inline void emit_witness(CommandResult& out, const LoadedAlgebra& a, const CheckRequest& req, const std::string& command,
                         std::uint64_t seed, const Module& w) {
  const std::string text = replay_text(a, command, seed, w);
  out.report["certificates"]["replay"] = text;
  if (!req.replay_out.empty()) {
    std::ofstream f(req.replay_out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write '" + req.replay_out + "'");
    f << text;
    out.report["certificates"]["replay_file"] = req.replay_out;
  }
}

}  // namespace cmd_detail

inline CommandResult cmd_check(const LoadedAlgebra& a, const CheckRequest& req, const CommonOptions& opt) {
  const int chosen = req.quasi_k.has_value() + req.gorenstein_k.has_value() + req.property_wk.has_value() +
                     req.ultimately_closed.has_value() + req.snc;
  if (chosen != 1) throw std::invalid_argument("check needs exactly one of the check flags");
  CommandResult out;
  Workspace ws(a.ring, opt.workspace());
  const auto& h = ws.homology();
  std::string command = "check";
  if (req.quasi_k) command += " --quasi-k " + std::to_string(*req.quasi_k);
  if (req.gorenstein_k) command += " --gorenstein-k " + std::to_string(*req.gorenstein_k);
  if (req.property_wk) command += " --property-wk " + std::to_string(*req.property_wk);
  if (req.ultimately_closed) command += " --ultimately-closed " + std::to_string(*req.ultimately_closed);
  if (req.snc) command += " --snc";
  if (!req.replay_module.empty()) command += " --replay " + req.replay_module;
  out.report = make_report(command, fingerprint(a.file.presentation), opt.seed);
  Json& res = out.report["results"];

  if (!req.replay_module.empty()) {
    const Module m = resolve_module(a, req.replay_module);
    bool confirmed = false;
    if (req.property_wk) {
      confirmed = replay_wk_witness(m, *req.property_wk, h);
    } else if (req.snc) {
      auto g = grade(m, h);
      confirmed = g.is_infinite() && !g.zero_module_flag();
    } else {
      throw std::invalid_argument("--replay applies to --property-wk and --snc");
    }
    res["replayed"] = req.replay_module;
    res["counterexample_confirmed"] = confirmed;
    out.exit_code = confirmed ? kExitCounterexample : kExitOk;
    return out;
  }

  if (req.quasi_k || req.gorenstein_k) {
    const std::size_t k = req.quasi_k ? *req.quasi_k : *req.gorenstein_k;
    auto rep = quasi_k_gorenstein(a.ring, k, h);
    res = to_json(rep);
    const bool ok = req.quasi_k ? rep.quasi() : rep.gorenstein();
    if (!ok) out.exit_code = rep.budget_exhausted ? kExitInconclusive : kExitCounterexample;
  } else if (req.property_wk) {
    const std::size_t k = *req.property_wk;
    if (k < 1) throw std::invalid_argument("--property-wk needs k >= 1");
    auto r = property_wk(ws, k);
    res = Json{{"k", k},
               {"verdict", r.holds ? (*r.holds ? "verified" : "counterexample") : "open"},
               {"basis", r.basis},
               {"examined", r.examined},
               {"dim_bound", r.dim_bound}};
    out.report["certificates"]["right_regular_injdim"] = to_json(ws.regular_injdim(Side::right));
    if (r.witness) {
      res["witness"] = to_json(*r.witness);
      cmd_detail::emit_witness(out, a, req, command, opt.seed, *r.witness);
    }
    if (!r.holds) out.exit_code = kExitInconclusive;
    else if (!*r.holds) out.exit_code = kExitCounterexample;
  } else if (req.ultimately_closed) {
    if (*req.ultimately_closed < 1) throw std::invalid_argument("--ultimately-closed needs n >= 1");
    auto v = ultimately_closed(a.ring, *req.ultimately_closed, h);
    res = Json{{"n", *req.ultimately_closed}, {"ultimately_closed", verdict_name(v)}};
    if (v == Verdict::no) out.exit_code = kExitCounterexample;
    if (v == Verdict::inconclusive) out.exit_code = kExitInconclusive;
  } else {
    auto r = snc_search(ws);
    res = Json{{"verdict", r.witness ? "counterexample" : "none_found"}, {"examined", r.examined},
               {"dim_bound", opt.dim_bound}, {"horizon", opt.horizon}};
    if (r.witness) {
      res["witness"] = to_json(*r.witness);
      res["witness_grade"] = to_json(r.witness_grade);
      cmd_detail::emit_witness(out, a, req, command, opt.seed, *r.witness);
      out.exit_code = kExitCounterexample;
    }
  }
  return out;
}

inline CommandResult cmd_corpus_list(const CommonOptions& opt) {
  CommandResult out;
  out.report = make_report("corpus --list", "", opt.seed);
  Json list = Json::array();
  for (const auto& e : corpus()) {
    auto f = e.parse();
    auto ring = Ring::make(f.presentation);
    list.push_back(Json{{"name", e.name},
                        {"file", e.file},
                        {"fingerprint", fingerprint(f.presentation)},
                        {"vertices", f.presentation.vertices.size()},
                        {"arrows", f.presentation.arrows.size()},
                        {"dim", ring->algebra().dim()},
                        {"modules", [&] {
                           Json names = Json::array();
                           for (const auto& m : f.modules) names.push_back(m.name);
                           return names;
                         }()}});
  }
  out.report["results"] = list;
  return out;
}

/// Runs the property suite on the named entries (all when empty).
inline CommandResult cmd_corpus_suite(const CommonOptions& opt, const std::vector<std::string>& only = {}) {
  CommandResult out;
  out.report = make_report("corpus --run-suite", "", opt.seed);
  SuiteOptions so;
  so.workspace = opt.workspace();
  Json entries = Json::array();
  bool all_green = true;
  for (const auto& e : corpus()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.name) == only.end()) continue;
    bool green = false;
    entries.push_back(run_suite_entry(e, so, green));
    all_green = all_green && green;
  }
  out.report["results"] = Json{{"algebras", entries}, {"green", all_green}};
  if (!all_green) out.exit_code = kExitCounterexample;
  return out;
}

/// One line per algebra and check.
inline std::string suite_table(const Json& report) {
  std::ostringstream os;
  for (const auto& alg : report["results"]["algebras"]) {
    os << alg["algebra"].get<std::string>() << (alg["green"].get<bool>() ? "  green" : "  FAILED") << "\n";
    for (const auto& c : alg["checks"]) {
      std::string status = !c["applicable"].get<bool>() ? "n/a" : c["passed"].get<bool>() ? "pass" : "FAIL";
      os << "  " << c["name"].get<std::string>();
      for (std::size_t i = c["name"].get<std::string>().size(); i < 30; ++i) os << ' ';
      os << status << "  (" << c["instances"].get<std::size_t>() << " instances)";
      if (c.contains("detail") && c["detail"].contains("property_w1"))
        os << "  property W1: " << c["detail"]["property_w1"].dump();
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace halg
