#pragma once

// Property suite run over the bundled corpus. Each check reports how many
// instances it examined and whether every instance passed; checks whose
// hypotheses the algebra does not satisfy are reported as not applicable.

#include <functional>
#include <string>
#include <vector>

#include "halg/corpus.hpp"
#include "halg/report.hpp"

namespace halg {

struct SuiteOptions {
  WorkspaceOptions workspace;
  std::size_t instance_dim = 6;  // modules checked by the per-module properties
  std::size_t max_t = 3;
  std::size_t gorenstein_k = 8;  // depth of the quasi-Gorenstein check
  std::size_t scan_dim = 8;      // finitistic dimension scan
};

struct CheckOutcome {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::size_t instances = 0;
  Json detail = Json::object();
  std::string failure = {};  // first failing instance

  void fail(const std::string& what) {
    if (passed) failure = what;
    passed = false;
  }
  Json json() const {
    Json j{{"name", name}, {"applicable", applicable}, {"passed", passed}, {"instances", instances}};
    if (!failure.empty()) j["first_failure"] = failure;
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

class SuiteRun {
 public:
  SuiteRun(RingPtr ring, SuiteOptions opt) : ring_(std::move(ring)), opt_(std::move(opt)), ws_(ring_, opt_.workspace) {}

  Workspace& workspace() { return ws_; }
  const SuiteOptions& options() const { return opt_; }

  std::vector<Module> instances(Side side) { return ws_.modules(side, opt_.instance_dim); }
  std::vector<Module> instances() {
    auto out = instances(Side::left);
    for (const auto& m : instances(Side::right)) out.push_back(m);
    return out;
  }

  const QuasiGorensteinReport& quasi() {
    if (!quasi_) quasi_ = quasi_k_gorenstein(ring_, opt_.gorenstein_k, ws_.homology());
    return *quasi_;
  }

  CheckOutcome transpose_sequences() {
    CheckOutcome c{"transpose_sequences"};
    for (const auto& a : instances()) {
      for (const auto& x : {a, transpose(a)}) {
        auto s = transpose_sequence(x, ws_.homology());
        ++c.instances;
        if (!s.dimension_identity() || !s.exact()) c.fail(x.describe());
      }
    }
    return c;
  }

  CheckOutcome torsionfree_bridge() {
    CheckOutcome c{"torsionfree_bridge"};
    for (const auto& a : instances()) {
      ++c.instances;
      auto ev = evaluation(a);
      const bool tl = ev.sigma.is_injective(), rf = ev.sigma.is_isomorphism();
      if (k_torsionfree(a, 1, ws_.homology()) != tl || k_torsionfree(a, 2, ws_.homology()) != rf) c.fail(a.describe());
    }
    return c;
  }

  CheckOutcome universal_extensions() {
    CheckOutcome c{"universal_extension"};
    for (const auto& a : instances()) {
      ++c.instances;
      auto u = universal_extension(a, ws_.homology());
      Resolver r(u.seq.mid, ws_.homology());
      r.require(2);
      if (!u.seq.is_exact() || r.ext_regular(1) != 0) c.fail(a.describe());
    }
    return c;
  }

  CheckOutcome w1_decision() {
    CheckOutcome c{"w1_decision"};
    auto res = property_wk(ws_, 1);
    const bool id_le_1 = id_at_most(regular(ring_, Side::right).module, 1, ws_.homology());
    c.instances = 1;
    c.detail["property_w1"] = res.holds ? Json(*res.holds) : Json("open");
    c.detail["right_regular_injdim_at_most_1"] = id_le_1;
    c.detail["basis"] = res.basis;
    if (!res.holds || *res.holds != id_le_1) c.fail("decision disagrees with id(Λ_Λ) <= 1");
    if (res.witness) {
      c.detail["witness"] = to_json(*res.witness);
      const bool replays = replay_wk_witness(*res.witness, 1, ws_.homology());
      c.detail["witness_replays"] = replays;
      if (!replays) c.fail("witness does not replay");
    }
    return c;
  }

  CheckOutcome gdim_equals_winf_dim() {
    CheckOutcome c{"gdim_equals_winf_dim"};
    const auto& rid = ws_.regular_injdim(Side::right);
    c.applicable = rid.is_exact() && rid.value() <= 2;
    if (!c.applicable) return c;
    for (const auto& a : instances(Side::left)) {
      ++c.instances;
      auto g = g_dim(a, ws_), w = winf_dim(a, ws_);
      if (!(g == w)) c.fail(a.describe() + " g_dim " + g.str() + " winf_dim " + w.str());
    }
    return c;
  }

  CheckOutcome approximation_presentations() {
    CheckOutcome c{"approximation_presentations"};
    c.applicable = quasi().quasi();
    if (!c.applicable) return c;
    std::size_t min_sample = SIZE_MAX;
    for (std::size_t t = 1; t <= opt_.max_t; ++t) {
      for (const auto& a : instances(Side::left)) {
        ++c.instances;
        auto p = wt_approx_presentation(a, t, ws_);
        min_sample = std::min(min_sample, p.cert.sample_size);
        if (!p.cert.green()) c.fail("t=" + std::to_string(t) + " " + a.describe());
      }
    }
    c.detail["min_sample_size"] = c.instances ? min_sample : 0;
    return c;
  }

  CheckOutcome relative_dimension_bound() {
    CheckOutcome c{"relative_dimension_bound"};
    c.applicable = false;
    for (std::size_t t = 1; t <= opt_.max_t; ++t) {
      if (quasi().quasi_verified < t) continue;
      c.applicable = true;
      for (const auto& a : instances(Side::left)) {
        ++c.instances;
        auto r = rel_pd_wt(a, t, t + 1, ws_.homology());
        if (!r.value.certainly_at_most(static_cast<long>(t)))
          c.fail("t=" + std::to_string(t) + " " + a.describe() + " rel.pd " + r.value.str());
      }
    }
    return c;
  }

  CheckOutcome finitistic_bound() {
    CheckOutcome c{"finitistic_bound"};
    const auto& lid = ws_.regular_injdim(Side::left);
    c.applicable = quasi().quasi() && lid.is_exact();
    if (!c.applicable) return c;
    auto scan = findim_scan(ws_, Side::left, opt_.scan_dim);
    c.instances = scan.examined;
    c.detail["left_regular_injdim"] = lid.value();
    c.detail["max_finite_pd"] = scan.max_finite_pd ? Json(*scan.max_finite_pd) : Json(nullptr);
    if (!scan.max_finite_pd || *scan.max_finite_pd > lid.value() || lid.value() > *scan.max_finite_pd + 1)
      c.fail("scan bound violated");
    return c;
  }

  std::vector<CheckOutcome> run_all() {
    return {transpose_sequences(),        torsionfree_bridge(),       universal_extensions(), w1_decision(),
            gdim_equals_winf_dim(),       approximation_presentations(), relative_dimension_bound(),
            finitistic_bound()};
  }

 private:
  RingPtr ring_;
  SuiteOptions opt_;
  Workspace ws_;
  std::optional<QuasiGorensteinReport> quasi_;
};

inline Json run_suite_entry(const CorpusEntry& e, const SuiteOptions& opt, bool& green) {
  auto file = e.parse();
  SuiteRun run(Ring::make(file.presentation), opt);
  Json checks = Json::array();
  green = true;
  for (const auto& c : run.run_all()) {
    green = green && c.passed;
    checks.push_back(c.json());
  }
  return Json{{"algebra", e.name},
              {"fingerprint", fingerprint(file.presentation)},
              {"quasi_gorenstein", to_json(run.quasi())},
              {"left_regular_injdim", to_json(run.workspace().regular_injdim(Side::left))},
              {"right_regular_injdim", to_json(run.workspace().regular_injdim(Side::right))},
              {"checks", checks},
              {"green", green}};
}

}  // namespace halg
