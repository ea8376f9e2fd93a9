#pragma once

// JSON encoding of results. Key order is insertion order, so a report is a
// pure function of its inputs (there is no timestamp).

#include <string>

#include <json.hpp>

#include "halg/gorenstein.hpp"

namespace halg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "halg-report/1";

inline Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const PeriodicityWitness& w) {
  return Json{{"syzygy", w.to}, {"isomorphic_to_power_of_syzygy", w.from}, {"multiplicity", w.multiplicity}};
}

inline Json to_json(const BoundedDim& b) {
  Json j;
  switch (b.tag()) {
    case BoundedDim::Tag::exact:
      j["exact"] = b.value();
      break;
    case BoundedDim::Tag::at_least:
      j["at_least"] = b.value();
      break;
    case BoundedDim::Tag::infinite:
      j["infinite"] = b.witness() ? Json{{"witness", to_json(*b.witness())}} : Json::object();
      break;
  }
  if (b.zero_module_flag()) j["zero_module"] = true;
  return j;
}

inline Json to_json(const Module& m) {
  Json maps = Json::object();
  for (ArrowId a = 0; a < m.maps().size(); ++a) maps[m.algebra().arrow(a).name] = to_json(m.map(a));
  return Json{{"side", side_name(m.side())}, {"dims", m.dims()}, {"maps", maps}};
}

inline Json to_json(const Morphism& f) {
  Json maps = Json::array();
  for (const auto& m : f.maps()) maps.push_back(to_json(m));
  return Json{{"source_dims", f.source().dims()}, {"target_dims", f.target().dims()}, {"maps", maps}};
}

inline Json to_json(const ShortExact& s) {
  return Json{{"left", to_json(s.left)}, {"middle", to_json(s.mid)}, {"right", to_json(s.right)},
              {"inclusion", to_json(s.inj)}, {"projection", to_json(s.surj)}};
}

inline Json to_json(const ApproxCertificates& c) {
  Json j{{"exact", c.exact}, {"pd_kernel_at_most_t_minus_1", c.pd_k_ok}, {"middle_in_wt", c.e_in_wt}};
  if (c.sampled) j["sampled_lifts"] = Json{{"sample_size", c.sample_size}, {"all_lift", c.all_lifts}};
  j["green"] = c.green();
  return j;
}

inline Json to_json(const ApproxPresentation& p) {
  Json trace = Json::array();
  for (const auto& s : p.trace) {
    Json delta = Json::array();
    for (const auto& d : s.delta_images) delta.push_back(to_json(d));
    trace.push_back(Json{{"level", s.level}, {"syzygy", to_json(s.syzygy)}, {"q_generators", s.q_gens},
                         {"delta_on_generators", delta}});
  }
  return Json{{"t", p.t}, {"sequence", to_json(p.seq)}, {"ext1_generators", p.ext_generators}, {"trace", trace}};
}

inline Json to_json(const QuasiGorensteinReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back(Json{{"i", t.index}, {"pd_injective_term", to_json(t.pd)}, {"quasi", t.quasi_ok},
                         {"gorenstein", t.gor_ok}});
  return Json{{"k", r.k}, {"terms", terms}, {"quasi_k_gorenstein", r.quasi()}, {"k_gorenstein", r.gorenstein()},
              {"quasi_verified_up_to", r.quasi_verified}, {"gorenstein_verified_up_to", r.gorenstein_verified},
              {"budget_exhausted", r.budget_exhausted}};
}

inline Json make_report(const std::string& command, const std::string& fingerprint, std::uint64_t seed) {
  return Json{{"version", kReportVersion}, {"command", command}, {"fingerprint", fingerprint}, {"seed", seed},
              {"results", Json::object()}, {"certificates", Json::object()}};
}

// Scalars, and arrays nesting only scalars (dims, matrices), print on one line.
inline bool inline_value(const Json& v) {
  if (!v.is_structured() || v.empty()) return true;
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (x.is_object() || (x.is_array() && !inline_value(x))) return false;
  return true;
}

/// Indented key: value rendering of a report for terminals.
inline void render_text(const Json& j, std::string& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (inline_value(v)) {
        out += pad + it.key() + ": " + v.dump() + "\n";
      } else {
        out += pad + it.key() + ":\n";
        render_text(v, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (!inline_value(v)) {
        out += pad + "-\n";
        render_text(v, out, indent + 2);
      } else {
        out += pad + "- " + v.dump() + "\n";
      }
    }
  } else {
    out += pad + j.dump() + "\n";
  }
}

inline std::string render_text(const Json& j) {
  std::string out;
  render_text(j, out);
  return out;
}

}  // namespace halg
