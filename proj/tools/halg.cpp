#include <iostream>

#include <CLI11.hpp>

#include "halg/commands.hpp"

namespace {

halg::Side parse_side(const std::string& s) { return s == "right" ? halg::Side::right : halg::Side::left; }

int emit(const halg::CommandResult& r, const std::string& format, bool table = false) {
  if (format == "json") std::cout << r.report.dump(2) << "\n";
  else if (table) std::cout << halg::suite_table(r.report);
  else std::cout << halg::render_text(r.report);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological invariants of bound quiver algebras over F_p"};
  app.require_subcommand(1);

  halg::CommonOptions common;
  std::string format = "json";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--horizon", common.horizon, "Ext/resolution horizon")->envname("HALG_HORIZON");
    sub->add_option("--dim-bound", common.dim_bound, "dimension bound for module scans");
    sub->add_option("--seed", common.seed, "seed for randomized searches")->envname("HALG_SEED");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  std::string file, module_name, side = "left";
  auto add_side = [&](CLI::App* sub) {
    sub->add_option("--side", side, "side for built-in module names")->check(CLI::IsMember({"left", "right"}));
  };

  auto* inv = app.add_subcommand("invariants", "grade, torsionfreeness, W^t membership and dimensions of a module");
  inv->add_option("file", file, "algebra file or corpus:NAME")->required();
  inv->add_option("module", module_name, "module name, or simple:V, projective:V, injective:V, regular, zero")
      ->required();
  bool no_strong = false;
  inv->add_flag("--no-strong-grade", no_strong, "skip the submodule enumeration");
  add_side(inv);
  add_common(inv);

  std::size_t t = 1;
  bool hypothesis = false;
  auto* approx = app.add_subcommand("approx", "W^t-approximation presentation of a module");
  approx->add_option("file", file, "algebra file or corpus:NAME")->required();
  approx->add_option("module", module_name, "module name")->required();
  approx->add_option("--t", t, "approximation level")->check(CLI::PositiveNumber);
  approx->add_flag("--check-hypothesis", hypothesis, "also compute strong grades of the Ext modules");
  add_side(approx);
  add_common(approx);

  halg::CheckRequest req;
  std::size_t quasi_k = 0, gor_k = 0, wk = 0, uc = 0;
  auto* check = app.add_subcommand("check", "algebra-level properties");
  check->add_option("file", file, "algebra file or corpus:NAME")->required();
  auto* o_quasi = check->add_option("--quasi-k", quasi_k, "quasi k-Gorenstein");
  auto* o_gor = check->add_option("--gorenstein-k", gor_k, "k-Gorenstein");
  auto* o_wk = check->add_option("--property-wk", wk, "property (W^k)");
  auto* o_uc = check->add_option("--ultimately-closed", uc, "ultimately closed injective resolution at n");
  auto* o_snc = check->add_flag("--snc", req.snc, "search for a strong Nakayama counterexample");
  check->add_option("--replay", req.replay_module, "verify a module of the file as a counterexample");
  check->add_option("--replay-out", req.replay_out, "write the witness replay file here");
  for (auto* o : {o_quasi, o_gor, o_wk, o_uc, o_snc})
    for (auto* p : {o_quasi, o_gor, o_wk, o_uc, o_snc})
      if (o != p) o->excludes(p);
  add_common(check);

  bool list = false, suite = false;
  std::vector<std::string> only;
  auto* corpus = app.add_subcommand("corpus", "bundled corpus");
  auto* o_list = corpus->add_flag("--list", list, "list bundled algebras");
  auto* o_suite = corpus->add_flag("--run-suite", suite, "run the property suite");
  corpus->add_option("--only", only, "restrict the suite to these algebras");
  o_list->excludes(o_suite);
  add_common(corpus);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*inv) return emit(halg::cmd_invariants(halg::load_algebra(file), module_name, parse_side(side), common, !no_strong), format);
    if (*approx) return emit(halg::cmd_approx(halg::load_algebra(file), module_name, parse_side(side), t, common, hypothesis), format);
    if (*check) {
      if (*o_quasi) req.quasi_k = quasi_k;
      if (*o_gor) req.gorenstein_k = gor_k;
      if (*o_wk) req.property_wk = wk;
      if (*o_uc) req.ultimately_closed = uc;
      return emit(halg::cmd_check(halg::load_algebra(file), req, common), format);
    }
    if (*corpus) {
      if (list) return emit(halg::cmd_corpus_list(common), format);
      if (suite) return emit(halg::cmd_corpus_suite(common, only), format, true);
      std::cerr << "corpus needs --list or --run-suite\n";
      return 1;
    }
  } catch (const halg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
