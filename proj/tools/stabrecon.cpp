#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "stabrecon/io.hpp"
#include "stabrecon/reconstruct.hpp"

using namespace stabrecon;
using io::json;

namespace {

enum Exit { Pass = 0, Failure = 1, Undecided_ = 2, InputErr = 3 };

struct Options {
  std::uint64_t seed = 0;
  int padding_cap = 4;
  long search_cap = 1L << 22;
  std::string window;
  std::string oracle;
  std::string emit;
};

struct Run {
  const Options& opt;
  json report;
  std::vector<std::pair<std::string, json>> artifacts;

  Run(const Options& o, const std::string& command) : opt(o) {
    report = {{"command", command}, {"seed", o.seed}, {"inputs", json::object()}, {"details", json::object()}};
  }

  json input(const std::string& name, const std::string& path) {
    json j = io::read_file(path);
    report["inputs"][name] = {{"path", path}, {"hash", io::content_hash(j)}};
    return j;
  }
  void artifact(const std::string& file, json j) { artifacts.emplace_back(file, std::move(j)); }
  json& details() { return report["details"]; }
};

int finish(Run& run, const std::string& outcome, int code, std::chrono::steady_clock::time_point start) {
  run.report["outcome"] = outcome;
  run.report["exit_code"] = code;
  json names = json::array();
  for (const auto& a : run.artifacts) names.push_back(a.first);
  run.report["artifacts"] = names;
  if (!run.opt.emit.empty()) {
    std::filesystem::create_directories(run.opt.emit);
    for (const auto& [file, j] : run.artifacts) io::write_file(run.opt.emit + "/" + file, j);
    io::write_file(run.opt.emit + "/report.json", run.report);
  }
  json shown = run.report;
  shown["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << io::dump(shown);
  return code;
}

std::pair<int, int> parse_window(const std::string& w, std::pair<int, int> fallback) {
  if (w.empty()) return fallback;
  static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(w, m, re)) throw io::InputError("window must look like a..b, got '" + w + "'");
  int a = std::stoi(m[1]), b = std::stoi(m[2]);
  if (a > b) throw io::InputError("empty window " + w);
  return {a, b};
}

std::vector<std::string> vertex_names(const Algebra& a) { return a.presentation().vertices; }

const char* status_name(SymmetricStatus s) {
  switch (s) {
    case SymmetricStatus::Symmetric: return "Symmetric";
    case SymmetricStatus::NotSymmetric: return "NotSymmetric";
    default: return "Undecided";
  }
}

SimpleSet family_from(Run& run, const std::string& path, const AlgebraPtr& a, bool& ok) {
  io::ModuleSet ms = io::module_set_from_json(run.input("set", path), a);
  SimpleSetCheck c = check_simple_set(ms.members, ms.labels);
  run.details()["stable_hom_pattern"] = c.set.pattern;
  run.details()["labels"] = c.set.labels;
  ok = c.ok();
  if (!ok) run.details()["violation"] = {{"i", c.violation->i}, {"j", c.violation->j}, {"reason", c.violation->reason}};
  return c.set;
}

FiltrationOptions filtration_options(const Options& o) {
  FiltrationOptions f;
  f.seed = o.seed;
  f.padding_cap_factor = o.padding_cap;
  return f;
}

struct Result {
  std::string outcome;
  int code;
};

Result cmd_validate(Run& run, const std::string& alg_path) {
  AlgebraPtr a = io::algebra_from_json(run.input("algebra", alg_path));
  auto& d = run.details();
  d["dim"] = a->dim();
  d["field"] = io::field_to_json(a->field());
  d["vertices"] = vertex_names(*a);
  d["loewy_length"] = a->loewy_length();
  d["graded_dims"] = gr_oracle(*a).dims;
  const SelfInjectiveResult& si = a->self_injectivity();
  d["self_injective"] = si.self_injective;
  if (!si.self_injective) {
    d["reason"] = si.reason;
    return {"NotSelfInjective", Failure};
  }
  json perm = json::object();
  for (int v = 0; v < a->num_vertices(); ++v)
    perm[vertex_names(*a)[v]] = vertex_names(*a)[si.data->permutation[v]];
  d["nakayama_permutation"] = perm;
  json ps = json::array();
  for (int v : si.data->projective_simples) ps.push_back(vertex_names(*a)[v]);
  d["projective_simples"] = ps;
  SymmetricResult sym = symmetric_check(*a, run.opt.seed);
  d["symmetric"] = status_name(sym.status);
  run.artifact("algebra.json", io::algebra_to_json(*a));
  return {"SelfInjective", Pass};
}

Result cmd_hypcheck(Run& run, const std::string& alg_path, const std::string& set_path) {
  AlgebraPtr a = io::algebra_from_json(run.input("algebra", alg_path));
  require_self_injective(*a);
  bool ok = false;
  SimpleSet s = family_from(run, set_path, a, ok);
  if (!ok) return {"NotSimpleMinded", Failure};
  FiltrationEngine eng(s, filtration_options(run.opt));
  json per = json::array();
  Result r{"Pass", Pass};
  for (std::size_t i = 0; i < s.modules.size(); ++i) {
    json e = {{"label", s.labels[i]}};
    Module om = syzygy(s.modules[i]);
    e["syzygy_dim"] = om.dim();
    try {
      auto pads = eng.minimal_paddings(om, true);
      json pj = json::array();
      for (const auto& q : pads) pj.push_back(q);
      e["status"] = "Filtrable";
      e["paddings"] = pj;
    } catch (const NotFiltrable& ex) {
      e["status"] = "NotFiltrable";
      e["reason"] = ex.what();
      if (auto v = support_obstruction(om, s)) e["obstruction_vertex"] = vertex_names(*a)[*v];
      r = {"Fail", Failure};
    } catch (const Undecided& ex) {
      e["status"] = "Undecided";
      e["reason"] = ex.what();
      if (r.code == Pass) r = {"Undecided", Undecided_};
    }
    per.push_back(e);
  }
  run.details()["syzygies"] = per;
  return r;
}

GradedAlgebra load_oracle(Run& run, const Algebra& a) {
  if (run.opt.oracle.empty() || run.opt.oracle == "gr") return gr_oracle(a);
  return io::graded_algebra_from_json(run.input("oracle", run.opt.oracle));
}

const char* iso_name(IsoStatus s) {
  switch (s) {
    case IsoStatus::Iso: return "Iso";
    case IsoStatus::No: return "No";
    default: return "Inconclusive";
  }
}

Result cmd_reconstruct(Run& run, const std::string& alg_path, const std::string& set_path) {
  AlgebraPtr a = io::algebra_from_json(run.input("algebra", alg_path));
  require_self_injective(*a);
  bool ok = false;
  SimpleSet s = family_from(run, set_path, a, ok);
  if (!ok) return {"NotSimpleMinded", Failure};
  FiltrationEngine eng(s, filtration_options(run.opt));
  Generator g = generator_build(eng);
  auto& d = run.details();
  d["generator_dim"] = g.m.module().dim();
  d["paddings"] = g.padding;
  d["filtration_length"] = g.m.filtration.length();
  d["radical"] = g.certificate.radical();
  GradedAlgebra e = end_g(g.m);
  d["end_dims"] = e.dims;
  GradedAlgebra oracle = load_oracle(run, *a);
  d["oracle_dims"] = oracle.dims;
  GradedIsoResult iso = graded_iso_check(e, oracle, run.opt.search_cap);
  d["iso"] = iso_name(iso.status);
  if (!iso.reason.empty()) d["iso_reason"] = iso.reason;
  run.artifact("graded_algebra.json", io::graded_algebra_to_json(e));
  run.artifact("generator.json", io::module_to_json(g.m.module()));
  run.artifact("generator_filtration.json", io::filtration_to_json(g.m.filtration, s, &g.certificate));
  if (iso.map) run.artifact("iso_map.json", io::matrix_to_json(*iso.map));
  switch (iso.status) {
    case IsoStatus::Iso: return {"Iso", Pass};
    case IsoStatus::No: return {"NotIso", Failure};
    default: return {"Inconclusive", Undecided_};
  }
}

json membership_json(const Membership& m) {
  json j = {{"pass", m.pass}};
  if (!m.pass) j.update({{"shift", m.shift}, {"member", m.member}, {"dim", m.dim}});
  return j;
}

const char* nu_name(NuStatus s) {
  switch (s) {
    case NuStatus::Stable: return "Stable";
    case NuStatus::Not: return "Not";
    default: return "Undecided";
  }
}

Result cmd_derived(Run& run, const std::string& alg_path, const std::string& input_path) {
  AlgebraPtr a = io::algebra_from_json(run.input("algebra", alg_path));
  io::DerivedInput in = io::derived_input_from_json(run.input("complexes", input_path), a);
  auto& d = run.details();
  d["family"] = in.family.labels;
  if (in.candidates.size() != in.family.members.size())
    throw io::InputError("need one candidate per family member");
  HomPatternReport rep = verify_family_pattern(in.family, in.candidates, in.kind);
  d["pattern"] = io::hom_pattern_to_json(rep, in.family);

  bool proj = std::all_of(in.candidates.begin(), in.candidates.end(), [](const Complex& c) { return all_projective(c); });
  if (proj || !run.opt.window.empty()) {
    std::optional<std::pair<int, int>> w;
    if (!run.opt.window.empty()) w = parse_window(run.opt.window, {0, 0});
    DgCohomology h = endo_dg_cohomology(in.candidates, w);
    json hj = json::object();
    for (int i = h.lo; i <= h.hi(); ++i) hj[std::to_string(i)] = h.at(i);
    d["endo_cohomology"] = {{"lo", h.lo}, {"hi", h.hi()}, {"dims", hj}};
  }

  bool self_inj = a->self_injectivity().self_injective;
  if (self_inj) {
    NuCheck nu = nu_family_check(in.family, run.opt.seed);
    d["nakayama"] = {{"status", nu_name(nu.status)}, {"image", nu.image}, {"witness", nu.witness}};
  }
  return rep.pass ? Result{"Pass", Pass} : Result{"Fail", Failure};
}

Result cmd_filtrate(Run& run, const std::string& alg_path, const std::string& set_path,
                    const std::string& module_path, bool all) {
  AlgebraPtr a = io::algebra_from_json(run.input("algebra", alg_path));
  require_self_injective(*a);
  bool ok = false;
  SimpleSet s = family_from(run, set_path, a, ok);
  if (!ok) return {"NotSimpleMinded", Failure};
  Module m = io::module_from_json(run.input("module", module_path), a);
  FiltrationEngine eng(s, filtration_options(run.opt));
  std::vector<Filtration> fs;
  if (all) {
    fs = eng.all_s_radical_filtrations(m);
  } else if (auto f = eng.s_radical_filtration(m)) {
    fs.push_back(std::move(*f));
  }
  run.details()["module_dim"] = m.dim();
  if (fs.empty()) {
    if (auto v = support_obstruction(m, s)) run.details()["obstruction_vertex"] = vertex_names(*a)[*v];
    return {"NotFiltrable", Failure};
  }
  json summary = json::array();
  bool radical = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    RadicalCertificate cert = eng.verify_s_radical(fs[i]);
    radical = radical && cert.radical();
    summary.push_back({{"length", fs[i].length()}, {"multiplicities", fs[i].mult}, {"radical", cert.radical()}});
    std::string name = fs.size() == 1 ? "filtration.json" : "filtration_" + std::to_string(i) + ".json";
    run.artifact(name, io::filtration_to_json(fs[i], s, &cert));
  }
  run.details()["filtrations"] = summary;
  return radical ? Result{"Radical", Pass} : Result{"NotRadical", Failure};
}

Result cmd_tower(Run& run, const std::string& alg_path, const std::string& tower_path) {
  AlgebraPtr a = io::algebra_from_json(run.input("algebra", alg_path));
  Tower t = io::tower_from_json(run.input("tower", tower_path), a);
  ReorderLog log;
  Tower r = tower_reorder(t, &log);
  auto& d = run.details();
  int swaps = 0, cancels = 0;
  for (const auto& st : log.steps) (st.first == ReorderStep::Swap ? swaps : cancels)++;
  d["input"] = {{"length", t.length()}, {"member", t.member}, {"d", t.d}};
  d["reordered"] = {{"length", r.length()}, {"member", r.member}, {"d", r.d}, {"swaps", swaps}, {"cancels", cancels}};
  Truncation tr = tower_truncate(r);
  d["truncation"] = {{"s", tr.s}, {"m_le0", membership_json(tr.m_le0)}, {"l_ge1", membership_json(tr.l_ge1)}};
  run.artifact("tower_reordered.json", io::tower_to_json(r));
  run.artifact("truncation_m.json", io::complex_to_json(tr.m));
  run.artifact("truncation_l.json", io::complex_to_json(tr.l));
  bool pass = check_tower(r).ok && tr.m_le0.pass && tr.l_ge1.pass;
  return pass ? Result{"Pass", Pass} : Result{"Fail", Failure};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable categories of self-injective algebras: simple-minded families, filtrations and reconstruction"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--seed", opt.seed, "RNG seed for randomized steps")->capture_default_str();
  app.add_option("--padding-cap", opt.padding_cap, "Padding search cap, as a multiple of dim Omega S")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--search-cap", opt.search_cap, "Candidate cap for the graded isomorphism search")->capture_default_str();
  app.add_option("--window", opt.window, "Shift window a..b for derived cohomology");
  app.add_option("--oracle", opt.oracle, "graded_algebra.v1 file, or 'gr' for the radical-graded algebra");
  app.add_option("--emit", opt.emit, "Directory for artifacts and report.json");

  std::string alg, set, mod, file;
  bool all = false;
  auto* validate = app.add_subcommand("validate", "Load an algebra, check self-injectivity and symmetry");
  validate->add_option("algebra", alg)->required();
  auto* hypcheck = app.add_subcommand("hypcheck", "Check a family is simple-minded and its syzygies are filtrable");
  hypcheck->add_option("algebra", alg)->required();
  hypcheck->add_option("set", set)->required();
  auto* reconstruct = app.add_subcommand("reconstruct", "Build the generator, End_G and compare with an oracle");
  reconstruct->add_option("algebra", alg)->required();
  reconstruct->add_option("set", set)->required();
  auto* derived = app.add_subcommand("derived", "Check the Hom pattern of candidate complexes");
  derived->add_option("algebra", alg)->required();
  derived->add_option("complexes", file)->required();
  auto* filtrate = app.add_subcommand("filtrate", "S-radical filtration of a module");
  filtrate->add_option("algebra", alg)->required();
  filtrate->add_option("set", set)->required();
  filtrate->add_option("module", mod)->required();
  filtrate->add_flag("--all", all, "All S-radical filtrations (one per admissible first layer)");
  auto* tower = app.add_subcommand("tower", "Reorder a tower and truncate it at degree 0");
  tower->add_option("algebra", alg)->required();
  tower->add_option("tower", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return InputErr;
  }

  auto start = std::chrono::steady_clock::now();
  std::string name = app.get_subcommands().front()->get_name();
  Run run(opt, name);
  try {
    if (!opt.window.empty()) parse_window(opt.window, {0, 0});
    Result r;
    if (*validate) r = cmd_validate(run, alg);
    else if (*hypcheck) r = cmd_hypcheck(run, alg, set);
    else if (*reconstruct) r = cmd_reconstruct(run, alg, set);
    else if (*derived) r = cmd_derived(run, alg, file);
    else if (*filtrate) r = cmd_filtrate(run, alg, set, mod, all);
    else r = cmd_tower(run, alg, file);
    return finish(run, r.outcome, r.code, start);
  } catch (const io::InputError& e) {
    run.details()["error"] = e.what();
    return finish(run, "InputError", InputErr, start);
  } catch (const NonAdmissible& e) {
    run.details()["error"] = e.what();
    return finish(run, "InputError", InputErr, start);
  } catch (const NotSelfInjective& e) {
    run.details()["error"] = e.what();
    return finish(run, "NotSelfInjective", Failure, start);
  } catch (const NotFiltrable& e) {
    run.details()["error"] = e.what();
    return finish(run, "NotFiltrable", Failure, start);
  } catch (const Undecided& e) {
    run.details()["error"] = e.what();
    return finish(run, "Undecided", Undecided_, start);
  } catch (const std::invalid_argument& e) {
    run.details()["error"] = e.what();
    return finish(run, "InputError", InputErr, start);
  }
}
