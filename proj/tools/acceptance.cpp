#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "stabrecon/io.hpp"
#include "stabrecon/reconstruct.hpp"

using namespace stabrecon;

namespace {

std::string fixture_dir = STABRECON_FIXTURES;

AlgebraPtr load(const std::string& name) {
  return io::algebra_from_json(io::read_file(fixture_dir + "/algebras/" + name + ".json"));
}

SimpleSet load_set(const std::string& name, const AlgebraPtr& a) {
  io::ModuleSet ms = io::module_set_from_json(io::read_file(fixture_dir + "/sets/" + name + ".json"), a);
  SimpleSetCheck c = check_simple_set(ms.members, ms.labels);
  if (!c.ok()) throw std::runtime_error("fixture set " + name + " is not simple-minded");
  return c.set;
}

SimpleSet simples_of(const AlgebraPtr& a) {
  std::vector<Module> ms;
  for (int v = 0; v < a->num_vertices(); ++v) ms.push_back(simple(a, v));
  return check_simple_set(ms).set;
}

const std::vector<std::string> self_injective_fixtures{"lambda4", "n3", "dual_numbers", "nakayama3", "ka4"};

// Collects failed sub-checks; the first few are reported.
struct Check {
  std::vector<std::string> failures;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Check&)> run;
};

std::string dims_str(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

void lambda4_example(Check& c) {
  AlgebraPtr a = load("lambda4");
  io::DerivedInput in = io::derived_input_from_json(io::read_file(fixture_dir + "/derived/lambda4_example.json"), a);
  HomPatternReport rep = verify_family_pattern(in.family, in.candidates, in.kind);
  c.expect(rep.pass, "Hom pattern");
  DgCohomology h = endo_dg_cohomology(in.candidates);
  c.note << "H^-1=" << h.at(-1) << " H^0=" << h.at(0);
  c.expect(h.at(0) == 3, "dim H^0 = 3");
  c.expect(h.at(-1) == 1, "dim H^-1 = 1 (computed " + std::to_string(h.at(-1)) + ")");
  for (int i = h.lo; i <= h.hi(); ++i)
    if (i != 0 && i != -1) c.expect(h.at(i) == 0, "H^" + std::to_string(i) + " = 0");
  NuCheck nu = nu_family_check(in.family);
  c.note << " nu=" << (nu.status == NuStatus::Not ? "Not" : nu.status == NuStatus::Stable ? "Stable" : "Undecided");
  c.expect(nu.status == NuStatus::Not, "nu_family_check = Not");
}

void symmetric_vanishing(Check& c) {
  for (const std::string name : {"n3", "dual_numbers"}) {
    AlgebraPtr a = load(name);
    c.expect(symmetric_check(*a).status == SymmetricStatus::Symmetric, name + " symmetric");
    ComplexFamily s = simple_family(a);
    ComplexFamily p = projective_family(a);
    c.expect(verify_family_pattern(s, p.members, PatternKind::P).pass, name + " projective pattern");
    DgCohomology h = endo_dg_cohomology(p.members, std::pair{-6, 6});
    for (int i = -6; i <= 6; ++i)
      if (i != 0) c.expect(h.at(i) == 0, name + " H^" + std::to_string(i) + " = 0");
    c.expect(h.at(0) == a->dim(), name + " H^0 = dim A");
    c.note << name << ":H^0=" << h.at(0) << " ";
  }
}

void reconstruction_oracle(Check& c) {
  for (const auto& name : self_injective_fixtures) {
    AlgebraPtr a = load(name);
    FiltrationEngine eng(simples_of(a));
    Generator g = generator_build(eng);
    c.expect(g.certificate.radical(), name + " generator filtration radical");
    GradedAlgebra e = end_g(g.m);
    GradedIsoResult r = graded_iso_check(e, gr_oracle(*a));
    c.expect(r.status == IsoStatus::Iso, name + " End_G iso to gr");
    if (r.map) c.expect(is_graded_iso(e, gr_oracle(*a), *r.map), name + " iso map re-validates");
    c.note << name << dims_str(e.dims) << " ";
  }
}

// Degree-i dims of End_G(M) by direct linear algebra on End_A(M): the filtered
// maps F_i = {g : g(M_j) <= M_{i+j}} and the image of F_i in the stable Hom
// from M/M_1 to M_i/M_{i+1}.
std::vector<int> filtered_end_dims(const Filtration& f) {
  const Module& m = f.module;
  const Field& k = m.field();
  HomSpace end = hom_space(m, m);
  const int n = m.dim(), len = f.length(), r = end.dim();
  auto level = [&](int j) { return j <= len ? graded_to_global(m, f.chain[j]) : Subspace(k, n); };
  Quotient top = quotient(m, f.chain[1]);
  std::vector<int> dims;
  for (int i = 0; i < len; ++i) {
    std::vector<Vec> rows;
    for (int j = 0; j <= len; ++j) {
      Subspace src = level(j), dst = level(i + j);
      // rows of ann span the annihilator of dst
      Subspace ann = kernel_basis(dst.dim() ? dst.basis() : Matrix(k, 1, n));
      for (int x = 0; x < src.dim(); ++x) {
        Vec xv = src.basis().row_vec(x);
        for (int y = 0; y < ann.dim(); ++y) {
          Vec row(r);
          Vec av = ann.basis().row_vec(y);
          for (int t = 0; t < r; ++t) {
            Vec gx = end[t].m.apply(xv);
            Elem s = 0;
            for (int z = 0; z < n; ++z) s = k.add(s, k.mul(av[z], gx[z]));
            row[t] = s;
          }
          rows.push_back(row);
        }
      }
    }
    Subspace fi = rows.empty() ? Subspace::full(k, r) : kernel_basis(Matrix::from_rows(k, r, rows));
    Embedded mi = submodule(m, f.chain[i]);
    Graded below = preimage_of(mi.incl, f.chain[i + 1]);
    Quotient layer = quotient(mi.sub, below);
    HomSpace h = hom_space(top.quot, layer.quot);
    Subspace stable_zero = projective_maps(h);
    Subspace img = stable_zero;
    for (int b = 0; b < fi.dim(); ++b) {
      ModuleMap g = end.combine(fi.basis().row_vec(b));
      Matrix into = *solve_right(mi.incl.m, g.m * top.section);
      Matrix induced = layer.proj.m * into;
      img = img + Subspace::span(Matrix::row(k, h.coordinates(ModuleMap(top.quot, layer.quot, induced))));
    }
    dims.push_back(img.dim() - stable_zero.dim());
  }
  while (!dims.empty() && dims.back() == 0) dims.pop_back();
  return dims;
}

void omega_twist(Check& c) {
  AlgebraPtr a = load("n3");
  SimpleSet s = load_set("n3_j2", a);
  FiltrationEngine eng(s);
  Generator g = generator_build(eng);
  c.expect(g.m.module().dim() == 6, "generator has dimension 6");
  GradedAlgebra e = end_g(g.m);
  c.expect(e.dims == std::vector<int>{1, 1, 1}, "End_G dims (1,1,1)");
  std::vector<int> oracle = filtered_end_dims(g.m.filtration);
  c.expect(oracle == e.dims, "oracle dims " + dims_str(oracle));
  c.expect(graded_iso_check(e, gr_oracle(*a)).status == IsoStatus::Iso, "End_G iso to gr(N3)");
  c.note << "generator dim " << g.m.module().dim() << ", End_G " << dims_str(e.dims) << ", oracle "
         << dims_str(oracle);
}

void ka4_non_uniqueness(Check& c) {
  AlgebraPtr a = load("ka4");
  SimpleSet s = load_set("ka4_family", a);
  Module p = io::module_from_json(io::read_file(fixture_dir + "/modules/ka4_p1_p2.json"), a);
  c.expect(is_projective(p), "module is projective");
  FiltrationEngine eng(s);
  std::vector<Filtration> fs = eng.all_s_radical_filtrations(p);
  std::set<std::vector<int>> totals;
  for (const auto& f : fs) {
    std::vector<int> tot(s.modules.size(), 0);
    for (const auto& l : f.mult)
      for (std::size_t i = 0; i < l.size(); ++i) tot[i] += l[i];
    totals.insert(tot);
    c.note << dims_str(tot) << " ";
    RadicalCertificate cert = eng.verify_s_radical(f);
    c.expect(cert.radical(), "verify_s_radical");
    c.expect(!cert.no_remainder.empty() && !cert.no_remainder[0], "level 0 has a projective remainder");
    for (std::size_t i = 1; i < cert.no_remainder.size(); ++i)
      c.expect(cert.no_remainder[i], "no-remainder flag at level " + std::to_string(i));
  }
  c.note << "(" << fs.size() << " filtrations, dim " << p.dim() << ")";
  c.expect(fs.size() >= 2, "at least two filtrations");
  c.expect(totals.size() >= 2, "layer multisets differ");
}

// Iterated extension of random family members, built from random Ext classes.
Module random_extension(const SimpleSet& s, int steps, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(s.modules.size()) - 1);
  Module m = s.modules[pick(rng)];
  for (int t = 1; t < steps; ++t) {
    const Module& x = s.modules[pick(rng)];
    Ext1 e = rng() % 2 ? Ext1(x, m) : Ext1(m, x);
    if (e.dim() == 0) {
      m = direct_sum(m, x);
      continue;
    }
    std::uniform_int_distribution<int> el(0, static_cast<int>(m.field().q()) - 1);
    Vec cls(e.dim());
    for (auto& v : cls) v = static_cast<Elem>(el(rng));
    m = e.realize(cls).i.tgt;
  }
  return m;
}

ModuleMap random_projective_part(const Module& n, const Module& m, std::mt19937_64& rng) {
  ModuleMap out = zero_map(n, m);
  std::uniform_int_distribution<int> el(0, static_cast<int>(m.field().q()) - 1);
  for (const ModuleMap& b : projective_map_basis(n, m)) out = out + scaled(b, static_cast<Elem>(el(rng)));
  return out;
}

void uniqueness_suite(Check& c, int per_fixture) {
  std::mt19937_64 rng(2024);
  struct Fx {
    std::string algebra, set;
  };
  std::vector<Fx> fx{{"lambda4", ""}, {"n3", ""}, {"n3", "n3_j2"}, {"dual_numbers", ""}, {"nakayama3", ""}, {"ka4", ""}};
  for (const auto& f : fx) {
    AlgebraPtr a = load(f.algebra);
    SimpleSet s = f.set.empty() ? simples_of(a) : load_set(f.set, a);
    std::string tag = f.algebra + (f.set.empty() ? "" : "/" + f.set);
    const int ns = static_cast<int>(s.modules.size());
    FiltrationEngine eng(s);
    FiltrationOptions ro;
    ro.order.resize(ns);
    for (int i = 0; i < ns; ++i) ro.order[i] = ns - 1 - i;
    ro.seed = 99;
    FiltrationEngine other(s, ro);
    int done = 0, tries = 0;
    while (done < per_fixture && tries < 20 * per_fixture) {
      ++tries;
      Module m = random_extension(s, 1 + static_cast<int>(rng() % 6), rng);
      if (eng.has_projective_remainder(m)) continue;
      ++done;
      auto fm = eng.s_radical_filtration(m);
      if (!fm) {
        c.expect(false, tag + ": extension not filtrable");
        continue;
      }
      for (int i = 0; i < ns; ++i)
        c.expect(fm->mult[0][i] == stable_hom(m, s.modules[i]).dim(), tag + ": head multiplicity");
      Module n = fixtures::random_conjugate(m, rng);
      auto gn = other.s_radical_filtration(n);
      auto iso = find_isomorphism(n, m);
      if (!gn || !iso) {
        c.expect(false, tag + ": permuted run or isomorphism missing");
        continue;
      }
      c.expect(gn->mult == fm->mult, tag + ": permuted run multiplicities");
      ModuleMap sigma = align_filtrations(*fm, push_forward(*gn, *iso), s);
      c.expect(sigma.is_iso(), tag + ": align_filtrations");
      ModuleMap phi = *iso + random_projective_part(n, m, rng);
      auto lift = stable_iso_lifts(phi);
      c.expect(lift && lift->is_iso() && is_projective_map(*lift - phi), tag + ": stable_iso_lifts");
    }
    c.expect(done >= per_fixture, tag + ": only " + std::to_string(done) + " samples");
    c.note << tag << ":" << done << " ";
  }
}

// (S, d) pairs removed by cancellation come as {(S, d), (S, d + 1)}.
bool cancelled_pairs(std::vector<std::pair<int, int>> before, std::vector<std::pair<int, int>> after, int cancels) {
  std::multiset<std::pair<int, int>> rest(before.begin(), before.end());
  for (const auto& p : after) {
    auto it = rest.find(p);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  if (static_cast<int>(rest.size()) != 2 * cancels) return false;
  while (!rest.empty()) {
    auto lo = *rest.begin();
    rest.erase(rest.begin());
    auto it = rest.find({lo.first, lo.second + 1});
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return true;
}

void reorder_suite(Check& c, int per_algebra) {
  std::mt19937_64 rng(7);
  for (const std::string name : {"lambda4", "n3"}) {
    AlgebraPtr a = load(name);
    int swaps = 0, cancels = 0;
    for (int t = 0; t < per_algebra; ++t) {
      RandomTowerOptions opts;
      opts.layers = 2 + static_cast<int>(rng() % 3);
      Tower tw = random_tower(a, rng, opts);
      ReorderLog log;
      Tower r = tower_reorder(tw, &log);
      int nc = 0;
      for (const auto& st : log.steps) (st.first == ReorderStep::Swap ? swaps : nc)++;
      cancels += nc;
      std::string tag = name + " tower " + std::to_string(t);
      c.expect(check_tower(r).ok, tag + ": reordered tower valid");
      c.expect(std::is_sorted(r.d.rbegin(), r.d.rend()), tag + ": d non-increasing");
      c.expect(cancelled_pairs(tw.multiset(), r.multiset(), nc), tag + ": multiset up to cancelled pairs");
      Truncation tr = tower_truncate(r);
      c.expect(tr.m_le0.pass, tag + ": L_s in T<=0");
      c.expect(tr.l_ge1.pass, tag + ": N/L_s in T>=1");
    }
    c.note << name << ":" << per_algebra << " towers, " << swaps << " swaps, " << cancels << " cancels ";
  }
}

int module_ext(const Module& m, const Module& n, int i) {
  if (i < 0) return 0;
  if (i == 0) return hom_space(m, n).dim();
  if (i == 1) return Ext1(m, n).dim();
  Module om = m;
  for (int k = 0; k < i; ++k) om = syzygy(om);
  return stable_hom(om, n).dim();
}

void derived_consistency(Check& c) {
  int pairs = 0;
  for (const auto& name : self_injective_fixtures) {
    AlgebraPtr a = load(name);
    std::vector<Module> pool;
    for (int v = 0; v < a->num_vertices(); ++v) {
      pool.push_back(simple(a, v));
      pool.push_back(projective(a, v));
      pool.push_back(syzygy(simple(a, v)));
    }
    for (const Module& m : pool)
      for (const Module& n : pool) {
        std::vector<int> d = derived_hom_dims(stalk(m), stalk(n), -3, 3);
        for (int i = -3; i <= 3; ++i) c.expect(d[i + 3] == module_ext(m, n, i), name + ": Hom(M, N[" + std::to_string(i) + "])");
        c.expect(derived_hom_dims(stalk(m), stalk(n), -3, 3, 3) == d, name + ": depth stability");
        ++pairs;
      }
  }
  c.note << pairs << " pairs";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  int samples = 200, towers = 100;
  app.add_option("--fixtures", fixture_dir, "Fixture directory")->capture_default_str();
  app.add_option("--expect-fail", expect_fail, "Criteria whose failure is a recorded conflict");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--samples", samples, "Modules per fixture for criterion 6")->capture_default_str();
  app.add_option("--towers", towers, "Towers per algebra for criterion 7")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> crit{
      {1, "Lambda4 example", 1.0, lambda4_example},
      {2, "symmetric vanishing", 1.0, symmetric_vanishing},
      {3, "reconstruction oracle", 10.0, reconstruction_oracle},
      {4, "omega-twist reconstruction", 5.0, omega_twist},
      {5, "kA4 non-uniqueness", 300.0, ka4_non_uniqueness},
      {6, "uniqueness suite", 120.0, [&](Check& c) { uniqueness_suite(c, samples); }},
      {7, "reorder suite", 60.0, [&](Check& c) { reorder_suite(c, towers); }},
      {8, "derived-engine self-consistency", 30.0, derived_consistency},
  };
  bool unexpected = false;
  for (const auto& cr : crit) {
    if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < cr.limit_s, "runtime over " + std::to_string(cr.limit_s) + " s");
    bool known = std::find(expect_fail.begin(), expect_fail.end(), cr.id) != expect_fail.end();
    std::printf("criterion %d: %s  %s  [%.2fs] %s", cr.id, c.pass() ? "PASS" : "FAIL", cr.name.c_str(), secs,
                c.note.str().c_str());
    if (!c.pass()) {
      std::printf(" | failed: %s", c.failures.front().c_str());
      if (c.failures.size() > 1) std::printf(" (+%zu more)", c.failures.size() - 1);
      if (known) std::printf(" | recorded conflict");
    }
    std::printf("\n");
    std::fflush(stdout);
    if (c.pass() == known) unexpected = true;
  }
  return unexpected ? 1 : 0;
}
