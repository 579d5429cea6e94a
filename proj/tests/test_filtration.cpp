#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "stabrecon/filtration.hpp"

using namespace stabrecon;
using fixtures::jordan;

namespace {

SimpleSet simples(const AlgebraPtr& a) {
  std::vector<Module> ms;
  for (int v = 0; v < a->num_vertices(); ++v) ms.push_back(simple(a, v));
  auto c = check_simple_set(ms);
  REQUIRE(c.ok());
  return c.set;
}

SimpleSet family(const std::vector<Module>& ms) {
  auto c = check_simple_set(ms);
  REQUIRE(c.ok());
  return c.set;
}

std::vector<int> layer_dims(const Filtration& f) {
  std::vector<int> d;
  for (int i = 0; i < f.length(); ++i) d.push_back(f.layer_dim(i));
  return d;
}

bool isomorphic(const Module& a, const Module& b) { return find_isomorphism(a, b).has_value(); }

// Iterated extension of random family members, built from random Ext classes.
Module random_extension(const SimpleSet& s, int steps, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(s.modules.size()) - 1);
  Module m = s.modules[pick(rng)];
  for (int t = 1; t < steps; ++t) {
    const Module& x = s.modules[pick(rng)];
    bool on_top = rng() % 2 == 0;
    Ext1 e = on_top ? Ext1(x, m) : Ext1(m, x);
    if (e.dim() == 0) {
      m = direct_sum(m, x);
      continue;
    }
    std::uniform_int_distribution<int> el(0, static_cast<int>(m.field().q()) - 1);
    Vec c(e.dim());
    for (auto& v : c) v = static_cast<Elem>(el(rng));
    m = e.realize(c).i.tgt;
  }
  return m;
}

}  // namespace

TEST_CASE("top layer of small modules") {
  auto l4 = fixtures::lambda4();
  SimpleSet s = simples(l4);
  FiltrationEngine eng(s);
  TopLayer t = eng.top_layer(simple(l4, 0));
  CHECK(t.mult == std::vector<int>{1, 0});
  CHECK(t.f.is_surjective());
  CHECK(t.kernel.sub.is_zero());

  auto n3 = fixtures::n3();
  FiltrationEngine e3(family({jordan(n3, 2)}));
  Module m = direct_sum(jordan(n3, 1), jordan(n3, 3));
  TopLayer h = e3.top_layer(m);
  CHECK(h.mult == std::vector<int>{1});
  CHECK(isomorphic(h.x.module, jordan(n3, 2)));
  CHECK(isomorphic(h.kernel.sub, jordan(n3, 2)));
}

TEST_CASE("radical filtrations of small modules") {
  auto l4 = fixtures::lambda4();
  FiltrationEngine eng(simples(l4));
  auto f = eng.s_radical_filtration(projective(l4, 0));
  REQUIRE(f.has_value());
  CHECK(is_valid_filtration(*f, eng.family()));
  REQUIRE(f->length() == 2);
  CHECK(f->mult[0] == std::vector<int>{1, 0});
  CHECK(f->mult[1] == std::vector<int>{0, 1});

  auto n3 = fixtures::n3();
  FiltrationEngine e3(family({jordan(n3, 2)}));
  auto g = e3.s_radical_filtration(direct_sum(jordan(n3, 1), jordan(n3, 3)));
  REQUIRE(g.has_value());
  CHECK(layer_dims(*g) == std::vector<int>{2, 2});
  CHECK(e3.verify_s_radical(*g).radical_without_remainder());

  FiltrationEngine ev(family({simple(l4, 1)}));
  CHECK_FALSE(ev.is_filtrable(simple(l4, 0)));
  CHECK_FALSE(ev.s_radical_filtration(simple(l4, 0)).has_value());
  CHECK_THROWS_AS(find_nonzero_target(simple(l4, 0), ev.family()), NoneFound);
  CHECK(find_nonzero_target(simple(l4, 0), eng.family()) == 0);
}

TEST_CASE("verify_s_radical rejects a non-radical filtration") {
  auto n3 = fixtures::n3();
  SimpleSet s = family({jordan(n3, 1)});
  FiltrationEngine eng(s);
  Module m = direct_sum(jordan(n3, 2), jordan(n3, 2));
  auto f = eng.s_radical_filtration(m);
  REQUIRE(f.has_value());
  CHECK(layer_dims(*f) == std::vector<int>{2, 2});
  CHECK(eng.verify_s_radical(*f).radical());
  Filtration r = refine(*f, s);
  CHECK(r.length() == 4);
  CHECK(is_valid_filtration(r, s));
  auto cert = eng.verify_s_radical(r);
  CHECK_FALSE(cert.radical());
  REQUIRE(cert.violation.has_value());
}

namespace {

ModuleMap random_map(const Module& m, const Module& n, std::mt19937_64& rng) {
  HomSpace h(m, n);
  Vec c(h.dim());
  for (auto& x : c) x = static_cast<Elem>(rng() % m.field().q());
  return h.combine(c);
}

ModuleMap random_projective_map(const Module& m, const Module& n, std::mt19937_64& rng) {
  auto basis = projective_map_basis(m, n);
  Vec c(basis.size());
  for (auto& x : c) x = static_cast<Elem>(rng() % m.field().q());
  return combine_maps(m, n, basis, c);
}

ModuleMap random_automorphism(const Module& m, std::mt19937_64& rng) {
  while (true) {
    ModuleMap g = random_map(m, m, rng);
    if (g.is_iso()) return g;
  }
}

}  // namespace

TEST_CASE("strip_remainder splits off the projective part") {
  auto l4 = fixtures::lambda4();
  FiltrationEngine eng(simples(l4));
  Module m = direct_sum(simple(l4, 0), projective(l4, 0));
  CHECK(eng.is_filtrable(m));
  CHECK(eng.has_projective_remainder(m));
  Remainder r = eng.strip_remainder(m);
  CHECK(isomorphic(r.n.sub, simple(l4, 0)));
  CHECK(isomorphic(r.p.sub, projective(l4, 0)));
  CHECK(r.projective_mult == std::vector<int>{1, 0});
  CHECK_FALSE(eng.has_projective_remainder(simple(l4, 0)));
  CHECK(eng.has_projective_remainder(projective(l4, 1)));
}

TEST_CASE("adjust_to_surjection on random non-projective maps") {
  std::mt19937_64 rng(3);
  auto n3 = fixtures::n3();
  auto l4 = fixtures::lambda4();
  std::vector<SimpleSet> sets{family({jordan(n3, 1)}), family({jordan(n3, 2)}), simples(l4)};
  int done = 0;
  for (int t = 0; t < 60; ++t) {
    const SimpleSet& s = sets[t % 3];
    FiltrationEngine eng(s);
    Module m = random_extension(s, 1 + static_cast<int>(rng() % 4), rng);
    auto fm = eng.find_filtration(m);
    REQUIRE(fm.has_value());
    int target = static_cast<int>(rng() % s.modules.size());
    ModuleMap f = random_map(m, s.modules[target], rng);
    if (is_projective_map(f)) {
      CHECK_THROWS_AS(adjust_to_surjection(f, target, *fm, s), std::invalid_argument);
      continue;
    }
    Adjusted a = adjust_to_surjection(f, target, *fm, s);
    CHECK(a.g.is_surjective());
    CHECK(is_projective_map(a.g - f));
    CHECK(graded_equal(image_of(a.kernel.incl), preimage_of(a.g, graded_zero(a.g.tgt))));
    CHECK(is_valid_filtration(a.kernel_filtration, s));
    CHECK(a.kernel_filtration.module.dims() == a.kernel.sub.dims());
    ++done;
  }
  CHECK(done > 10);
}

TEST_CASE("align_surjections and align_injections") {
  std::mt19937_64 rng(17);
  auto n3 = fixtures::n3();
  auto l4 = fixtures::lambda4();
  std::vector<Module> ms{direct_sum(jordan(n3, 2), jordan(n3, 3)), direct_sum(jordan(n3, 1), jordan(n3, 2)),
                         direct_sum(simple(l4, 0), projective(l4, 1)), projective(l4, 0)};
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const Module& m = ms[t % ms.size()];
    ModuleMap p1 = top(m).proj;
    ModuleMap p2 = p1 + random_projective_map(m, p1.tgt, rng);
    if (p2.is_surjective()) {
      ModuleMap sigma = align_surjections(p1, p2);
      CHECK(sigma.is_iso());
      CHECK(compose(p1, sigma).m == p2.m);
      CHECK(is_projective_map(sigma - identity_map(m)));
      ++checked;
    }
    ModuleMap i1 = kernel_of(p1).incl;
    ModuleMap i2 = i1 + random_projective_map(i1.src, m, rng);
    if (i2.is_injective()) {
      ModuleMap sigma = align_injections(i1, i2);
      CHECK(sigma.is_iso());
      CHECK(compose(sigma, i1).m == i2.m);
      CHECK(is_projective_map(sigma - identity_map(m)));
      ++checked;
    }
  }
  CHECK(checked > 20);
  Module j2 = jordan(n3, 2);
  CHECK_THROWS_AS(align_surjections(top(j2).proj, zero_map(j2, top(j2).quot)), std::invalid_argument);
}

TEST_CASE("align_filtrations relates radical filtrations") {
  std::mt19937_64 rng(29);
  auto n3 = fixtures::n3();
  auto l4 = fixtures::lambda4();
  std::vector<SimpleSet> sets{family({jordan(n3, 1)}), family({jordan(n3, 2)}), simples(l4)};
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const SimpleSet& s = sets[t % 3];
    FiltrationEngine eng(s);
    Module m = random_extension(s, 1 + static_cast<int>(rng() % 4), rng);
    if (eng.has_projective_remainder(m)) continue;
    auto f1 = eng.s_radical_filtration(m);
    REQUIRE(f1.has_value());
    Filtration f2 = push_forward(*f1, random_automorphism(m, rng));
    CHECK(eng.verify_s_radical(f2).radical_without_remainder());
    ModuleMap sigma = align_filtrations(*f1, f2, s);
    CHECK(sigma.is_iso());
    CHECK(is_projective_map(sigma - identity_map(m)));
    for (int i = 0; i <= f1->length(); ++i) CHECK(graded_equal(image_of(sigma, f2.chain[i]), f1->chain[i]));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("stable_iso_lifts") {
  std::mt19937_64 rng(31);
  auto n3 = fixtures::n3();
  Module m = direct_sum(jordan(n3, 1), jordan(n3, 2));
  for (int t = 0; t < 10; ++t) {
    Module n = fixtures::random_conjugate(m, rng);
    auto iso = find_isomorphism(n, m);
    REQUIRE(iso.has_value());
    ModuleMap phi = *iso + random_projective_map(n, m, rng);
    auto lift = stable_iso_lifts(phi);
    REQUIRE(lift.has_value());
    CHECK(lift->is_iso());
    CHECK(is_projective_map(*lift - phi));
  }
  // Stably isomorphic, same dimension vector, not isomorphic.
  auto l4 = fixtures::lambda4();
  Module a = direct_sum(simple(l4, 0), projective(l4, 0));
  Module b = direct_sum(simple(l4, 0), projective(l4, 1));
  auto w = stably_isomorphic(a, b);
  REQUIRE(w.has_value());
  CHECK_FALSE(stable_iso_lifts(w->f).has_value());
}

TEST_CASE("symmetric two-step swap") {
  auto n3 = fixtures::n3();
  Module j1 = jordan(n3, 1), j2 = jordan(n3, 2);
  SimpleSet s = family({j1});
  ModuleMap i1 = kernel_of(top(j2).proj).incl;
  Quotient q = top(j2);
  ModuleMap p(j2, j1, q.proj.m);
  ModuleMap i(j1, j2, i1.m);
  ShortExact e1{i, p}, e2{scaled(i, 2), scaled(p, 3)};
  auto sigma = symmetric_two_step_swap(e1, e2, s);
  REQUIRE(sigma.has_value());
  CHECK(sigma->is_iso());
  CHECK(graded_equal(image_of(*sigma, image_of(e1.i)), image_of(e2.i)));

  Sum ss = direct_sum({j1, j1});
  ShortExact d1{ss.inj[0], ss.proj[1]}, d2{ss.inj[1], ss.proj[0]};
  CHECK_THROWS_AS(symmetric_two_step_swap(d1, d2, s), std::invalid_argument);

  auto l4 = fixtures::lambda4();
  Module pu = projective(l4, 0);
  SimpleSet sl = simples(l4);
  ShortExact u{kernel_of(top(pu).proj).incl, top(pu).proj};
  CHECK_THROWS_AS(symmetric_two_step_swap(u, u, sl), std::invalid_argument);
}

TEST_CASE("radical filtrations of random iterated extensions") {
  std::mt19937_64 rng(41);
  auto n3 = fixtures::n3();
  auto l4 = fixtures::lambda4();
  auto nk = fixtures::nakayama3();
  std::vector<SimpleSet> sets{family({jordan(n3, 1)}), family({jordan(n3, 2)}), simples(l4), simples(nk)};
  int aligned = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const SimpleSet& s = sets[k];
    FiltrationEngine eng(s);
    const int ns = static_cast<int>(s.modules.size());
    std::vector<int> reversed(ns);
    for (int i = 0; i < ns; ++i) reversed[i] = ns - 1 - i;
    FiltrationOptions ro;
    ro.order = reversed;
    ro.seed = 7;
    FiltrationEngine other(s, ro);
    for (int t = 0; t < 12; ++t) {
      Module m = random_extension(s, 1 + static_cast<int>(rng() % 5), rng);
      REQUIRE(eng.is_filtrable(m));
      if (eng.has_projective_remainder(m)) {
        Remainder r = eng.strip_remainder(m);
        CHECK(eng.is_filtrable(r.n.sub));
        CHECK_FALSE(eng.has_projective_remainder(r.n.sub));
        CHECK(is_projective(r.p.sub));
        continue;
      }
      auto f = eng.s_radical_filtration(m);
      REQUIRE(f.has_value());
      auto cert = eng.verify_s_radical(*f);
      CHECK(cert.radical_without_remainder());
      for (int si = 0; si < ns; ++si) CHECK(f->mult[0][si] == stable_hom(m, s.modules[si]).dim());
      Module n = fixtures::random_conjugate(m, rng);
      auto g = other.s_radical_filtration(n);
      REQUIRE(g.has_value());
      CHECK(g->mult == f->mult);
      auto iso = find_isomorphism(n, m);
      REQUIRE(iso.has_value());
      ModuleMap sigma = align_filtrations(*f, push_forward(*g, *iso), s);
      CHECK(sigma.is_iso());
      ++aligned;
    }
  }
  CHECK(aligned > 20);
}

TEST_CASE("minimal paddings") {
  auto n3 = fixtures::n3();
  FiltrationEngine e3(family({jordan(n3, 2)}));
  CHECK_FALSE(e3.is_filtrable(jordan(n3, 1)));
  auto q = e3.minimal_paddings(jordan(n3, 1));
  CHECK(q == std::vector<std::vector<int>>{{1}});
  Sum p = e3.padded(jordan(n3, 1), q[0]);
  CHECK(isomorphic(p.module, direct_sum(jordan(n3, 1), jordan(n3, 3))));
  CHECK(e3.is_filtrable(p.module));
  CHECK(e3.minimal_paddings(jordan(n3, 2)) == std::vector<std::vector<int>>{{0}});

  auto l4 = fixtures::lambda4();
  FiltrationEngine el(family({simple(l4, 0)}));
  CHECK_THROWS_AS(el.minimal_paddings(simple(l4, 1)), NotFiltrable);
  CHECK(support_obstruction(simple(l4, 1), el.family()) == 1);
}

TEST_CASE("a filtrable projective with two radical filtrations") {
  auto ka = fixtures::ka4();
  FiltrationEngine eng(family(fixtures::ka4_family(ka)));
  Module m = direct_sum(projective(ka, 1), projective(ka, 2));
  CHECK(m.dim() == 8);
  auto fs = eng.all_s_radical_filtrations(m);
  REQUIRE(fs.size() >= 2);
  bool differ = false;
  for (const auto& f : fs) {
    CHECK(is_valid_filtration(f, eng.family()));
    auto cert = eng.verify_s_radical(f);
    CHECK(cert.radical());
    CHECK_FALSE(cert.radical_without_remainder());
    if (f.mult != fs[0].mult) differ = true;
  }
  CHECK(differ);
}

TEST_CASE("small examples of the filtration lemmas") {
  auto l4 = fixtures::lambda4();
  SimpleSet s = simples(l4);
  FiltrationEngine eng(s);
  Module su = simple(l4, 0), pu = projective(l4, 0);
  CHECK_THROWS_AS(find_nonzero_target(pu, s), NoneFound);

  Sum ps = direct_sum({pu, su});
  ModuleMap f = compose(identity_map(su), ps.proj[1]);
  auto fm = eng.find_filtration(ps.module);
  REQUIRE(fm.has_value());
  Adjusted a = adjust_to_surjection(f, 0, *fm, s);
  CHECK(a.g.m == f.m);
  CHECK(isomorphic(a.kernel.sub, pu));
  CHECK(a.kernel_filtration.length() == 2);
  CHECK(is_valid_filtration(a.kernel_filtration, s));

  auto n3 = fixtures::n3();
  FiltrationEngine e3(family({jordan(n3, 2)}));
  Module m = direct_sum(jordan(n3, 1), jordan(n3, 3));
  Remainder r = e3.strip_remainder(m);
  CHECK(r.p.sub.is_zero());
  CHECK(r.n.sub.dim() == 4);
  CHECK_FALSE(e3.is_filtrable(jordan(n3, 3)));
  CHECK_FALSE(e3.is_filtrable(jordan(n3, 1)));
}

TEST_CASE("a surjection onto a family member has filtrable kernel iff it is not projective") {
  std::mt19937_64 rng(43);
  auto n3 = fixtures::n3();
  auto l4 = fixtures::lambda4();
  std::vector<SimpleSet> sets{family({jordan(n3, 1)}), family({jordan(n3, 2)}), simples(l4)};
  int both = 0, seen_proj = 0;
  for (int t = 0; t < 90; ++t) {
    const SimpleSet& s = sets[t % 3];
    FiltrationEngine eng(s);
    Module m = random_extension(s, 1 + static_cast<int>(rng() % 4), rng);
    if (eng.has_projective_remainder(m)) continue;
    auto f = eng.find_filtration(m);
    REQUIRE(f.has_value());
    int total = 0;
    for (int i = 0; i < f->length(); ++i) total += f->layer_dim(i);
    CHECK(total == m.dim());
    int target = static_cast<int>(rng() % s.modules.size());
    ModuleMap g = rng() % 2 ? random_map(m, s.modules[target], rng) : random_projective_map(m, s.modules[target], rng);
    if (!g.is_surjective()) continue;
    bool proj = is_projective_map(g);
    CHECK(eng.is_filtrable(kernel_of(g).sub) == !proj);
    ++both;
    seen_proj += proj;
  }
  CHECK(both > 15);
  CHECK(seen_proj > 0);
  FiltrationEngine e3(family({jordan(n3, 2)}));
  Sum parts = direct_sum({jordan(n3, 1), jordan(n3, 3)});
  Quotient q = quotient(jordan(n3, 3), socle_of(jordan(n3, 3)));
  auto iso = find_isomorphism(q.quot, jordan(n3, 2));
  REQUIRE(iso.has_value());
  ModuleMap g = compose(*iso, compose(q.proj, parts.proj[1]));
  CHECK(g.is_surjective());
  CHECK(is_projective_map(g));
  CHECK_FALSE(e3.has_projective_remainder(parts.module));
  CHECK_FALSE(e3.is_filtrable(kernel_of(g).sub));
}

TEST_CASE("stalled top layers are certified by the common kernel bound") {
  auto n3 = fixtures::n3();
  FiltrationEngine eng(family({jordan(n3, 2)}));
  Module j1 = jordan(n3, 1), j2 = jordan(n3, 2), j3 = jordan(n3, 3);
  Module m = direct_sum({j2, j3, j3, j1, j1}).module;
  CHECK(eng.is_filtrable(m));
  // J2 + J1 + J1 + J3 has stable head J2^3 but only two generators reach it.
  CHECK_FALSE(eng.has_projective_remainder(m));
  CHECK_FALSE(eng.is_filtrable(direct_sum({j2, j1, j1}).module));
  auto f = eng.s_radical_filtration(m);
  REQUIRE(f.has_value());
  CHECK(eng.verify_s_radical(*f).radical_without_remainder());
}
