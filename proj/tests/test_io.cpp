#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "stabrecon/io.hpp"

using namespace stabrecon;
using namespace stabrecon::io;

namespace {

std::string fixture(const std::string& rel) { return std::string(STABRECON_FIXTURES) + "/" + rel; }

AlgebraPtr load_algebra(const std::string& name) { return algebra_from_json(read_file(fixture("algebras/" + name + ".json"))); }

bool same_module(const Module& a, const Module& b) {
  if (a.dims() != b.dims()) return false;
  for (int k = 0; k < a.algebra().num_arrows(); ++k)
    if (!(a.action(k) == b.action(k))) return false;
  return true;
}

}  // namespace

TEST_CASE("bundled algebras load") {
  struct Want {
    const char* name;
    AlgebraPtr ref;
  };
  for (const auto& w : {Want{"lambda4", fixtures::lambda4()}, Want{"n3", fixtures::n3()},
                        Want{"dual_numbers", fixtures::dual_numbers()}, Want{"nakayama3", fixtures::nakayama3()},
                        Want{"ka4", fixtures::ka4()}, Want{"a2_path", fixtures::a2_path()}}) {
    CAPTURE(w.name);
    AlgebraPtr a = load_algebra(w.name);
    CHECK(a->dim() == w.ref->dim());
    CHECK(a->field().q() == w.ref->field().q());
    CHECK(a->self_injectivity().self_injective == w.ref->self_injectivity().self_injective);
    CHECK(gr_oracle(*a).dims == gr_oracle(*w.ref).dims);
    AlgebraPtr back = algebra_from_json(algebra_to_json(*a));
    CHECK(algebra_to_json(*back) == algebra_to_json(*a));
  }
}

TEST_CASE("module sets and modules load") {
  auto ka = load_algebra("ka4");
  ModuleSet fam = module_set_from_json(read_file(fixture("sets/ka4_family.json")), ka);
  REQUIRE(fam.members.size() == 3);
  CHECK(fam.labels == std::vector<std::string>{"k", "S+", "S-"});
  std::vector<Module> ref = fixtures::ka4_family(ka);
  for (int i = 0; i < 3; ++i) CHECK(find_isomorphism(fam.members[i], ref[i]).has_value());
  CHECK(check_simple_set(fam.members).ok());
  Module p12 = module_from_json(read_file(fixture("modules/ka4_p1_p2.json")), ka);
  CHECK(p12.dim() == 8);
  CHECK(is_projective(p12));

  auto n3 = load_algebra("n3");
  ModuleSet j2 = module_set_from_json(read_file(fixture("sets/n3_j2.json")), n3);
  CHECK(find_isomorphism(j2.members[0], fixtures::jordan(n3, 2)).has_value());
  Module s = module_from_json(read_file(fixture("modules/n3_j1_j2.json")), n3);
  CHECK(s.dim() == 3);
}

TEST_CASE("module and complex round trips") {
  std::mt19937_64 rng(4);
  auto n3 = fixtures::n3();
  for (int t = 0; t < 10; ++t) {
    Module m = fixtures::random_truncated_module(n3, 3, rng);
    CHECK(same_module(module_from_json(module_to_json(m), n3), m));
  }
  auto ka = fixtures::ka4();
  Module m = fixtures::random_conjugate(direct_sum(projective(ka, 1), simple(ka, 2)), rng);
  CHECK(same_module(module_from_json(module_to_json(m), ka), m));

  auto l4 = load_algebra("lambda4");
  DerivedInput d = derived_input_from_json(read_file(fixture("derived/lambda4_example.json")), l4);
  CHECK(d.kind == PatternKind::I);
  CHECK(verify_family_pattern(d.family, d.candidates, d.kind).pass);
  DerivedInput sw = derived_input_from_json(read_file(fixture("derived/lambda4_example_swapped.json")), l4);
  CHECK_FALSE(verify_family_pattern(sw.family, sw.candidates, sw.kind).pass);
  for (const auto& c : d.candidates) {
    Complex back = complex_from_json(complex_to_json(c), l4);
    CHECK(back.lo == c.lo);
    CHECK(complex_to_json(back) == complex_to_json(c));
  }
  DerivedInput again = derived_input_from_json(derived_input_to_json(d), l4);
  CHECK(derived_input_to_json(again) == derived_input_to_json(d));
}

TEST_CASE("tower, filtration and graded algebra round trips") {
  std::mt19937_64 rng(12);
  auto l4 = fixtures::lambda4();
  for (int t = 0; t < 5; ++t) {
    Tower tw = random_tower(l4, rng);
    Tower back = tower_from_json(tower_to_json(tw), l4);
    CHECK(back.multiset() == tw.multiset());
    CHECK(tower_to_json(back) == tower_to_json(tw));
  }

  auto n3 = fixtures::n3();
  SimpleSet s = check_simple_set({fixtures::jordan(n3, 1)}).set;
  FiltrationEngine eng(s);
  Module j3 = fixtures::jordan(n3, 3);
  auto f = eng.s_radical_filtration(j3);
  REQUIRE(f.has_value());
  RadicalCertificate cert = eng.verify_s_radical(*f);
  json j = filtration_to_json(*f, s, &cert);
  CHECK(j["certificate"]["radical"] == true);
  Filtration g = filtration_from_json(j, j3, s);
  CHECK(is_valid_filtration(g, s));
  CHECK(g.mult == f->mult);
  CHECK(filtration_to_json(g, s, &cert) == j);

  for (auto a : {fixtures::lambda4(), fixtures::ka4()}) {
    GradedAlgebra gr = gr_oracle(*a);
    GradedAlgebra back = graded_algebra_from_json(graded_algebra_to_json(gr));
    CHECK(back.dims == gr.dims);
    CHECK(back.products == gr.products);
    CHECK(back.field.q() == gr.field.q());
  }
}

TEST_CASE("malformed inputs are rejected") {
  auto l4 = fixtures::lambda4();
  CHECK_THROWS_AS(module_from_json(json{{"dims", {{"u", 1}, {"w", 1}}}}, l4), InputError);
  CHECK_THROWS_AS(module_from_json(json{{"dims", {{"u", 1}, {"v", 1}}}, {"action", {{"alpha", {{7}}}}}}, l4),
                  InputError);
  CHECK_THROWS_AS(module_from_json(json{{"dims", {{"u", 1}, {"v", 1}}}, {"action", {{"alpha", {{1, 0}}}}}}, l4),
                  InputError);
  // alpha beta = 0 fails
  CHECK_THROWS_AS(module_from_json(json{{"dims", {{"u", 1}, {"v", 1}}},
                                        {"action", {{"alpha", {{1}}}, {"beta", {{1}}}}}},
                                   l4),
                  InputError);
  CHECK_THROWS_AS(module_from_json(json{{"schema", "complex.v1"}, {"dims", {1, 0}}}, l4), InputError);
  json bad_d = json{{"lo", 0}, {"terms", {{{"projective", "u"}}, {{"projective", "u"}}}}, {"differentials", {{{1, 0}, {1, 0}}}}};
  CHECK_THROWS_AS(complex_from_json(bad_d, l4), InputError);
  json two = json{{"lo", 0},
                  {"terms", {{{"projective", "u"}}, {{"projective", "u"}}, {{"projective", "u"}}}},
                  {"differentials", {{{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}}}};
  CHECK_THROWS_AS(complex_from_json(two, l4), InputError);
  CHECK_THROWS_AS(algebra_from_json(json{{"field", {{"p", 6}}}, {"vertices", {"a"}}, {"arrows", json::array()}}),
                  InputError);
  CHECK_THROWS_AS(read_file(fixture("does_not_exist.json")), InputError);
}

TEST_CASE("canonical dumps and hashes") {
  auto l4 = fixtures::lambda4();
  json a = algebra_to_json(*l4);
  json b = json::parse(dump(a));
  CHECK(dump(a) == dump(b));
  CHECK(content_hash(a) == content_hash(b));
  CHECK(content_hash(a).size() == 16);
  CHECK(content_hash(a) != content_hash(algebra_to_json(*fixtures::n3())));
}
