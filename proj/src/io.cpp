#include "stabrecon/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stabrecon::io {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

const json& field_of(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing key '") + key + "'");
  return j.at(key);
}

int int_of(const json& j, const char* key) {
  const json& v = field_of(j, key);
  require(v.is_number_integer(), std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

void check_schema(const json& j, const std::string& want) {
  if (j.is_object() && j.contains("schema"))
    require(j.at("schema") == want, "expected schema " + want + ", got " + j.at("schema").dump());
}

Elem element_from_json(const json& v, const Field& f) {
  require(v.is_number_integer(), "field elements must be integers");
  long long c = v.get<long long>();
  if (c >= 0 && c < f.q()) return static_cast<Elem>(c);
  if (c < 0 && -c < f.q()) return f.neg(static_cast<Elem>(-c));
  throw InputError("field element " + std::to_string(c) + " out of range for GF(" + std::to_string(f.q()) + ")");
}

int vertex_of(const Algebra& a, const json& v) {
  if (v.is_number_integer()) {
    int i = v.get<int>();
    require(i >= 0 && i < a.num_vertices(), "vertex index out of range");
    return i;
  }
  require(v.is_string(), "vertex must be a name or index");
  try {
    return a.vertex_index(v.get<std::string>());
  } catch (const std::exception&) {
    throw InputError("unknown vertex " + v.dump());
  }
}

template <class F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << dump(j);
}

std::string content_hash(const json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json field_to_json(const Field& f) {
  json j{{"p", f.p()}, {"k", f.k()}};
  if (f.k() > 1 && f.modulus() != bundled_modulus(f.p(), f.k())) j["modulus"] = f.modulus();
  return j;
}

Field field_from_json(const json& j) {
  return wrap([&] {
    int p = int_of(j, "p");
    int k = j.contains("k") ? int_of(j, "k") : 1;
    if (j.contains("modulus")) return Field::make(p, k, j.at("modulus").get<std::vector<int>>());
    return Field::make(p, k);
  });
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(static_cast<int>(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const Field& f, int rows, int cols) {
  Matrix m(f, rows, cols);
  require(j.is_array(), "matrix must be a list of rows");
  if (j.empty() && (rows == 0 || cols == 0)) return m;
  require(static_cast<int>(j.size()) == rows, "matrix has " + std::to_string(j.size()) + " rows, expected " +
                                                  std::to_string(rows));
  for (int r = 0; r < rows; ++r) {
    require(j[r].is_array() && static_cast<int>(j[r].size()) == cols,
            "matrix row " + std::to_string(r) + " should have " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) m(r, c) = element_from_json(j[r][c], f);
  }
  return m;
}

json algebra_to_json(const Algebra& a) {
  const Presentation& p = a.presentation();
  json arrows = json::array(), rels = json::array();
  for (const auto& ar : p.arrows)
    arrows.push_back({{"name", ar.name}, {"src", p.vertices[ar.src]}, {"tgt", p.vertices[ar.tgt]}});
  for (const auto& rel : p.relations) {
    json terms = json::array();
    for (const auto& t : rel) {
      json path = json::array();
      for (int b : t.path) path.push_back(p.arrows[b].name);
      terms.push_back({{"coeff", static_cast<int>(t.coeff)}, {"path", path}});
    }
    rels.push_back(terms);
  }
  return {{"schema", "algebra.v1"}, {"field", field_to_json(a.field())}, {"vertices", p.vertices},
          {"arrows", arrows}, {"relations", rels}};
}

AlgebraPtr algebra_from_json(const json& j) {
  return wrap([&] {
    check_schema(j, "algebra.v1");
    Presentation p;
    p.field = field_from_json(field_of(j, "field"));
    p.vertices = field_of(j, "vertices").get<std::vector<std::string>>();
    auto vidx = [&](const json& v) -> int {
      if (v.is_number_integer()) {
        int i = v.get<int>();
        require(i >= 0 && i < static_cast<int>(p.vertices.size()), "vertex index out of range");
        return i;
      }
      for (std::size_t i = 0; i < p.vertices.size(); ++i)
        if (p.vertices[i] == v.get<std::string>()) return static_cast<int>(i);
      throw InputError("unknown vertex " + v.dump());
    };
    for (const auto& ar : field_of(j, "arrows"))
      p.arrows.push_back({field_of(ar, "name").get<std::string>(), vidx(field_of(ar, "src")), vidx(field_of(ar, "tgt"))});
    auto aidx = [&](const json& v) -> int {
      if (v.is_number_integer()) return v.get<int>();
      for (std::size_t i = 0; i < p.arrows.size(); ++i)
        if (p.arrows[i].name == v.get<std::string>()) return static_cast<int>(i);
      throw InputError("unknown arrow " + v.dump());
    };
    if (j.contains("relations"))
      for (const auto& rel : j.at("relations")) {
        Relation r;
        for (const auto& t : rel) {
          Term term;
          term.coeff = t.contains("coeff") ? element_from_json(t.at("coeff"), p.field) : Elem(1);
          for (const auto& b : field_of(t, "path")) term.path.push_back(aidx(b));
          r.push_back(term);
        }
        p.relations.push_back(r);
      }
    return Algebra::load(p);
  });
}

json module_to_json(const Module& m, const std::string& algebra_ref) {
  const Algebra& a = m.algebra();
  const Presentation& p = a.presentation();
  json dims = json::object(), action = json::object();
  for (int v = 0; v < a.num_vertices(); ++v) dims[p.vertices[v]] = m.dim(v);
  for (int b = 0; b < a.num_arrows(); ++b) action[p.arrows[b].name] = matrix_to_json(m.action(b));
  json j{{"schema", "module.v1"}, {"dims", dims}, {"action", action}};
  if (!algebra_ref.empty()) j["algebra_ref"] = algebra_ref;
  return j;
}

Module module_from_json(const json& j, const AlgebraPtr& a) {
  return wrap([&] {
    check_schema(j, "module.v1");
    if (j.contains("projective")) return projective(a, vertex_of(*a, j.at("projective")));
    if (j.contains("injective")) return injective(a, vertex_of(*a, j.at("injective")));
    if (j.contains("simple")) return simple(a, vertex_of(*a, j.at("simple")));
    if (j.contains("syzygy")) return syzygy(module_from_json(j.at("syzygy"), a));
    if (j.contains("direct_sum")) {
      std::vector<Module> parts;
      for (const auto& m : j.at("direct_sum")) parts.push_back(module_from_json(m, a));
      require(!parts.empty(), "empty direct sum");
      return direct_sum(parts).module;
    }
    std::vector<int> dims(a->num_vertices(), 0);
    const json& jd = field_of(j, "dims");
    if (jd.is_array()) {
      require(static_cast<int>(jd.size()) == a->num_vertices(), "dims list has the wrong length");
      for (int v = 0; v < a->num_vertices(); ++v) dims[v] = jd[v].get<int>();
    } else {
      for (const auto& [name, n] : jd.items()) dims[vertex_of(*a, json(name))] = n.get<int>();
    }
    std::vector<Matrix> act;
    const json empty = json::object();
    const json& ja = j.contains("action") ? j.at("action") : empty;
    for (int b = 0; b < a->num_arrows(); ++b) {
      const Arrow& ar = a->arrow(b);
      if (ja.contains(ar.name)) act.push_back(matrix_from_json(ja.at(ar.name), a->field(), dims[ar.tgt], dims[ar.src]));
      else act.emplace_back(a->field(), dims[ar.tgt], dims[ar.src]);
    }
    return Module(a, dims, act);
  });
}

json module_set_to_json(const ModuleSet& s, const std::string& algebra_ref) {
  json members = json::array();
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    json m = module_to_json(s.members[i]);
    m.erase("schema");
    m["label"] = s.labels[i];
    members.push_back(m);
  }
  json j{{"schema", "module_set.v1"}, {"members", members}};
  if (!algebra_ref.empty()) j["algebra_ref"] = algebra_ref;
  return j;
}

ModuleSet module_set_from_json(const json& j, const AlgebraPtr& a) {
  return wrap([&] {
    check_schema(j, "module_set.v1");
    ModuleSet s;
    for (const auto& m : field_of(j, "members")) {
      s.labels.push_back(m.contains("label") ? m.at("label").get<std::string>() : "S" + std::to_string(s.labels.size()));
      s.members.push_back(module_from_json(m, a));
    }
    require(!s.members.empty(), "empty module set");
    return s;
  });
}

json graded_to_json(const Graded& g) {
  json out = json::array();
  for (const auto& sp : g) {
    json rows = json::array();
    for (int i = 0; i < sp.dim(); ++i) {
      json row = json::array();
      for (Elem e : sp.basis_vec(i)) row.push_back(static_cast<int>(e));
      rows.push_back(row);
    }
    out.push_back(rows);
  }
  return out;
}

Graded graded_from_json(const json& j, const Module& m) {
  return wrap([&] {
    const int nv = m.algebra().num_vertices();
    require(j.is_array() && static_cast<int>(j.size()) == nv, "graded subspace needs one basis per vertex");
    Graded g;
    for (int v = 0; v < nv; ++v) {
      const int rows = static_cast<int>(j[v].size());
      if (rows == 0) g.emplace_back(m.field(), m.dim(v));
      else g.push_back(Subspace::span(matrix_from_json(j[v], m.field(), rows, m.dim(v))));
    }
    require(is_submodule(m, g), "graded subspace is not a submodule");
    return g;
  });
}

json complex_to_json(const Complex& c, const std::string& algebra_ref) {
  json terms = json::array(), diffs = json::array();
  for (const auto& t : c.terms) {
    json m = module_to_json(t);
    m.erase("schema");
    terms.push_back(m);
  }
  for (const auto& d : c.diff) diffs.push_back(matrix_to_json(d.m));
  json j{{"schema", "complex.v1"}, {"lo", c.lo}, {"terms", terms}, {"differentials", diffs}};
  if (!algebra_ref.empty()) j["algebra_ref"] = algebra_ref;
  return j;
}

Complex complex_from_json(const json& j, const AlgebraPtr& a) {
  return wrap([&] {
    check_schema(j, "complex.v1");
    int lo = j.contains("lo") ? int_of(j, "lo") : 0;
    std::vector<Module> terms;
    for (const auto& t : field_of(j, "terms")) terms.push_back(module_from_json(t, a));
    std::vector<ModuleMap> diff;
    const json empty = json::array();
    const json& jd = j.contains("differentials") ? j.at("differentials") : empty;
    require(terms.empty() || jd.size() + 1 == terms.size() || (jd.empty() && terms.size() <= 1),
            "need one differential between consecutive terms");
    for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
      Matrix m = matrix_from_json(jd[k], a->field(), terms[k + 1].dim(), terms[k].dim());
      require(is_homomorphism(terms[k], terms[k + 1], m), "differential " + std::to_string(k) + " is not a homomorphism");
      diff.emplace_back(terms[k], terms[k + 1], m);
    }
    try {
      return make_complex(a, lo, terms, diff);
    } catch (const std::invalid_argument&) {
      throw InputError("differentials do not square to zero");
    }
  });
}

DerivedInput derived_input_from_json(const json& j, const AlgebraPtr& a) {
  return wrap([&] {
    check_schema(j, "complex_family.v1");
    DerivedInput d;
    for (const auto& m : field_of(j, "family")) {
      d.family.labels.push_back(m.contains("label") ? m.at("label").get<std::string>()
                                                    : "S" + std::to_string(d.family.labels.size()));
      d.family.members.push_back(complex_from_json(field_of(m, "complex"), a));
    }
    if (j.contains("candidates"))
      for (const auto& c : j.at("candidates")) d.candidates.push_back(complex_from_json(c, a));
    if (j.contains("kind")) {
      std::string k = j.at("kind").get<std::string>();
      require(k == "I" || k == "P", "kind must be \"I\" or \"P\"");
      d.kind = k == "I" ? PatternKind::I : PatternKind::P;
    }
    require(d.family.size() > 0, "empty family");
    require(d.candidates.empty() || d.candidates.size() == d.family.members.size(),
            "one candidate per family member expected");
    return d;
  });
}

json derived_input_to_json(const DerivedInput& d, const std::string& algebra_ref) {
  json fam = json::array(), cands = json::array();
  for (int i = 0; i < d.family.size(); ++i) fam.push_back({{"label", d.family.labels[i]}, {"complex", complex_to_json(d.family.members[i])}});
  for (const auto& c : d.candidates) cands.push_back(complex_to_json(c));
  json j{{"schema", "complex_family.v1"}, {"family", fam}, {"candidates", cands}, {"kind", d.kind == PatternKind::I ? "I" : "P"}};
  if (!algebra_ref.empty()) j["algebra_ref"] = algebra_ref;
  return j;
}

json tower_to_json(const Tower& t, const std::string& algebra_ref) {
  json levels = json::array();
  for (const auto& lev : t.levels) {
    json degs = json::array();
    for (const auto& g : lev) degs.push_back(graded_to_json(g));
    levels.push_back(degs);
  }
  json j{{"schema", "tower.v1"}, {"complex", complex_to_json(t.n)}, {"levels", levels}, {"member", t.member}, {"d", t.d}};
  if (!algebra_ref.empty()) j["algebra_ref"] = algebra_ref;
  return j;
}

Tower tower_from_json(const json& j, const AlgebraPtr& a) {
  return wrap([&] {
    check_schema(j, "tower.v1");
    Tower t;
    t.n = complex_from_json(field_of(j, "complex"), a);
    t.member = field_of(j, "member").get<std::vector<int>>();
    t.d = field_of(j, "d").get<std::vector<int>>();
    for (const auto& lev : field_of(j, "levels")) {
      require(lev.size() == t.n.terms.size(), "tower level must list every degree");
      std::vector<Graded> g;
      for (std::size_t k = 0; k < lev.size(); ++k) g.push_back(graded_from_json(lev[k], t.n.terms[k]));
      t.levels.push_back(g);
    }
    for (int m : t.member) require(m >= 0 && m < a->num_vertices(), "tower member out of range");
    TowerCheck c = check_tower(t);
    require(c.ok, "invalid tower: " + c.reason);
    return t;
  });
}

json filtration_to_json(const Filtration& f, const SimpleSet& s, const RadicalCertificate* cert,
                        const std::string& algebra_ref) {
  json chain = json::array(), dims = json::array();
  for (const auto& g : f.chain) {
    chain.push_back(graded_to_json(g));
    json d = json::array();
    for (const auto& sp : g) d.push_back(sp.dim());
    dims.push_back(d);
  }
  json j{{"schema", "filtration.v1"}, {"family", s.labels}, {"module", module_to_json(f.module)},
         {"chain", chain},        {"chain_dims", dims}, {"multiplicities", f.mult}, {"length", f.length()}};
  j["module"].erase("schema");
  if (cert) {
    json c{{"layer_ok", cert->layer_ok},   {"surjective", cert->surjective},
           {"injective", cert->injective}, {"no_remainder", cert->no_remainder},
           {"radical", cert->radical()},   {"radical_without_remainder", cert->radical_without_remainder()}};
    if (cert->violation)
      c["violation"] = {{"i", cert->violation->i}, {"j", cert->violation->j}, {"reason", cert->violation->reason}};
    j["certificate"] = c;
  }
  if (!algebra_ref.empty()) j["algebra_ref"] = algebra_ref;
  return j;
}

Filtration filtration_from_json(const json& j, const Module& m, const SimpleSet& s) {
  return wrap([&] {
    check_schema(j, "filtration.v1");
    std::vector<Graded> chain;
    for (const auto& g : field_of(j, "chain")) chain.push_back(graded_from_json(g, m));
    return make_filtration(m, chain, s);
  });
}

json graded_algebra_to_json(const GradedAlgebra& g) {
  json products = json::array();
  const int n = g.total_dim();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Vec& r = g.product(i, k);
      bool zero = true;
      for (Elem e : r) zero = zero && e == 0;
      if (zero) continue;
      json coeffs = json::array();
      for (Elem e : r) coeffs.push_back(static_cast<int>(e));
      products.push_back({{"i", i}, {"j", k}, {"result", coeffs}});
    }
  return {{"schema", "graded_algebra.v1"}, {"field", field_to_json(g.field)}, {"degrees", g.dims},
          {"basis", g.labels},             {"products", products}};
}

GradedAlgebra graded_algebra_from_json(const json& j) {
  return wrap([&] {
    check_schema(j, "graded_algebra.v1");
    GradedAlgebra g;
    g.field = field_from_json(field_of(j, "field"));
    g.dims = field_of(j, "degrees").get<std::vector<int>>();
    const int n = g.total_dim();
    g.labels = j.contains("basis") ? j.at("basis").get<std::vector<std::string>>() : std::vector<std::string>{};
    if (g.labels.empty())
      for (int i = 0; i < n; ++i) g.labels.push_back("b" + std::to_string(i));
    require(static_cast<int>(g.labels.size()) == n, "one basis label per basis element expected");
    g.products.assign(static_cast<std::size_t>(n) * n, Vec(n, 0));
    for (const auto& p : field_of(j, "products")) {
      int i = int_of(p, "i"), k = int_of(p, "j");
      require(i >= 0 && i < n && k >= 0 && k < n, "product index out of range");
      const json& r = field_of(p, "result");
      require(static_cast<int>(r.size()) == n, "product result has the wrong length");
      Vec v(n);
      for (int t = 0; t < n; ++t) v[t] = element_from_json(r[t], g.field);
      g.products[static_cast<std::size_t>(i) * n + k] = v;
    }
    return g;
  });
}

json hom_pattern_to_json(const HomPatternReport& r, const ComplexFamily& s) {
  json j{{"kind", r.kind == PatternKind::I ? "I" : "P"}, {"window", {r.lo, r.hi}}, {"dims", r.dims}, {"pass", r.pass}};
  j["family"] = s.labels;
  if (!r.pass) j["witness"] = {{"member", s.labels[r.t]}, {"candidate", r.c}, {"shift", r.shift}, {"dim", r.at(r.t, r.c, r.shift)}};
  return j;
}

}  // namespace stabrecon::io
