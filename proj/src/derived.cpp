#include "stabrecon/derived.hpp"

#include <algorithm>

namespace stabrecon {

ComplexFamily simple_family(const AlgebraPtr& a) {
  ComplexFamily out;
  for (int v = 0; v < a->num_vertices(); ++v) {
    out.labels.push_back("S_" + a->presentation().vertices[v]);
    out.members.push_back(stalk(simple(a, v)));
  }
  return out;
}

ComplexFamily projective_family(const AlgebraPtr& a) {
  ComplexFamily out;
  for (int v = 0; v < a->num_vertices(); ++v) {
    out.labels.push_back("P_" + a->presentation().vertices[v]);
    out.members.push_back(stalk(projective(a, v)));
  }
  return out;
}

std::optional<std::pair<int, int>> cohomology_range(const Complex& c) {
  std::optional<std::pair<int, int>> out;
  if (c.empty()) return out;
  std::vector<int> dims = cohomology_dims(c);
  for (int n = c.lo; n <= c.hi(); ++n) {
    if (dims[n - c.lo] == 0) continue;
    if (!out) out = std::pair{n, n};
    out->second = n;
  }
  return out;
}

bool covers_all_simples(const ComplexFamily& s) {
  if (s.members.empty()) return false;
  const int nv = s.members[0].alg->num_vertices();
  std::vector<bool> seen(nv, false);
  for (const auto& c : s.members)
    for (int n = c.lo; n <= c.hi(); ++n) {
      Module h = cohomology(c, n).quot;
      for (int v = 0; v < nv; ++v)
        if (h.dim(v) > 0) seen[v] = true;
    }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Membership t_membership(const Complex& n, const ComplexFamily& s, TSide side) {
  Membership out;
  auto rn = cohomology_range(n);
  if (!rn) return out;
  for (int j = 0; j < s.size(); ++j) {
    auto rs = cohomology_range(s.members[j]);
    if (!rs) continue;
    if (side == TSide::LessEq0) {
      // Hom(N, S[i]) vanishes for i < min H(S) - max H(N)
      const int a = rs->first - rn->second;
      if (a > -1) continue;
      std::vector<int> dims = derived_hom_dims(n, s.members[j], a, -1);
      for (int i = -1; i >= a; --i)
        if (dims[i - a] != 0) return Membership{false, i, j, dims[i - a]};
    } else {
      // Hom(S[i], N) = Hom(S, N[-i]) vanishes for i > max H(S) - min H(N)
      const int b = rs->second - rn->first;
      if (b < 1) continue;
      std::vector<int> dims = derived_hom_dims(s.members[j], n, -b, -1);
      for (int i = 1; i <= b; ++i)
        if (dims[-i + b] != 0) return Membership{false, i, j, dims[-i + b]};
    }
  }
  return out;
}

int HomPatternReport::at(int tt, int cc, int i) const {
  if (i < lo || i > hi) return 0;
  return dims[tt][cc][i - lo];
}

HomPatternReport verify_family_pattern(const ComplexFamily& s, const std::vector<Complex>& candidates,
                                       PatternKind kind) {
  if (static_cast<int>(candidates.size()) != s.size())
    throw std::invalid_argument("one candidate per family member expected");
  std::vector<Complex> ts, cs;
  for (const auto& t : s.members) ts.push_back(trim(t));
  for (const auto& c : candidates) {
    cs.push_back(trim(c));
    if (!all_projective(cs.back())) throw std::invalid_argument("candidates must be complexes of projectives");
  }
  HomPatternReport rep;
  rep.kind = kind;
  rep.lo = 0;
  rep.hi = 0;
  for (const auto& t : ts)
    for (const auto& c : cs) {
      if (t.empty() || c.empty()) continue;
      if (kind == PatternKind::I) {
        rep.lo = std::min(rep.lo, c.lo - t.hi());
        rep.hi = std::max(rep.hi, c.hi() - t.lo);
      } else {
        rep.lo = std::min(rep.lo, t.lo - c.hi());
        rep.hi = std::max(rep.hi, t.hi() - c.lo);
      }
    }
  rep.dims.assign(ts.size(), std::vector<std::vector<int>>(cs.size()));
  for (std::size_t t = 0; t < ts.size(); ++t)
    for (std::size_t c = 0; c < cs.size(); ++c) {
      auto& row = rep.dims[t][c];
      row = kind == PatternKind::I ? derived_hom_dims(ts[t], cs[c], rep.lo, rep.hi)
                                   : derived_hom_dims(cs[c], ts[t], rep.lo, rep.hi);
      for (int i = rep.lo; i <= rep.hi; ++i) {
        int want = t == c && i == 0 ? 1 : 0;
        if (row[i - rep.lo] != want && rep.pass) {
          rep.pass = false;
          rep.t = static_cast<int>(t);
          rep.c = static_cast<int>(c);
          rep.shift = i;
        }
      }
    }
  return rep;
}

int DgCohomology::at(int i) const {
  if (i < lo || i > hi()) return 0;
  return dims[i - lo];
}

DgCohomology endo_dg_cohomology(const std::vector<Complex>& family, std::optional<std::pair<int, int>> window) {
  if (family.empty()) throw std::invalid_argument("empty family");
  Complex c = trim(direct_sum(family));
  DgCohomology out;
  if (!window) {
    if (!all_projective(c)) throw std::invalid_argument("a window is needed unless all terms are projective");
    if (c.empty()) return out;
    window = std::pair{c.lo - c.hi(), c.hi() - c.lo};
  }
  out.lo = window->first;
  out.dims = derived_hom_dims(c, c, window->first, window->second);
  return out;
}

NuCheck nu_family_check(const ComplexFamily& s, std::uint64_t seed) {
  NuCheck out;
  bool undecided = false;
  for (int i = 0; i < s.size(); ++i) {
    Complex nu = nakayama_complex(s.members[i]);
    int found = -1;
    bool uncertain = false;
    for (int j = 0; j < s.size() && found < 0; ++j) {
      DerivedIso r = derived_isomorphic(nu, s.members[j], seed);
      if (r.iso) found = j;
      else if (!r.certain) uncertain = true;
    }
    out.image.push_back(found);
    if (found >= 0) continue;
    if (uncertain) undecided = true;
    else if (out.witness < 0) out.witness = i;
  }
  if (out.witness >= 0) out.status = NuStatus::Not;
  else if (undecided) out.status = NuStatus::Undecided;
  return out;
}

namespace {

// X with incl * X = m, for incl injective and m landing in its image.
Matrix solve_through(const Matrix& incl, const Matrix& m) {
  if (incl.cols() == 0) return Matrix(m.field(), 0, m.cols());
  auto x = solve_right(incl, m);
  if (!x) throw std::invalid_argument("map does not preserve the subcomplex");
  return *x;
}

struct SubcomplexData {
  Complex c;
  std::vector<ModuleMap> incl;
};

SubcomplexData subcomplex_data(const Complex& c, const std::vector<Graded>& sub) {
  SubcomplexData out{Complex{c.alg, c.lo, {}, {}}, {}};
  for (int n = c.lo; n <= c.hi(); ++n) {
    Embedded e = submodule(c.terms[n - c.lo], sub[n - c.lo]);
    out.c.terms.push_back(e.sub);
    out.incl.push_back(e.incl);
  }
  for (int n = c.lo; n < c.hi(); ++n) {
    const int k = n - c.lo;
    Matrix m = solve_through(out.incl[k + 1].m, c.diff[k].m * out.incl[k].m);
    out.c.diff.emplace_back(out.c.terms[k], out.c.terms[k + 1], std::move(m));
  }
  return out;
}

}  // namespace

Complex subcomplex(const Complex& c, const std::vector<Graded>& sub) { return subcomplex_data(c, sub).c; }

Complex quotient_complex(const Complex& c, const std::vector<Graded>& sub) {
  Complex out{c.alg, c.lo, {}, {}};
  std::vector<Quotient> qs;
  for (int n = c.lo; n <= c.hi(); ++n) {
    qs.push_back(quotient(c.terms[n - c.lo], sub[n - c.lo]));
    out.terms.push_back(qs.back().quot);
  }
  for (int n = c.lo; n < c.hi(); ++n) {
    const int k = n - c.lo;
    Matrix m = qs[k + 1].proj.m * c.diff[k].m * qs[k].section;
    out.diff.emplace_back(out.terms[k], out.terms[k + 1], std::move(m));
  }
  return out;
}

Complex subquotient(const Complex& c, const std::vector<Graded>& upper, const std::vector<Graded>& lower) {
  SubcomplexData u = subcomplex_data(c, upper);
  std::vector<Graded> low;
  for (std::size_t k = 0; k < lower.size(); ++k) low.push_back(preimage_of(u.incl[k], lower[k]));
  return quotient_complex(u.c, low);
}

Complex Tower::level(int k) const { return subcomplex(n, levels[k]); }

Complex Tower::layer(int k) const { return subquotient(n, levels[k], levels[k + 1]); }

std::vector<std::pair<int, int>> Tower::multiset() const {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < length(); ++k) out.push_back({member[k], d[k]});
  std::sort(out.begin(), out.end());
  return out;
}

TowerCheck check_tower(const Tower& t) {
  auto fail = [](std::string why) { return TowerCheck{false, std::move(why)}; };
  const int r = t.length();
  if (static_cast<int>(t.d.size()) != r || static_cast<int>(t.levels.size()) != r + 1)
    return fail("inconsistent tower sizes");
  if (!is_complex(t.n)) return fail("N is not a complex");
  const int terms = static_cast<int>(t.n.terms.size());
  for (int k = 0; k <= r; ++k) {
    if (static_cast<int>(t.levels[k].size()) != terms) return fail("level " + std::to_string(k) + " has wrong support");
    for (int i = 0; i < terms; ++i) {
      const Module& m = t.n.terms[i];
      const Graded& g = t.levels[k][i];
      if (!is_submodule(m, g)) return fail("level " + std::to_string(k) + " is not a submodule");
      if (k == 0 && graded_dim(g) != m.dim()) return fail("top level is not N");
      if (k > 0 && !graded_contains(t.levels[k - 1][i], g)) return fail("levels not nested");
      if (i + 1 < terms && !graded_contains(t.levels[k][i + 1], image_of(t.n.diff[i], g)))
        return fail("level " + std::to_string(k) + " is not a subcomplex");
    }
  }
  if (!is_acyclic(t.level(r))) return fail("bottom level is not acyclic");
  for (int k = 0; k < r; ++k) {
    Complex l = t.layer(k);
    auto deg = concentrated_degree(l);
    if (!deg || *deg != t.d[k]) return fail("layer " + std::to_string(k) + " not concentrated in its degree");
    if (!find_isomorphism(cohomology(l, *deg).quot, simple(t.n.alg, t.member[k])))
      return fail("layer " + std::to_string(k) + " has the wrong cohomology");
  }
  return {};
}

Tower tower_from_layer(const Complex& layer, int member, int d) {
  Tower t{layer, {{}, {}}, {member}, {d}};
  for (const auto& m : layer.terms) {
    t.levels[0].push_back(graded_full(m));
    t.levels[1].push_back(graded_zero(m));
  }
  return t;
}

Tower tower_extend(const Tower& t, const Complex& layer, int member, int d,
                   const std::vector<std::pair<int, ModuleMap>>& h) {
  const Complex& x = t.n;
  int lo = layer.lo, hi = layer.hi();
  if (!x.empty()) {
    lo = std::min(lo, x.lo);
    hi = std::max(hi, x.hi());
  }
  std::vector<Sum> sums;
  Complex out{x.alg, lo, {}, {}};
  for (int n = lo; n <= hi; ++n) {
    sums.push_back(direct_sum(std::vector<Module>{x.term(n), layer.term(n)}));
    out.terms.push_back(sums.back().module);
  }
  for (int n = lo; n < hi; ++n) {
    const Sum& s = sums[n - lo];
    const Sum& u = sums[n + 1 - lo];
    ModuleMap hn = zero_map(layer.term(n), x.term(n + 1));
    for (const auto& [k, g] : h)
      if (k == n) hn = hn + g;
    out.diff.push_back(compose(u.inj[0], compose(x.d(n), s.proj[0])) + compose(u.inj[0], compose(hn, s.proj[1])) +
                       compose(u.inj[1], compose(layer.d(n), s.proj[1])));
  }
  if (!is_complex(out)) throw std::invalid_argument("gluing map is not a cocycle");
  Tower res{out, {}, {member}, {d}};
  res.member.insert(res.member.end(), t.member.begin(), t.member.end());
  res.d.insert(res.d.end(), t.d.begin(), t.d.end());
  std::vector<Graded> top;
  for (const auto& m : out.terms) top.push_back(graded_full(m));
  res.levels.push_back(top);
  for (const auto& lev : t.levels) {
    std::vector<Graded> g;
    for (int n = lo; n <= hi; ++n) {
      const ModuleMap& inj = sums[n - lo].inj[0];
      if (n < x.lo || n > x.hi()) g.push_back(graded_zero(out.terms[n - lo]));
      else g.push_back(image_of(inj, lev[n - x.lo]));
    }
    res.levels.push_back(g);
  }
  return res;
}

Complex layer_complex(const AlgebraPtr& a, int v, int d, LayerShape shape) {
  Module s = simple(a, v);
  switch (shape) {
    case LayerShape::Stalk:
      return stalk(s, d);
    case LayerShape::Presentation: {
      Embedded k = cover_kernel(s);
      return make_complex(a, d - 1, {k.sub, k.incl.tgt}, {k.incl});
    }
    case LayerShape::Copresentation: {
      Cover hull = injective_hull(s);
      Quotient q = quotient(hull.p, image_of(hull.map));
      return make_complex(a, d, {hull.p, q.quot}, {q.proj});
    }
  }
  throw std::invalid_argument("unknown layer shape");
}

Tower random_tower(const AlgebraPtr& a, std::mt19937_64& rng, const RandomTowerOptions& opts) {
  const Field& f = a->field();
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  std::optional<Tower> t;
  for (int i = 0; i < opts.layers; ++i) {
    const int v = pick(0, a->num_vertices() - 1);
    const int d = pick(opts.dmin, opts.dmax);
    Complex l = layer_complex(a, v, d, static_cast<LayerShape>(pick(0, 2)));
    if (!t) {
      t = tower_from_layer(l, v, d);
      continue;
    }
    HomComplex hc(l, t->n);
    Subspace z = hc.cycles(1);
    auto basis = hc.basis(1);
    std::vector<std::pair<int, ModuleMap>> h;
    for (int r = 0; r < z.dim(); ++r) {
      Elem c = static_cast<Elem>(rng() % f.q());
      if (c == 0) continue;
      Vec w = z.basis_vec(r);
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (w[j] != 0) h.push_back({basis[j].first, scaled(basis[j].second, f.mul(c, w[j]))});
    }
    t = tower_extend(*t, l, v, d, h);
  }
  return *t;
}

Tower tower_reorder(const Tower& t, ReorderLog* log) {
  Tower out = t;
  const Complex& n = out.n;
  for (;;) {
    int k = 0;
    while (k + 1 < out.length() && out.d[k] >= out.d[k + 1]) ++k;
    if (k + 1 >= out.length()) return out;
    Complex q = subquotient(n, out.levels[k], out.levels[k + 2]);
    if (is_acyclic(q)) {
      if (out.member[k] != out.member[k + 1] || out.d[k + 1] != out.d[k] + 1)
        throw std::logic_error("acyclic two-layer subquotient with unmatched layers: corrupted tower");
      out.levels.erase(out.levels.begin() + k + 1, out.levels.begin() + k + 3);
      out.member.erase(out.member.begin() + k, out.member.begin() + k + 2);
      out.d.erase(out.d.begin() + k, out.d.begin() + k + 2);
      // L_k is now the level below layer k - 1 (or the bottom)
      if (log) log->steps.push_back({ReorderStep::Cancel, k});
      continue;
    }
    // good truncation at the lower degree becomes the new middle level
    const int m = out.d[k];
    std::vector<Graded> mid;
    for (int deg = n.lo; deg <= n.hi(); ++deg) {
      const int i = deg - n.lo;
      if (deg < m) mid.push_back(out.levels[k][i]);
      else if (deg > m) mid.push_back(out.levels[k + 2][i]);
      else {
        Graded below = deg < n.hi() ? out.levels[k + 2][i + 1] : graded_zero(n.term(deg + 1));
        mid.push_back(graded_intersect(out.levels[k][i], preimage_of(n.d(deg), below)));
      }
    }
    out.levels[k + 1] = mid;
    std::swap(out.member[k], out.member[k + 1]);
    std::swap(out.d[k], out.d[k + 1]);
    if (log) log->steps.push_back({ReorderStep::Swap, k});
  }
}

Truncation tower_truncate(const Tower& t) {
  for (int k = 0; k + 1 < t.length(); ++k)
    if (t.d[k] < t.d[k + 1]) throw std::invalid_argument("tower is not reordered");
  Truncation out;
  while (out.s < t.length() && t.d[out.s] > 0) ++out.s;
  out.m = subcomplex(t.n, t.levels[out.s]);
  out.l = quotient_complex(t.n, t.levels[out.s]);
  ComplexFamily s = simple_family(t.n.alg);
  out.m_le0 = t_membership(out.m, s, TSide::LessEq0);
  out.l_ge1 = t_membership(shift(out.l, 1), s, TSide::GreaterEq0);
  return out;
}

}  // namespace stabrecon
