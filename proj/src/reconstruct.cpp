#include "stabrecon/reconstruct.hpp"

namespace stabrecon {

Generator generator_build(FiltrationEngine& eng) {
  const SimpleSet& s = eng.family();
  const int ns = static_cast<int>(s.modules.size());
  if (ns == 0) throw std::invalid_argument("empty family");
  AlgebraPtr alg = s.modules[0].algebra_ptr();
  Generator gen;
  std::vector<Module> blocks;
  std::vector<Filtration> fil;
  for (int si = 0; si < ns; ++si) {
    Cover c = projective_cover(s.modules[si]);
    Embedded omega = kernel_of(c.map);
    auto pads = eng.minimal_paddings(omega.sub);
    const std::vector<int>& q = pads.front();
    gen.padding.push_back(q);
    gen.alternatives.push_back(pads);
    Sum padded = eng.padded(omega.sub, q);
    std::vector<Module> parts{c.p};
    for (std::size_t k = 1; k < padded.inj.size(); ++k) parts.push_back(padded.proj[k].tgt);
    Sum x = direct_sum(parts);
    std::vector<ModuleMap> to_x{compose(x.inj[0], omega.incl)};
    for (std::size_t k = 1; k < padded.inj.size(); ++k) to_x.push_back(x.inj[k]);
    ModuleMap kappa = row_map(padded, to_x);
    auto fk = eng.s_radical_filtration(padded.module);
    if (!fk) throw std::logic_error("padded syzygy is not filtrable");
    std::vector<int> unit(ns, 0);
    unit[si] = 1;
    fil.push_back(concat(x.module, {graded_full(x.module), image_of(kappa)}, {unit}, *fk, kappa));
    blocks.push_back(x.module);
  }
  gen.blocks = direct_sum(blocks);
  int r = 0;
  for (const auto& f : fil) r = std::max(r, f.length());
  Filtration out{gen.blocks.module, {}, {}};
  for (int i = 0; i <= r; ++i) {
    Graded g = graded_zero(gen.blocks.module);
    for (int si = 0; si < ns; ++si)
      g = graded_sum(g, image_of(gen.blocks.inj[si], fil[si].chain[std::min(i, fil[si].length())]));
    out.chain.push_back(g);
  }
  for (int i = 0; i < r; ++i) {
    std::vector<int> mu(ns, 0);
    for (const auto& f : fil)
      if (i < f.length())
        for (int k = 0; k < ns; ++k) mu[k] += f.mult[i][k];
    out.mult.push_back(mu);
  }
  gen.m.filtration = std::move(out);
  gen.certificate = eng.verify_s_radical(gen.m.filtration);
  return gen;
}

GradedHom::GradedHom(const FilteredModule& m, const FilteredModule& n) : m_(m), n_(n) {
  const Filtration& fm = m_.filtration;
  const Filtration& fn = n_.filtration;
  if (fm.length() == 0 || fn.length() == 0) return;
  const Module& mm = fm.module;
  const Field& f = mm.field();
  top_m_.push_back(quotient(mm, fm.chain[1]));
  const Quotient& tm = top_m_[0];
  const int rn = fn.length();
  for (int i = 0; i < rn; ++i) {
    Embedded ni = fn.level(i);
    layer_n_.push_back(quotient(ni.sub, preimage_of(ni.incl, fn.chain[i + 1])));
    HomSpace h(mm, ni.sub);
    // rows: for every j >= 1 and basis vector v of M_j, coordinates of g(v) modulo N_{i+j}
    std::vector<Vec> cols(h.dim());
    for (int j = 1; j <= fm.length(); ++j) {
      Subspace mj = graded_to_global(mm, fm.chain[j]);
      Subspace t = graded_to_global(ni.sub, preimage_of(ni.incl, fn.chain[std::min(i + j, rn)]));
      for (int k = 0; k < h.dim(); ++k)
        for (int b = 0; b < mj.dim(); ++b) {
          Vec r = t.quotient_coords(h[k].m.apply(mj.basis_vec(b)));
          cols[k].insert(cols[k].end(), r.begin(), r.end());
        }
    }
    std::vector<ModuleMap> filt;
    const int rows = h.dim() > 0 ? static_cast<int>(cols[0].size()) : 0;
    if (rows == 0) {
      filt = h.basis();
    } else {
      Matrix sys(f, rows, h.dim());
      for (int k = 0; k < h.dim(); ++k)
        for (int a = 0; a < rows; ++a) sys(a, k) = cols[k][a];
      Subspace ker = kernel_basis(sys);
      for (int b = 0; b < ker.dim(); ++b) filt.push_back(h.combine(ker.basis_vec(b)));
    }
    GradedComponent c;
    c.degree = i;
    c.stable = StableHom(tm.quot, layer_n_[i].quot);
    std::vector<Vec> cls;
    for (const auto& g : filt)
      cls.push_back(c.stable.coordinates(ModuleMap(tm.quot, layer_n_[i].quot, layer_n_[i].proj.m * g.m * tm.section)));
    const int sd = c.stable.dim();
    c.image = Subspace(f, sd);
    if (!filt.empty() && sd > 0) {
      Matrix cm = Matrix::from_rows(f, sd, cls);
      c.image = Subspace::span(cm);
      // lifts: solve sum_k x_k cls[k] = basis vector
      Matrix ct = cm.transpose();
      for (int b = 0; b < c.image.dim(); ++b) {
        auto x = solve_linear(ct, c.image.basis_vec(b));
        c.lifts.push_back(combine_maps(mm, ni.sub, filt, *x));
      }
      Subspace nk = kernel_basis(ct);
      for (int b = 0; b < nk.dim(); ++b) c.null.push_back(combine_maps(mm, ni.sub, filt, nk.basis_vec(b)));
    } else {
      c.null = filt;
    }
    filtered_.push_back(std::move(filt));
    comp_.push_back(std::move(c));
  }
}

std::vector<int> GradedHom::dims() const {
  std::vector<int> d;
  for (const auto& c : comp_) d.push_back(c.dim());
  return d;
}

std::vector<ModuleMap> GradedHom::filtered_maps(int i) const { return filtered_[i]; }

Vec GradedHom::coordinates(int i, const ModuleMap& g) const {
  const GradedComponent& c = comp_[i];
  const Quotient& tm = top_m_[0];
  Vec st = c.stable.coordinates(ModuleMap(tm.quot, layer_n_[i].quot, layer_n_[i].proj.m * g.m * tm.section));
  if (c.stable.dim() == 0) return {};
  auto x = c.image.coordinates(st);
  if (!x) throw std::invalid_argument("map is not filtered of this degree");
  return *x;
}

ModuleMap GradedHom::lift(int i, const Vec& c) const {
  const GradedComponent& gc = comp_[i];
  Embedded ni = n_.filtration.level(i);
  return combine_maps(m_.filtration.module, ni.sub, gc.lifts, c);
}

GradedHom graded_hom(const FilteredModule& m, const FilteredModule& n) { return GradedHom(m, n); }

}  // namespace stabrecon

namespace stabrecon {

Vec graded_compose(const GradedHom& mn, int i, const Vec& f, const GradedHom& lm, int j, const Vec& g,
                   const GradedHom& ln, const std::optional<ModuleMap>& f_lift,
                   const std::optional<ModuleMap>& g_lift) {
  const int d = i + j;
  if (d > ln.max_degree()) return {};
  const Filtration& fm = mn.src().filtration;
  const Filtration& fn = mn.tgt().filtration;
  ModuleMap big_f = f_lift ? *f_lift : mn.lift(i, f);
  ModuleMap big_g = g_lift ? *g_lift : lm.lift(j, g);
  Embedded mj = fm.level(j), ni = fn.level(i), nd = fn.level(d);
  ModuleMap to_n = compose(ni.incl, compose(big_f, mj.incl));
  auto x = solve_right(nd.incl.m, to_n.m);
  if (!x) throw std::logic_error("lift is not a filtered map");
  ModuleMap h = compose(ModuleMap(mj.sub, nd.sub, *x), big_g);
  return ln.coordinates(d, h);
}

GradedAlgebra end_g(const FilteredModule& m) {
  GradedHom h(m, m);
  GradedAlgebra g;
  g.field = m.module().field();
  g.dims = h.dims();
  while (!g.dims.empty() && g.dims.back() == 0) g.dims.pop_back();
  const int n = g.total_dim();
  for (int d = 0; d < static_cast<int>(g.dims.size()); ++d)
    for (int k = 0; k < g.dims[d]; ++k) g.labels.push_back("d" + std::to_string(d) + "_" + std::to_string(k));
  g.products.assign(static_cast<std::size_t>(n) * n, Vec(n, 0));
  auto unit = [](int len, int k) {
    Vec e(len, 0);
    e[k] = 1;
    return e;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int da = g.degree_of(a), db = g.degree_of(b);
      if (da + db >= static_cast<int>(g.dims.size())) continue;
      // a * b = b o a
      Vec c = graded_compose(h, db, unit(g.dims[db], b - g.offset(db)), h, da, unit(g.dims[da], a - g.offset(da)), h);
      Vec& out = g.products[static_cast<std::size_t>(a) * n + b];
      for (std::size_t k = 0; k < c.size(); ++k) out[g.offset(da + db) + k] = c[k];
    }
  return g;
}

}  // namespace stabrecon
