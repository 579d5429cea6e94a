#include "stabrecon/filtration.hpp"

namespace stabrecon {

namespace {

// Invertible element of f0 + span(dirs); nullopt when the search was
// exhaustive and found none.
std::optional<Matrix> invertible_in_coset(const Matrix& f0, const std::vector<Matrix>& dirs,
                                          const CosetSearchOptions& opts) {
  if (f0.rows() != f0.cols()) return std::nullopt;
  CosetSearchOptions co = opts;
  co.target_rank = f0.rows();
  CosetSearchResult r = coset_rank_maximize(f0, dirs, co);
  if (r.rank == f0.rows()) return r.best;
  if (!r.exhaustive) throw Undecided("no invertible element found (search not exhaustive)");
  return std::nullopt;
}

// sigma = id + q with q projective and lhs(q) = target, sigma invertible.
template <class Apply>
ModuleMap projective_correction(const Module& m, const ModuleMap& target, Apply apply, const CosetSearchOptions& opts) {
  auto basis = projective_map_basis(m, m);
  std::vector<ModuleMap> images;
  for (const auto& q : basis) images.push_back(apply(q));
  SpanSolution sol = solve_in_span(m.field(), images, target);
  if (!sol.particular) throw std::invalid_argument("maps are not stably equal");
  ModuleMap sigma0 = identity_map(m) + combine_maps(m, m, basis, *sol.particular);
  std::vector<Matrix> dirs;
  for (const Vec& k : sol.kernel) dirs.push_back(combine_maps(m, m, basis, k).m);
  auto inv = invertible_in_coset(sigma0.m, dirs, opts);
  if (!inv) throw std::logic_error("no invertible correction in the coset");
  return ModuleMap(m, m, *inv);
}

}  // namespace

int find_nonzero_target(const Module& m, const SimpleSet& s, bool source) {
  for (int i = 0; i < static_cast<int>(s.modules.size()); ++i) {
    int d = source ? stable_hom(s.modules[i], m).dim() : stable_hom(m, s.modules[i]).dim();
    if (d > 0) return i;
  }
  throw NoneFound("no family member with a nonzero stable map (module projective or not filtrable)");
}

ModuleMap align_surjections(const ModuleMap& f1, const ModuleMap& f2, const CosetSearchOptions& opts) {
  if (!f1.is_surjective() || !f2.is_surjective()) throw std::invalid_argument("maps are not surjective");
  if (f1.src.dims() != f2.src.dims() || f1.tgt.dims() != f2.tgt.dims()) throw std::invalid_argument("maps have different shapes");
  return projective_correction(f1.src, f2 - f1, [&](const ModuleMap& q) { return compose(f1, q); }, opts);
}

ModuleMap align_injections(const ModuleMap& f1, const ModuleMap& f2, const CosetSearchOptions& opts) {
  if (!f1.is_injective() || !f2.is_injective()) throw std::invalid_argument("maps are not injective");
  if (f1.src.dims() != f2.src.dims() || f1.tgt.dims() != f2.tgt.dims()) throw std::invalid_argument("maps have different shapes");
  return projective_correction(f1.tgt, f2 - f1, [&](const ModuleMap& q) { return compose(q, f1); }, opts);
}

namespace {

Adjusted adjust_rec(const ModuleMap& f, const Filtration& r, const SimpleSet& s) {
  const Module& m = f.src;
  const int k = static_cast<int>(s.modules.size());
  if (r.length() == 1) {
    if (!f.is_iso()) throw std::logic_error("non-projective map between family members is not invertible");
    Embedded ker = kernel_of(f);
    return Adjusted{f, ker, Filtration{ker.sub, {graded_full(ker.sub)}, {}}};
  }
  Embedded n = submodule(m, r.chain[1]);
  int layer0 = -1;
  for (int j = 0; j < k; ++j)
    if (r.mult[0][j] == 1) layer0 = j;
  ModuleMap fa = compose(f, n.incl);
  Filtration rn = tail(r, 1);
  if (is_projective_map(fa)) {
    auto p = extend_projective(fa, n.incl);
    ModuleMap g = f - *p;
    if (!g.is_surjective() || !graded_equal(image_of(n.incl), preimage_of(g, graded_zero(g.tgt))))
      throw std::logic_error("corrected map does not have the expected kernel");
    return Adjusted{g, n, rn};
  }
  Adjusted a = adjust_rec(fa, rn, s);
  ModuleMap q = a.g - fa;
  auto p = extend_projective(q, n.incl);
  if (!p) throw std::logic_error("correction on the submodule is not projective");
  ModuleMap g = f + *p;
  if (!g.is_surjective()) throw std::logic_error("corrected map is not surjective");
  Embedded ker = kernel_of(g);
  ModuleMap inner = compose(n.incl, a.kernel.incl);
  auto x = solve_right(ker.incl.m, inner.m);
  if (!x) throw std::logic_error("kernel of the restriction is not inside the kernel");
  ModuleMap iota(a.kernel.sub, ker.sub, *x);
  std::vector<int> unit(k, 0);
  unit[layer0] = 1;
  Filtration kf = concat(ker.sub, {graded_full(ker.sub), image_of(iota)}, {unit}, a.kernel_filtration, iota);
  return Adjusted{g, ker, kf};
}

}  // namespace

Adjusted adjust_to_surjection(const ModuleMap& f, int target, const Filtration& fm, const SimpleSet& s) {
  if (f.tgt.dims() != s.modules[target].dims()) throw std::invalid_argument("target is not the family member");
  if (is_projective_map(f)) throw std::invalid_argument("map is projective");
  Filtration r = refine(fm, s);
  return adjust_rec(f, r, s);
}

ModuleMap align_filtrations(const Filtration& f1, const Filtration& f2, const SimpleSet& s,
                            const CosetSearchOptions& opts) {
  const Module& m = f1.module;
  if (f1.length() != f2.length()) throw std::invalid_argument("filtrations have different lengths");
  if (m.dims() != f2.module.dims()) throw std::invalid_argument("filtrations of different modules");
  if (f1.length() == 0 || m.is_zero()) return identity_map(m);
  Quotient q1 = quotient(m, f1.chain[1]), q2 = quotient(m, f2.chain[1]);
  // theta: M/N2 -> M/N1 with theta o pi2 ~ pi1.
  HomSpace h(q2.quot, q1.quot);
  StableHom sm(m, q1.quot);
  std::vector<Vec> cols;
  for (const auto& t : h.basis()) cols.push_back(sm.coordinates(compose(t, q2.proj)));
  const int rows = sm.dim();
  Matrix sys(m.field(), rows, h.dim());
  for (int j = 0; j < h.dim(); ++j)
    for (int i = 0; i < rows; ++i) sys(i, j) = cols[j][i];
  Vec target = sm.coordinates(q1.proj);
  std::optional<Vec> c0;
  if (h.dim() == 0) {
    if (vzero(target)) c0 = Vec{};
  } else if (rows == 0) {
    c0 = Vec(h.dim(), 0);
  } else {
    c0 = solve_linear(sys, target);
  }
  if (!c0) throw std::invalid_argument("top layers are not stably compatible");
  std::vector<Matrix> dirs;
  if (h.dim() > 0) {
    Subspace ker = rows == 0 ? Subspace::full(m.field(), h.dim()) : kernel_basis(sys);
    for (int i = 0; i < ker.dim(); ++i) dirs.push_back(h.combine(ker.basis_vec(i)).m);
  }
  Matrix theta0 = h.dim() > 0 ? h.combine(*c0).m : Matrix(m.field(), q1.quot.dim(), q2.quot.dim());
  auto theta = invertible_in_coset(theta0, dirs, opts);
  if (!theta) throw std::invalid_argument("top layers are not isomorphic");
  ModuleMap tp = compose(ModuleMap(q2.quot, q1.quot, *theta), q2.proj);
  ModuleMap sigma1 = align_surjections(q1.proj, tp, opts);
  // Recurse on N1 with the transported second filtration.
  Embedded e1 = f1.level(1);
  Filtration g1 = tail(f1, 1);
  Filtration g2{e1.sub, {}, {}};
  for (int j = 1; j < static_cast<int>(f2.chain.size()); ++j)
    g2.chain.push_back(preimage_of(e1.incl, image_of(sigma1, f2.chain[j])));
  for (int j = 1; j < f2.length(); ++j) g2.mult.push_back(f2.mult[j]);
  ModuleMap tau = align_filtrations(g1, g2, s, opts);
  ModuleMap p = tau - identity_map(e1.sub);
  auto q = extend_projective(p, e1.incl);
  if (!q) throw std::logic_error("automorphism of the submodule is not stably the identity");
  ModuleMap tau_ext = identity_map(m) + compose(e1.incl, *q);
  ModuleMap sigma = compose(tau_ext, sigma1);
  for (int i = 0; i < static_cast<int>(f1.chain.size()); ++i)
    if (!graded_equal(image_of(sigma, f2.chain[i]), f1.chain[i])) throw std::logic_error("alignment failed");
  return sigma;
}

std::optional<ModuleMap> stable_iso_lifts(const ModuleMap& phi, const CosetSearchOptions& opts) {
  if (phi.src.dims() != phi.tgt.dims()) return std::nullopt;
  std::vector<Matrix> dirs;
  for (const auto& p : projective_map_basis(phi.src, phi.tgt)) dirs.push_back(p.m);
  auto inv = invertible_in_coset(phi.m, dirs, opts);
  if (!inv) return std::nullopt;
  return ModuleMap(phi.src, phi.tgt, *inv);
}

std::optional<ModuleMap> symmetric_two_step_swap(const ShortExact& e1, const ShortExact& e2, const SimpleSet& s,
                                                 const CosetSearchOptions& opts) {
  const Module& m = e1.i.tgt;
  if (symmetric_check(m.algebra()).status != SymmetricStatus::Symmetric)
    throw std::invalid_argument("algebra is not known to be symmetric");
  if (!e1.valid() || !e2.valid() || e2.i.tgt.dims() != m.dims()) throw std::invalid_argument("invalid short exact sequences");
  for (const Module* x : {&e1.i.src, &e1.p.tgt, &e2.i.src, &e2.p.tgt}) {
    auto w = add_decomposition(*x, s);
    if (!w || w->order.size() != 1) throw std::invalid_argument("end term is not a family member");
  }
  auto split = [](const ShortExact& e) { return vzero(Ext1(e.p.tgt, e.i.src).class_of(e)); };
  if (split(e1) && split(e2)) throw std::invalid_argument("both sequences split");
  Graded u1 = image_of(e1.i), u2 = image_of(e2.i);
  if (graded_dim(u1) != graded_dim(u2)) return std::nullopt;
  // sigma in End(M) with sigma(u1) inside u2.
  HomSpace end(m, m);
  Subspace g1 = graded_to_global(m, u1), g2 = graded_to_global(m, u2);
  std::vector<Vec> cols(end.dim());
  for (int k = 0; k < end.dim(); ++k)
    for (int b = 0; b < g1.dim(); ++b) {
      Vec r = g2.quotient_coords(end[k].m.apply(g1.basis_vec(b)));
      cols[k].insert(cols[k].end(), r.begin(), r.end());
    }
  const int rows = end.dim() > 0 ? static_cast<int>(cols[0].size()) : 0;
  std::vector<Matrix> dirs;
  if (rows == 0) {
    for (const auto& b : end.basis()) dirs.push_back(b.m);
  } else {
    Matrix sys(m.field(), rows, end.dim());
    for (int k = 0; k < end.dim(); ++k)
      for (int i = 0; i < rows; ++i) sys(i, k) = cols[k][i];
    Subspace ker = kernel_basis(sys);
    for (int i = 0; i < ker.dim(); ++i) dirs.push_back(end.combine(ker.basis_vec(i)).m);
  }
  auto inv = invertible_in_coset(Matrix(m.field(), m.dim(), m.dim()), dirs, opts);
  if (!inv) return std::nullopt;
  return ModuleMap(m, m, *inv);
}

}  // namespace stabrecon
