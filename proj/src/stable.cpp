#include "stabrecon/stable.hpp"

namespace stabrecon {

void require_self_injective(const Algebra& a) {
  const auto& r = a.self_injectivity();
  if (!r.self_injective) throw NotSelfInjective("algebra is not self-injective: " + r.reason);
}

Subspace projective_maps(const HomSpace& h) {
  require_self_injective(h.src().algebra());
  const Field& f = h.src().field();
  Subspace out(f, h.dim());
  if (h.dim() == 0 || h.src().is_zero()) return out;
  Cover hull = injective_hull(h.src());
  HomSpace from_hull(hull.p, h.tgt());
  std::vector<Vec> gens;
  for (const auto& g : from_hull.basis()) gens.push_back(h.coordinates(compose(g, hull.map)));
  if (gens.empty()) return out;
  return Subspace::span(Matrix::from_rows(f, h.dim(), gens));
}

Subspace projective_maps(const Module& m, const Module& n) { return projective_maps(HomSpace(m, n)); }

std::vector<ModuleMap> projective_map_basis(const Module& m, const Module& n) {
  HomSpace h(m, n);
  Subspace p = projective_maps(h);
  std::vector<ModuleMap> out;
  for (int i = 0; i < p.dim(); ++i) out.push_back(h.combine(p.basis_vec(i)));
  return out;
}

SpanSolution solve_in_span(const Field& f, const std::vector<ModuleMap>& images, const ModuleMap& target) {
  const int n = static_cast<int>(target.m.data().size());
  const int k = static_cast<int>(images.size());
  Matrix sys(f, n, k);
  for (int j = 0; j < k; ++j) {
    const auto& d = images[j].m.data();
    for (int i = 0; i < n; ++i) sys(i, j) = d[i];
  }
  SpanSolution out;
  if (k == 0 || n == 0) {
    if (target.is_zero()) out.particular = Vec(k, 0);
    for (int j = 0; n == 0 && j < k; ++j) {
      Vec e(k, 0);
      e[j] = 1;
      out.kernel.push_back(e);
    }
    return out;
  }
  out.particular = solve_linear(sys, target.m.flatten());
  Subspace ker = kernel_basis(sys);
  for (int i = 0; i < ker.dim(); ++i) out.kernel.push_back(ker.basis_vec(i));
  return out;
}

ModuleMap combine_maps(const Module& s, const Module& t, const std::vector<ModuleMap>& maps, const Vec& c) {
  Matrix m(s.field(), t.dim(), s.dim());
  for (std::size_t i = 0; i < maps.size(); ++i) m.axpy(c[i], maps[i].m);
  return ModuleMap(s, t, std::move(m));
}

std::optional<ModuleMap> extend_projective(const ModuleMap& p, const ModuleMap& i) {
  auto basis = projective_map_basis(i.tgt, p.tgt);
  std::vector<ModuleMap> images;
  for (const auto& q : basis) images.push_back(compose(q, i));
  auto sol = solve_in_span(p.src.field(), images, p);
  if (!sol.particular) return std::nullopt;
  return combine_maps(i.tgt, p.tgt, basis, *sol.particular);
}

StableHom::StableHom(Module m, Module n) : hom_(std::move(m), std::move(n)) {
  proj_ = projective_maps(hom_);
  free_ = proj_.free_columns();
  for (int c : free_) reps_.push_back(hom_[c]);
}

Vec StableHom::coordinates(const ModuleMap& f) const { return proj_.quotient_coords(hom_.coordinates(f)); }

ModuleMap StableHom::representative(const Vec& c) const {
  if (static_cast<int>(c.size()) != dim()) throw std::invalid_argument("stable coordinate length mismatch");
  Vec full(hom_.dim(), 0);
  for (int i = 0; i < dim(); ++i) full[free_[i]] = c[i];
  return hom_.combine(full);
}

bool StableHom::is_projective_map(const ModuleMap& f) const { return proj_.contains(hom_.coordinates(f)); }

bool StableHom::stably_equal(const ModuleMap& f, const ModuleMap& g) const { return is_projective_map(f - g); }

StableHom stable_hom(const Module& m, const Module& n) { return StableHom(m, n); }

bool is_projective_map(const ModuleMap& f) {
  require_self_injective(f.src.algebra());
  if (f.is_zero()) return true;
  // f factors through a projective iff it extends along the injective hull.
  Cover hull = injective_hull(f.src);
  HomSpace h(hull.p, f.tgt);
  const Field& fld = f.src.field();
  const int n = f.src.dim() * f.tgt.dim();
  Matrix sys(fld, n, h.dim());
  for (int j = 0; j < h.dim(); ++j) {
    Vec v = compose(h[j], hull.map).m.flatten();
    for (int i = 0; i < n; ++i) sys(i, j) = v[i];
  }
  return solve_linear(sys, f.m.flatten()).has_value();
}

std::optional<StableIso> stably_isomorphic(const Module& m, const Module& n, const DecomposeOptions& opts) {
  require_self_injective(m.algebra());
  Stripped sm = strip_projectives(m, opts);
  Stripped sn = strip_projectives(n, opts);
  if (sm.core.dims() != sn.core.dims()) return std::nullopt;
  auto phi = find_isomorphism(sm.core, sn.core, opts);
  if (!phi) return std::nullopt;
  auto inv = inverse(phi->m);
  ModuleMap psi(sn.core, sm.core, *inv);
  StableIso out;
  out.f = compose(sn.core_incl, compose(*phi, sm.core_proj));
  out.g = compose(sm.core_incl, compose(psi, sn.core_proj));
  return out;
}

SimpleSetCheck check_simple_set(const std::vector<Module>& candidates, const std::vector<std::string>& labels,
                                const DecomposeOptions& opts) {
  SimpleSetCheck res;
  SimpleSet& s = res.set;
  const int k = static_cast<int>(candidates.size());
  s.modules = candidates;
  for (int i = 0; i < k; ++i)
    s.labels.push_back(i < static_cast<int>(labels.size()) ? labels[i] : "S" + std::to_string(i));
  auto flag = [&](int i, int j, std::string why) {
    if (!res.violation) res.violation = Violation{i, j, std::move(why)};
  };
  if (k == 0) flag(-1, -1, "empty candidate list");
  for (int i = 0; i < k; ++i) {
    const Module& m = candidates[i];
    if (i == 0) require_self_injective(m.algebra());
    if (m.algebra_ptr() != candidates[0].algebra_ptr()) throw std::invalid_argument("candidates over different algebras");
    bool indec = false;
    if (!m.is_zero()) indec = certify_local(m) || decompose(m, opts).pieces.size() == 1;
    s.indecomposable.push_back(indec);
    s.projective.push_back(is_projective(m));
    if (!indec) flag(i, i, s.labels[i] + " is not indecomposable");
    if (s.projective.back()) flag(i, i, s.labels[i] + " is projective");
  }
  s.pattern.assign(k, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int d = stable_hom(candidates[i], candidates[j]).dim();
      s.pattern[i][j] = d;
      int want = i == j ? 1 : 0;
      if (d != want)
        flag(i, j,
             "dim Hom_stab(" + s.labels[i] + ", " + s.labels[j] + ") = " + std::to_string(d) + ", expected " +
                 std::to_string(want));
    }
  return res;
}

}  // namespace stabrecon
