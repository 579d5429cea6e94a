#include "stabrecon/filtration.hpp"

#include <algorithm>
#include <numeric>

namespace stabrecon {

namespace {

Sum family_sum(const AlgebraPtr& a, const std::vector<Module>& parts) {
  if (parts.empty()) return Sum{Module::zero(a), {}, {}};
  return direct_sum(parts);
}

std::vector<int> unit_vector(int n, int i) {
  std::vector<int> v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

std::optional<LayerWitness> add_decomposition(const Module& l, const SimpleSet& s, const DecomposeOptions& opts) {
  const int k = static_cast<int>(s.modules.size());
  LayerWitness w;
  w.mult.assign(k, 0);
  if (l.is_zero()) {
    w.sum = family_sum(l.algebra_ptr(), {});
    w.iso = zero_map(w.sum.module, l);
    return w;
  }
  Decomposition d = decompose(l, opts);
  std::vector<std::pair<int, ModuleMap>> found;
  for (const Piece& pc : d.pieces) {
    int hit = -1;
    ModuleMap to_piece;
    for (int j = 0; j < k && hit < 0; ++j) {
      if (s.modules[j].dims() != pc.module.dims()) continue;
      if (auto iso = indecomposable_iso(s.modules[j], pc.module)) {
        hit = j;
        to_piece = *iso;
      }
    }
    if (hit < 0) return std::nullopt;
    found.emplace_back(hit, compose(pc.incl, to_piece));
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Module> parts;
  std::vector<ModuleMap> maps;
  for (auto& [j, m] : found) {
    ++w.mult[j];
    w.order.push_back(j);
    parts.push_back(s.modules[j]);
    maps.push_back(m);
  }
  w.sum = direct_sum(parts);
  w.iso = row_map(w.sum, maps);
  return w;
}

Embedded Filtration::level(int i) const { return submodule(module, chain[i]); }

Quotient Filtration::layer(int i) const {
  Embedded e = level(i);
  return quotient(e.sub, preimage_of(e.incl, chain[i + 1]));
}

LayerWitness Filtration::witness(int i, const SimpleSet& s, const DecomposeOptions& opts) const {
  auto w = add_decomposition(layer(i).quot, s, opts);
  if (!w) throw std::logic_error("filtration layer is not in add(S)");
  return *w;
}

Filtration make_filtration(const Module& m, std::vector<Graded> chain, const SimpleSet& s,
                           const DecomposeOptions& opts) {
  if (chain.empty() || !graded_equal(chain.front(), graded_full(m)) || graded_dim(chain.back()) != 0)
    throw std::invalid_argument("chain must run from M down to 0");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!is_submodule(m, chain[i])) throw std::invalid_argument("chain term is not a submodule");
    if (i > 0 && !graded_contains(chain[i - 1], chain[i])) throw std::invalid_argument("chain is not decreasing");
  }
  Filtration f{m, std::move(chain), {}};
  for (int i = 0; i < f.length(); ++i) {
    auto w = add_decomposition(f.layer(i).quot, s, opts);
    if (!w) throw std::invalid_argument("layer " + std::to_string(i) + " is not in add(S)");
    f.mult.push_back(w->mult);
  }
  return f;
}

bool is_valid_filtration(const Filtration& f, const SimpleSet& s) {
  try {
    Filtration g = make_filtration(f.module, f.chain, s);
    return g.mult == f.mult;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

Filtration push_forward(const Filtration& f, const ModuleMap& iso) {
  Filtration g{iso.tgt, {}, f.mult};
  for (const Graded& c : f.chain) g.chain.push_back(image_of(iso, c));
  return g;
}

Filtration refine(const Filtration& f, const SimpleSet& s) {
  const int k = static_cast<int>(s.modules.size());
  Filtration g{f.module, {f.chain[0]}, {}};
  for (int i = 0; i < f.length(); ++i) {
    Embedded e = f.level(i);
    Quotient q = quotient(e.sub, preimage_of(e.incl, f.chain[i + 1]));
    auto w = add_decomposition(q.quot, s);
    if (!w) throw std::invalid_argument("filtration layer is not in add(S)");
    const int n = static_cast<int>(w->order.size());
    for (int j = 1; j < n; ++j) {
      Graded img = graded_zero(q.quot);
      for (int t = j; t < n; ++t) img = graded_sum(img, image_of(compose(w->iso, w->sum.inj[t])));
      g.chain.push_back(image_of(e.incl, preimage_of(q.proj, img)));
      g.mult.push_back(unit_vector(k, w->order[j - 1]));
    }
    g.chain.push_back(f.chain[i + 1]);
    if (n > 0) g.mult.push_back(unit_vector(k, w->order[n - 1]));
    else g.chain.pop_back();
  }
  if (graded_dim(g.chain.back()) != 0) g.chain.push_back(graded_zero(f.module));
  return g;
}

Filtration concat(const Module& m, const std::vector<Graded>& outer, const std::vector<std::vector<int>>& outer_mult,
                  const Filtration& inner, const ModuleMap& incl) {
  Filtration g{m, outer, outer_mult};
  for (int j = 1; j < static_cast<int>(inner.chain.size()); ++j) g.chain.push_back(image_of(incl, inner.chain[j]));
  for (const auto& mu : inner.mult) g.mult.push_back(mu);
  return g;
}

bool RadicalCertificate::radical_without_remainder() const {
  return radical() && !injective.empty() && injective[0] && no_remainder[0];
}

}  // namespace stabrecon

namespace stabrecon {

Filtration tail(const Filtration& f, int i) {
  Embedded e = f.level(i);
  Filtration g{e.sub, {}, {}};
  for (int j = i; j < static_cast<int>(f.chain.size()); ++j) g.chain.push_back(preimage_of(e.incl, f.chain[j]));
  for (int j = i; j < f.length(); ++j) g.mult.push_back(f.mult[j]);
  return g;
}

}  // namespace stabrecon
