#include <algorithm>
#include <map>
#include <numeric>

#include "stabrecon/filtration.hpp"

namespace stabrecon {

namespace {

struct Decision {
  bool ok = false;
  bool certain = true;
};

using Counts = std::vector<int>;

bool module_equal(const Module& a, const Module& b) {
  if (a.dims() != b.dims()) return false;
  for (int k = 0; k < a.algebra().num_arrows(); ++k)
    if (a.action(k) != b.action(k)) return false;
  return true;
}

int total(const Counts& v) { return std::accumulate(v.begin(), v.end(), 0); }

bool leq(const Counts& a, const Counts& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Counts minus(const Counts& a, const Counts& b) {
  Counts r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Counts plus(const Counts& a, const Counts& b) {
  Counts r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

/// All x with 0 <= x <= m, ordered by weighted size then lexicographically.
std::vector<Counts> below(const Counts& m, const std::vector<int>& weight) {
  std::vector<Counts> out;
  Counts x(m.size(), 0);
  while (true) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < m.size() && x[i] == m[i]) x[i++] = 0;
    if (i == m.size()) break;
    ++x[i];
  }
  auto size = [&](const Counts& c) {
    int s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * weight[i];
    return s;
  };
  std::stable_sort(out.begin(), out.end(), [&](const Counts& a, const Counts& b) {
    int sa = size(a), sb = size(b);
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

// Position of copy c of P_v in a model with projective multiplicities m.
int model_index(const Counts& m, int v, int c) {
  int idx = 1;
  for (int w = 0; w < v; ++w) idx += m[w];
  return idx + c;
}

}  // namespace

struct FiltrationEngine::Impl {
  SimpleSet s;
  FiltrationOptions opts;
  AlgebraPtr alg;
  int nv = 0, ns = 0, zero_core = 0;
  std::vector<int> order;
  std::vector<int> proj_dim;
  std::vector<Cover> cover;
  std::vector<Counts> cover_mult;
  std::vector<Embedded> omega;
  std::vector<int> omega_core;
  std::vector<Counts> top_dims;
  std::vector<Module> cores;
  std::map<std::pair<int, Counts>, Decision> filt_memo;
  std::map<Counts, Decision> proj_memo;
  std::map<std::pair<int, Counts>, std::pair<std::optional<Filtration>, bool>> greedy_memo;

  struct Analysis {
    int core = 0;
    Counts m;
    Sum model;
    ModuleMap phi;  // model -> module, iso
  };

  int intern(const Module& m) {
    for (std::size_t i = 0; i < cores.size(); ++i)
      if (module_equal(cores[i], m)) return static_cast<int>(i);
    cores.push_back(m);
    return static_cast<int>(cores.size()) - 1;
  }

  Sum model(int core, const Counts& m) const {
    std::vector<Module> parts{cores[core]};
    for (int v = 0; v < nv; ++v)
      for (int c = 0; c < m[v]; ++c) parts.push_back(projective(alg, v));
    return direct_sum(parts);
  }

  // Inclusion of model(core_small, small) into `big` (multiplicities bm)
  // sending copy c of P_v to copy first[v] + c, and the core along `core_map`.
  ModuleMap embed(const Sum& small, const Counts& sm, const Sum& big, const Counts& bm, const Counts& first,
                  const ModuleMap& core_map) const {
    std::vector<ModuleMap> maps{core_map};
    for (int v = 0; v < nv; ++v)
      for (int c = 0; c < sm[v]; ++c) maps.push_back(big.inj[model_index(bm, v, first[v] + c)]);
    return row_map(small, maps);
  }

  Analysis analyze(const Module& x) {
    Analysis a;
    a.m.assign(nv, 0);
    if (x.is_zero()) {
      a.core = zero_core;
      a.model = model(a.core, a.m);
      a.phi = zero_map(a.model.module, x);
      return a;
    }
    Stripped st = strip_projectives(x, opts.decompose);
    a.core = intern(st.core);
    std::vector<ModuleMap> maps{st.core_incl};
    if (!st.proj_part.is_zero()) {
      Cover c = projective_cover(st.proj_part);
      std::vector<Module> parts;
      for (int v : c.vertices) {
        ++a.m[v];
        parts.push_back(projective(alg, v));
      }
      Sum cs = direct_sum(parts);
      ModuleMap to_x = compose(st.proj_incl, c.map);
      for (const auto& inj : cs.inj) maps.push_back(compose(to_x, inj));
    }
    a.model = model(a.core, a.m);
    a.phi = row_map(a.model, maps);
    if (!a.phi.is_iso()) throw std::logic_error("model of a module is not isomorphic to it");
    return a;
  }

  TopLayer top(const Module& m, const Counts& extra) const {
    TopLayer tl;
    tl.mult.assign(ns, 0);
    std::vector<Module> parts;
    std::vector<ModuleMap> canon;
    std::vector<std::vector<ModuleMap>> dirs;
    for (int si : order) {
      StableHom h(m, s.modules[si]);
      std::vector<ModuleMap> pb;
      for (int i = 0; i < h.projective_subspace().dim(); ++i) pb.push_back(h.hom().combine(h.projective_subspace().basis_vec(i)));
      const int e = extra.empty() ? 0 : extra[si];
      for (int j = 0; j < h.dim() + e; ++j) {
        parts.push_back(s.modules[si]);
        tl.order.push_back(si);
        canon.push_back(j < h.dim() ? h[j] : zero_map(m, s.modules[si]));
        dirs.push_back(pb);
      }
      tl.mult[si] = h.dim() + e;
    }
    if (parts.empty()) {
      if (!m.is_zero()) throw NoSurjectionInCoset("stable head is zero", true);
      tl.x = Sum{Module::zero(alg), {}, {}};
      tl.f = zero_map(m, tl.x.module);
      tl.kernel = kernel_of(tl.f);
      tl.exhaustive = true;
      return tl;
    }
    tl.x = direct_sum(parts);
    for (int v = 0; v < nv; ++v)
      if (tl.x.module.dim(v) > m.dim(v)) throw NoSurjectionInCoset("stable head larger than the module", true);
    const Field& f = m.field();
    Matrix f0(f, tl.x.module.dim(), m.dim());
    std::vector<Matrix> directions;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      f0 = f0 + compose(tl.x.inj[k], canon[k]).m;
      for (const auto& p : dirs[k]) directions.push_back(compose(tl.x.inj[k], p).m);
    }
    {
      // f is onto iff M -> top X is; every map in the coset kills the common kernel.
      Quotient tx = stabrecon::top(tl.x.module);
      Matrix all = tx.proj.m * f0;
      for (const auto& d : directions) all = vstack(all, tx.proj.m * d);
      if (rank(all) < tx.quot.dim())
        throw NoSurjectionInCoset("common kernel too large for a surjection", true);
    }
    CosetSearchOptions co;
    co.seed = opts.seed;
    co.random_retries = opts.random_retries;
    co.target_rank = tl.x.module.dim();
    CosetSearchResult r = coset_rank_maximize(f0, directions, co);
    tl.exhaustive = r.exhaustive;
    if (r.rank < tl.x.module.dim()) throw NoSurjectionInCoset("no surjection in the stable class", r.exhaustive);
    tl.f = ModuleMap(m, tl.x.module, r.best);
    tl.kernel = kernel_of(tl.f);
    return tl;
  }

  // Iterated top layers; second = false when a stall was not certified.
  std::pair<std::optional<Filtration>, bool> greedy(const Module& m) const {
    Filtration fl{m, {graded_full(m)}, {}};
    Module cur = m;
    ModuleMap incl = identity_map(m);
    while (!cur.is_zero()) {
      TopLayer tl;
      try {
        tl = top(cur, {});
      } catch (const NoSurjectionInCoset& e) {
        return {std::nullopt, e.exhaustive};
      }
      incl = compose(incl, tl.kernel.incl);
      cur = tl.kernel.sub;
      fl.chain.push_back(image_of(incl));
      fl.mult.push_back(tl.mult);
    }
    return {fl, true};
  }

  const std::pair<std::optional<Filtration>, bool>& greedy_model(int core, const Counts& m) {
    auto key = std::make_pair(core, m);
    auto it = greedy_memo.find(key);
    if (it != greedy_memo.end()) return it->second;
    auto r = greedy(model(core, m).module);
    return greedy_memo.emplace(key, std::move(r)).first->second;
  }

  Decision proj_filt(const Counts& m) {
    if (total(m) == 0) return {true, true};
    auto it = proj_memo.find(m);
    if (it != proj_memo.end()) return it->second;
    Decision d{false, true};
    for (int si = 0; si < ns && !d.ok; ++si) {
      const Counts& c = cover_mult[si];
      if (total(c) == 0 || !leq(c, m)) continue;
      Decision r = filt(omega_core[si], minus(m, c));
      if (r.ok) d = {true, true};
      else d.certain = d.certain && r.certain;
    }
    proj_memo[m] = d;
    return d;
  }

  // The split M = N (+) P used to filter model(core, m), or nullopt.
  std::optional<Counts> filt_split(int core, const Counts& m, bool& certain) {
    certain = true;
    for (const Counts& mp : below(m, proj_dim)) {
      Decision p = proj_filt(minus(m, mp));
      if (!p.ok) {
        certain = certain && p.certain;
        continue;
      }
      const auto& g = greedy_model(core, mp);
      if (g.first) return mp;
      certain = certain && g.second;
    }
    return std::nullopt;
  }

  Decision filt(int core, const Counts& m) {
    auto key = std::make_pair(core, m);
    auto it = filt_memo.find(key);
    if (it != filt_memo.end()) return it->second;
    bool certain = true;
    Decision d;
    d.ok = filt_split(core, m, certain).has_value();
    d.certain = d.ok || certain;
    filt_memo[key] = d;
    return d;
  }

  Decision remainder(int core, const Counts& m) {
    Decision d{false, true};
    for (const Counts& mp : below(m, proj_dim)) {
      if (mp == m) continue;
      Decision r = filt(core, mp);
      if (r.ok) return {true, true};
      d.certain = d.certain && r.certain;
    }
    return d;
  }

  Filtration build(int core, const Counts& m) {
    bool certain = true;
    auto mp = filt_split(core, m, certain);
    if (!mp) throw std::logic_error("build called on a module that is not filtrable");
    const Filtration fn = *greedy_model(core, *mp).first;
    const Counts mq = minus(m, *mp);
    Filtration fp = build_proj(mq);
    Sum big = model(core, m);
    Sum sn = model(core, *mp), sp = model(zero_core, mq);
    ModuleMap en = embed(sn, *mp, big, m, Counts(nv, 0), big.inj[0]);
    ModuleMap ep = embed(sp, mq, big, m, *mp, zero_map(cores[zero_core], big.module));
    const int rn = fn.length(), rp = fp.length(), r = std::max(rn, rp);
    Filtration out{big.module, {}, {}};
    for (int i = 0; i <= r; ++i)
      out.chain.push_back(graded_sum(image_of(en, fn.chain[std::min(i, rn)]), image_of(ep, fp.chain[std::min(i, rp)])));
    for (int i = 0; i < r; ++i) {
      Counts mu(ns, 0);
      if (i < rn) mu = plus(mu, fn.mult[i]);
      if (i < rp) mu = plus(mu, fp.mult[i]);
      out.mult.push_back(mu);
    }
    return out;
  }

  Filtration build_proj(const Counts& m) {
    Sum p = model(zero_core, m);
    if (total(m) == 0) return Filtration{p.module, {graded_full(p.module)}, {}};
    for (int si = 0; si < ns; ++si) {
      const Counts& c = cover_mult[si];
      if (total(c) == 0 || !leq(c, m)) continue;
      const Counts rest = minus(m, c);
      if (!filt(omega_core[si], rest).ok) continue;
      // The cover of S goes onto the first copies of each P_v.
      std::vector<Module> parts;
      std::vector<ModuleMap> to_p;
      Counts used(nv, 0);
      for (int v : cover[si].vertices) {
        parts.push_back(projective(alg, v));
        to_p.push_back(p.inj[model_index(m, v, used[v]++)]);
      }
      ModuleMap cover_to_p = row_map(direct_sum(parts), to_p);
      Sum k = model(omega_core[si], rest);
      ModuleMap kappa = embed(k, rest, p, m, c, compose(cover_to_p, omega[si].incl));
      Filtration fk = build(omega_core[si], rest);
      Filtration out{p.module, {graded_full(p.module)}, {}};
      Counts unit(ns, 0);
      unit[si] = 1;
      out.mult.push_back(unit);
      for (const Graded& g : fk.chain) out.chain.push_back(image_of(kappa, g));
      for (const auto& mu : fk.mult) out.mult.push_back(mu);
      return out;
    }
    throw std::logic_error("build_proj called on a projective that is not filtrable");
  }

  std::vector<Counts> extra_layers(const Module& m, const Counts& head) const {
    Counts topm = stabrecon::top(m).quot.dims();
    Counts cap = topm;
    int dim_left = m.dim();
    for (int si = 0; si < ns; ++si) {
      for (int v = 0; v < nv; ++v) cap[v] -= head[si] * top_dims[si][v];
      dim_left -= head[si] * s.modules[si].dim();
    }
    std::vector<Counts> out;
    Counts y(ns, 0);
    auto rec = [&](auto&& self, int si, Counts room, int left) -> void {
      if (si == ns) {
        out.push_back(y);
        return;
      }
      for (int k = 0;; ++k) {
        bool fits = left >= 0;
        for (int v = 0; v < nv; ++v) fits = fits && room[v] >= 0;
        if (!fits) break;
        y[si] = k;
        self(self, si + 1, room, left);
        for (int v = 0; v < nv; ++v) room[v] -= top_dims[si][v];
        left -= s.modules[si].dim();
        if (total(top_dims[si]) == 0) break;
      }
      y[si] = 0;
    };
    for (int v = 0; v < nv; ++v)
      if (cap[v] < 0) return out;
    rec(rec, 0, cap, dim_left);
    std::vector<int> w;
    for (const Module& x : s.modules) w.push_back(x.dim());
    std::stable_sort(out.begin(), out.end(), [&](const Counts& a, const Counts& b) {
      int sa = 0, sb = 0;
      for (int i = 0; i < ns; ++i) {
        sa += a[i] * w[i];
        sb += b[i] * w[i];
      }
      return sa != sb ? sa < sb : a < b;
    });
    return out;
  }

  std::vector<Filtration> radical(const Module& m, bool first_only) {
    Analysis a = analyze(m);
    Decision d = filt(a.core, a.m);
    if (!d.ok) {
      if (!d.certain) throw Undecided("filtrability undecided (coset search not exhaustive)");
      return {};
    }
    Decision r = remainder(a.core, a.m);
    if (!r.ok && !r.certain) throw Undecided("projective remainder undecided");
    if (!r.ok) {
      auto g = greedy(m);
      if (!g.first) throw Undecided("greedy stalled on a filtrable module without projective remainder");
      return {*g.first};
    }
    Counts head(ns, 0);
    for (int si = 0; si < ns; ++si) head[si] = StableHom(m, s.modules[si]).dim();
    std::vector<Filtration> out;
    bool certain = true;
    for (const Counts& y : extra_layers(m, head)) {
      TopLayer tl;
      try {
        tl = top(m, y);
      } catch (const NoSurjectionInCoset& e) {
        certain = certain && e.exhaustive;
        continue;
      }
      Analysis ak = analyze(tl.kernel.sub);
      Decision kf = filt(ak.core, ak.m);
      if (!kf.ok) {
        certain = certain && kf.certain;
        continue;
      }
      Decision kr = remainder(ak.core, ak.m);
      if (kr.ok || !kr.certain) {
        certain = certain && kr.ok;
        continue;
      }
      auto g = greedy(tl.kernel.sub);
      if (!g.first) throw Undecided("greedy stalled on a filtrable module without projective remainder");
      out.push_back(concat(m, {graded_full(m), image_of(tl.kernel.incl)}, {tl.mult}, *g.first, tl.kernel.incl));
      if (first_only) break;
    }
    if (out.empty())
      throw Undecided(certain ? "no admissible first layer found for a filtrable module"
                              : "first layer search undecided (coset search not exhaustive)");
    return out;
  }
};

FiltrationEngine::FiltrationEngine(SimpleSet s, FiltrationOptions opts) : impl_(std::make_unique<Impl>()) {
  Impl& I = *impl_;
  if (s.modules.empty()) throw std::invalid_argument("empty family");
  I.s = std::move(s);
  I.opts = std::move(opts);
  I.alg = I.s.modules[0].algebra_ptr();
  require_self_injective(*I.alg);
  I.nv = I.alg->num_vertices();
  I.ns = static_cast<int>(I.s.modules.size());
  if (I.opts.order.empty()) {
    I.order.resize(I.ns);
    std::iota(I.order.begin(), I.order.end(), 0);
  } else {
    I.order = I.opts.order;
    std::vector<int> chk = I.order;
    std::sort(chk.begin(), chk.end());
    for (int i = 0; i < I.ns; ++i)
      if (static_cast<int>(chk.size()) != I.ns || chk[i] != i) throw std::invalid_argument("order is not a permutation");
  }
  for (int v = 0; v < I.nv; ++v) I.proj_dim.push_back(projective(I.alg, v).dim());
  I.zero_core = I.intern(Module::zero(I.alg));
  for (int si = 0; si < I.ns; ++si) {
    const Module& x = I.s.modules[si];
    if (x.algebra_ptr() != I.alg) throw std::invalid_argument("family members over different algebras");
    Cover c = projective_cover(x);
    Counts cm(I.nv, 0);
    for (int v : c.vertices) ++cm[v];
    Embedded om = kernel_of(c.map);
    if (!strip_projectives(om.sub, I.opts.decompose).proj_part.is_zero())
      throw std::invalid_argument("family member " + I.s.labels[si] + " has a projective summand");
    I.cover.push_back(c);
    I.cover_mult.push_back(cm);
    I.omega.push_back(om);
    I.omega_core.push_back(I.intern(om.sub));
    I.top_dims.push_back(top(x).quot.dims());
  }
}

FiltrationEngine::~FiltrationEngine() = default;

const SimpleSet& FiltrationEngine::family() const { return impl_->s; }
const FiltrationOptions& FiltrationEngine::options() const { return impl_->opts; }

TopLayer FiltrationEngine::top_layer(const Module& m) const { return impl_->top(m, {}); }

bool FiltrationEngine::is_filtrable(const Module& m) {
  auto a = impl_->analyze(m);
  Decision d = impl_->filt(a.core, a.m);
  if (!d.ok && !d.certain) throw Undecided("filtrability undecided (coset search not exhaustive)");
  return d.ok;
}

std::optional<Filtration> FiltrationEngine::find_filtration(const Module& m) {
  if (!is_filtrable(m)) return std::nullopt;
  auto a = impl_->analyze(m);
  return push_forward(impl_->build(a.core, a.m), a.phi);
}

bool FiltrationEngine::has_projective_remainder(const Module& m) {
  auto a = impl_->analyze(m);
  if (!impl_->filt(a.core, a.m).ok) throw std::invalid_argument("module is not filtrable");
  Decision d = impl_->remainder(a.core, a.m);
  if (!d.ok && !d.certain) throw Undecided("projective remainder undecided");
  return d.ok;
}

Remainder FiltrationEngine::strip_remainder(const Module& m) {
  Impl& I = *impl_;
  auto a = I.analyze(m);
  if (!I.filt(a.core, a.m).ok) throw std::invalid_argument("module is not filtrable");
  for (const Counts& mp : below(a.m, I.proj_dim)) {
    Decision d = I.filt(a.core, mp);
    if (!d.ok) {
      if (!d.certain) throw Undecided("projective remainder undecided");
      continue;
    }
    const Counts mq = minus(a.m, mp);
    Sum sn = I.model(a.core, mp), sp = I.model(I.zero_core, mq);
    ModuleMap en = I.embed(sn, mp, a.model, a.m, Counts(I.nv, 0), a.model.inj[0]);
    ModuleMap ep = I.embed(sp, mq, a.model, a.m, mp, zero_map(I.cores[I.zero_core], a.model.module));
    return Remainder{Embedded{sn.module, compose(a.phi, en)}, Embedded{sp.module, compose(a.phi, ep)}, mq};
  }
  throw std::logic_error("filtrable module without a filtrable part");
}

std::optional<Filtration> FiltrationEngine::s_radical_filtration(const Module& m) {
  auto all = impl_->radical(m, true);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Filtration> FiltrationEngine::all_s_radical_filtrations(const Module& m) {
  return impl_->radical(m, false);
}

Sum FiltrationEngine::padded(const Module& m, const std::vector<int>& q) const {
  std::vector<Module> parts{m};
  for (int v = 0; v < impl_->nv; ++v)
    for (int c = 0; c < q[v]; ++c) parts.push_back(projective(impl_->alg, v));
  return direct_sum(parts);
}

std::optional<int> support_obstruction(const Module& m, const SimpleSet& s) {
  for (int v = 0; v < m.algebra().num_vertices(); ++v) {
    if (m.dim(v) == 0) continue;
    bool covered = false;
    for (const auto& x : s.modules) covered = covered || x.dim(v) > 0;
    if (!covered) return v;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> FiltrationEngine::minimal_paddings(const Module& m, bool least_only) {
  Impl& I = *impl_;
  if (auto v = support_obstruction(m, I.s))
    throw NotFiltrable("no padding exists: vertex " + m.algebra().presentation().vertices[*v] +
                       " is outside the support of the family");
  auto a = I.analyze(m);
  const int cap = I.opts.padding_cap_factor * I.alg->dim();
  Counts bound(I.nv);
  for (int v = 0; v < I.nv; ++v) bound[v] = cap / I.proj_dim[v];
  std::vector<Counts> found;
  int best = -1;
  bool certain = true;
  for (const Counts& q : below(bound, I.proj_dim)) {
    int dq = 0;
    for (int v = 0; v < I.nv; ++v) dq += q[v] * I.proj_dim[v];
    if (dq > cap) continue;
    if (least_only && best >= 0 && dq > best) break;
    bool dominated = false;
    for (const Counts& f : found) dominated = dominated || leq(f, q);
    if (dominated) continue;
    Decision d = I.filt(a.core, plus(a.m, q));
    if (d.ok) {
      found.push_back(q);
      if (best < 0) best = dq;
    } else {
      certain = certain && d.certain;
    }
  }
  if (found.empty()) {
    if (!certain) throw Undecided("padding search undecided (coset search not exhaustive)");
    throw PaddingCapExceeded("no projective padding up to dimension " + std::to_string(cap));
  }
  return found;
}

RadicalCertificate FiltrationEngine::verify_s_radical(const Filtration& f) {
  Impl& I = *impl_;
  RadicalCertificate c;
  auto flag = [&](int i, std::string why) {
    if (!c.violation) c.violation = Violation{i, -1, std::move(why)};
  };
  for (int i = 0; i < f.length(); ++i) {
    Embedded e = f.level(i);
    Quotient q = quotient(e.sub, preimage_of(e.incl, f.chain[i + 1]));
    bool layer_ok = add_decomposition(q.quot, I.s, I.opts.decompose).has_value();
    bool surj = true, inj = true;
    for (int si = 0; si < I.ns; ++si) {
      StableHom hl(q.quot, I.s.modules[si]), hm(e.sub, I.s.modules[si]);
      int r = 0;
      if (hl.dim() > 0 && hm.dim() > 0) {
        std::vector<Vec> rows;
        for (int j = 0; j < hl.dim(); ++j) rows.push_back(hm.coordinates(compose(hl[j], q.proj)));
        r = rank(Matrix::from_rows(e.sub.field(), hm.dim(), rows));
      }
      surj = surj && r == hm.dim();
      inj = inj && r == hl.dim();
    }
    bool no_rem = false;
    auto a = I.analyze(e.sub);
    if (I.filt(a.core, a.m).ok) {
      Decision d = I.remainder(a.core, a.m);
      if (!d.ok && !d.certain) throw Undecided("projective remainder undecided");
      no_rem = !d.ok;
    }
    c.layer_ok.push_back(layer_ok);
    c.surjective.push_back(surj);
    c.injective.push_back(inj);
    c.no_remainder.push_back(no_rem);
    const std::string lv = "level " + std::to_string(i) + ": ";
    if (!layer_ok) flag(i, lv + "layer not in add(S)");
    if (!surj) flag(i, lv + "Hom_stab(layer, S) -> Hom_stab(M_i, S) not surjective");
    if (i > 0 && !inj) flag(i, lv + "Hom_stab(layer, S) -> Hom_stab(M_i, S) not injective");
    if (i > 0 && !no_rem) flag(i, lv + "M_i has a projective remainder");
  }
  return c;
}

}  // namespace stabrecon
