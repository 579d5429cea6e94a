#include "stabrecon/complex.hpp"

#include <algorithm>

namespace stabrecon {

Module Complex::term(int n) const {
  if (n < lo || n > hi()) return Module::zero(alg);
  return terms[n - lo];
}

ModuleMap Complex::d(int n) const {
  if (n >= lo && n < hi()) return diff[n - lo];
  return zero_map(term(n), term(n + 1));
}

int Complex::total_dim() const {
  int s = 0;
  for (const auto& t : terms) s += t.dim();
  return s;
}

bool is_complex(const Complex& c) {
  if (c.terms.empty()) return c.diff.empty();
  if (c.diff.size() + 1 != c.terms.size()) return false;
  for (std::size_t k = 0; k < c.diff.size(); ++k) {
    const ModuleMap& f = c.diff[k];
    if (f.src.dims() != c.terms[k].dims() || f.tgt.dims() != c.terms[k + 1].dims()) return false;
    if (!is_homomorphism(f.src, f.tgt, f.m)) return false;
    if (k + 1 < c.diff.size() && !compose(c.diff[k + 1], f).is_zero()) return false;
  }
  return true;
}

Complex make_complex(const AlgebraPtr& a, int lo, std::vector<Module> terms, std::vector<ModuleMap> diff) {
  Complex c{a, lo, std::move(terms), std::move(diff)};
  if (!is_complex(c)) throw std::invalid_argument("not a complex");
  return c;
}

Complex zero_complex(const AlgebraPtr& a) { return Complex{a, 0, {}, {}}; }

Complex stalk(const Module& m, int n) { return Complex{m.algebra_ptr(), n, {m}, {}}; }

Complex shift(const Complex& c, int k) {
  Complex out{c.alg, c.lo - k, c.terms, {}};
  const Elem s = k % 2 == 0 ? Elem(1) : c.alg->field().neg(1);
  for (const auto& f : c.diff) out.diff.push_back(scaled(f, s));
  return out;
}

Complex trim(const Complex& c) {
  int a = 0, b = static_cast<int>(c.terms.size()) - 1;
  while (a <= b && c.terms[a].is_zero()) ++a;
  while (b >= a && c.terms[b].is_zero()) --b;
  if (a > b) return zero_complex(c.alg);
  Complex out{c.alg, c.lo + a, {}, {}};
  for (int k = a; k <= b; ++k) out.terms.push_back(c.terms[k]);
  for (int k = a; k < b; ++k) out.diff.push_back(c.diff[k]);
  return out;
}

Complex direct_sum(const std::vector<Complex>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum of no complexes");
  AlgebraPtr a = parts[0].alg;
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& p : parts)
    if (!p.empty()) {
      lo = any ? std::min(lo, p.lo) : p.lo;
      hi = any ? std::max(hi, p.hi()) : p.hi();
      any = true;
    }
  if (!any) return zero_complex(a);
  auto sum_at = [&](int n) {
    std::vector<Module> ts;
    for (const auto& p : parts) ts.push_back(p.term(n));
    return direct_sum(ts);
  };
  Complex out{a, lo, {}, {}};
  std::vector<Sum> sums;
  for (int n = lo; n <= hi; ++n) {
    sums.push_back(sum_at(n));
    out.terms.push_back(sums.back().module);
  }
  const std::size_t np = parts.size();
  for (int n = lo; n < hi; ++n) {
    std::vector<std::vector<std::optional<ModuleMap>>> blocks(np, std::vector<std::optional<ModuleMap>>(np));
    for (std::size_t i = 0; i < np; ++i) blocks[i][i] = parts[i].d(n);
    out.diff.push_back(block_map(sums[n - lo], sums[n - lo + 1], blocks));
  }
  return out;
}

bool all_projective(const Complex& c) {
  for (const auto& t : c.terms)
    if (!t.is_zero() && !is_projective(t)) return false;
  return true;
}

Quotient cohomology(const Complex& c, int n) {
  Embedded z = kernel_of(c.d(n));
  Graded b = image_of(c.d(n - 1));
  return quotient(z.sub, preimage_of(z.incl, b));
}

int cohomology_dim(const Complex& c, int n) {
  const ModuleMap dn = c.d(n), dp = c.d(n - 1);
  return c.term(n).dim() - rank(dn.m) - rank(dp.m);
}

std::vector<int> cohomology_dims(const Complex& c) {
  std::vector<int> out;
  for (int n = c.lo; n <= c.hi(); ++n) out.push_back(cohomology_dim(c, n));
  return out;
}

bool is_acyclic(const Complex& c) {
  for (int n = c.lo; n <= c.hi(); ++n)
    if (cohomology_dim(c, n) != 0) return false;
  return true;
}

std::optional<int> concentrated_degree(const Complex& c) {
  std::optional<int> deg;
  for (int n = c.lo; n <= c.hi(); ++n)
    if (cohomology_dim(c, n) != 0) {
      if (deg) return std::nullopt;
      deg = n;
    }
  return deg;
}

ModuleMap ChainMap::at(int n) const {
  if (n >= src.lo && n <= src.hi()) return f[n - src.lo];
  return zero_map(src.term(n), tgt.term(n));
}

bool is_chain_map(const ChainMap& f) {
  if (f.f.size() != f.src.terms.size()) return false;
  const int lo = std::min(f.src.lo, f.tgt.lo) - 1, hi = std::max(f.src.hi(), f.tgt.hi());
  for (int n = lo; n <= hi; ++n) {
    ModuleMap a = compose(f.at(n + 1), f.src.d(n)), b = compose(f.tgt.d(n), f.at(n));
    if (a.m != b.m) return false;
  }
  return true;
}

Complex nakayama_complex(const Complex& c) {
  Complex out{c.alg, c.lo, {}, {}};
  for (const auto& t : c.terms) out.terms.push_back(nakayama_module(t));
  for (const auto& f : c.diff) out.diff.push_back(nakayama_map(f));
  return out;
}

}  // namespace stabrecon

namespace stabrecon {

HomComplex::HomComplex(Complex x, Complex y) : x_(std::move(x)), y_(std::move(y)) {}

const std::vector<HomComplex::Block>& HomComplex::blocks(int n) const {
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  std::vector<Block> out;
  int off = 0;
  if (!x_.empty() && !y_.empty())
    for (int k = x_.lo; k <= x_.hi(); ++k) {
      if (k + n < y_.lo || k + n > y_.hi()) continue;
      if (x_.term(k).is_zero() || y_.term(k + n).is_zero()) continue;
      HomSpace h(x_.term(k), y_.term(k + n));
      if (h.dim() == 0) continue;
      const int d = h.dim();
      out.push_back(Block{k, std::move(h), off});
      off += d;
    }
  return cache_.emplace(n, std::move(out)).first->second;
}

int HomComplex::dim(int n) const {
  int s = 0;
  for (const auto& b : blocks(n)) s += b.h.dim();
  return s;
}

std::vector<std::pair<int, ModuleMap>> HomComplex::basis(int n) const {
  std::vector<std::pair<int, ModuleMap>> out;
  for (const auto& b : blocks(n))
    for (const auto& g : b.h.basis()) out.push_back({b.k, g});
  return out;
}

Matrix HomComplex::differential(int n) const {
  const Field& f = x_.alg->field();
  const auto& src = blocks(n);
  const auto& tgt = blocks(n + 1);
  const int rows = dim(n + 1), cols = dim(n);
  Matrix out(f, rows, cols);
  auto find = [&](int k) -> const Block* {
    for (const auto& b : tgt)
      if (b.k == k) return &b;
    return nullptr;
  };
  // D g = d_Y g - (-1)^n g d_X
  const Elem sign = n % 2 == 0 ? f.neg(1) : Elem(1);
  for (const auto& b : src)
    for (int i = 0; i < b.h.dim(); ++i) {
      const ModuleMap& g = b.h[i];
      const int col = b.offset + i;
      if (const Block* t = find(b.k)) {
        Vec c = t->h.coordinates(compose(y_.d(b.k + n), g));
        for (std::size_t r = 0; r < c.size(); ++r) out(t->offset + static_cast<int>(r), col) = c[r];
      }
      if (const Block* t = find(b.k - 1)) {
        Vec c = t->h.coordinates(scaled(compose(g, x_.d(b.k - 1)), sign));
        for (std::size_t r = 0; r < c.size(); ++r)
          out(t->offset + static_cast<int>(r), col) = f.add(out(t->offset + static_cast<int>(r), col), c[r]);
      }
    }
  return out;
}

int HomComplex::cohomology_dim(int n) const {
  const int d = dim(n);
  if (d == 0) return 0;
  return d - rank(differential(n)) - rank(differential(n - 1));
}

Subspace HomComplex::cycles(int n) const {
  const Field& f = x_.alg->field();
  Matrix d = differential(n);
  if (d.rows() == 0) return Subspace::full(f, dim(n));
  return kernel_basis(d);
}

Subspace HomComplex::boundaries(int n) const {
  const Field& f = x_.alg->field();
  Matrix d = differential(n - 1);
  if (d.cols() == 0 || d.rows() == 0) return Subspace(f, dim(n));
  return Subspace::span(d.transpose());
}

ChainMap HomComplex::chain_map(const Vec& coords) const {
  ChainMap out{x_, y_, {}};
  for (int k = x_.lo; k <= x_.hi(); ++k) out.f.push_back(zero_map(x_.term(k), y_.term(k)));
  for (const auto& b : blocks(0)) {
    Vec c(coords.begin() + b.offset, coords.begin() + b.offset + b.h.dim());
    out.f[b.k - x_.lo] = b.h.combine(c);
  }
  return out;
}

Resolution projective_resolution(const Complex& x, int lowest) {
  Resolution res;
  res.p = zero_complex(x.alg);
  res.pi = ChainMap{res.p, x, {}};
  if (x.empty()) return res;
  const int top = x.hi();
  std::vector<Module> p;        // p[top - i] = P^i
  std::vector<ModuleMap> dp;    // dp[top - i] = d^i : P^i -> P^{i+1}
  std::vector<ModuleMap> pi;    // pi[top - i] = P^i -> X^i
  Module zero = Module::zero(x.alg);
  auto pterm = [&](int i) { return i > top || top - i >= static_cast<int>(p.size()) ? zero : p[top - i]; };
  int i = top;
  for (; i >= lowest; --i) {
    Module p1 = pterm(i + 1), p2 = pterm(i + 2);
    ModuleMap d1 = i + 1 <= top ? dp[top - i - 1] : zero_map(p1, p2);
    ModuleMap pi1 = i + 1 <= top ? pi[top - i - 1] : zero_map(p1, x.term(i + 1));
    Sum c = direct_sum({p1, x.term(i)});
    Sum t = direct_sum({p2, x.term(i + 1)});
    ModuleMap delta = block_map(c, t, {{d1, std::nullopt}, {pi1, x.d(i)}});
    Embedded z = kernel_of(delta);
    Graded b = image_of(compose(c.inj[1], x.d(i - 1)));
    Quotient q = quotient(z.sub, preimage_of(z.incl, b));
    if (q.quot.is_zero()) {
      if (i < x.lo) break;
      p.push_back(zero);
      dp.push_back(zero_map(zero, p1));
      pi.push_back(zero_map(zero, x.term(i)));
      continue;
    }
    Cover cv = projective_cover(q.quot);
    auto h = lift_through(cv, cv.map, q.proj);
    if (!h) throw std::logic_error("lift from projective cover failed");
    ModuleMap phi = compose(z.incl, *h);
    p.push_back(cv.p);
    dp.push_back(scaled(compose(c.proj[0], phi), x.alg->field().neg(1)));
    pi.push_back(compose(c.proj[1], phi));
  }
  const int n = static_cast<int>(p.size());
  Complex out{x.alg, top - n + 1, {}, {}};
  ChainMap m{out, x, {}};
  for (int k = n - 1; k >= 0; --k) {
    out.terms.push_back(p[k]);
    m.f.push_back(pi[k]);
    if (k > 0) out.diff.push_back(dp[k]);
  }
  m.src = out;
  res.p = out;
  res.pi = m;
  return res;
}

}  // namespace stabrecon

namespace stabrecon {

std::vector<int> derived_hom_dims(const Complex& x, const Complex& y, int a, int b, int extra_depth) {
  std::vector<int> out(std::max(0, b - a + 1), 0);
  Complex tx = trim(x), ty = trim(y);
  if (tx.empty() || ty.empty()) return out;
  Complex src = tx;
  const bool selfinj = tx.alg->self_injectivity().self_injective;
  if (!all_projective(tx) && !(selfinj && all_projective(ty)))
    src = projective_resolution(tx, std::min(tx.lo, ty.lo - b - 2 - extra_depth)).p;
  HomComplex h(src, ty);
  for (int n = a; n <= b; ++n) out[n - a] = h.cohomology_dim(n);
  return out;
}

namespace {

// Cohomology of a complex in degree n, with coordinates for cycles.
struct CohomologyBasis {
  std::vector<Vec> reps;
  Matrix solver;  // columns: reps then boundary basis
  int nb = 0;

  CohomologyBasis(const Complex& c, int n) {
    const Field& f = c.alg->field();
    const int dim = c.term(n).dim();
    ModuleMap dn = c.d(n), dp = c.d(n - 1);
    Subspace z = dn.m.rows() == 0 ? Subspace::full(f, dim) : kernel_basis(dn.m);
    Subspace bsp = dp.m.cols() == 0 || dim == 0 ? Subspace(f, dim) : Subspace::span(dp.m.transpose());
    Subspace acc = bsp;
    for (int r = 0; r < z.dim(); ++r) {
      Vec v = z.basis_vec(r);
      if (acc.contains(v)) continue;
      reps.push_back(v);
      acc = acc + Subspace::span(Matrix::row(f, v));
    }
    nb = bsp.dim();
    solver = Matrix(f, dim, static_cast<int>(reps.size()) + nb);
    for (std::size_t k = 0; k < reps.size(); ++k)
      for (int r = 0; r < dim; ++r) solver(r, static_cast<int>(k)) = reps[k][r];
    for (int k = 0; k < nb; ++k)
      for (int r = 0; r < dim; ++r) solver(r, static_cast<int>(reps.size()) + k) = bsp.basis_vec(k)[r];
  }

  Vec coords(const Vec& cycle) const {
    auto x = solve_linear(solver, cycle);
    if (!x) throw std::logic_error("vector is not a cycle");
    return Vec(x->begin(), x->begin() + static_cast<long>(reps.size()));
  }
};

}  // namespace

DerivedIso derived_isomorphic(const Complex& x, const Complex& y, std::uint64_t seed) {
  Complex tx = trim(x), ty = trim(y);
  DerivedIso res;
  const int lo = std::min(tx.empty() ? 0 : tx.lo, ty.empty() ? 0 : ty.lo);
  const int hi = std::max(tx.empty() ? -1 : tx.hi(), ty.empty() ? -1 : ty.hi());
  std::vector<int> degs;
  for (int n = lo; n <= hi; ++n) {
    int a = tx.empty() ? 0 : cohomology_dim(tx, n), b = ty.empty() ? 0 : cohomology_dim(ty, n);
    if (a != b) return res;
    if (a > 0) degs.push_back(n);
  }
  if (degs.empty()) {
    res.iso = true;
    return res;
  }
  if (tx.terms.size() == 1 && ty.terms.size() == 1 && tx.lo == ty.lo) {
    res.iso = find_isomorphism(tx.terms[0], ty.terms[0]).has_value();
    return res;
  }
  Complex p = all_projective(tx) ? tx : projective_resolution(tx, lo - 2).p;
  HomComplex h(p, ty);
  Subspace z = h.cycles(0);
  if (z.dim() == 0) return res;
  std::vector<CohomologyBasis> hp, hy;
  int total = 0;
  for (int n : degs) {
    hp.emplace_back(p, n);
    hy.emplace_back(ty, n);
    total += static_cast<int>(hp.back().reps.size());
  }
  const Field& f = tx.alg->field();
  std::vector<Matrix> dirs;
  for (int r = 0; r < z.dim(); ++r) {
    ChainMap cm = h.chain_map(z.basis_vec(r));
    Matrix m(f, total, total);
    int off = 0;
    for (std::size_t k = 0; k < degs.size(); ++k) {
      ModuleMap fn = cm.at(degs[k]);
      for (std::size_t c = 0; c < hp[k].reps.size(); ++c) {
        Vec col = hy[k].coords(fn.m.apply(hp[k].reps[c]));
        for (std::size_t rr = 0; rr < col.size(); ++rr) m(off + static_cast<int>(rr), off + static_cast<int>(c)) = col[rr];
      }
      off += static_cast<int>(hp[k].reps.size());
    }
    dirs.push_back(m);
  }
  CosetSearchOptions co;
  co.seed = seed;
  co.target_rank = total;
  CosetSearchResult r = coset_rank_maximize(Matrix(f, total, total), dirs, co);
  res.iso = r.rank == total;
  res.certain = res.iso || r.exhaustive;
  return res;
}

}  // namespace stabrecon
