#include "stabrecon/module.hpp"

#include <algorithm>
#include <random>

namespace stabrecon {

Module::Module(AlgebraPtr a, std::vector<int> dims, std::vector<Matrix> action) {
  if (!a) throw std::invalid_argument("module without algebra");
  if (static_cast<int>(dims.size()) != a->num_vertices()) throw std::invalid_argument("dimension vector has the wrong length");
  if (static_cast<int>(action.size()) != a->num_arrows()) throw std::invalid_argument("one action matrix per arrow required");
  auto d = std::make_shared<Data>();
  d->alg = std::move(a);
  d->dims = std::move(dims);
  const Field& f = d->alg->field();
  for (int v : d->dims) {
    if (v < 0) throw std::invalid_argument("negative dimension");
    d->offsets.push_back(d->total);
    d->total += v;
  }
  for (int ar = 0; ar < d->alg->num_arrows(); ++ar) {
    const Arrow& arr = d->alg->arrow(ar);
    Matrix m = action[ar];
    if (m.rows() != d->dims[arr.tgt] || m.cols() != d->dims[arr.src])
      throw std::invalid_argument("action matrix of " + arr.name + " has the wrong shape");
    if (!m.field().valid()) m = Matrix(f, m.rows(), m.cols(), m.data());
    Matrix g(f, d->total, d->total);
    g.set_block(d->offsets[arr.tgt], d->offsets[arr.src], m);
    d->action.push_back(std::move(m));
    d->global.push_back(std::move(g));
  }
  d_ = std::move(d);
  for (const Relation& rel : algebra().presentation().relations) {
    Matrix sum(f, dim(), dim());
    for (const Term& t : rel) sum.axpy(t.coeff, path_action(algebra().arrow(t.path.front()).src, t.path));
    if (!sum.is_zero()) throw std::invalid_argument("action does not satisfy the relations");
  }
}

Module Module::zero(AlgebraPtr a) {
  std::vector<Matrix> act;
  for (int ar = 0; ar < a->num_arrows(); ++ar) act.emplace_back(a->field(), 0, 0);
  std::vector<int> dims(a->num_vertices(), 0);
  return Module(std::move(a), std::move(dims), std::move(act));
}

Matrix Module::path_action(int src, const Path& p) const {
  const Field& f = field();
  Matrix r(f, dim(), dim());
  if (p.empty()) {
    for (int i = 0; i < dim(src); ++i) r(offset(src) + i, offset(src) + i) = 1;
    return r;
  }
  // X_{a_n} ... X_{a_1} restricted to the source block
  Matrix cur = Matrix::identity(f, dim(src));
  int v = src;
  for (int a : p) {
    cur = action(a) * cur;
    v = algebra().arrow(a).tgt;
  }
  r.set_block(offset(v), offset(src), cur);
  return r;
}

Matrix Module::element_action(const Vec& x) const {
  Matrix r(field(), dim(), dim());
  for (int i = 0; i < algebra().dim(); ++i) {
    if (!x[i]) continue;
    const BasisPath& b = algebra().basis_path(i);
    r.axpy(x[i], path_action(b.src, b.arrows));
  }
  return r;
}

int Module::vertex_of(int coord) const {
  for (int v = static_cast<int>(d_->dims.size()) - 1; v >= 0; --v)
    if (coord >= d_->offsets[v] && d_->dims[v] > 0) return v;
  throw std::out_of_range("coordinate out of range");
}

Vec Module::vertex_part(const Vec& x, int v) const {
  Vec r(dim(), 0);
  for (int i = 0; i < dim(v); ++i) r[offset(v) + i] = x[offset(v) + i];
  return r;
}

ModuleMap::ModuleMap(Module s, Module t, Matrix mat) : src(std::move(s)), tgt(std::move(t)), m(std::move(mat)) {
  if (m.rows() != tgt.dim() || m.cols() != src.dim()) throw std::invalid_argument("map matrix has the wrong shape");
  if (!m.field().valid()) m = Matrix(src.field(), m.rows(), m.cols(), m.data());
}

Matrix ModuleMap::block(int v) const { return m.block(tgt.offset(v), src.offset(v), tgt.dim(v), src.dim(v)); }

ModuleMap identity_map(const Module& m) { return ModuleMap(m, m, Matrix::identity(m.field(), m.dim())); }
ModuleMap zero_map(const Module& s, const Module& t) { return ModuleMap(s, t, Matrix(s.field(), t.dim(), s.dim())); }

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (f.tgt.dims() != g.src.dims()) throw std::invalid_argument("maps are not composable");
  return ModuleMap(f.src, g.tgt, g.m * f.m);
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) { return ModuleMap(a.src, a.tgt, a.m + b.m); }
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) { return ModuleMap(a.src, a.tgt, a.m - b.m); }
ModuleMap scaled(const ModuleMap& a, Elem s) { return ModuleMap(a.src, a.tgt, a.m.scaled(s)); }

bool is_homomorphism(const Module& s, const Module& t, const Matrix& m) {
  if (m.rows() != t.dim() || m.cols() != s.dim()) return false;
  const int nv = s.algebra().num_vertices();
  for (int v = 0; v < nv; ++v)
    for (int w = 0; w < nv; ++w) {
      if (v == w) continue;
      for (int i = 0; i < t.dim(v); ++i)
        for (int j = 0; j < s.dim(w); ++j)
          if (m(t.offset(v) + i, s.offset(w) + j)) return false;
    }
  for (int a = 0; a < s.algebra().num_arrows(); ++a)
    if (t.global_action(a) * m != m * s.global_action(a)) return false;
  return true;
}

HomSpace::HomSpace(Module src, Module tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {
  const Algebra& A = src_.algebra();
  const Field& f = A.field();
  const int nv = A.num_vertices();
  std::vector<int> voff(nv + 1, 0);
  for (int v = 0; v < nv; ++v) voff[v + 1] = voff[v] + tgt_.dim(v) * src_.dim(v);
  nvars_ = voff[nv];
  // X^N_a F_s - F_t X^M_a = 0 for every arrow a: s -> t
  int neq = 0;
  for (int a = 0; a < A.num_arrows(); ++a) neq += tgt_.dim(A.arrow(a).tgt) * src_.dim(A.arrow(a).src);
  Matrix sys(f, neq, nvars_);
  int row = 0;
  for (int a = 0; a < A.num_arrows(); ++a) {
    const int s = A.arrow(a).src, t = A.arrow(a).tgt;
    const Matrix& xm = src_.action(a);  // dim M_t x dim M_s
    const Matrix& xn = tgt_.action(a);  // dim N_t x dim N_s
    const int ms = src_.dim(s), mt = src_.dim(t), ns = tgt_.dim(s), nt = tgt_.dim(t);
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < ms; ++j, ++row) {
        // (X^N F_s)[i][j] = sum_k xn[i][k] F_s[k][j]
        for (int k = 0; k < ns; ++k)
          if (xn(i, k)) sys(row, voff[s] + k * ms + j) = f.add(sys(row, voff[s] + k * ms + j), xn(i, k));
        // (F_t X^M)[i][j] = sum_k F_t[i][k] xm[k][j]
        for (int k = 0; k < mt; ++k)
          if (xm(k, j)) sys(row, voff[t] + i * mt + k) = f.sub(sys(row, voff[t] + i * mt + k), xm(k, j));
      }
  }
  space_ = neq == 0 ? Subspace::full(f, nvars_) : kernel_basis(sys);
  for (int i = 0; i < space_.dim(); ++i) basis_.emplace_back(src_, tgt_, from_vars(space_.basis_vec(i)));
}

Vec HomSpace::to_vars(const Matrix& m) const {
  Vec v;
  v.reserve(nvars_);
  for (int x = 0; x < src_.algebra().num_vertices(); ++x)
    for (int i = 0; i < tgt_.dim(x); ++i)
      for (int j = 0; j < src_.dim(x); ++j) v.push_back(m(tgt_.offset(x) + i, src_.offset(x) + j));
  return v;
}

Matrix HomSpace::from_vars(const Vec& v) const {
  Matrix m(src_.field(), tgt_.dim(), src_.dim());
  int k = 0;
  for (int x = 0; x < src_.algebra().num_vertices(); ++x)
    for (int i = 0; i < tgt_.dim(x); ++i)
      for (int j = 0; j < src_.dim(x); ++j) m(tgt_.offset(x) + i, src_.offset(x) + j) = v[k++];
  return m;
}

Vec HomSpace::coordinates(const ModuleMap& f) const {
  auto c = space_.coordinates(to_vars(f.m));
  if (!c) throw std::invalid_argument("map is not a homomorphism between these modules");
  return *c;
}

ModuleMap HomSpace::combine(const Vec& c) const {
  Matrix m(src_.field(), tgt_.dim(), src_.dim());
  for (int i = 0; i < dim(); ++i) m.axpy(c[i], basis_[i].m);
  return ModuleMap(src_, tgt_, std::move(m));
}

HomSpace hom_space(const Module& m, const Module& n) { return HomSpace(m, n); }

}  // namespace stabrecon

namespace stabrecon {

Graded graded_zero(const Module& m) {
  Graded g;
  for (int v = 0; v < static_cast<int>(m.dims().size()); ++v) g.emplace_back(m.field(), m.dim(v));
  return g;
}

Graded graded_full(const Module& m) {
  Graded g;
  for (int v = 0; v < static_cast<int>(m.dims().size()); ++v) g.push_back(Subspace::full(m.field(), m.dim(v)));
  return g;
}

int graded_dim(const Graded& g) {
  int n = 0;
  for (const Subspace& s : g) n += s.dim();
  return n;
}

Graded graded_sum(const Graded& a, const Graded& b) {
  Graded r;
  for (std::size_t v = 0; v < a.size(); ++v) r.push_back(a[v] + b[v]);
  return r;
}

Graded graded_intersect(const Graded& a, const Graded& b) {
  Graded r;
  for (std::size_t v = 0; v < a.size(); ++v) r.push_back(a[v].intersect(b[v]));
  return r;
}

bool graded_contains(const Graded& a, const Graded& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (!a[v].contains(b[v])) return false;
  return true;
}

bool graded_equal(const Graded& a, const Graded& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if (!(a[v] == b[v])) return false;
  return true;
}

Graded graded_from_global(const Module& m, const Subspace& s) {
  Graded g;
  for (int v = 0; v < static_cast<int>(m.dims().size()); ++v) {
    std::vector<Vec> gens;
    for (int r = 0; r < s.dim(); ++r) {
      Vec x = s.basis_vec(r);
      Vec part(x.begin() + m.offset(v), x.begin() + m.offset(v) + m.dim(v));
      if (!vzero(part)) gens.push_back(std::move(part));
    }
    g.push_back(gens.empty() ? Subspace(m.field(), m.dim(v)) : Subspace::span(Matrix::from_rows(m.field(), m.dim(v), gens)));
  }
  return g;
}

Subspace graded_to_global(const Module& m, const Graded& g) {
  std::vector<Vec> gens;
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    for (int r = 0; r < g[v].dim(); ++r) {
      Vec x(m.dim(), 0);
      Vec b = g[v].basis_vec(r);
      std::copy(b.begin(), b.end(), x.begin() + m.offset(v));
      gens.push_back(std::move(x));
    }
  if (gens.empty()) return Subspace(m.field(), m.dim());
  return Subspace::span(Matrix::from_rows(m.field(), m.dim(), gens));
}

bool is_submodule(const Module& m, const Graded& g) {
  const Algebra& A = m.algebra();
  for (int a = 0; a < A.num_arrows(); ++a) {
    const int s = A.arrow(a).src, t = A.arrow(a).tgt;
    for (int r = 0; r < g[s].dim(); ++r)
      if (!g[t].contains(m.action(a).apply(g[s].basis_vec(r)))) return false;
  }
  return true;
}

Graded submodule_generated(const Module& m, const std::vector<Vec>& gens) {
  const Algebra& A = m.algebra();
  const int nv = A.num_vertices();
  Graded g = graded_zero(m);
  std::vector<std::pair<int, Vec>> queue;
  for (const Vec& x : gens)
    for (int v = 0; v < nv; ++v) {
      Vec part(x.begin() + m.offset(v), x.begin() + m.offset(v) + m.dim(v));
      if (!vzero(part)) queue.emplace_back(v, std::move(part));
    }
  while (!queue.empty()) {
    auto [v, x] = std::move(queue.back());
    queue.pop_back();
    if (g[v].contains(x)) continue;
    g[v] = g[v] + Subspace::span(Matrix::row(m.field(), x));
    for (int a = 0; a < A.num_arrows(); ++a)
      if (A.arrow(a).src == v) {
        Vec y = m.action(a).apply(x);
        if (!vzero(y)) queue.emplace_back(A.arrow(a).tgt, std::move(y));
      }
  }
  return g;
}

Graded image_of(const ModuleMap& f, const Graded& u) {
  Graded g;
  for (int v = 0; v < static_cast<int>(u.size()); ++v) g.push_back(u[v].image_under(f.block(v)));
  return g;
}

Graded image_of(const ModuleMap& f) { return image_of(f, graded_full(f.src)); }

Graded preimage_of(const ModuleMap& f, const Graded& w) {
  Graded g;
  for (int v = 0; v < static_cast<int>(w.size()); ++v) {
    // x with q(f_v x) = 0, q = quotient coordinates modulo w_v
    Matrix b = f.block(v);
    std::vector<int> freec = w[v].free_columns();
    Matrix sys(f.src.field(), static_cast<int>(freec.size()), f.src.dim(v));
    for (int j = 0; j < f.src.dim(v); ++j) {
      Vec q = w[v].quotient_coords(b.col_vec(j));
      for (std::size_t i = 0; i < freec.size(); ++i) sys(static_cast<int>(i), j) = q[i];
    }
    g.push_back(kernel_basis(sys));
  }
  return g;
}

Embedded submodule(const Module& m, const Graded& u) {
  const Algebra& A = m.algebra();
  const Field& f = m.field();
  const int nv = A.num_vertices();
  std::vector<int> dims(nv);
  for (int v = 0; v < nv; ++v) dims[v] = u[v].dim();
  std::vector<Matrix> act;
  for (int a = 0; a < A.num_arrows(); ++a) {
    const int s = A.arrow(a).src, t = A.arrow(a).tgt;
    Matrix x(f, dims[t], dims[s]);
    for (int j = 0; j < dims[s]; ++j) {
      auto c = u[t].coordinates(m.action(a).apply(u[s].basis_vec(j)));
      if (!c) throw std::invalid_argument("subspace is not a submodule");
      for (int i = 0; i < dims[t]; ++i) x(i, j) = (*c)[i];
    }
    act.push_back(std::move(x));
  }
  Module sub(m.algebra_ptr(), dims, std::move(act));
  Matrix incl(f, m.dim(), sub.dim());
  for (int v = 0; v < nv; ++v) incl.set_block(m.offset(v), sub.offset(v), u[v].basis().transpose());
  return {sub, ModuleMap(sub, m, std::move(incl))};
}

Quotient quotient(const Module& m, const Graded& u) {
  const Algebra& A = m.algebra();
  const Field& f = m.field();
  const int nv = A.num_vertices();
  std::vector<std::vector<int>> freec(nv);
  std::vector<int> dims(nv);
  for (int v = 0; v < nv; ++v) {
    freec[v] = u[v].free_columns();
    dims[v] = static_cast<int>(freec[v].size());
  }
  std::vector<Matrix> act;
  for (int a = 0; a < A.num_arrows(); ++a) {
    const int s = A.arrow(a).src, t = A.arrow(a).tgt;
    Matrix x(f, dims[t], dims[s]);
    for (int j = 0; j < dims[s]; ++j) {
      Vec q = u[t].quotient_coords(m.action(a).col_vec(freec[s][j]));
      for (int i = 0; i < dims[t]; ++i) x(i, j) = q[i];
    }
    act.push_back(std::move(x));
  }
  Module q(m.algebra_ptr(), dims, std::move(act));
  Matrix proj(f, q.dim(), m.dim()), sec(f, m.dim(), q.dim());
  for (int v = 0; v < nv; ++v) {
    for (int j = 0; j < m.dim(v); ++j) {
      Vec e(m.dim(v), 0);
      e[j] = 1;
      Vec c = u[v].quotient_coords(e);
      for (int i = 0; i < dims[v]; ++i) proj(q.offset(v) + i, m.offset(v) + j) = c[i];
    }
    for (int i = 0; i < dims[v]; ++i) sec(m.offset(v) + freec[v][i], q.offset(v) + i) = 1;
  }
  return {q, ModuleMap(m, q, std::move(proj)), std::move(sec)};
}

Embedded kernel_of(const ModuleMap& f) {
  Graded z = graded_zero(f.tgt);
  return submodule(f.src, preimage_of(f, z));
}

Quotient cokernel_of(const ModuleMap& f) { return quotient(f.tgt, image_of(f)); }

Sum direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of nothing");
  const AlgebraPtr& ap = parts[0].algebra_ptr();
  const Algebra& A = *ap;
  const Field& f = A.field();
  const int nv = A.num_vertices();
  std::vector<int> dims(nv, 0);
  for (const Module& p : parts)
    for (int v = 0; v < nv; ++v) dims[v] += p.dim(v);
  std::vector<Matrix> act;
  for (int a = 0; a < A.num_arrows(); ++a) {
    Matrix x(f, 0, 0);
    for (const Module& p : parts) x = direct_sum(x, p.action(a));
    act.push_back(std::move(x));
  }
  Sum s;
  s.module = Module(ap, dims, std::move(act));
  std::vector<int> run(nv, 0);
  for (const Module& p : parts) {
    Matrix inj(f, s.module.dim(), p.dim());
    for (int v = 0; v < nv; ++v)
      for (int i = 0; i < p.dim(v); ++i) inj(s.module.offset(v) + run[v] + i, p.offset(v) + i) = 1;
    for (int v = 0; v < nv; ++v) run[v] += p.dim(v);
    s.proj.emplace_back(s.module, p, inj.transpose());
    s.inj.emplace_back(p, s.module, std::move(inj));
  }
  return s;
}

Module direct_sum(const Module& a, const Module& b) { return direct_sum(std::vector<Module>{a, b}).module; }

ModuleMap block_map(const Sum& src, const Sum& tgt, const std::vector<std::vector<std::optional<ModuleMap>>>& maps) {
  Matrix m(src.module.field(), tgt.module.dim(), src.module.dim());
  for (std::size_t i = 0; i < tgt.inj.size(); ++i)
    for (std::size_t j = 0; j < src.inj.size(); ++j)
      if (maps[i][j]) m = m + tgt.inj[i].m * maps[i][j]->m * src.proj[j].m;
  return ModuleMap(src.module, tgt.module, std::move(m));
}

Pullback pullback(const ModuleMap& f, const ModuleMap& g) {
  Sum s = direct_sum({f.src, g.src});
  ModuleMap d(s.module, f.tgt, f.m * s.proj[0].m - g.m * s.proj[1].m);
  Embedded k = kernel_of(d);
  return {k.sub, compose(s.proj[0], k.incl), compose(s.proj[1], k.incl)};
}

Pushout pushout(const ModuleMap& f, const ModuleMap& g) {
  Sum s = direct_sum({f.tgt, g.tgt});
  ModuleMap d(f.src, s.module, s.inj[0].m * f.m - s.inj[1].m * g.m);
  Quotient q = cokernel_of(d);
  return {q.quot, compose(q.proj, s.inj[0]), compose(q.proj, s.inj[1])};
}

}  // namespace stabrecon

namespace stabrecon {

ModuleMap row_map(const Sum& src, const std::vector<ModuleMap>& maps) {
  Matrix m(src.module.field(), maps.at(0).tgt.dim(), src.module.dim());
  for (std::size_t j = 0; j < maps.size(); ++j) m = m + maps[j].m * src.proj[j].m;
  return ModuleMap(src.module, maps[0].tgt, std::move(m));
}

Graded radical_of(const Module& m) {
  const Algebra& A = m.algebra();
  Graded g = graded_zero(m);
  for (int a = 0; a < A.num_arrows(); ++a) {
    const int s = A.arrow(a).src, t = A.arrow(a).tgt;
    if (m.dim(s) == 0 || m.dim(t) == 0) continue;
    g[t] = g[t] + Subspace::full(m.field(), m.dim(s)).image_under(m.action(a));
  }
  return g;
}

Graded socle_of(const Module& m) {
  const Algebra& A = m.algebra();
  Graded g;
  for (int v = 0; v < A.num_vertices(); ++v) {
    std::vector<Matrix> rows;
    Matrix stack(m.field(), 0, m.dim(v));
    for (int a = 0; a < A.num_arrows(); ++a)
      if (A.arrow(a).src == v) stack = vstack(stack, m.action(a));
    g.push_back(kernel_basis(stack));
  }
  return g;
}

Quotient top(const Module& m) { return quotient(m, radical_of(m)); }
Embedded socle(const Module& m) { return submodule(m, socle_of(m)); }

std::vector<Graded> radical_series(const Module& m) {
  const Algebra& A = m.algebra();
  std::vector<Graded> out{graded_full(m)};
  while (graded_dim(out.back()) > 0) {
    const Graded& cur = out.back();
    Graded nxt = graded_zero(m);
    for (int a = 0; a < A.num_arrows(); ++a) {
      const int s = A.arrow(a).src, t = A.arrow(a).tgt;
      if (cur[s].dim() == 0) continue;
      nxt[t] = nxt[t] + cur[s].image_under(m.action(a));
    }
    out.push_back(std::move(nxt));
  }
  return out;
}

std::vector<int> projective_basis(const Algebra& a, int v) {
  std::vector<int> out;
  for (int w = 0; w < a.num_vertices(); ++w)
    for (int i = 0; i < a.dim(); ++i)
      if (a.basis_path(i).src == v && a.basis_path(i).tgt == w) out.push_back(i);
  return out;
}

std::vector<int> injective_basis(const Algebra& a, int v) {
  std::vector<int> out;
  for (int w = 0; w < a.num_vertices(); ++w)
    for (int i = 0; i < a.dim(); ++i)
      if (a.basis_path(i).tgt == v && a.basis_path(i).src == w) out.push_back(i);
  return out;
}

Module projective(const AlgebraPtr& ap, int v) {
  const Algebra& A = *ap;
  const Field& f = A.field();
  std::vector<int> idx = projective_basis(A, v);
  std::vector<int> dims(A.num_vertices(), 0), local(A.dim(), -1);
  for (int i : idx) local[i] = dims[A.basis_path(i).tgt]++;
  std::vector<Matrix> act;
  for (int a = 0; a < A.num_arrows(); ++a) {
    const int s = A.arrow(a).src, t = A.arrow(a).tgt;
    Matrix x(f, dims[t], dims[s]);
    for (int i : idx) {
      if (A.basis_path(i).tgt != s) continue;
      const Vec& p = A.product(A.arrow_basis(a), i);
      for (int k = 0; k < A.dim(); ++k)
        if (p[k]) x(local[k], local[i]) = p[k];
    }
    act.push_back(std::move(x));
  }
  return Module(ap, dims, std::move(act));
}

Module injective(const AlgebraPtr& ap, int v) {
  const Algebra& A = *ap;
  const Field& f = A.field();
  std::vector<int> idx = injective_basis(A, v);
  std::vector<int> dims(A.num_vertices(), 0), local(A.dim(), -1);
  for (int i : idx) local[i] = dims[A.basis_path(i).src]++;
  std::vector<Matrix> act;
  for (int a = 0; a < A.num_arrows(); ++a) {
    const int s = A.arrow(a).src, t = A.arrow(a).tgt;
    Matrix x(f, dims[t], dims[s]);
    // a . p_j^* = sum_i p_j^*(p_i a) p_i^*
    for (int i : idx) {
      if (A.basis_path(i).src != t) continue;
      const Vec& p = A.product(i, A.arrow_basis(a));
      for (int j : idx)
        if (A.basis_path(j).src == s && p[j]) x(local[i], local[j]) = p[j];
    }
    act.push_back(std::move(x));
  }
  return Module(ap, dims, std::move(act));
}

Module regular_module(const AlgebraPtr& a) {
  std::vector<Module> parts;
  for (int v = 0; v < a->num_vertices(); ++v) parts.push_back(projective(a, v));
  return direct_sum(parts).module;
}

Module simple(const AlgebraPtr& a, int v) {
  std::vector<int> dims(a->num_vertices(), 0);
  dims[v] = 1;
  std::vector<Matrix> act;
  for (int ar = 0; ar < a->num_arrows(); ++ar) act.emplace_back(a->field(), dims[a->arrow(ar).tgt], dims[a->arrow(ar).src]);
  return Module(a, dims, std::move(act));
}

ModuleMap map_from_projective(const Module& pv, int v, const Module& m, const Vec& x) {
  const Algebra& A = m.algebra();
  std::vector<int> idx = projective_basis(A, v);
  Matrix mat(m.field(), m.dim(), pv.dim());
  for (std::size_t c = 0; c < idx.size(); ++c) {
    const BasisPath& b = A.basis_path(idx[c]);
    Vec y = m.path_action(v, b.arrows).apply(x);
    for (int r = 0; r < m.dim(); ++r) mat(r, static_cast<int>(c)) = y[r];
  }
  return ModuleMap(pv, m, std::move(mat));
}

namespace {

// M -> I_v, m -> sum_p phi(p m) p^*, phi a functional supported on vertex v.
ModuleMap map_to_injective(const Module& m, const Module& iv, int v, const Vec& phi) {
  const Algebra& A = m.algebra();
  std::vector<int> idx = injective_basis(A, v);
  Matrix mat(m.field(), iv.dim(), m.dim());
  Matrix row = Matrix::row(m.field(), phi);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const BasisPath& b = A.basis_path(idx[r]);
    Matrix y = row * m.path_action(b.src, b.arrows);
    for (int c = 0; c < m.dim(); ++c) mat(static_cast<int>(r), c) = y(0, c);
  }
  return ModuleMap(m, iv, std::move(mat));
}

}  // namespace

Cover projective_cover(const Module& m) {
  const AlgebraPtr& ap = m.algebra_ptr();
  Quotient t = top(m);
  Cover c;
  std::vector<Module> parts;
  std::vector<Vec> gens;
  for (int v = 0; v < ap->num_vertices(); ++v)
    for (int i = 0; i < t.quot.dim(v); ++i) {
      c.vertices.push_back(v);
      parts.push_back(projective(ap, v));
      gens.push_back(t.section.col_vec(t.quot.offset(v) + i));
    }
  if (parts.empty()) {
    c.p = Module::zero(ap);
    c.map = zero_map(c.p, m);
    return c;
  }
  Sum s = direct_sum(parts);
  std::vector<ModuleMap> maps;
  for (std::size_t k = 0; k < parts.size(); ++k) maps.push_back(map_from_projective(parts[k], c.vertices[k], m, gens[k]));
  c.p = s.module;
  c.map = row_map(s, maps);
  return c;
}

Cover injective_hull(const Module& m) {
  const AlgebraPtr& ap = m.algebra_ptr();
  const Field& f = m.field();
  Graded soc = socle_of(m);
  Cover c;
  std::vector<Module> parts;
  std::vector<Vec> phis;
  for (int v = 0; v < ap->num_vertices(); ++v) {
    const int t = soc[v].dim();
    if (t == 0) continue;
    // functionals dual to the socle basis: X * S = I with S = socle basis as columns
    auto x = solve_left(soc[v].basis().transpose(), Matrix::identity(f, t));
    for (int k = 0; k < t; ++k) {
      Vec phi(m.dim(), 0);
      for (int j = 0; j < m.dim(v); ++j) phi[m.offset(v) + j] = (*x)(k, j);
      c.vertices.push_back(v);
      parts.push_back(injective(ap, v));
      phis.push_back(std::move(phi));
    }
  }
  if (parts.empty()) {
    c.p = Module::zero(ap);
    c.map = zero_map(m, c.p);
    return c;
  }
  Sum s = direct_sum(parts);
  Matrix mat(f, s.module.dim(), m.dim());
  for (std::size_t k = 0; k < parts.size(); ++k)
    mat = mat + s.inj[k].m * map_to_injective(m, parts[k], c.vertices[k], phis[k]).m;
  c.p = s.module;
  c.map = ModuleMap(m, s.module, std::move(mat));
  return c;
}

Embedded cover_kernel(const Module& m) { return kernel_of(projective_cover(m).map); }
Quotient hull_cokernel(const Module& m) { return cokernel_of(injective_hull(m).map); }

bool is_projective(const Module& m) {
  Quotient t = top(m);
  int d = 0;
  for (int v = 0; v < m.algebra().num_vertices(); ++v) d += t.quot.dim(v) * projective_basis(m.algebra(), v).size();
  return d == m.dim();
}

bool is_injective(const Module& m) {
  Graded soc = socle_of(m);
  int d = 0;
  for (int v = 0; v < m.algebra().num_vertices(); ++v) d += soc[v].dim() * injective_basis(m.algebra(), v).size();
  return d == m.dim();
}

Stripped strip_projectives(const Module& m, const DecomposeOptions&) {
  const AlgebraPtr& ap = m.algebra_ptr();
  const Algebra& A = *ap;
  const Field& f = m.field();
  // current core K with inclusion into M and retraction M -> K
  Module k = m;
  Matrix incl = Matrix::identity(f, m.dim()), retr = Matrix::identity(f, m.dim());
  std::vector<Module> pparts;
  std::vector<Matrix> pincl, pproj;  // into / out of M
  bool found = true;
  while (found) {
    found = false;
    for (int v = 0; v < A.num_vertices() && !found; ++v) {
      if (k.dim(v) == 0) continue;
      Module pv = projective(ap, v);
      HomSpace back(k, pv);
      const int ev = 0;  // e_v is the first coordinate of P_v
      for (int i = 0; i < k.dim(v) && !found; ++i) {
        Vec x(k.dim(), 0);
        x[k.offset(v) + i] = 1;
        for (int j = 0; j < back.dim() && !found; ++j) {
          if (!back[j].m(pv.offset(v) + ev, k.offset(v) + i)) continue;
          ModuleMap fm = map_from_projective(pv, v, k, x);
          Matrix u = back[j].m * fm.m;
          auto uinv = inverse(u);
          if (!uinv) continue;
          Matrix pi = *uinv * back[j].m;  // K -> P_v, pi fm = id
          Matrix e = fm.m * pi;
          Matrix comp = Matrix::identity(f, k.dim()) - e;
          Graded ker = preimage_of(ModuleMap(k, pv, pi), graded_zero(pv));
          Embedded sub = submodule(k, ker);
          auto left = solve_left(sub.incl.m, Matrix::identity(f, sub.sub.dim()));
          Matrix r = *left * comp;  // K -> ker
          pparts.push_back(pv);
          pincl.push_back(incl * fm.m);
          pproj.push_back(pi * retr);
          incl = incl * sub.incl.m;
          retr = r * retr;
          k = sub.sub;
          found = true;
        }
      }
    }
  }
  Stripped s;
  s.core = k;
  s.core_incl = ModuleMap(k, m, incl);
  s.core_proj = ModuleMap(m, k, retr);
  if (pparts.empty()) {
    s.proj_part = Module::zero(ap);
    s.proj_incl = zero_map(s.proj_part, m);
    s.proj_proj = zero_map(m, s.proj_part);
    return s;
  }
  Sum ps = direct_sum(pparts);
  Matrix pi(f, m.dim(), ps.module.dim()), pp(f, ps.module.dim(), m.dim());
  for (std::size_t i = 0; i < pparts.size(); ++i) {
    pi = pi + pincl[i] * ps.proj[i].m;
    pp = pp + ps.inj[i].m * pproj[i];
  }
  s.proj_part = ps.module;
  s.proj_incl = ModuleMap(ps.module, m, std::move(pi));
  s.proj_proj = ModuleMap(m, ps.module, std::move(pp));
  return s;
}

Module syzygy(const Module& m) { return strip_projectives(cover_kernel(m).sub).core; }

Module cosyzygy(const Module& m) {
  Module c = hull_cokernel(m).quot;
  // over a self-injective algebra the injective summands are the projective ones
  return strip_projectives(c).core;
}

}  // namespace stabrecon

namespace stabrecon {

std::optional<ModuleMap> lift_through(const Cover& c, const ModuleMap& g, const ModuleMap& surj) {
  const Module& p = c.p;
  if (c.vertices.empty()) return zero_map(p, surj.src);
  const AlgebraPtr& ap = p.algebra_ptr();
  std::vector<Module> parts;
  for (int v : c.vertices) parts.push_back(projective(ap, v));
  Sum s = direct_sum(parts);
  std::vector<ModuleMap> maps;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int v = c.vertices[k];
    // image of the generator e_v of summand k
    Vec gen(parts[k].dim(), 0);
    gen[parts[k].offset(v)] = 1;
    Vec x = g.m.apply(s.inj[k].m.apply(gen));
    Matrix blk = surj.block(v);
    Vec xv(x.begin() + g.tgt.offset(v), x.begin() + g.tgt.offset(v) + g.tgt.dim(v));
    auto y = solve_linear(blk, xv);
    if (!y) return std::nullopt;
    Vec full(surj.src.dim(), 0);
    std::copy(y->begin(), y->end(), full.begin() + surj.src.offset(v));
    maps.push_back(map_from_projective(parts[k], v, surj.src, full));
  }
  ModuleMap h = row_map(s, maps);
  return ModuleMap(p, surj.src, h.m);
}

namespace {

Matrix matrix_power(const Matrix& g, int n) {
  Matrix r = Matrix::identity(g.field(), g.rows()), b = g;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

// Fitting split of X along the endomorphism g, if proper.
std::optional<std::pair<Graded, Graded>> fitting_split(const Module& x, const Matrix& g) {
  const int n = x.dim();
  Matrix gn = matrix_power(g, n);
  int r = rank(gn);
  if (r == 0 || r == n) return std::nullopt;
  ModuleMap h(x, x, gn);
  return std::make_pair(preimage_of(h, graded_zero(x)), image_of(h));
}

struct RawPiece {
  Module mod;
  Matrix incl, proj;
};

void decompose_rec(const Module& x, const Matrix& incl, const Matrix& proj, const DecomposeOptions& opts,
                   std::vector<RawPiece>& out) {
  if (x.dim() == 0) return;
  const Field& f = x.field();
  HomSpace end(x, x);
  std::optional<std::pair<Graded, Graded>> split;
  if (end.dim() > 1) {
    for (int i = 0; i < end.dim() && !split; ++i)
      for (int l = 0; l < f.q() && !split; ++l)
        split = fitting_split(x, end[i].m - Matrix::identity(f, x.dim()).scaled(static_cast<Elem>(l)));
    if (!split && !certify_local(x)) {
      std::uint64_t count = 1;
      bool small = true;
      for (int i = 0; i < end.dim() && small; ++i) {
        count *= static_cast<std::uint64_t>(f.q());
        small = count <= (1u << 16);
      }
      if (small) {
        Vec c(end.dim(), 0);
        for (std::uint64_t it = 0; it < count && !split; ++it) {
          split = fitting_split(x, end.combine(c).m);
          for (int i = 0; i < end.dim(); ++i) {
            if (++c[i] < f.q()) break;
            c[i] = 0;
          }
        }
        if (!split) {
          // every endomorphism is invertible or nilpotent: End(M) is local
          out.push_back({x, incl, proj});
          return;
        }
      } else {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<int> d(0, f.q() - 1);
        for (int t = 0; t < opts.random_tries && !split; ++t) {
          Vec c(end.dim());
          for (auto& e : c) e = static_cast<Elem>(d(rng));
          split = fitting_split(x, end.combine(c).m);
        }
        if (!split) throw DecompositionInconclusive("no Fitting split found and End(M) not certified local");
      }
    }
  }
  if (!split) {
    out.push_back({x, incl, proj});
    return;
  }
  Embedded a = submodule(x, split->first), b = submodule(x, split->second);
  Matrix both = hstack(a.incl.m, b.incl.m);
  Matrix inv = *inverse(both);
  Matrix pa = inv.block(0, 0, a.sub.dim(), x.dim()), pb = inv.block(a.sub.dim(), 0, b.sub.dim(), x.dim());
  decompose_rec(a.sub, incl * a.incl.m, pa * proj, opts, out);
  decompose_rec(b.sub, incl * b.incl.m, pb * proj, opts, out);
}

}  // namespace

bool certify_local(const Module& m) {
  const Field& f = m.field();
  const int n = m.dim();
  if (n == 0) return false;
  HomSpace end(m, m);
  std::vector<Matrix> nil;
  for (int i = 0; i < end.dim(); ++i) {
    bool ok = false;
    for (int l = 0; l < f.q() && !ok; ++l) {
      Matrix g = end[i].m - Matrix::identity(f, n).scaled(static_cast<Elem>(l));
      if (matrix_power(g, n).is_zero()) {
        if (!g.is_zero()) nil.push_back(g);
        ok = true;
      }
    }
    if (!ok) return false;
  }
  // the algebra generated by the nilpotent parts must itself be nilpotent
  std::vector<Matrix> cur = nil;
  for (int k = 0; k <= n && !cur.empty(); ++k) {
    std::vector<Vec> gens;
    for (const Matrix& a : nil)
      for (const Matrix& w : cur) {
        Matrix p = a * w;
        if (!p.is_zero()) gens.push_back(p.flatten());
      }
    cur.clear();
    if (gens.empty()) return true;
    Subspace s = Subspace::span(Matrix::from_rows(f, n * n, gens));
    for (int r = 0; r < s.dim(); ++r) cur.push_back(Matrix::unflatten(f, n, n, s.basis_vec(r)));
  }
  return cur.empty();
}

std::optional<ModuleMap> indecomposable_iso(const Module& a, const Module& b) {
  if (a.dims() != b.dims()) return std::nullopt;
  HomSpace ab(a, b), ba(b, a);
  for (int i = 0; i < ab.dim(); ++i)
    for (int j = 0; j < ba.dim(); ++j)
      if (rank(ba[j].m * ab[i].m) == a.dim()) return ab[i];
  return std::nullopt;
}

const Module& Decomposition::representative(int cls) const {
  for (const Piece& p : pieces)
    if (p.iso_class == cls) return p.module;
  throw std::out_of_range("no such iso class");
}

Decomposition decompose(const Module& m, const DecomposeOptions& opts) {
  const Field& f = m.field();
  std::vector<RawPiece> raw;
  decompose_rec(m, Matrix::identity(f, m.dim()), Matrix::identity(f, m.dim()), opts, raw);
  Decomposition d;
  std::vector<int> cls(raw.size(), -1);
  std::vector<int> reps;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t c = 0; c < reps.size() && cls[i] < 0; ++c)
      if (indecomposable_iso(raw[reps[c]].mod, raw[i].mod)) cls[i] = static_cast<int>(c);
    if (cls[i] < 0) {
      cls[i] = static_cast<int>(reps.size());
      reps.push_back(static_cast<int>(i));
    }
  }
  d.multiplicity.assign(reps.size(), 0);
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (cls[i] == static_cast<int>(c)) {
        d.pieces.push_back({raw[i].mod, ModuleMap(raw[i].mod, m, raw[i].incl), ModuleMap(m, raw[i].mod, raw[i].proj),
                            static_cast<int>(c)});
        ++d.multiplicity[c];
      }
  if (d.pieces.empty()) {
    d.iso = Matrix(f, 0, 0);
    return d;
  }
  std::vector<Module> mods;
  std::vector<ModuleMap> incls;
  for (const Piece& p : d.pieces) {
    mods.push_back(p.module);
    incls.push_back(p.incl);
  }
  d.iso = row_map(direct_sum(mods), incls).m;
  return d;
}

std::optional<ModuleMap> find_isomorphism(const Module& a, const Module& b, const DecomposeOptions& opts) {
  if (a.dims() != b.dims()) return std::nullopt;
  bool same = true;
  for (int ar = 0; ar < a.algebra().num_arrows() && same; ++ar) same = a.action(ar) == b.action(ar);
  if (same) return ModuleMap(a, b, Matrix::identity(a.field(), a.dim()));
  Decomposition da = decompose(a, opts), db = decompose(b, opts);
  if (da.pieces.size() != db.pieces.size()) return std::nullopt;
  std::vector<char> used(db.pieces.size(), 0);
  Matrix iso(a.field(), b.dim(), a.dim());
  // classes of a matched to classes of b
  std::vector<int> match(da.num_classes(), -1);
  for (int c = 0; c < da.num_classes(); ++c)
    for (int e = 0; e < db.num_classes() && match[c] < 0; ++e)
      if (da.multiplicity[c] == db.multiplicity[e] && indecomposable_iso(da.representative(c), db.representative(e)))
        match[c] = e;
  for (int c = 0; c < da.num_classes(); ++c)
    if (match[c] < 0) return std::nullopt;
  for (const Piece& p : da.pieces) {
    bool done = false;
    for (std::size_t j = 0; j < db.pieces.size() && !done; ++j) {
      if (used[j] || db.pieces[j].iso_class != match[p.iso_class]) continue;
      auto h = indecomposable_iso(p.module, db.pieces[j].module);
      if (!h) throw std::logic_error("pieces of one iso class are not isomorphic");
      iso = iso + db.pieces[j].incl.m * h->m * p.proj.m;
      used[j] = 1;
      done = true;
    }
  }
  return ModuleMap(a, b, std::move(iso));
}

bool ShortExact::valid() const {
  if (!is_homomorphism(i.src, i.tgt, i.m) || !is_homomorphism(p.src, p.tgt, p.m)) return false;
  if (!i.is_injective() || !p.is_surjective()) return false;
  if (!(p.m * i.m).is_zero()) return false;
  return i.src.dim() + p.tgt.dim() == i.tgt.dim();
}

Ext1::Ext1(Module m, Module n) : m_(std::move(m)), n_(std::move(n)) {
  cover_ = projective_cover(m_);
  kernel_ = kernel_of(cover_.map);
  hom_kn_ = HomSpace(kernel_.sub, n_);
  HomSpace pn(cover_.p, n_);
  std::vector<Vec> gens;
  for (int i = 0; i < pn.dim(); ++i) {
    Vec c = hom_kn_.coordinates(compose(pn[i], kernel_.incl));
    if (!vzero(c)) gens.push_back(std::move(c));
  }
  coboundaries_ = gens.empty() ? Subspace(m_.field(), hom_kn_.dim()) : Subspace::span(Matrix::from_rows(m_.field(), hom_kn_.dim(), gens));
  free_ = coboundaries_.free_columns();
  dim_ = static_cast<int>(free_.size());
}

ModuleMap Ext1::cocycle(int i) const {
  Vec c(hom_kn_.dim(), 0);
  c[free_.at(i)] = 1;
  return hom_kn_.combine(c);
}

Vec Ext1::class_of_cocycle(const ModuleMap& c) const { return coboundaries_.quotient_coords(hom_kn_.coordinates(c)); }

Vec Ext1::class_of(const ShortExact& e) const {
  if (!e.valid()) throw std::invalid_argument("not a short exact sequence");
  auto lift = lift_through(cover_, cover_.map, e.p);
  if (!lift) throw std::logic_error("projective cover does not lift");
  Matrix k = lift->m * kernel_.incl.m;  // lands in im(i)
  auto c = solve_right(e.i.m, k);
  if (!c) throw std::logic_error("lift does not land in the kernel");
  return class_of_cocycle(ModuleMap(kernel_.sub, n_, *c));
}

ShortExact Ext1::realize(const Vec& cls) const {
  if (static_cast<int>(cls.size()) != dim_) throw std::invalid_argument("class not in range");
  ModuleMap c = zero_map(kernel_.sub, n_);
  for (int i = 0; i < dim_; ++i) c = c + scaled(cocycle(i), cls[i]);
  Sum s = direct_sum({cover_.p, n_});
  ModuleMap d(kernel_.sub, s.module, s.inj[0].m * kernel_.incl.m - s.inj[1].m * c.m);
  Quotient q = cokernel_of(d);
  ModuleMap i = compose(q.proj, s.inj[1]);
  Matrix toM = cover_.map.m * s.proj[0].m;
  ModuleMap p(q.quot, m_, toM * q.section);
  return {i, p};
}

namespace {

// Right multiplication by the arrow b as a map P_tgt(b) -> P_src(b).
Matrix right_mult(const Algebra& a, int b) {
  const int s = a.arrow(b).src, t = a.arrow(b).tgt;
  std::vector<int> pt = projective_basis(a, t), ps = projective_basis(a, s);
  std::vector<int> local(a.dim(), -1);
  for (std::size_t i = 0; i < ps.size(); ++i) local[ps[i]] = static_cast<int>(i);
  Matrix r(a.field(), static_cast<int>(ps.size()), static_cast<int>(pt.size()));
  for (std::size_t j = 0; j < pt.size(); ++j) {
    const Vec& p = a.product(pt[j], a.arrow_basis(b));
    for (int k = 0; k < a.dim(); ++k)
      if (p[k]) r(local[k], static_cast<int>(j)) = p[k];
  }
  return r;
}

}  // namespace

Module nakayama_module(const Module& m) {
  const AlgebraPtr& ap = m.algebra_ptr();
  const Algebra& A = *ap;
  std::vector<Module> proj;
  std::vector<HomSpace> h;
  std::vector<int> dims;
  for (int w = 0; w < A.num_vertices(); ++w) {
    proj.push_back(projective(ap, w));
    h.emplace_back(m, proj.back());
    dims.push_back(h.back().dim());
  }
  std::vector<Matrix> act;
  for (int b = 0; b < A.num_arrows(); ++b) {
    const int s = A.arrow(b).src, t = A.arrow(b).tgt;
    Matrix rb = right_mult(A, b);
    Matrix c(A.field(), dims[s], dims[t]);
    for (int j = 0; j < dims[t]; ++j) {
      Vec x = h[s].coordinates(ModuleMap(m, proj[s], rb * h[t][j].m));
      for (int i = 0; i < dims[s]; ++i) c(i, j) = x[i];
    }
    act.push_back(c.transpose());
  }
  return Module(ap, dims, std::move(act));
}

ModuleMap nakayama_map(const ModuleMap& g) {
  const AlgebraPtr& ap = g.src.algebra_ptr();
  const Algebra& A = *ap;
  Module ns = nakayama_module(g.src), nt = nakayama_module(g.tgt);
  Matrix mat(A.field(), nt.dim(), ns.dim());
  for (int w = 0; w < A.num_vertices(); ++w) {
    Module pw = projective(ap, w);
    HomSpace hs(g.src, pw), ht(g.tgt, pw);
    Matrix c(A.field(), hs.dim(), ht.dim());
    for (int j = 0; j < ht.dim(); ++j) {
      Vec x = hs.coordinates(compose(ht[j], g));
      for (int i = 0; i < hs.dim(); ++i) c(i, j) = x[i];
    }
    mat.set_block(nt.offset(w), ns.offset(w), c.transpose());
  }
  return ModuleMap(ns, nt, std::move(mat));
}

}  // namespace stabrecon
