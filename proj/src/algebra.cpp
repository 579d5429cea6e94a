#include "stabrecon/algebra.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace stabrecon {

bool path_less(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

using Poly = std::map<Path, Elem, PathLess>;

void add_term(const Field& f, Poly& p, const Path& t, Elem c) {
  if (!c) return;
  auto [it, fresh] = p.emplace(t, c);
  if (fresh) return;
  it->second = f.add(it->second, c);
  if (!it->second) p.erase(it);
}

// Position of `needle` inside `hay`, or -1.
int find_sub(const Path& hay, const Path& needle) {
  if (needle.size() > hay.size()) return -1;
  auto it = std::search(hay.begin(), hay.end(), needle.begin(), needle.end());
  return it == hay.end() ? -1 : static_cast<int>(it - hay.begin());
}

Path concat3(const Path& u, const Path& m, const Path& w) {
  Path r;
  r.reserve(u.size() + m.size() + w.size());
  r.insert(r.end(), u.begin(), u.end());
  r.insert(r.end(), m.begin(), m.end());
  r.insert(r.end(), w.begin(), w.end());
  return r;
}

struct Reducer {
  const Field& f;
  const std::vector<Poly>& gb;

  // First (g, position) whose leading term occurs in t.
  bool find(const Path& t, int& gi, int& pos) const {
    for (std::size_t i = 0; i < gb.size(); ++i) {
      int p = find_sub(t, gb[i].rbegin()->first);
      if (p >= 0) {
        gi = static_cast<int>(i);
        pos = p;
        return true;
      }
    }
    return false;
  }

  Poly reduce(Poly work) const {
    Poly out;
    while (!work.empty()) {
      auto it = std::prev(work.end());
      Path t = it->first;
      Elem c = it->second;
      work.erase(it);
      int gi, pos;
      if (!find(t, gi, pos)) {
        out.emplace(std::move(t), c);
        continue;
      }
      const Poly& g = gb[gi];
      const Path& lt = g.rbegin()->first;
      Path u(t.begin(), t.begin() + pos), w(t.begin() + pos + static_cast<long>(lt.size()), t.end());
      // t = u lt w  and  lt = -(g - lt)
      for (auto gt = g.begin(); gt != std::prev(g.end()); ++gt)
        add_term(f, work, concat3(u, gt->first, w), f.neg(f.mul(c, gt->second)));
    }
    return out;
  }
};

Poly make_monic(const Field& f, Poly p) {
  Elem s = f.inv(p.rbegin()->second);
  for (auto& [t, c] : p) c = f.mul(c, s);
  return p;
}

// u * g * w as polynomial (prepend u, append w to every term).
Poly wrap(const Poly& g, const Path& u, const Path& w) {
  Poly r;
  for (const auto& [t, c] : g) r.emplace(concat3(u, t, w), c);
  return r;
}

Poly sub(const Field& f, Poly a, const Poly& b) {
  for (const auto& [t, c] : b) add_term(f, a, t, f.neg(c));
  return a;
}

// All overlap and inclusion compositions of g1 with g2.
std::vector<Poly> compositions(const Field& f, const Poly& g1, const Poly& g2, bool same) {
  std::vector<Poly> out;
  const Path& l1 = g1.rbegin()->first;
  const Path& l2 = g2.rbegin()->first;
  const std::size_t n1 = l1.size(), n2 = l2.size();
  for (std::size_t k = 1; k < std::min(n1, n2); ++k) {
    if (!std::equal(l1.end() - static_cast<long>(k), l1.end(), l2.begin())) continue;
    Path w(l2.begin() + static_cast<long>(k), l2.end());
    Path u(l1.begin(), l1.end() - static_cast<long>(k));
    out.push_back(sub(f, wrap(g1, {}, w), wrap(g2, u, {})));
  }
  if (!same && n2 <= n1) {
    for (std::size_t pos = 0; pos + n2 <= n1; ++pos) {
      if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<long>(pos))) continue;
      Path u(l1.begin(), l1.begin() + static_cast<long>(pos)), w(l1.begin() + static_cast<long>(pos + n2), l1.end());
      out.push_back(sub(f, g1, wrap(g2, u, w)));
    }
  }
  return out;
}

}  // namespace

std::shared_ptr<const Algebra> Algebra::load(const Presentation& pres, int path_cap) {
  auto alg = std::make_shared<Algebra>();
  Algebra& A = *alg;
  A.pres_ = pres;
  const Field& f = A.pres_.field;
  if (!f.valid()) throw std::invalid_argument("algebra has no field");
  const int nv = static_cast<int>(pres.vertices.size());
  if (nv == 0) throw std::invalid_argument("algebra has no vertices");
  for (const Arrow& a : pres.arrows)
    if (a.src < 0 || a.src >= nv || a.tgt < 0 || a.tgt >= nv)
      throw std::invalid_argument("arrow " + a.name + " has an invalid endpoint");

  auto composable = [&](const Path& p) {
    for (int a : p)
      if (a < 0 || a >= static_cast<int>(pres.arrows.size())) return false;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (pres.arrows[p[i - 1]].tgt != pres.arrows[p[i]].src) return false;
    return true;
  };

  std::vector<Poly> gb;
  for (const Relation& rel : pres.relations) {
    Poly p;
    int s = -1, t = -1;
    for (const Term& term : rel) {
      if (!composable(term.path)) throw std::invalid_argument("relation contains a non-composable path");
      if (term.path.size() < 2) throw NonAdmissible("relation has a component of length <= 1");
      int ts = pres.arrows[term.path.front()].src, tt = pres.arrows[term.path.back()].tgt;
      if (s < 0) {
        s = ts;
        t = tt;
      } else if (s != ts || t != tt) {
        throw std::invalid_argument("relation terms are not parallel");
      }
      add_term(f, p, term.path, term.coeff);
    }
    if (p.empty()) continue;
    Reducer red{f, gb};
    p = red.reduce(p);
    if (!p.empty()) gb.push_back(make_monic(f, std::move(p)));
  }

  // Buchberger completion over all ambiguities.
  std::deque<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(gb.size()); ++i)
    for (int j = 0; j < static_cast<int>(gb.size()); ++j) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    for (Poly& s : compositions(f, gb[i], gb[j], i == j)) {
      Reducer red{f, gb};
      Poly r = red.reduce(std::move(s));
      if (r.empty()) continue;
      r = make_monic(f, std::move(r));
      if (static_cast<int>(r.rbegin()->first.size()) > path_cap)
        throw NonAdmissible("reduction system exceeds the path length cap");
      gb.push_back(std::move(r));
      int n = static_cast<int>(gb.size()) - 1;
      for (int k = 0; k <= n; ++k) {
        pairs.emplace_back(n, k);
        if (k != n) pairs.emplace_back(k, n);
      }
    }
  }
  A.gb_ = gb;
  Reducer red{f, A.gb_};

  // Normal-form paths, grown by length.
  for (int v = 0; v < nv; ++v) {
    A.idem_.push_back(static_cast<int>(A.basis_.size()));
    A.basis_.push_back({v, v, {}});
  }
  std::vector<BasisPath> level;
  for (int v = 0; v < nv; ++v) level.push_back({v, v, {}});
  int len = 0;
  while (!level.empty()) {
    if (++len > path_cap) throw NonAdmissible("arrow ideal is not nilpotent within the path length cap");
    std::vector<BasisPath> next;
    for (const BasisPath& b : level)
      for (int a = 0; a < static_cast<int>(pres.arrows.size()); ++a) {
        if (pres.arrows[a].src != b.tgt) continue;
        Path p = b.arrows;
        p.push_back(a);
        int gi, pos;
        if (red.find(p, gi, pos)) continue;
        next.push_back({b.src, pres.arrows[a].tgt, std::move(p)});
      }
    std::sort(next.begin(), next.end(), [](const BasisPath& x, const BasisPath& y) { return path_less(x.arrows, y.arrows); });
    for (const BasisPath& b : next) A.basis_.push_back(b);
    level = std::move(next);
  }
  for (int i = 0; i < A.dim(); ++i) A.index_[{A.basis_[i].src, A.basis_[i].arrows}] = i;
  for (int a = 0; a < A.num_arrows(); ++a) {
    int idx = A.find_basis(pres.arrows[a].src, {a});
    if (idx < 0) throw NonAdmissible("arrow " + pres.arrows[a].name + " is not a basis element");
    A.arrow_basis_.push_back(idx);
  }

  const int n = A.dim();
  A.mult_.assign(static_cast<std::size_t>(n) * n, Vec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const BasisPath& x = A.basis_[i];
      const BasisPath& y = A.basis_[j];
      if (y.tgt != x.src) continue;
      Path p = y.arrows;
      p.insert(p.end(), x.arrows.begin(), x.arrows.end());
      A.mult_[static_cast<std::size_t>(i) * n + j] = A.normal_form(y.src, p);
    }

  // rad^d = J^d; J^{d+1} = sum over arrows a of a * J^d.
  A.rad_.push_back(Subspace::full(f, n));
  {
    std::vector<Vec> gens;
    for (int i = 0; i < n; ++i)
      if (A.basis_[i].length() > 0) {
        Vec e(n, 0);
        e[i] = 1;
        gens.push_back(e);
      }
    A.rad_.push_back(gens.empty() ? Subspace(f, n) : Subspace::span(Matrix::from_rows(f, n, gens)));
  }
  while (A.rad_.back().dim() > 0) {
    const Subspace& prev = A.rad_.back();
    std::vector<Vec> gens;
    for (int a = 0; a < A.num_arrows(); ++a) {
      Vec ea(n, 0);
      ea[A.arrow_basis_[a]] = 1;
      for (int r = 0; r < prev.dim(); ++r) {
        Vec v = A.multiply(ea, prev.basis_vec(r));
        if (!vzero(v)) gens.push_back(std::move(v));
      }
    }
    Subspace nxt = gens.empty() ? Subspace(f, n) : Subspace::span(Matrix::from_rows(f, n, gens));
    if (nxt.dim() == prev.dim()) throw NonAdmissible("arrow ideal is not nilpotent");
    A.rad_.push_back(std::move(nxt));
  }
  A.selfinj_ = std::make_shared<const SelfInjectiveResult>(self_injective_check(A));
  return alg;
}

int Algebra::vertex_index(const std::string& name) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (pres_.vertices[v] == name) return v;
  throw std::invalid_argument("unknown vertex " + name);
}

int Algebra::arrow_index(const std::string& name) const {
  for (int a = 0; a < num_arrows(); ++a)
    if (pres_.arrows[a].name == name) return a;
  throw std::invalid_argument("unknown arrow " + name);
}

std::string Algebra::basis_label(int i) const {
  const BasisPath& b = basis_[i];
  if (b.arrows.empty()) return "e_" + pres_.vertices[b.src];
  std::string s;
  for (std::size_t k = 0; k < b.arrows.size(); ++k) s += (k ? "." : "") + pres_.arrows[b.arrows[k]].name;
  return s;
}

int Algebra::find_basis(int src, const Path& p) const {
  auto it = index_.find({src, p});
  return it == index_.end() ? -1 : it->second;
}

Vec Algebra::normal_form(int src, const Path& p) const {
  const Field& f = field();
  Vec out(dim(), 0);
  if (p.empty()) {
    out[idem_.at(src)] = 1;
    return out;
  }
  if (pres_.arrows.at(p.front()).src != src) throw std::invalid_argument("path does not start at the given vertex");
  for (std::size_t i = 1; i < p.size(); ++i)
    if (pres_.arrows.at(p[i - 1]).tgt != pres_.arrows.at(p[i]).src) throw std::invalid_argument("path is not composable");
  Reducer red{f, gb_};
  Poly r = red.reduce(Poly{{p, Elem{1}}});
  for (const auto& [t, c] : r) {
    int idx = find_basis(src, t);
    if (idx < 0) throw std::logic_error("normal form outside the path basis");
    out[idx] = f.add(out[idx], c);
  }
  return out;
}

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
  const Field& f = field();
  const int n = dim();
  Vec out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (!y[j]) continue;
      Elem c = f.mul(x[i], y[j]);
      const Vec& p = product(i, j);
      for (int k = 0; k < n; ++k)
        if (p[k]) out[k] = f.add(out[k], f.mul(c, p[k]));
    }
  }
  return out;
}

Vec Algebra::unit() const {
  Vec u(dim(), 0);
  for (int i : idem_) u[i] = 1;
  return u;
}

std::vector<Path> Algebra::reduction_leading_terms() const {
  std::vector<Path> out;
  for (const Poly& g : gb_) out.push_back(g.rbegin()->first);
  return out;
}

bool Algebra::check_associativity(int exhaustive_limit) const {
  const int n = dim();
  auto basis_vec = [n](int i) {
    Vec e(n, 0);
    e[i] = 1;
    return e;
  };
  auto ok = [&](int i, int j, int k) {
    Vec left = multiply(product(i, j), basis_vec(k));
    Vec right = multiply(basis_vec(i), product(j, k));
    return left == right;
  };
  if (n <= exhaustive_limit) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (!ok(i, j, k)) return false;
    return true;
  }
  std::mt19937_64 rng(0);
  for (int t = 0; t < 20000; ++t)
    if (!ok(static_cast<int>(rng() % n), static_cast<int>(rng() % n), static_cast<int>(rng() % n))) return false;
  return true;
}

SelfInjectiveResult self_injective_check(const Algebra& a) {
  const Field& f = a.field();
  const int n = a.dim();
  SelfInjectiveResult res;
  NakayamaData data;
  for (int v = 0; v < a.num_vertices(); ++v) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (a.basis_path(i).src == v) idx.push_back(i);
    if (idx.size() == 1) data.projective_simples.push_back(v);
    // m in P_v with (arrow * m) = 0 for every arrow
    Matrix sys(f, a.num_arrows() * n, static_cast<int>(idx.size()));
    for (int ar = 0; ar < a.num_arrows(); ++ar)
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const Vec& p = a.product(a.arrow_basis(ar), idx[c]);
        for (int k = 0; k < n; ++k) sys(ar * n + k, static_cast<int>(c)) = p[k];
      }
    Subspace soc = kernel_basis(sys);
    if (soc.dim() != 1) {
      res.reason = "socle of P_" + a.presentation().vertices[v] + " has dimension " + std::to_string(soc.dim());
      return res;
    }
    Vec s(n, 0);
    Vec c = soc.basis_vec(0);
    int w = -1;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (!c[k]) continue;
      s[idx[k]] = c[k];
      int t = a.basis_path(idx[k]).tgt;
      if (w >= 0 && w != t) throw std::logic_error("socle vector is not vertex-homogeneous");
      w = t;
    }
    data.permutation.push_back(w);
    data.socle_vectors.push_back(std::move(s));
  }
  std::vector<int> seen(a.num_vertices(), 0);
  for (int w : data.permutation)
    if (seen[w]++) {
      res.reason = "two indecomposable projectives share the socle S_" + a.presentation().vertices[w];
      return res;
    }
  res.self_injective = true;
  res.data = std::move(data);
  return res;
}

SymmetricResult symmetric_check(const Algebra& a, std::uint64_t seed) {
  const Field& f = a.field();
  const int n = a.dim();
  SymmetricResult res;
  // lambda(b_i b_j - b_j b_i) = 0 for i < j
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec r = vsub(f, a.product(i, j), a.product(j, i));
      if (!vzero(r)) rows.push_back(std::move(r));
    }
  Subspace sol = rows.empty() ? Subspace::full(f, n) : kernel_basis(Matrix::from_rows(f, n, rows));
  res.solution_dim = sol.dim();
  if (sol.dim() == 0) return res;
  auto gram = [&](const Vec& lambda) {
    Matrix g(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Elem s = 0;
        const Vec& p = a.product(i, j);
        for (int k = 0; k < n; ++k)
          if (p[k] && lambda[k]) s = f.add(s, f.mul(p[k], lambda[k]));
        g(i, j) = s;
      }
    return g;
  };
  std::vector<Matrix> dirs;
  for (int t = 0; t < sol.dim(); ++t) dirs.push_back(gram(sol.basis_vec(t)));
  CosetSearchOptions opts;
  opts.seed = seed;
  opts.target_rank = n;
  auto r = coset_rank_maximize(Matrix(f, n, n), dirs, opts);
  if (r.rank == n) {
    res.status = SymmetricStatus::Symmetric;
    res.form = Vec(n, 0);
    for (int t = 0; t < sol.dim(); ++t) res.form = vadd(f, res.form, vscale(f, r.coefficients[t], sol.basis_vec(t)));
    return res;
  }
  res.status = r.exhaustive ? SymmetricStatus::NotSymmetric : SymmetricStatus::Undecided;
  return res;
}

}  // namespace stabrecon
