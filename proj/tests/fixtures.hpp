#pragma once

#include <random>
#include <string>
#include <vector>

#include "stabrecon/module.hpp"

namespace fixtures {

using namespace stabrecon;

inline Relation monomial(Path p) { return {Term{1, std::move(p)}}; }

/// vertices u, v; alpha: u -> v, beta: v -> u; alpha beta = beta alpha = 0 over GF(5)
inline AlgebraPtr lambda4() {
  Presentation p;
  p.field = Field::make(5);
  p.vertices = {"u", "v"};
  p.arrows = {{"alpha", 0, 1}, {"beta", 1, 0}};
  p.relations = {monomial({0, 1}), monomial({1, 0})};
  return Algebra::load(p);
}

/// k[x]/(x^n) over GF(p)
inline AlgebraPtr truncated(int n, int prime = 5) {
  Presentation p;
  p.field = Field::make(prime);
  p.vertices = {"o"};
  p.arrows = {{"x", 0, 0}};
  p.relations = {monomial(Path(n, 0))};
  return Algebra::load(p);
}

inline AlgebraPtr n3() { return truncated(3); }
inline AlgebraPtr dual_numbers() { return truncated(2); }

/// cyclic quiver on three vertices, all paths of length 2 zero, over GF(3)
inline AlgebraPtr nakayama3() {
  Presentation p;
  p.field = Field::make(3);
  p.vertices = {"0", "1", "2"};
  p.arrows = {{"c0", 0, 1}, {"c1", 1, 2}, {"c2", 2, 0}};
  p.relations = {monomial({0, 1}), monomial({1, 2}), monomial({2, 0})};
  return Algebra::load(p);
}

/// basic algebra of the principal block of GF(4)A4
inline AlgebraPtr ka4() {
  Presentation p;
  p.field = Field::make(2, 2);
  p.vertices = {"0", "1", "2"};
  // a_i : i -> i+1 (index i), b_i : i -> i-1 (index 3+i)
  for (int i = 0; i < 3; ++i) p.arrows.push_back({"a" + std::to_string(i), i, (i + 1) % 3});
  for (int i = 0; i < 3; ++i) p.arrows.push_back({"b" + std::to_string(i), i, (i + 2) % 3});
  auto a = [](int i) { return ((i % 3) + 3) % 3; };
  auto b = [](int i) { return 3 + ((i % 3) + 3) % 3; };
  for (int i = 0; i < 3; ++i) {
    p.relations.push_back(monomial({a(i), a(i + 1)}));
    p.relations.push_back(monomial({b(i), b(i - 1)}));
    p.relations.push_back({Term{1, {a(i), b(i + 1)}}, Term{1, {b(i), a(i - 1)}}});
  }
  return Algebra::load(p);
}

/// path algebra of u -> v (not self-injective)
inline AlgebraPtr a2_path() {
  Presentation p;
  p.field = Field::make(5);
  p.vertices = {"u", "v"};
  p.arrows = {{"a", 0, 1}};
  return Algebra::load(p);
}

/// k x k
inline AlgebraPtr semisimple2() {
  Presentation p;
  p.field = Field::make(5);
  p.vertices = {"u", "v"};
  return Algebra::load(p);
}

// N3 indecomposable J_n: Jordan block of size n
inline Module jordan(const AlgebraPtr& a, int n) {
  Matrix x(a->field(), n, n);
  for (int i = 0; i + 1 < n; ++i) x(i + 1, i) = 1;
  return Module(a, {n}, {x});
}

// Random module over a one-vertex algebra k[x]/(x^n): direct sum of random
// Jordan blocks conjugated by a random invertible matrix.
inline Module random_truncated_module(const AlgebraPtr& a, int nmax, std::mt19937_64& rng) {
  std::vector<Module> parts;
  int k = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) parts.push_back(jordan(a, 1 + static_cast<int>(rng() % nmax)));
  Module s = direct_sum(parts).module;
  const Field& f = a->field();
  Matrix g(f, s.dim(), s.dim());
  do {
    for (int i = 0; i < s.dim(); ++i)
      for (int j = 0; j < s.dim(); ++j) g(i, j) = static_cast<Elem>(rng() % f.q());
  } while (rank(g) < s.dim());
  return Module(a, s.dims(), {g * s.action(0) * *inverse(g)});
}

// Random invertible base change at every vertex.
inline Module random_conjugate(const Module& m, std::mt19937_64& rng) {
  const Field& f = m.field();
  const Algebra& a = m.algebra();
  std::vector<Matrix> g, ginv;
  for (int v = 0; v < a.num_vertices(); ++v) {
    Matrix x(f, m.dim(v), m.dim(v));
    do {
      for (int i = 0; i < m.dim(v); ++i)
        for (int j = 0; j < m.dim(v); ++j) x(i, j) = static_cast<Elem>(rng() % f.q());
    } while (rank(x) < m.dim(v));
    ginv.push_back(*inverse(x));
    g.push_back(std::move(x));
  }
  std::vector<Matrix> act;
  for (int b = 0; b < a.num_arrows(); ++b) act.push_back(g[a.arrow(b).tgt] * m.action(b) * ginv[a.arrow(b).src]);
  return Module(m.algebra_ptr(), m.dims(), act);
}

// Random direct sum of 1..maxparts modules drawn from `pool`, randomly conjugated.
inline Module random_sum(const std::vector<Module>& pool, int maxparts, std::mt19937_64& rng) {
  std::vector<Module> parts;
  int k = 1 + static_cast<int>(rng() % maxparts);
  for (int i = 0; i < k; ++i) parts.push_back(pool[rng() % pool.size()]);
  return random_conjugate(direct_sum(parts).module, rng);
}

// Two-dimensional uniserial module along one arrow (top at its source).
inline Module uniserial2(const AlgebraPtr& a, int arrow) {
  std::vector<int> dims(a->num_vertices(), 0);
  const int src = a->arrow(arrow).src, tgt = a->arrow(arrow).tgt;
  ++dims[src];
  ++dims[tgt];
  std::vector<Matrix> act;
  for (int b = 0; b < a->num_arrows(); ++b) {
    Matrix x(a->field(), dims[a->arrow(b).tgt], dims[a->arrow(b).src]);
    if (b == arrow) x(0, 0) = 1;
    act.push_back(x);
  }
  return Module(a, dims, act);
}

// {k, S+, S-} over ka4: S+ has top at vertex 1 and socle at vertex 2, S- the reverse.
inline std::vector<Module> ka4_family(const AlgebraPtr& a) { return {simple(a, 0), uniserial2(a, 1), uniserial2(a, 5)}; }

}  // namespace fixtures
