#include <algorithm>
#include <numeric>

#include "stabrecon/reconstruct.hpp"

namespace stabrecon {

namespace {

Vec unit(int n, int k) {
  Vec e(n, 0);
  e[k] = 1;
  return e;
}

std::vector<int> trimmed(std::vector<int> d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
  return d;
}

// Primitive orthogonal idempotents of degree 0 (global coordinates), when the
// degree-0 part is split basic. nullopt otherwise or past the search cap.
std::optional<std::vector<Vec>> degree0_idempotents(const GradedAlgebra& a, std::string& why) {
  const Field& f = a.field;
  const int n = a.total_dim(), d0 = a.dims.empty() ? 0 : a.dims[0];
  long total = 1;
  for (int i = 0; i < d0; ++i) {
    total *= f.q();
    if (total > (1L << 16)) {
      why = "degree-0 part too large for the idempotent search";
      return std::nullopt;
    }
  }
  std::vector<Vec> idem;
  Vec x(n, 0);
  for (long t = 1; t < total; ++t) {
    long r = t;
    for (int i = 0; i < d0; ++i) {
      x[i] = static_cast<Elem>(r % f.q());
      r /= f.q();
    }
    if (a.multiply(x, x) == x) idem.push_back(x);
  }
  std::vector<Vec> prim;
  for (const Vec& e : idem) {
    bool p = true;
    for (const Vec& g : idem)
      if (g != e && a.multiply(g, e) == g && a.multiply(e, g) == g) p = false;
    if (p) prim.push_back(e);
  }
  Vec sum(n, 0);
  for (const Vec& e : prim) sum = vadd(f, sum, e);
  bool ok = static_cast<int>(prim.size()) == d0;
  for (std::size_t i = 0; ok && i < prim.size(); ++i)
    for (std::size_t j = 0; ok && j < prim.size(); ++j)
      if (i != j && !vzero(a.multiply(prim[i], prim[j]))) ok = false;
  for (int k = 0; ok && k < n; ++k) {
    Vec ek = unit(n, k);
    if (a.multiply(sum, ek) != ek || a.multiply(ek, sum) != ek) ok = false;
  }
  if (!ok) {
    why = "degree-0 part is not split basic";
    return std::nullopt;
  }
  return prim;
}

// Basis (global coordinates) of e_i A_1 e_j.
std::vector<Vec> block_basis(const GradedAlgebra& a, const Vec& ei, const Vec& ej) {
  const int n = a.total_dim(), o = a.offset(1), d1 = a.dims.size() > 1 ? a.dims[1] : 0;
  std::vector<Vec> imgs;
  for (int k = 0; k < d1; ++k) imgs.push_back(a.multiply(a.multiply(ei, unit(n, o + k)), ej));
  if (imgs.empty()) return {};
  Subspace s = Subspace::span(Matrix::from_rows(a.field, n, imgs));
  std::vector<Vec> out;
  for (int r = 0; r < s.dim(); ++r) out.push_back(s.basis_vec(r));
  return out;
}

// Products b_k * y spanning each degree d >= 2, as (degree-1 index, degree d-1 index).
std::optional<std::vector<std::vector<std::pair<int, int>>>> generating_words(const GradedAlgebra& a) {
  const int n = a.total_dim(), nd = static_cast<int>(a.dims.size());
  std::vector<std::vector<std::pair<int, int>>> out(nd);
  for (int d = 2; d < nd; ++d) {
    Subspace got(a.field, n);
    for (int k = 0; k < a.dims[1] && got.dim() < a.dims[d]; ++k)
      for (int l = 0; l < a.dims[d - 1] && got.dim() < a.dims[d]; ++l) {
        Vec p = a.product(a.offset(1) + k, a.offset(d - 1) + l);
        if (got.contains(p)) continue;
        got = got + Subspace::span(Matrix::row(a.field, p));
        out[d].push_back({k, l});
      }
    if (got.dim() < a.dims[d]) return std::nullopt;
  }
  return out;
}

// Extends phi on degrees 0 and 1 (columns set) to all degrees via the words.
bool extend(const GradedAlgebra& a, const GradedAlgebra& b, const std::vector<std::vector<std::pair<int, int>>>& words,
            Matrix& phi) {
  const int n = a.total_dim();
  for (int d = 2; d < static_cast<int>(a.dims.size()); ++d) {
    const int o = a.offset(d);
    Matrix src(a.field, n, a.dims[d]), img(a.field, n, a.dims[d]);
    for (int w = 0; w < a.dims[d]; ++w) {
      auto [k, l] = words[d][w];
      Vec p = a.product(a.offset(1) + k, a.offset(d - 1) + l);
      Vec q = b.multiply(phi.col_vec(a.offset(1) + k), phi.col_vec(a.offset(d - 1) + l));
      for (int r = 0; r < n; ++r) {
        src(r, w) = p[r];
        img(r, w) = q[r];
      }
    }
    // phi_d * src_d = img, restricted to the degree-d rows of src
    Matrix sd = src.block(o, 0, a.dims[d], a.dims[d]);
    auto inv = inverse(sd);
    if (!inv) return false;
    Matrix cols = img * *inv;
    for (int c = 0; c < a.dims[d]; ++c)
      for (int r = 0; r < n; ++r) phi(r, o + c) = cols(r, c);
  }
  return true;
}

}  // namespace

bool is_graded_iso(const GradedAlgebra& a, const GradedAlgebra& b, const Matrix& map) {
  const int n = a.total_dim();
  if (trimmed(a.dims) != trimmed(b.dims) || map.rows() != n || map.cols() != n) return false;
  if (rank(map) != n) return false;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (map(r, c) && b.degree_of(r) != a.degree_of(c)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (map.apply(a.product(i, j)) != b.multiply(map.col_vec(i), map.col_vec(j))) return false;
  return true;
}

GradedIsoResult graded_iso_check(const GradedAlgebra& a, const GradedAlgebra& b, long cap) {
  GradedIsoResult res;
  if (!(a.field == b.field)) {
    res.status = IsoStatus::No;
    res.reason = "different fields";
    return res;
  }
  if (trimmed(a.dims) != trimmed(b.dims)) {
    res.status = IsoStatus::No;
    res.reason = "graded dimensions differ";
    return res;
  }
  const Field& f = a.field;
  const int n = a.total_dim();
  if (n == 0) {
    res.status = IsoStatus::Iso;
    res.map = Matrix(f, 0, 0);
    return res;
  }
  if (!a.degree_additive() || !b.degree_additive()) {
    res.reason = "structure constants are not graded";
    return res;
  }
  auto ea = degree0_idempotents(a, res.reason);
  if (!ea) return res;
  auto eb = degree0_idempotents(b, res.reason);
  if (!eb) return res;
  auto words = generating_words(a);
  if (!words || !generating_words(b)) {
    res.reason = "not generated in degrees 0 and 1";
    return res;
  }
  const int m = static_cast<int>(ea->size());
  std::vector<std::vector<std::vector<Vec>>> ba(m, std::vector<std::vector<Vec>>(m)), bb = ba;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ba[i][j] = block_basis(a, (*ea)[i], (*ea)[j]);
      bb[i][j] = block_basis(b, (*eb)[i], (*eb)[j]);
    }
  // Coordinates of the degree-0 basis in terms of the idempotents.
  Matrix e0(f, a.dims[0], m);
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < a.dims[0]; ++r) e0(r, i) = (*ea)[i][r];
  auto e0inv = inverse(e0);
  // Coordinates of degree-1 vectors of a in the union of block bases.
  std::vector<Vec> all1;
  std::vector<std::pair<int, int>> owner;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (const Vec& v : ba[i][j]) {
        all1.push_back(v);
        owner.push_back({i, j});
      }
  const int d1 = a.dims.size() > 1 ? a.dims[1] : 0;
  if (!e0inv || static_cast<int>(all1.size()) != d1) {
    res.reason = "degree-1 part does not split into idempotent blocks";
    return res;
  }
  Matrix blocks1(f, d1, d1);  // columns: block basis vectors in degree-1 coordinates
  for (int c = 0; c < d1; ++c)
    for (int r = 0; r < d1; ++r) blocks1(r, c) = all1[c][a.offset(1) + r];
  auto blocks1inv = d1 > 0 ? inverse(blocks1) : std::optional<Matrix>(Matrix(f, 0, 0));

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  long tried = 0;
  do {
    bool fits = true;
    for (int i = 0; i < m && fits; ++i)
      for (int j = 0; j < m && fits; ++j) fits = ba[i][j].size() == bb[perm[i]][perm[j]].size();
    if (!fits) continue;
    // Enumerate one invertible matrix per block.
    std::vector<std::pair<int, int>> bl;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (!ba[i][j].empty()) bl.push_back({i, j});
    std::vector<long> counts;
    long combos = 1;
    for (auto [i, j] : bl) {
      long c = 1;
      const int k = static_cast<int>(ba[i][j].size());
      for (int t = 0; t < k * k; ++t) c *= f.q();
      counts.push_back(c);
      if (combos > cap / c) {
        res.status = IsoStatus::Inconclusive;
        res.reason = "degree-1 search space exceeds the cap";
        return res;
      }
      combos *= c;
    }
    for (long t = 0; t < combos; ++t) {
      if (++tried > cap) {
        res.reason = "search cap reached";
        return res;
      }
      Matrix phi(f, n, n);
      for (int i = 0; i < m; ++i)
        for (int r = 0; r < a.dims[0]; ++r)
          for (int c = 0; c < a.dims[0]; ++c)
            phi(r, c) = f.add(phi(r, c), f.mul((*eb)[perm[i]][r], (*e0inv)(i, c)));
      // degree 1: image of the block basis, then change back to the standard basis
      Matrix img(f, n, d1);
      long rest = t;
      bool inv_ok = true;
      int col = 0;
      for (std::size_t q = 0; q < bl.size() && inv_ok; ++q) {
        auto [i, j] = bl[q];
        const int k = static_cast<int>(ba[i][j].size());
        long code = rest % counts[q];
        rest /= counts[q];
        Matrix g(f, k, k);
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) {
            g(r, c) = static_cast<Elem>(code % f.q());
            code /= f.q();
          }
        if (rank(g) < k) {
          inv_ok = false;
          break;
        }
        const auto& tb = bb[perm[i]][perm[j]];
        for (int c = 0; c < k; ++c, ++col)
          for (int r = 0; r < k; ++r)
            for (int x = 0; x < n; ++x) img(x, col) = f.add(img(x, col), f.mul(g(r, c), tb[r][x]));
      }
      if (!inv_ok) continue;
      if (d1 > 0) {
        Matrix std1 = img * *blocks1inv;
        for (int c = 0; c < d1; ++c)
          for (int r = 0; r < n; ++r) phi(r, a.offset(1) + c) = std1(r, c);
      }
      if (!extend(a, b, *words, phi)) continue;
      if (is_graded_iso(a, b, phi)) {
        res.status = IsoStatus::Iso;
        res.map = phi;
        res.reason.clear();
        return res;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  res.status = IsoStatus::No;
  res.reason = "no degree-preserving isomorphism";
  return res;
}

}  // namespace stabrecon
