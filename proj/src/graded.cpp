#include "stabrecon/graded.hpp"

#include <stdexcept>

namespace stabrecon {

int GradedAlgebra::total_dim() const {
  int n = 0;
  for (int d : dims) n += d;
  return n;
}

int GradedAlgebra::offset(int degree) const {
  int n = 0;
  for (int d = 0; d < degree && d < static_cast<int>(dims.size()); ++d) n += dims[d];
  return n;
}

int GradedAlgebra::degree_of(int i) const {
  for (int d = 0; d < static_cast<int>(dims.size()); ++d) {
    if (i < dims[d]) return d;
    i -= dims[d];
  }
  throw std::out_of_range("basis index out of range");
}

Vec GradedAlgebra::multiply(const Vec& x, const Vec& y) const {
  const int n = total_dim();
  Vec out(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (!y[j]) continue;
      Elem c = field.mul(x[i], y[j]);
      const Vec& p = product(i, j);
      for (int k = 0; k < n; ++k)
        if (p[k]) out[k] = field.add(out[k], field.mul(c, p[k]));
    }
  }
  return out;
}

bool GradedAlgebra::associative() const {
  const int n = total_dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec& ij = product(i, j);
      for (int k = 0; k < n; ++k) {
        Vec ek(n, 0), ei(n, 0);
        ek[k] = 1;
        ei[i] = 1;
        if (multiply(ij, ek) != multiply(ei, product(j, k))) return false;
      }
    }
  return true;
}

bool GradedAlgebra::degree_additive() const {
  const int n = total_dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = degree_of(i) + degree_of(j);
      const Vec& p = product(i, j);
      for (int k = 0; k < n; ++k)
        if (p[k] && degree_of(k) != d) return false;
    }
  return true;
}

GradedAlgebra gr_oracle(const Algebra& a) {
  const Field& f = a.field();
  const auto& rad = a.radical_layers();
  const int n = a.dim();
  GradedAlgebra g;
  g.field = f;
  // Degree-d representatives: canonical complement of rad^{d+1} inside rad^d,
  // supported on the free columns of rad^{d+1}.
  std::vector<std::vector<Vec>> reps;
  std::vector<Subspace> quot;  // image of rad^d in quotient coordinates modulo rad^{d+1}
  for (std::size_t d = 0; d + 1 < rad.size(); ++d) {
    const Subspace& next = rad[d + 1];
    std::vector<int> freec = next.free_columns();
    std::vector<Vec> q;
    for (int r = 0; r < rad[d].dim(); ++r) q.push_back(next.quotient_coords(rad[d].basis_vec(r)));
    Subspace qs = Subspace::span(Matrix::from_rows(f, static_cast<int>(freec.size()), q));
    std::vector<Vec> lifted;
    for (int r = 0; r < qs.dim(); ++r) {
      Vec x(n, 0);
      Vec row = qs.basis_vec(r);
      for (std::size_t c = 0; c < freec.size(); ++c) x[freec[c]] = row[c];
      lifted.push_back(std::move(x));
    }
    g.dims.push_back(qs.dim());
    reps.push_back(std::move(lifted));
    quot.push_back(std::move(qs));
  }
  for (std::size_t d = 0; d < reps.size(); ++d)
    for (std::size_t r = 0; r < reps[d].size(); ++r) {
      // label by the leading basis path of the representative
      const Vec& x = reps[d][r];
      std::string lab;
      for (int i = 0; i < n && lab.empty(); ++i)
        if (x[i]) lab = a.basis_label(i);
      g.labels.push_back(lab);
    }
  const int N = g.total_dim();
  g.products.assign(static_cast<std::size_t>(N) * N, Vec(N, 0));
  for (std::size_t di = 0; di < reps.size(); ++di)
    for (std::size_t dj = 0; dj < reps.size(); ++dj) {
      const std::size_t dk = di + dj;
      if (dk >= reps.size()) continue;
      const Subspace& next = rad[dk + 1];
      for (std::size_t i = 0; i < reps[di].size(); ++i)
        for (std::size_t j = 0; j < reps[dj].size(); ++j) {
          Vec p = a.multiply(reps[di][i], reps[dj][j]);
          auto c = quot[dk].coordinates(next.quotient_coords(p));
          if (!c) throw std::logic_error("product left the radical layer");
          Vec& out = g.products[static_cast<std::size_t>(g.offset(static_cast<int>(di)) + i) * N + g.offset(static_cast<int>(dj)) + j];
          for (std::size_t k = 0; k < c->size(); ++k) out[g.offset(static_cast<int>(dk)) + k] = (*c)[k];
        }
    }
  return g;
}

}  // namespace stabrecon
