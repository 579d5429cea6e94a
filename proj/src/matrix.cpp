#include "stabrecon/matrix.hpp"

#include <random>
#include <stdexcept>

namespace stabrecon {

Matrix::Matrix(Field f, int rows, int cols, std::vector<Elem> entries)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(rows) * cols) throw std::invalid_argument("matrix entry count mismatch");
}

Matrix Matrix::identity(const Field& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::column(const Field& f, const Vec& v) { return Matrix(f, static_cast<int>(v.size()), 1, v); }
Matrix Matrix::row(const Field& f, const Vec& v) { return Matrix(f, 1, static_cast<int>(v.size()), v); }

Matrix Matrix::from_rows(const Field& f, int cols, const std::vector<Vec>& rows) {
  Matrix m(f, static_cast<int>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) throw std::invalid_argument("row length mismatch");
    for (int c = 0; c < cols; ++c) m(static_cast<int>(r), c) = rows[r][c];
  }
  return m;
}

Vec Matrix::row_vec(int r) const { return Vec(a_.begin() + static_cast<std::ptrdiff_t>(r) * cols_, a_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_); }

Vec Matrix::col_vec(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const {
  for (Elem e : a_)
    if (e) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(f_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(int r, int c, int h, int w) const {
  Matrix b(f_, h, w);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) b(i, j) = (*this)(r + i, c + j);
  return b;
}

void Matrix::set_block(int r, int c, const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) (*this)(r + i, c + j) = m(i, j);
}

Matrix Matrix::cols_subset(const std::vector<int>& idx) const {
  Matrix m(f_, rows_, static_cast<int>(idx.size()));
  for (int r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j) m(r, static_cast<int>(j)) = (*this)(r, idx[j]);
  return m;
}

Matrix Matrix::rows_subset(const std::vector<int>& idx) const {
  Matrix m(f_, static_cast<int>(idx.size()), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int c = 0; c < cols_; ++c) m(static_cast<int>(i), c) = (*this)(idx[i], c);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +");
  Matrix m(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.add(a_[i], o.a_[i]);
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -");
  Matrix m(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.sub(a_[i], o.a_[i]);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  const Field& f = f_.valid() ? f_ : o.f_;
  Matrix m(f, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      Elem a = (*this)(i, k);
      if (!a) continue;
      for (int j = 0; j < o.cols_; ++j) {
        Elem b = o(k, j);
        if (b) m(i, j) = f.add(m(i, j), f.mul(a, b));
      }
    }
  return m;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix m(*this);
  for (auto& e : m.a_) e = f_.mul(e, s);
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector length mismatch in apply");
  Vec out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    Elem acc = 0;
    for (int j = 0; j < cols_; ++j)
      if (v[j]) acc = f_.add(acc, f_.mul((*this)(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

void Matrix::axpy(Elem s, const Matrix& o) {
  if (!s) return;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (o.a_[i]) a_[i] = f_.add(a_[i], f_.mul(s, o.a_[i]));
}

Matrix Matrix::unflatten(const Field& f, int rows, int cols, const Vec& v) { return Matrix(f, rows, cols, v); }

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    os << '[';
    for (int c = 0; c < m.cols(); ++c) os << (c ? " " : "") << static_cast<int>(m(r, c));
    os << "]\n";
  }
  return os;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix m(a.field().valid() ? a.field() : b.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix m(a.field().valid() ? a.field() : b.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.field().valid() ? a.field() : b.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Vec vadd(const Field& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec vsub(const Field& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec vscale(const Field& f, Elem s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(s, a[i]);
  return r;
}

bool vzero(const Vec& a) {
  for (Elem e : a)
    if (e) return false;
  return true;
}

Echelon rref(Matrix m) {
  const Field& f = m.field();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m(r, col)) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Elem s = f.inv(m(row, col));
    for (int c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), s);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || !m(r, col)) continue;
      Elem t = f.neg(m(r, col));
      for (int c = col; c < m.cols(); ++c)
        if (m(row, c)) m(r, c) = f.add(m(r, c), f.mul(t, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

int rank(const Matrix& m) {
  if (m.empty()) return 0;
  return rref(m).rank();
}

Subspace kernel_basis(const Matrix& a) {
  const Field& f = a.field();
  const int n = a.cols();
  if (a.rows() == 0) return Subspace::full(f, n);
  Echelon e = rref(a);
  std::vector<char> is_piv(n, 0);
  for (int p : e.pivots) is_piv[p] = 1;
  std::vector<Vec> gens;
  for (int fc = 0; fc < n; ++fc) {
    if (is_piv[fc]) continue;
    Vec x(n, 0);
    x[fc] = 1;
    for (int i = 0; i < e.rank(); ++i) x[e.pivots[i]] = f.neg(e.form(i, fc));
    gens.push_back(std::move(x));
  }
  if (gens.empty()) return Subspace(f, n);
  return Subspace::span(Matrix::from_rows(f, n, gens));
}

std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
  if (a.rows() != static_cast<int>(b.size())) throw std::invalid_argument("solve_linear: dimension mismatch");
  auto x = solve_right(a, Matrix::column(a.field(), b));
  if (!x) return std::nullopt;
  return x->col_vec(0);
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_right: dimension mismatch");
  const Field& f = a.field().valid() ? a.field() : b.field();
  const int n = a.cols();
  Matrix x(f, n, b.cols());
  if (a.rows() == 0) return x;
  Echelon e = rref(hstack(a, b));
  for (int i = 0; i < e.rank(); ++i)
    if (e.pivots[i] >= n) return std::nullopt;
  for (int i = 0; i < e.rank(); ++i)
    for (int c = 0; c < b.cols(); ++c) x(e.pivots[i], c) = e.form(i, n + c);
  return x;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  auto xt = solve_right(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_right(m, Matrix::identity(m.field(), m.rows()));
}

Subspace::Subspace(Field f, int ambient) : f_(std::move(f)), n_(ambient), basis_(f_, 0, ambient) {}

Subspace Subspace::span(const Matrix& generators) {
  Subspace s(generators.field(), generators.cols());
  if (generators.rows() == 0) return s;
  Echelon e = rref(generators);
  s.basis_ = e.form.block(0, 0, e.rank(), generators.cols());
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::full(const Field& f, int ambient) { return span(Matrix::identity(f, ambient)); }

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (int i = 0; i < dim(); ++i) {
    Elem c = r[pivots_[i]];
    if (!c) continue;
    Elem t = f_.neg(c);
    for (int j = 0; j < n_; ++j)
      if (basis_(i, j)) r[j] = f_.add(r[j], f_.mul(t, basis_(i, j)));
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return vzero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  for (int i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_vec(i))) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

std::vector<int> Subspace::free_columns() const {
  std::vector<char> is_piv(n_, 0);
  for (int p : pivots_) is_piv[p] = 1;
  std::vector<int> out;
  for (int c = 0; c < n_; ++c)
    if (!is_piv[c]) out.push_back(c);
  return out;
}

Vec Subspace::quotient_coords(const Vec& v) const {
  Vec r = reduce(v);
  Vec out;
  for (int c : free_columns()) out.push_back(r[c]);
  return out;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (dim() == 0) return o;
  if (o.dim() == 0) return *this;
  return span(vstack(basis_, o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (dim() == 0 || o.dim() == 0) return Subspace(f_.valid() ? f_ : o.f_, n_);
  // x = a U = b V  <=>  (a, b) in ker [U^T | -V^T]
  Matrix m = hstack(basis_.transpose(), o.basis_.transpose().scaled(f_.neg(1)));
  Subspace k = kernel_basis(m);
  std::vector<Vec> gens;
  for (int i = 0; i < k.dim(); ++i) {
    Vec ab = k.basis_vec(i);
    Vec a(ab.begin(), ab.begin() + dim());
    gens.push_back(basis_.transpose().apply(a));
  }
  if (gens.empty()) return Subspace(f_, n_);
  return span(Matrix::from_rows(f_, n_, gens));
}

Subspace Subspace::image_under(const Matrix& m) const {
  if (dim() == 0) return Subspace(m.field(), m.rows());
  return span(basis_ * m.transpose());
}

CosetSearchResult coset_rank_maximize(const Matrix& f0, const std::vector<Matrix>& directions,
                                      const CosetSearchOptions& opts) {
  const Field& f = f0.field();
  const int n = static_cast<int>(directions.size());
  const int full = opts.target_rank >= 0 ? opts.target_rank : std::min(f0.rows(), f0.cols());
  CosetSearchResult res;
  res.seed = opts.seed;
  res.best = f0;
  res.rank = rank(f0);
  res.coefficients.assign(n, 0);
  if (res.rank >= full || n == 0) {
    res.exhaustive = n == 0;
    return res;
  }

  // q^n, saturating
  std::uint64_t count = 1;
  bool small = true;
  for (int i = 0; i < n && small; ++i) {
    count *= static_cast<std::uint64_t>(f.q());
    if (count > opts.exhaustive_limit) small = false;
  }

  auto consider = [&](const Vec& c) {
    Matrix m = f0;
    for (int i = 0; i < n; ++i) m.axpy(c[i], directions[i]);
    int r = rank(m);
    if (r > res.rank) {
      res.rank = r;
      res.best = std::move(m);
      res.coefficients = c;
    }
    return res.rank >= full;
  };

  if (small) {
    res.exhaustive = true;
    Vec c(n, 0);
    for (std::uint64_t it = 0; it < count; ++it) {
      if (consider(c)) return res;
      for (int i = 0; i < n; ++i) {
        if (++c[i] < f.q()) break;
        c[i] = 0;
      }
    }
    return res;
  }

  // Greedy sweep: accept any single-direction move that raises the rank.
  Vec c(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int s = 1; s < f.q(); ++s) {
      Vec t = c;
      t[i] = f.add(t[i], static_cast<Elem>(s));
      int before = res.rank;
      if (consider(t)) return res;
      if (res.rank > before) {
        c = t;
        break;
      }
    }
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> dist(0, f.q() - 1);
  for (int r = 0; r < opts.random_retries; ++r) {
    Vec t(n);
    for (auto& e : t) e = static_cast<Elem>(dist(rng));
    if (consider(t)) return res;
  }
  return res;
}

}  // namespace stabrecon
