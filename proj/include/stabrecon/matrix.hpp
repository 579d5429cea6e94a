#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "stabrecon/field.hpp"

namespace stabrecon {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, int rows, int cols) : f_(std::move(f)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}
  Matrix(Field f, int rows, int cols, std::vector<Elem> entries);

  static Matrix identity(const Field& f, int n);
  static Matrix column(const Field& f, const Vec& v);
  static Matrix row(const Field& f, const Vec& v);
  /// Rows of the result are the given vectors (all of length `cols`).
  static Matrix from_rows(const Field& f, int cols, const std::vector<Vec>& rows);

  const Field& field() const { return f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const std::vector<Elem>& data() const { return a_; }

  Vec row_vec(int r) const;
  Vec col_vec(int c) const;
  bool is_zero() const;

  Matrix transpose() const;
  Matrix block(int r, int c, int h, int w) const;
  void set_block(int r, int c, const Matrix& m);
  Matrix cols_subset(const std::vector<int>& idx) const;
  Matrix rows_subset(const std::vector<int>& idx) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(Elem s) const;
  Vec apply(const Vec& v) const;
  /// this += s * o
  void axpy(Elem s, const Matrix& o);

  /// Entries flattened row-major (used as coordinates in linear systems).
  Vec flatten() const { return a_; }
  static Matrix unflatten(const Field& f, int rows, int cols, const Vec& v);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Field f_;
  int rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// Block diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

Vec vadd(const Field& f, const Vec& a, const Vec& b);
Vec vsub(const Field& f, const Vec& a, const Vec& b);
Vec vscale(const Field& f, Elem s, const Vec& a);
bool vzero(const Vec& a);

/// Reduced row echelon form. Pivot search is leftmost column first, and within
/// a column the smallest row index at or below the current pivot row.
struct Echelon {
  Matrix form;
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

Echelon rref(Matrix m);
int rank(const Matrix& m);

class Subspace;

/// Canonical basis of {x : A x = 0}.
Subspace kernel_basis(const Matrix& a);

/// Lexicographically first pivot solution of A x = b (free variables zero).
/// Throws std::invalid_argument on a dimension mismatch.
std::optional<Vec> solve_linear(const Matrix& a, const Vec& b);

/// Solve X * A = B for X (rows independently). nullopt when inconsistent.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);
/// Solve A * X = B for X (columns independently).
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

/// Linear subspace of F^n, stored as a reduced row echelon basis. Two equal
/// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, int ambient);  // zero subspace
  /// Span of the rows of `generators`.
  static Subspace span(const Matrix& generators);
  static Subspace full(const Field& f, int ambient);

  const Field& field() const { return f_; }
  int ambient() const { return n_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Vec basis_vec(int i) const { return basis_.row_vec(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  /// Canonical representative of v modulo this subspace (pivot entries cleared).
  Vec reduce(const Vec& v) const;
  /// Coordinates of v in the echelon basis; nullopt if v is not in the span.
  std::optional<Vec> coordinates(const Vec& v) const;
  /// Non-pivot coordinates: a basis of the quotient F^n / this.
  std::vector<int> free_columns() const;
  Vec quotient_coords(const Vec& v) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  /// Image under the linear map x -> M x (M is m x n).
  Subspace image_under(const Matrix& m) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  Field f_;
  int n_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

struct CosetSearchOptions {
  std::uint64_t seed = 0;
  int random_retries = 64;
  /// Exhaustive enumeration when q^|directions| <= this.
  std::uint64_t exhaustive_limit = 1u << 16;
  /// Stop as soon as this rank is reached (-1: min(rows, cols)).
  int target_rank = -1;
};

struct CosetSearchResult {
  Matrix best;
  int rank = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  Vec coefficients;  // best = f0 + sum_i coefficients[i] * directions[i]
};

/// Element of maximal rank in the affine coset f0 + span(directions).
CosetSearchResult coset_rank_maximize(const Matrix& f0, const std::vector<Matrix>& directions,
                                      const CosetSearchOptions& opts = {});

}  // namespace stabrecon
