#pragma once

#include <string>
#include <vector>

#include "stabrecon/algebra.hpp"

namespace stabrecon {

/// Finite-dimensional Z>=0-graded algebra given by structure constants over a
/// homogeneous basis ordered by degree.
struct GradedAlgebra {
  Field field;
  std::vector<int> dims;            // dims[d] = dimension of the degree-d part
  std::vector<std::string> labels;  // one per basis element
  std::vector<Vec> products;        // products[i * n + j] = coordinates of b_i * b_j

  int total_dim() const;
  int offset(int degree) const;
  int degree_of(int i) const;
  const Vec& product(int i, int j) const { return products[static_cast<std::size_t>(i) * total_dim() + j]; }
  Vec multiply(const Vec& x, const Vec& y) const;

  /// Exhaustive over basis triples.
  bool associative() const;
  /// b_i * b_j lies in degree deg(i) + deg(j).
  bool degree_additive() const;
};

/// The graded algebra of the radical filtration: degree d is rad^d A / rad^{d+1} A.
GradedAlgebra gr_oracle(const Algebra& a);

}  // namespace stabrecon
