#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabrecon/matrix.hpp"

namespace stabrecon {

struct Arrow {
  std::string name;
  int src = 0, tgt = 0;
};

/// A path is a list of arrow indices in traversal order: {a, b} means "a, then b".
using Path = std::vector<int>;

struct Term {
  Elem coeff = 1;
  Path path;
};

/// Linear combination of parallel paths.
using Relation = std::vector<Term>;

struct Presentation {
  Field field;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
};

/// Deg-lex order on paths: shorter first, then lexicographic by arrow index.
bool path_less(const Path& a, const Path& b);

struct PathLess {
  bool operator()(const Path& a, const Path& b) const { return path_less(a, b); }
};

class NonAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Basis element of the algebra: a path in normal form. Trivial paths
/// (idempotents) have an empty arrow list and src == tgt.
struct BasisPath {
  int src = 0, tgt = 0;
  Path arrows;
  int length() const { return static_cast<int>(arrows.size()); }
};

/// Bound quiver algebra kQ/I with a normal-form path basis.
///
/// Multiplication follows composition of paths: x * y means "y, then x", so
/// A e_v is spanned by the paths starting at v and is the projective P_v. A basis
/// path p lies in e_w A e_v where v = src(p), w = tgt(p).
struct SelfInjectiveResult;

class Algebra {
 public:
  /// Checks admissibility, completes the relations to a reduction system
  /// (paths longer than `path_cap` abort with NonAdmissible) and builds the
  /// multiplication table.
  static std::shared_ptr<const Algebra> load(const Presentation& pres, int path_cap = 32);

  const Presentation& presentation() const { return pres_; }
  const Field& field() const { return pres_.field; }
  int num_vertices() const { return static_cast<int>(pres_.vertices.size()); }
  int num_arrows() const { return static_cast<int>(pres_.arrows.size()); }
  const Arrow& arrow(int a) const { return pres_.arrows[a]; }
  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisPath>& basis() const { return basis_; }
  const BasisPath& basis_path(int i) const { return basis_[i]; }
  std::string basis_label(int i) const;
  int idempotent(int v) const { return idem_[v]; }
  int arrow_basis(int a) const { return arrow_basis_[a]; }
  /// Index of a normal-form path, or -1.
  int find_basis(int src, const Path& p) const;

  /// Coordinates of basis_i * basis_j.
  const Vec& product(int i, int j) const { return mult_[static_cast<std::size_t>(i) * dim() + j]; }
  Vec multiply(const Vec& x, const Vec& y) const;
  /// Normal form of the path p starting at vertex src (a trivial path if p is empty).
  Vec normal_form(int src, const Path& p) const;
  Vec unit() const;

  /// rad^d A for d = 0 .. loewy_length (the last one is zero), computed as J^d.
  const std::vector<Subspace>& radical_layers() const { return rad_; }
  int loewy_length() const { return static_cast<int>(rad_.size()) - 1; }

  /// Leading terms of the completed reduction system (for inspection).
  std::vector<Path> reduction_leading_terms() const;

  /// Associativity of the structure constants; exhaustive when dim <= limit,
  /// else on a deterministic sample of triples.
  bool check_associativity(int exhaustive_limit = 64) const;

  /// Result of self_injective_check, computed once at load time.
  const SelfInjectiveResult& self_injectivity() const { return *selfinj_; }

 private:
  using Poly = std::map<Path, Elem, PathLess>;

  Presentation pres_;
  std::vector<BasisPath> basis_;
  std::map<std::pair<int, Path>, int> index_;
  std::vector<int> idem_, arrow_basis_;
  std::vector<Vec> mult_;
  std::vector<Subspace> rad_;
  std::vector<Poly> gb_;  // monic, leading term = largest key under deg-lex
  std::shared_ptr<const SelfInjectiveResult> selfinj_;

};

using AlgebraPtr = std::shared_ptr<const Algebra>;

struct NakayamaData {
  std::vector<int> permutation;     // vertex v -> vertex of soc P_v
  std::vector<Vec> socle_vectors;   // spanning vector of soc P_v in algebra coordinates
  std::vector<int> projective_simples;
};

struct SelfInjectiveResult {
  bool self_injective = false;
  std::optional<NakayamaData> data;
  std::string reason;  // why it failed
};

SelfInjectiveResult self_injective_check(const Algebra& a);

enum class SymmetricStatus { Symmetric, NotSymmetric, Undecided };

struct SymmetricResult {
  SymmetricStatus status = SymmetricStatus::NotSymmetric;
  Vec form;  // lambda(basis_i)
  int solution_dim = 0;
};

/// Searches for a symmetric linear form whose pairing is nondegenerate.
SymmetricResult symmetric_check(const Algebra& a, std::uint64_t seed = 0);

}  // namespace stabrecon
