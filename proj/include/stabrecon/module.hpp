#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabrecon/algebra.hpp"

namespace stabrecon {

/// Raised when a bounded search (decomposition, padding, filtration) gives up.
class Undecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecompositionInconclusive : public Undecided {
 public:
  using Undecided::Undecided;
};

/// Finite-dimensional left module given as a quiver representation. Vectors of
/// the module use vertex-major global coordinates: the block of vertex v starts
/// at offset(v).
///
/// Module is a cheap handle to immutable shared data.
class Module {
 public:
  Module() = default;
  /// action[a] is dims[tgt(a)] x dims[src(a)]. Relations are checked.
  Module(AlgebraPtr a, std::vector<int> dims, std::vector<Matrix> action);
  static Module zero(AlgebraPtr a);

  const AlgebraPtr& algebra_ptr() const { return d_->alg; }
  const Algebra& algebra() const { return *d_->alg; }
  const Field& field() const { return d_->alg->field(); }
  bool valid() const { return static_cast<bool>(d_); }

  const std::vector<int>& dims() const { return d_->dims; }
  int dim(int v) const { return d_->dims[v]; }
  int dim() const { return d_->total; }
  int offset(int v) const { return d_->offsets[v]; }
  bool is_zero() const { return d_->total == 0; }

  const Matrix& action(int arrow) const { return d_->action[arrow]; }
  /// Arrow action as a dim() x dim() matrix on global coordinates.
  const Matrix& global_action(int arrow) const { return d_->global[arrow]; }
  /// Action of a path (traversal order) from vertex src as a dim() x dim() matrix.
  Matrix path_action(int src, const Path& p) const;
  /// Action of an algebra element given in basis coordinates.
  Matrix element_action(const Vec& x) const;

  /// Vertex of a global coordinate.
  int vertex_of(int coord) const;
  /// Restrict a global vector to the coordinates of vertex v (padded back with zeros).
  Vec vertex_part(const Vec& x, int v) const;

 private:
  struct Data {
    AlgebraPtr alg;
    std::vector<int> dims, offsets;
    int total = 0;
    std::vector<Matrix> action, global;
  };
  std::shared_ptr<const Data> d_;
};

/// A module homomorphism, stored as a dim(tgt) x dim(src) matrix that is block
/// diagonal with respect to the vertices.
struct ModuleMap {
  Module src, tgt;
  Matrix m;

  ModuleMap() = default;
  ModuleMap(Module s, Module t, Matrix mat);

  Matrix block(int v) const;
  bool is_injective() const { return rank(m) == src.dim(); }
  bool is_surjective() const { return rank(m) == tgt.dim(); }
  bool is_iso() const { return src.dim() == tgt.dim() && is_injective(); }
  bool is_zero() const { return m.is_zero(); }
};

ModuleMap identity_map(const Module& m);
ModuleMap zero_map(const Module& s, const Module& t);
/// g o f
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);
ModuleMap scaled(const ModuleMap& a, Elem s);

/// Checks block structure and commutation with every arrow.
bool is_homomorphism(const Module& s, const Module& t, const Matrix& m);

/// Basis of Hom_A(M, N). Maps are parametrised by the concatenation over
/// vertices of their row-major blocks ("variable coordinates").
class HomSpace {
 public:
  HomSpace() = default;
  HomSpace(Module src, Module tgt);

  const Module& src() const { return src_; }
  const Module& tgt() const { return tgt_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<ModuleMap>& basis() const { return basis_; }
  const ModuleMap& operator[](int i) const { return basis_[i]; }
  /// Subspace of variable coordinates spanned by the basis.
  const Subspace& space() const { return space_; }

  int num_vars() const { return nvars_; }
  Vec to_vars(const Matrix& m) const;
  Matrix from_vars(const Vec& v) const;
  /// Coordinates of a homomorphism in the basis.
  Vec coordinates(const ModuleMap& f) const;
  ModuleMap combine(const Vec& c) const;

 private:
  Module src_, tgt_;
  std::vector<ModuleMap> basis_;
  Subspace space_;
  int nvars_ = 0;
};

HomSpace hom_space(const Module& m, const Module& n);

/// A vertex-graded subspace: one subspace of k^{dim_v} per vertex.
using Graded = std::vector<Subspace>;

Graded graded_zero(const Module& m);
Graded graded_full(const Module& m);
int graded_dim(const Graded& g);
Graded graded_sum(const Graded& a, const Graded& b);
Graded graded_intersect(const Graded& a, const Graded& b);
bool graded_contains(const Graded& a, const Graded& b);
bool graded_equal(const Graded& a, const Graded& b);
/// Vertex components of a subspace of global coordinates (assumed graded).
Graded graded_from_global(const Module& m, const Subspace& s);
Subspace graded_to_global(const Module& m, const Graded& g);
bool is_submodule(const Module& m, const Graded& g);
/// Smallest submodule containing the given global vectors.
Graded submodule_generated(const Module& m, const std::vector<Vec>& gens);
/// f(U) for a submodule U of f.src.
Graded image_of(const ModuleMap& f, const Graded& u);
Graded image_of(const ModuleMap& f);
/// f^{-1}(V) for a submodule V of f.tgt.
Graded preimage_of(const ModuleMap& f, const Graded& v);

struct Embedded {
  Module sub;
  ModuleMap incl;
};

struct Quotient {
  Module quot;
  ModuleMap proj;
  Matrix section;  // dim(M) x dim(Q): linear (not A-linear) right inverse of proj
};

Embedded submodule(const Module& m, const Graded& u);
Quotient quotient(const Module& m, const Graded& u);

Embedded kernel_of(const ModuleMap& f);
Quotient cokernel_of(const ModuleMap& f);

struct Sum {
  Module module;
  std::vector<ModuleMap> inj, proj;
};

Sum direct_sum(const std::vector<Module>& parts);
Module direct_sum(const Module& a, const Module& b);
/// Sum of maps out of the parts: (f_1 ... f_n): (+) src_i -> tgt.
ModuleMap row_map(const Sum& src, const std::vector<ModuleMap>& maps);
/// Map between direct sums given by blocks maps[i][j]: part j -> part i.
ModuleMap block_map(const Sum& src, const Sum& tgt, const std::vector<std::vector<std::optional<ModuleMap>>>& maps);

struct Pullback {
  Module p;
  ModuleMap p1, p2;  // f p1 = g p2
};
struct Pushout {
  Module p;
  ModuleMap i1, i2;  // i1 f = i2 g
};
/// f: X -> Z, g: Y -> Z
Pullback pullback(const ModuleMap& f, const ModuleMap& g);
/// f: Z -> X, g: Z -> Y
Pushout pushout(const ModuleMap& f, const ModuleMap& g);

Graded radical_of(const Module& m);
Graded socle_of(const Module& m);
Quotient top(const Module& m);
Embedded socle(const Module& m);
/// rad^i M for i = 0 .. r with rad^r M = 0.
std::vector<Graded> radical_series(const Module& m);

/// Algebra basis index of each coordinate of P_v (paths starting at v).
std::vector<int> projective_basis(const Algebra& a, int v);
/// Algebra basis index p of each coordinate p* of I_v (paths ending at v).
std::vector<int> injective_basis(const Algebra& a, int v);
Module projective(const AlgebraPtr& a, int v);
Module injective(const AlgebraPtr& a, int v);
/// Regular left module A = (+)_v P_v.
Module regular_module(const AlgebraPtr& a);
Module simple(const AlgebraPtr& a, int v);

struct Cover {
  Module p;
  ModuleMap map;
  std::vector<int> vertices;  // vertex of each indecomposable summand, in order
};

Cover projective_cover(const Module& m);
/// Injective hull (I, injection M -> I).
Cover injective_hull(const Module& m);
/// h: P -> E with surj h = g, where P is the cover module c.p and g: P -> X,
/// surj: E -> X; nullopt when g(P) is not inside the image of surj.
std::optional<ModuleMap> lift_through(const Cover& c, const ModuleMap& g, const ModuleMap& surj);
/// The map P_v -> M sending e_v to x (x supported on vertex v).
ModuleMap map_from_projective(const Module& pv, int v, const Module& m, const Vec& x);
/// Kernel of the projective cover, projective summands kept.
Embedded cover_kernel(const Module& m);
/// Cokernel of the injective hull, injective summands kept.
Quotient hull_cokernel(const Module& m);
/// Omega M: cover kernel with projective summands stripped.
Module syzygy(const Module& m);
Module cosyzygy(const Module& m);
bool is_projective(const Module& m);
bool is_injective(const Module& m);

struct Piece {
  Module module;
  ModuleMap incl;  // split injection into M
  ModuleMap proj;  // matching projection M -> piece
  int iso_class = 0;
};

struct Decomposition {
  std::vector<Piece> pieces;      // indecomposable summands, grouped by iso class
  std::vector<int> multiplicity;  // per iso class
  Matrix iso;                     // (+) pieces -> M, invertible
  int num_classes() const { return static_cast<int>(multiplicity.size()); }
  const Module& representative(int cls) const;
};

struct DecomposeOptions {
  std::uint64_t seed = 0;
  int random_tries = 256;
};

/// Krull-Schmidt decomposition with certified indecomposable summands; throws
/// DecompositionInconclusive when no certificate can be produced.
Decomposition decompose(const Module& m, const DecomposeOptions& opts = {});
/// End(M) local with residue field k (exact certificate), or nullopt when the
/// certificate cannot be produced (which includes every decomposable M).
bool certify_local(const Module& m);
/// Isomorphism test for indecomposable modules (exact).
std::optional<ModuleMap> indecomposable_iso(const Module& a, const Module& b);
/// General isomorphism test via Krull-Schmidt.
std::optional<ModuleMap> find_isomorphism(const Module& a, const Module& b, const DecomposeOptions& opts = {});

struct Stripped {
  Module core;              // no projective summands
  Module proj_part;
  ModuleMap core_incl, core_proj;
  ModuleMap proj_incl, proj_proj;
};
Stripped strip_projectives(const Module& m, const DecomposeOptions& opts = {});

struct ShortExact {
  ModuleMap i, p;  // 0 -> N -i-> M -p-> Q -> 0
  bool valid() const;
};

/// Ext^1(M, N) computed from a projective presentation 0 -> K -> P -> M -> 0 as
/// Hom(K, N) / image of Hom(P, N).
class Ext1 {
 public:
  Ext1(Module m, Module n);
  int dim() const { return dim_; }
  /// Cocycle K -> N representing basis class i.
  ModuleMap cocycle(int i) const;
  /// Class of a cocycle K -> N.
  Vec class_of_cocycle(const ModuleMap& c) const;
  /// Class of a short exact sequence 0 -> N -> E -> M -> 0.
  Vec class_of(const ShortExact& e) const;
  /// Realizes a class as a short exact sequence (pushout of the presentation).
  ShortExact realize(const Vec& cls) const;
  const Embedded& presentation_kernel() const { return kernel_; }
  const Cover& presentation_cover() const { return cover_; }

 private:
  Module m_, n_;
  Cover cover_;
  Embedded kernel_;
  HomSpace hom_kn_;
  Subspace coboundaries_;  // in Hom(K,N) coordinates
  std::vector<int> free_;
  int dim_ = 0;
};

/// Nakayama functor D Hom_A(-, A) on modules and maps.
Module nakayama_module(const Module& m);
/// nu f: nu(src) -> nu(tgt), with the bases produced by nakayama_module.
ModuleMap nakayama_map(const ModuleMap& f);

}  // namespace stabrecon
