#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stabrecon/stable.hpp"

namespace stabrecon {

/// Bounded cochain complex X^lo -> ... -> X^hi of modules (cohomological
/// degrees). diff[k] : terms[k] -> terms[k+1].
struct Complex {
  AlgebraPtr alg;
  int lo = 0;
  std::vector<Module> terms;
  std::vector<ModuleMap> diff;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool empty() const { return terms.empty(); }
  /// X^n (zero outside the support).
  Module term(int n) const;
  /// d^n : X^n -> X^{n+1}.
  ModuleMap d(int n) const;
  int total_dim() const;
};

/// Checks shapes, homomorphisms and d o d = 0; throws std::invalid_argument.
Complex make_complex(const AlgebraPtr& a, int lo, std::vector<Module> terms, std::vector<ModuleMap> diff);
bool is_complex(const Complex& c);
Complex zero_complex(const AlgebraPtr& a);
/// M placed in degree n.
Complex stalk(const Module& m, int n = 0);
/// X[k]: X[k]^n = X^{n+k}, d_{X[k]} = (-1)^k d_X.
Complex shift(const Complex& c, int k);
/// Drops zero terms at both ends.
Complex trim(const Complex& c);
Complex direct_sum(const std::vector<Complex>& parts);
bool all_projective(const Complex& c);

/// Dimension of H^n for n = lo .. hi.
std::vector<int> cohomology_dims(const Complex& c);
int cohomology_dim(const Complex& c, int n);
Quotient cohomology(const Complex& c, int n);
bool is_acyclic(const Complex& c);
/// Cohomology concentrated in a single degree: that degree, else nullopt.
std::optional<int> concentrated_degree(const Complex& c);

/// Chain map components f^n : X^n -> Y^n for n = x.lo .. x.hi.
struct ChainMap {
  Complex src, tgt;
  std::vector<ModuleMap> f;
  ModuleMap at(int n) const;
};
bool is_chain_map(const ChainMap& f);
/// Nakayama functor applied termwise.
Complex nakayama_complex(const Complex& c);

/// The Hom complex Hom^n(X, Y) = prod_k Hom(X^k, Y^{k+n}) with
/// D f = d_Y f - (-1)^n f d_X.
class HomComplex {
 public:
  HomComplex(Complex x, Complex y);
  int dim(int n) const;
  /// Basis maps of degree n: (k, map X^k -> Y^{k+n}).
  std::vector<std::pair<int, ModuleMap>> basis(int n) const;
  Matrix differential(int n) const;
  int cohomology_dim(int n) const;
  /// Degree-0 cycles (chain maps) as coordinate vectors, and the boundaries.
  Subspace cycles(int n) const;
  Subspace boundaries(int n) const;
  ChainMap chain_map(const Vec& coords) const;
  int min_degree() const { return x_.empty() || y_.empty() ? 0 : y_.lo - x_.hi(); }
  int max_degree() const { return x_.empty() || y_.empty() ? -1 : y_.hi() - x_.lo; }

 private:
  struct Block {
    int k;
    HomSpace h;
    int offset;
  };
  const std::vector<Block>& blocks(int n) const;
  Complex x_, y_;
  mutable std::map<int, std::vector<Block>> cache_;
};

struct Resolution {
  Complex p;
  ChainMap pi;  // p -> x, a quasi-isomorphism above the lowest degree
};

/// Projective resolution built down to degree `lowest` (brutal truncation);
/// stops earlier when the resolution is finite.
Resolution projective_resolution(const Complex& x, int lowest);

/// dim Hom_{D^b}(X, Y[n]) for n = a .. b. Uses X (or Y) directly when it is
/// a complex of projectives (or injectives), else a truncated projective
/// resolution of X reaching `extra_depth` degrees below what the window needs.
std::vector<int> derived_hom_dims(const Complex& x, const Complex& y, int a, int b, int extra_depth = 0);

struct DerivedIso {
  bool iso = false;
  bool certain = true;
};
/// Isomorphism in D^b(A): searches for a chain map inducing isomorphisms on
/// all cohomology.
DerivedIso derived_isomorphic(const Complex& x, const Complex& y, std::uint64_t seed = 0);

}  // namespace stabrecon
