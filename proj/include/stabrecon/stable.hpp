#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabrecon/module.hpp"

namespace stabrecon {

class NotSelfInjective : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws NotSelfInjective unless the algebra passed self_injective_check.
void require_self_injective(const Algebra& a);

/// Maps M -> N factoring through a projective module, as a subspace of the
/// coordinates of h (a basis of Hom(M, N)). Computed as Hom(I, N) o iota for
/// the injective hull iota: M -> I.
Subspace projective_maps(const HomSpace& h);
Subspace projective_maps(const Module& m, const Module& n);

/// Basis of the projective maps M -> N, as homomorphisms.
std::vector<ModuleMap> projective_map_basis(const Module& m, const Module& n);

/// Solutions c of sum_k c_k images[k] = target: one particular solution (if
/// any) and a basis of the homogeneous solutions.
struct SpanSolution {
  std::optional<Vec> particular;
  std::vector<Vec> kernel;
};
SpanSolution solve_in_span(const Field& f, const std::vector<ModuleMap>& images, const ModuleMap& target);
ModuleMap combine_maps(const Module& s, const Module& t, const std::vector<ModuleMap>& maps, const Vec& c);

/// q: M -> X projective with q o i = p, for i: N -> M injective and p: N -> X
/// projective; nullopt if p is not projective.
std::optional<ModuleMap> extend_projective(const ModuleMap& p, const ModuleMap& i);

/// Hom in the stable category, realized as Hom(M,N) modulo projective maps.
class StableHom {
 public:
  StableHom() = default;
  StableHom(Module m, Module n);

  const Module& src() const { return hom_.src(); }
  const Module& tgt() const { return hom_.tgt(); }
  const HomSpace& hom() const { return hom_; }
  const Subspace& projective_subspace() const { return proj_; }
  int total_dim() const { return hom_.dim(); }
  int dim() const { return static_cast<int>(reps_.size()); }

  /// Coset representatives of a basis of the stable Hom space.
  const std::vector<ModuleMap>& representatives() const { return reps_; }
  const ModuleMap& operator[](int i) const { return reps_[i]; }
  /// Stable coordinates of a homomorphism M -> N.
  Vec coordinates(const ModuleMap& f) const;
  ModuleMap representative(const Vec& c) const;
  bool is_projective_map(const ModuleMap& f) const;
  bool stably_equal(const ModuleMap& f, const ModuleMap& g) const;

 private:
  HomSpace hom_;
  Subspace proj_;
  std::vector<int> free_;
  std::vector<ModuleMap> reps_;
};

StableHom stable_hom(const Module& m, const Module& n);
bool is_projective_map(const ModuleMap& f);

/// f: M -> N and g: N -> M with g f ~ id_M and f g ~ id_N.
struct StableIso {
  ModuleMap f, g;
};

/// Strips projective summands from both sides and compares the remainders.
std::optional<StableIso> stably_isomorphic(const Module& m, const Module& n, const DecomposeOptions& opts = {});

struct SimpleSet {
  std::vector<std::string> labels;
  std::vector<Module> modules;
  std::vector<bool> indecomposable;
  std::vector<bool> projective;
  /// pattern[i][j] = dim Hom_stab(S_i, S_j); -1 where not computed.
  std::vector<std::vector<int>> pattern;
};

struct Violation {
  int i = -1, j = -1;
  std::string reason;
};

struct SimpleSetCheck {
  SimpleSet set;
  std::optional<Violation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// Checks that every candidate is indecomposable and non-projective and that
/// the stable Hom spaces follow the Kronecker pattern. The full pattern is
/// computed even when a violation is found; the first violation is reported.
SimpleSetCheck check_simple_set(const std::vector<Module>& candidates, const std::vector<std::string>& labels = {},
                                const DecomposeOptions& opts = {});

}  // namespace stabrecon
