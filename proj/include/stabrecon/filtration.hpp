#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stabrecon/stable.hpp"

namespace stabrecon {

class NotFiltrable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoneFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No surjection in the stable class of the canonical map; `exhaustive` tells
/// whether the coset search covered the whole coset.
class NoSurjectionInCoset : public std::runtime_error {
 public:
  NoSurjectionInCoset(const std::string& what, bool exhaustive)
      : std::runtime_error(what), exhaustive(exhaustive) {}
  bool exhaustive;
};

class PaddingCapExceeded : public Undecided {
 public:
  using Undecided::Undecided;
};

/// Iso (+)_k S_{order[k]} -> L for a module L in add(S).
struct LayerWitness {
  std::vector<int> mult;   // per member of the family
  std::vector<int> order;  // family index of each summand of `sum`
  Sum sum;
  ModuleMap iso;  // sum.module -> L
};

std::optional<LayerWitness> add_decomposition(const Module& l, const SimpleSet& s, const DecomposeOptions& opts = {});

/// Chain 0 = M_r <= ... <= M_0 = M of submodules with layers in add(S).
struct Filtration {
  Module module;
  std::vector<Graded> chain;            // chain[0] = M, chain.back() = 0
  std::vector<std::vector<int>> mult;   // layer multiplicities per family member

  int length() const { return static_cast<int>(chain.size()) - 1; }
  Embedded level(int i) const;
  /// M_i / M_{i+1} as a quotient of level(i).sub.
  Quotient layer(int i) const;
  int layer_dim(int i) const { return graded_dim(chain[i]) - graded_dim(chain[i + 1]); }
  LayerWitness witness(int i, const SimpleSet& s, const DecomposeOptions& opts = {}) const;
};

/// Builds a filtration from a chain, computing multiplicities; throws
/// std::invalid_argument if the chain is not decreasing or a layer is not in add(S).
Filtration make_filtration(const Module& m, std::vector<Graded> chain, const SimpleSet& s,
                           const DecomposeOptions& opts = {});
/// Checks chain shape and recomputes every layer witness.
bool is_valid_filtration(const Filtration& f, const SimpleSet& s);
/// The same filtration transported along an isomorphism M -> E.
Filtration push_forward(const Filtration& f, const ModuleMap& incl);
/// Filtration induced on M_i (the module of level(i)).
Filtration tail(const Filtration& f, int i);
/// Refinement with one family member per layer.
Filtration refine(const Filtration& f, const SimpleSet& s);
/// Concatenation: outer chain of M down to N = inner.module (embedded by incl),
/// followed by the inner chain.
Filtration concat(const Module& m, const std::vector<Graded>& outer, const std::vector<std::vector<int>>& outer_mult,
                  const Filtration& inner, const ModuleMap& incl);

struct RadicalCertificate {
  std::vector<bool> layer_ok;      // layer in add(S)
  std::vector<bool> surjective;    // Hom_stab(M_i/M_{i+1}, S) -> Hom_stab(M_i, S) onto, all S
  std::vector<bool> injective;     // ... one-to-one, all S
  std::vector<bool> no_remainder;  // M_i has no projective remainder
  std::optional<Violation> violation;
  /// The three conditions, with the level-0 bijectivity and remainder
  /// conditions not required.
  bool radical() const { return !violation.has_value(); }
  /// Radical and M_0 has no projective remainder.
  bool radical_without_remainder() const;
};

struct FiltrationOptions {
  std::uint64_t seed = 0;
  /// Order in which family members are placed in a top layer (empty: 0..n-1).
  std::vector<int> order;
  /// Padding search bound: total dimension of P <= factor * dim A.
  int padding_cap_factor = 4;
  int random_retries = 64;
  DecomposeOptions decompose;
};

struct TopLayer {
  Sum x;                  // (+)_S S^{m_S}, summands in search order
  std::vector<int> order; // family index of each summand of x
  std::vector<int> mult;  // per family member
  ModuleMap f;            // M -> x.module, surjective
  Embedded kernel;
  bool exhaustive = false;
};

struct Remainder {
  Embedded n, p;  // M = N (+) P
  std::vector<int> projective_mult;  // multiplicity of P_v in P
};

/// Filtrability decisions with memoization. Works with a fixed family S,
/// assumed to satisfy the stable Hom pattern.
class FiltrationEngine {
 public:
  explicit FiltrationEngine(SimpleSet s, FiltrationOptions opts = {});
  ~FiltrationEngine();
  FiltrationEngine(const FiltrationEngine&) = delete;
  FiltrationEngine& operator=(const FiltrationEngine&) = delete;

  const SimpleSet& family() const;
  const FiltrationOptions& options() const;

  /// Head of M: surjection onto (+) S^{dim Hom_stab(M,S)} lifting the
  /// canonical stable map. Throws NoSurjectionInCoset.
  TopLayer top_layer(const Module& m) const;

  bool is_filtrable(const Module& m);
  std::optional<Filtration> find_filtration(const Module& m);
  /// Precondition: M filtrable.
  bool has_projective_remainder(const Module& m);
  /// M = N (+) P with P projective maximal such that N is filtrable.
  Remainder strip_remainder(const Module& m);

  /// S-radical filtration; nullopt when M is not filtrable.
  std::optional<Filtration> s_radical_filtration(const Module& m);
  /// One S-radical filtration per admissible first layer (these differ only
  /// when M has a projective remainder).
  std::vector<Filtration> all_s_radical_filtrations(const Module& m);

  /// Multiplicity vectors q (per vertex) of the paddings P = (+) P_v^{q_v}
  /// that are minimal for the summand order among those with M (+) P
  /// filtrable, in order of dimension then lexicographic. Searches up to the
  /// cap and throws PaddingCapExceeded if none is found, or NotFiltrable when
  /// support_obstruction rules out every padding. With `least_only`,
  /// stops after the least dimension that has a solution.
  std::vector<std::vector<int>> minimal_paddings(const Module& m, bool least_only = false);
  /// M (+) P for a padding vector, with the inclusion of M.
  Sum padded(const Module& m, const std::vector<int>& q) const;

  RadicalCertificate verify_s_radical(const Filtration& f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// A vertex where M is nonzero and every family member is zero. Filtrable
/// modules have dimension vectors in the span of the family, so then no
/// M (+) P is filtrable.
std::optional<int> support_obstruction(const Module& m, const SimpleSet& s);

/// Family index S with Hom_stab(M, S) != 0 (or Hom_stab(S, M) != 0 when
/// `source` is set). Throws NoneFound.
int find_nonzero_target(const Module& m, const SimpleSet& s, bool source = false);

/// sigma in Aut(M), sigma ~ id, with f2 = f1 o sigma, for surjections f1 ~ f2.
ModuleMap align_surjections(const ModuleMap& f1, const ModuleMap& f2, const CosetSearchOptions& opts = {});
/// sigma in Aut(M), sigma ~ id, with f2 = sigma o f1, for injections f1 ~ f2.
ModuleMap align_injections(const ModuleMap& f1, const ModuleMap& f2, const CosetSearchOptions& opts = {});

struct Adjusted {
  ModuleMap g;          // M -> S surjective, g ~ f
  Embedded kernel;
  Filtration kernel_filtration;
};
/// Turns a non-projective f: M -> S (S = family member `target`) into a
/// stably equal surjection with filtrable kernel, following the induction on
/// the filtration of M. Throws std::invalid_argument if f is projective.
Adjusted adjust_to_surjection(const ModuleMap& f, int target, const Filtration& fm, const SimpleSet& s);

/// sigma in Aut(M), sigma ~ id, with sigma(F2.M_i) = F1.M_i for all i.
/// Precondition: both S-radical and M without projective remainder.
ModuleMap align_filtrations(const Filtration& f1, const Filtration& f2, const SimpleSet& s,
                            const CosetSearchOptions& opts = {});

/// Module isomorphism M2 -> M1 stably equal to phi (a stable isomorphism).
/// Throws Undecided if the coset search was not exhaustive and found nothing.
std::optional<ModuleMap> stable_iso_lifts(const ModuleMap& phi, const CosetSearchOptions& opts = {});

/// Automorphism of M carrying the submodule of e1 onto the submodule of e2,
/// for two short exact sequences 0 -> S -> M -> T -> 0 with terms in S, not
/// both split, over a symmetric algebra.
std::optional<ModuleMap> symmetric_two_step_swap(const ShortExact& e1, const ShortExact& e2, const SimpleSet& s,
                                                 const CosetSearchOptions& opts = {});

}  // namespace stabrecon
