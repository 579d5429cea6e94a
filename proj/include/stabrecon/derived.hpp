#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stabrecon/complex.hpp"

namespace stabrecon {

/// Objects of D^b(A) given by complexes, with labels.
struct ComplexFamily {
  std::vector<std::string> labels;
  std::vector<Complex> members;

  int size() const { return static_cast<int>(members.size()); }
};

/// The simple modules as stalk complexes in degree 0.
ComplexFamily simple_family(const AlgebraPtr& a);
/// The indecomposable projectives as stalk complexes in degree 0.
ComplexFamily projective_family(const AlgebraPtr& a);

/// Lowest and highest degree with nonzero cohomology; nullopt if acyclic.
std::optional<std::pair<int, int>> cohomology_range(const Complex& c);

/// Every simple module occurs in the cohomology of some member (a necessary
/// condition for generating D^b(A)).
bool covers_all_simples(const ComplexFamily& s);

enum class TSide { LessEq0, GreaterEq0 };

struct Membership {
  bool pass = true;
  int shift = 0;    // witness i
  int member = -1;  // witness S
  int dim = 0;      // dim of the nonzero Hom
};

/// N in T^{<=0}: Hom(N, S[i]) = 0 for i < 0; N in T^{>=0}: Hom(S[i], N) = 0
/// for i > 0. Only the degrees where these spaces can be nonzero are checked.
Membership t_membership(const Complex& n, const ComplexFamily& s, TSide side);

enum class PatternKind { P, I };

struct HomPatternReport {
  PatternKind kind = PatternKind::I;
  int lo = 0, hi = -1;
  /// dims[t][c][i - lo]: Hom(S_t, C_c[i]) (kind I) or Hom(C_c, S_t[i]) (kind P).
  std::vector<std::vector<std::vector<int>>> dims;
  bool pass = true;
  int t = -1, c = -1, shift = 0;  // first violation

  int at(int t, int c, int i) const;
};

/// Checks Hom(T, I(S)[i]) = k^{delta_{S,T} delta_{i,0}} (kind I) or
/// Hom(P(S), T[i]) = k^{delta_{S,T} delta_{i,0}} (kind P). Candidates must be
/// complexes of projective modules; candidates[c] belongs to family member c.
HomPatternReport verify_family_pattern(const ComplexFamily& s, const std::vector<Complex>& candidates, PatternKind kind);

struct DgCohomology {
  int lo = 0;
  std::vector<int> dims;

  int at(int i) const;
  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
};

/// dim Hom(C, C[i]) for C the direct sum of the family. Without a window,
/// the family must consist of complexes of projectives and the full support
/// of the Hom complex is used.
DgCohomology endo_dg_cohomology(const std::vector<Complex>& family,
                                std::optional<std::pair<int, int>> window = std::nullopt);

enum class NuStatus { Stable, Not, Undecided };

struct NuCheck {
  NuStatus status = NuStatus::Stable;
  std::vector<int> image;  // family index of nu(S_i), -1 if none
  int witness = -1;        // member whose image is not in the family
};

/// Whether the Nakayama functor permutes the family up to isomorphism in D^b.
NuCheck nu_family_check(const ComplexFamily& s, std::uint64_t seed = 0);

/// A filtration N = L_0 >= L_1 >= ... >= L_r by subcomplexes with L_r
/// acyclic, where layer k = L_k / L_{k+1} has cohomology concentrated in
/// degree d[k] and isomorphic to the simple module member[k] there, so that
/// layer k is isomorphic to S[-d[k]] in D^b(A).
struct Tower {
  Complex n;
  std::vector<std::vector<Graded>> levels;  // levels[k][deg - n.lo]
  std::vector<int> member;
  std::vector<int> d;

  int length() const { return static_cast<int>(member.size()); }
  Complex level(int k) const;
  Complex layer(int k) const;
  /// (member, d) pairs, sorted.
  std::vector<std::pair<int, int>> multiset() const;
};

struct TowerCheck {
  bool ok = true;
  std::string reason;
};
TowerCheck check_tower(const Tower& t);

/// Tower with a single layer.
Tower tower_from_layer(const Complex& layer, int member, int d);
/// New top layer on top of t: terms T^n (+) L^n with differential
/// [[d_T, h], [0, d_L]], for h in Hom^1(L, T) with d_T h + h d_L = 0.
Tower tower_extend(const Tower& t, const Complex& layer, int member, int d, const std::vector<std::pair<int, ModuleMap>>& h);

enum class LayerShape { Stalk, Presentation, Copresentation };
/// Complex quasi-isomorphic to S_v[-d]: the stalk complex, Omega S -> P_S in
/// degrees d-1, d, or I_S -> I_S / S in degrees d, d+1.
Complex layer_complex(const AlgebraPtr& a, int v, int d, LayerShape shape);

struct RandomTowerOptions {
  int layers = 3;
  int dmin = -2, dmax = 2;
};
/// Random tower over the simples: random layers glued by random elements of
/// the degree-one cycles of the Hom complex.
Tower random_tower(const AlgebraPtr& a, std::mt19937_64& rng, const RandomTowerOptions& opts = {});

enum class ReorderStep { Swap, Cancel };
struct ReorderLog {
  std::vector<std::pair<ReorderStep, int>> steps;  // step and upper layer index
};

/// Reorders to d non-increasing from the top. Adjacent layers with d[k] <
/// d[k+1] are swapped through the good truncation of L_k / L_{k+2}; when that
/// subquotient is acyclic both layers are removed.
Tower tower_reorder(const Tower& t, ReorderLog* log = nullptr);

struct Truncation {
  int s = 0;
  Complex m;  // L_s: layers with d <= 0
  Complex l;  // N / L_s: layers with d > 0
  Membership m_le0, l_ge1;
};
/// Precondition: d non-increasing. Triangle L_s -> N -> N/L_s with L_s in
/// T^{<=0} and N/L_s in T^{>=1}; both memberships are checked against the simples.
Truncation tower_truncate(const Tower& t);

/// Subcomplex given by submodules of each term (d-stable).
Complex subcomplex(const Complex& c, const std::vector<Graded>& sub);
/// Quotient complex c / sub.
Complex quotient_complex(const Complex& c, const std::vector<Graded>& sub);
/// Subquotient upper / lower for nested subcomplexes.
Complex subquotient(const Complex& c, const std::vector<Graded>& upper, const std::vector<Graded>& lower);

}  // namespace stabrecon
