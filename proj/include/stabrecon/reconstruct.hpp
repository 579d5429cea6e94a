#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabrecon/filtration.hpp"
#include "stabrecon/graded.hpp"

namespace stabrecon {

/// A module with a fixed S-radical filtration.
struct FilteredModule {
  Filtration filtration;
  const Module& module() const { return filtration.module; }
};

struct Generator {
  FilteredModule m;
  /// Padding Q_S chosen for each family member, and every minimal padding found.
  std::vector<std::vector<int>> padding;
  std::vector<std::vector<std::vector<int>>> alternatives;
  /// Summand P_S (+) Q_S of m for each family member.
  Sum blocks;
  RadicalCertificate certificate;
};

/// M = (+)_S (P_S (+) Q_S), filtered by P_S (+) Q_S >= Omega S (+) Q_S followed
/// by the S-radical filtration of Omega S (+) Q_S. Throws PaddingCapExceeded.
Generator generator_build(FiltrationEngine& eng);

/// Degree-i part of Hom_G(M, N): classes in Hom_stab(M_0/M_1, N_i/N_{i+1}) of
/// maps g: M -> N_i with g(M_j) <= N_{i+j}.
struct GradedComponent {
  int degree = 0;
  StableHom stable;           // M_0/M_1 -> N_i/N_{i+1}
  Subspace image;             // in stable coordinates
  std::vector<ModuleMap> lifts;  // filtered maps M -> N_i, one per image basis vector
  std::vector<ModuleMap> null;   // filtered maps with zero class
  int dim() const { return image.dim(); }
};

class GradedHom {
 public:
  GradedHom(const FilteredModule& m, const FilteredModule& n);

  const FilteredModule& src() const { return m_; }
  const FilteredModule& tgt() const { return n_; }
  int max_degree() const { return static_cast<int>(comp_.size()) - 1; }
  const GradedComponent& operator[](int i) const { return comp_[i]; }
  std::vector<int> dims() const;

  /// Filtered maps M -> N_i (all of them).
  std::vector<ModuleMap> filtered_maps(int i) const;
  /// Class of a filtered map M -> N_i in the basis of degree i.
  Vec coordinates(int i, const ModuleMap& g) const;
  ModuleMap lift(int i, const Vec& c) const;

 private:
  FilteredModule m_, n_;
  std::vector<GradedComponent> comp_;
  std::vector<std::vector<ModuleMap>> filtered_;
  std::vector<Quotient> top_m_, layer_n_;
};

GradedHom graded_hom(const FilteredModule& m, const FilteredModule& n);

/// f o g for f in Hom_G(M,N)_i and g in Hom_G(L,M)_j (coordinates), as
/// coordinates in degree i + j of ln = Hom_G(L, N). The lifts used for f and
/// g can be overridden.
Vec graded_compose(const GradedHom& mn, int i, const Vec& f, const GradedHom& lm, int j, const Vec& g,
                   const GradedHom& ln, const std::optional<ModuleMap>& f_lift = std::nullopt,
                   const std::optional<ModuleMap>& g_lift = std::nullopt);

/// End_G(M) with the diagrammatic product b * c = (c o b), which matches the
/// product of gr(A) under Hom(P_v, P_w) = e_v A e_w.
GradedAlgebra end_g(const FilteredModule& m);

enum class IsoStatus { Iso, No, Inconclusive };

struct GradedIsoResult {
  IsoStatus status = IsoStatus::Inconclusive;
  /// Columns: images of the basis of the first algebra (when Iso).
  std::optional<Matrix> map;
  std::string reason;
};

/// Degree-preserving algebra isomorphism search for graded algebras that are
/// basic in degree 0 and generated in degrees 0 and 1. `cap` bounds the number
/// of degree-1 candidates tried.
GradedIsoResult graded_iso_check(const GradedAlgebra& a, const GradedAlgebra& b, long cap = 1L << 22);

/// Checks that `map` (columns = images of basis of a) is a degree-preserving
/// algebra isomorphism.
bool is_graded_iso(const GradedAlgebra& a, const GradedAlgebra& b, const Matrix& map);

}  // namespace stabrecon
