// Normal forms for the subgroups of the grid automorphism group that
// contain a finite-index translation lattice.
//
// A group is stored as (lat, pids, tau): its translation subgroup as a
// canonical HNF lattice, the sorted ids of the point elements that occur,
// and for each point element the canonical representative of its
// translation coset.  The group is then exactly
//   { (w, tau_w + lambda) : w in pids, lambda in lat }.
// Membership, equality, hashing and serialization are all O(|pids|).
#ifndef GRID2X_SPACE_GROUP_HPP_
#define GRID2X_SPACE_GROUP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grid2x/grid_algebra.hpp"
#include "grid2x/lattice.hpp"

namespace grid2x {

struct SpaceGroupNF {
  int dim = 0;
  Lattice lat{1};
  std::vector<uint8_t> pids;  // sorted ascending; pids[0] == 0 (identity)
  std::vector<Vec> tau;       // parallel to pids; each reduced by lat

  int npoint() const { return static_cast<int>(pids.size()); }

  /// Bitmask of the point elements present.
  PointMask point_mask() const;

  /// Reduced translation attached to a point id, if present.
  std::optional<Vec> tau_of(uint8_t pid) const;

  bool member(const GridAuto& g) const;

  /// Coset representatives (w, tau_w), one per point element.
  std::vector<GridAuto> transversal() const;

  /// Point elements fixing the origin, i.e. those with tau == 0.
  PointMask stabilizer_origin() const;

  /// Transitive on Z^dim: full-rank lattice whose index equals the
  /// number of distinct tau values.
  bool is_vertex_transitive() const;

  bool operator==(const SpaceGroupNF& other) const;

  /// Canonical one-line form "<lattice>|<auto> <auto> ...", pids ascending.
  std::string serialize() const;
  static SpaceGroupNF parse(const std::string& text, int dim);

  uint64_t hash() const;

  /// Checks every stored invariant and closure of the transversal under
  /// composition and inverse; throws on violation.
  void validate() const;
};

/// Closure of arbitrary generators inside the grid automorphism group.
/// The resulting lattice may have any rank; operations that need full
/// rank state that requirement themselves.
SpaceGroupNF closure(int dim, const std::vector<GridAuto>& gens);

/// Closure of an existing group together with extra elements.
SpaceGroupNF closure_with(const SpaceGroupNF& base,
                          const std::vector<GridAuto>& extra);

/// The symmorphic group S x| lat for a point subgroup mask.
SpaceGroupNF make_symmorphic(int dim, PointMask mask, const Lattice& lat);

/// a^-1 G a for a grid automorphism a.
SpaceGroupNF conjugate(const SpaceGroupNF& g, const GridAuto& a);

/// Whether sub is contained in sup.
bool is_subgroup(const SpaceGroupNF& sub, const SpaceGroupNF& sup);

/// A witness a with conjugate(g1, a) == g2, if one exists.  Searches
/// point parts over the full point group and translation parts over the
/// fundamental domain of g2's lattice, which is exhaustive.
std::optional<GridAuto> are_conjugate(const SpaceGroupNF& g1,
                                      const SpaceGroupNF& g2);

/// Cheap conjugacy-invariant fingerprint used to bucket groups before
/// exact conjugacy tests.
uint64_t conjugacy_invariant(const SpaceGroupNF& g);

/// All subgroups of index 2, each in normal form.
std::vector<SpaceGroupNF> index_two_subgroups(const SpaceGroupNF& g);

// ---- finite point-group machinery ----

/// Multiplication table of a finite group; element 0 is the identity.
struct FiniteGroupTable {
  int n = 0;
  std::vector<uint8_t> mult;

  uint8_t mul(int a, int b) const { return mult[a * n + b]; }
  int inverse(int a) const;
  int order_of(int a) const;
  bool abelian() const;
  int center_size() const;
  int derived_size() const;
};

/// Table of the subgroup of the point group selected by mask.
FiniteGroupTable subgroup_table(const GroupTable& gt, PointMask mask);

/// Human-readable isomorphism type of a group of order dividing 48:
/// one of "1", "C2", "C3", "C4", "C6", "C2xC2", "S3", "C2xC2xC2",
/// "C4xC2", "D8", "A4", "D12", "C2xD8", "C2xA4", "S4", "C2xS4", or
/// "unrecognized(<order>)".
std::string identify_structure(const FiniteGroupTable& g);

/// One conjugacy class of subgroups of the point group.
struct PointClassInfo {
  PointMask rep = 0;                // least member mask
  std::vector<PointMask> members;   // sorted
};

/// All subgroup conjugacy classes of the point group of this dimension,
/// sorted by (subgroup order, least member mask).
const std::vector<PointClassInfo>& point_subgroup_classes(const GroupTable& gt);

/// Index into point_subgroup_classes of the class containing mask.
int point_class_of(const GroupTable& gt, PointMask mask);

/// Least representative of each double coset S x T that meets the
/// candidate set, in increasing id order.
std::vector<int> point_double_coset_reps(const GroupTable& gt, PointMask s,
                                         PointMask t, PointMask candidates);

}  // namespace grid2x

#endif
