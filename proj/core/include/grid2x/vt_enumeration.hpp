// Enumeration of the vertex-transitive grid-automorphism subgroups of
// a given dimension, up to conjugacy.
//
// Search shape: every transitive group is generated by its origin
// stabilizer together with one element per grid direction mapping the
// origin to that neighbor.  The outer loop fixes the stabilizer's
// point-subgroup conjugacy class (in canonical position); the inner
// search adds one mover per still-uncovered direction, branching only
// over double-coset representatives of the current stabilizer, and
// prunes any branch whose stabilizer escapes the chosen class.
// Results are deduplicated by exact conjugacy within each class.
#ifndef GRID2X_VT_ENUMERATION_HPP_
#define GRID2X_VT_ENUMERATION_HPP_

#include <string>
#include <vector>

#include "grid2x/space_group.hpp"

namespace grid2x {

/// One independent unit of the enumeration: a stabilizer class together
/// with the double-coset representative of the first mover.  Units can
/// run in parallel and are the checkpointing granularity.
struct EnumUnit {
  int stab_class = 0;   // index into point_subgroup_classes
  int first_rep = 0;    // point id of the first direction's mover

  bool operator==(const EnumUnit&) const = default;
};

std::vector<EnumUnit> enumeration_units(int dim);

/// All groups found under one unit whose origin stabilizer equals the
/// unit's class representative exactly; deterministic order, may contain
/// conjugate duplicates across (or within) units.
std::vector<SpaceGroupNF> enumerate_unit(int dim, const EnumUnit& unit);

struct GroupCatalog {
  int dim = 0;
  std::vector<SpaceGroupNF> groups;  // conjugacy class representatives
  std::vector<int> stab_class;      // parallel: point-class index of stab
};

/// Deduplicates per-unit results into conjugacy class representatives.
/// `unit_results` must be parallel to `units`; the outcome does not
/// depend on how the units were scheduled.
GroupCatalog assemble_catalog(int dim, const std::vector<EnumUnit>& units,
                              const std::vector<std::vector<SpaceGroupNF>>&
                                  unit_results);

/// Single-threaded convenience: run every unit and assemble.
GroupCatalog enumerate_vertex_transitive(int dim);

/// Number of conjugacy classes of origin stabilizers that occur among
/// vertex-transitive groups, with their structure names.  Every point
/// subgroup class occurs (witnessed by its symmorphic group), so this
/// is derived directly from the point-class list; the witness property
/// is checked for each class.
struct StabilizerClassRow {
  int class_index = 0;
  int order = 0;
  std::string structure;
  std::string witness;  // serialized symmorphic witness group
};
std::vector<StabilizerClassRow> classify_stabilizers(int dim);

/// Distribution of catalog groups over stabilizer structures.
std::vector<std::pair<std::string, int>> stabilizer_census(
    const GroupCatalog& catalog);

}  // namespace grid2x

#endif
