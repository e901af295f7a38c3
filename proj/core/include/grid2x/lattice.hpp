// Sublattices of Z^dim as row-style Hermite normal forms.
//
// The HNF is kept canonical at all times: pivots positive, pivot columns
// strictly increasing, entries above a pivot reduced into [0, pivot).
// For a full-rank lattice the canonical coset representatives form the
// box prod_k [0, H_kk), which the rest of the library uses as the
// fundamental domain of the translation subgroup.
#ifndef GRID2X_LATTICE_HPP_
#define GRID2X_LATTICE_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "grid2x/grid_algebra.hpp"

namespace grid2x {

class Lattice {
 public:
  using Row = std::array<int64_t, kMaxDim>;

  explicit Lattice(int dim);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  bool full_rank() const { return rank_ == dim_; }

  /// Valid rows are rows()[0..rank()-1].
  const std::array<Row, kMaxDim>& rows() const { return rows_; }

  /// Adds the span of v; returns true if the lattice grew.
  bool add(const Vec& v);

  /// Merges another lattice in; returns true if this one grew.
  bool add(const Lattice& other);

  /// Canonical representative of v modulo the lattice.
  Vec reduce(const Vec& v) const;

  bool contains(const Vec& v) const;

  bool is_zero(const Vec& v) const { return reduce(v) == vzero(); }

  /// Index of the lattice in Z^dim; 0 when not of full rank.
  int64_t det() const;

  /// The lattice spanned by row * p for each row.
  Lattice transformed(const SignedPerm& p) const;

  /// Full-rank only: the box sizes (H_00, ..., H_{dim-1,dim-1}).
  Vec diag() const;

  /// Full-rank only: least p_k >= 1 with p_k * e_k in the lattice.
  Vec diagonal_periods() const;

  bool operator==(const Lattice& other) const;

  /// "r11,r12,..;r21,.." over the first rank() rows.
  std::string serialize() const;
  static Lattice parse(const std::string& text, int dim);

  uint64_t hash() const;

 private:
  void normalize();
  void normalize_rows(Row* w, int nrows);

  int dim_;
  int rank_;
  std::array<Row, kMaxDim> rows_;
};

/// Enumerates the canonical representatives of Z^dim modulo a full-rank
/// lattice (the det() points of the fundamental box) in row-major order.
std::vector<Vec> fundamental_domain(const Lattice& lat);

}  // namespace grid2x

#endif
