// Exact arithmetic for automorphisms of the d-dimensional grid graph:
// signed permutations (the point group) combined with integer translations.
//
// Conventions used throughout the library:
//  - vectors are rows and groups act on the right: v * (g h) = (v * g) * h;
//  - a signed permutation is stored as img[k] = +-(j+1), meaning the k-th
//    basis vector maps to +-(j+1)-th basis vector;
//  - elements are ordered by a fixed total order under which the identity
//    is the least element of every subgroup (see signed_key).
#ifndef GRID2X_GRID_ALGEBRA_HPP_
#define GRID2X_GRID_ALGEBRA_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace grid2x {

inline constexpr int kMaxDim = 3;

using Vec = std::array<int32_t, kMaxDim>;

inline Vec vzero() { return {0, 0, 0}; }

inline Vec unit(int k) {
  Vec v = vzero();
  v[k] = 1;
  return v;
}

inline Vec vadd(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec vsub(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec vneg(const Vec& a) { return {-a[0], -a[1], -a[2]}; }

inline int32_t l1norm(const Vec& a) {
  int32_t s = 0;
  for (int32_t x : a)
    s += x < 0 ? -x : x;
  return s;
}

/// Signed permutation on kMaxDim coordinates; entries beyond the active
/// dimension hold the identity so that one representation serves all dims.
struct SignedPerm {
  std::array<int8_t, kMaxDim> img;

  bool operator==(const SignedPerm&) const = default;
};

/// Ordering key for one signed image entry: absolute value first, then
/// the positive sign before the negative one.  Guarantees that the
/// identity entry (+k) is the least possible image of coordinate k among
/// permutations fixing the earlier coordinates, hence the identity
/// element is least in every subgroup.
inline int signed_key(int8_t s) {
  return 2 * (s < 0 ? -s : s) + (s < 0 ? 1 : 0);
}

bool sp_less(const SignedPerm& a, const SignedPerm& b);

SignedPerm sp_identity();
bool sp_is_identity(const SignedPerm& p);

/// Row-vector action: result[|img[k]|-1] = sign(img[k]) * v[k].
Vec sp_apply(const SignedPerm& p, const Vec& v);

/// Composition in action order: v * sp_compose(a, b) == (v * a) * b.
SignedPerm sp_compose(const SignedPerm& a, const SignedPerm& b);

SignedPerm sp_inverse(const SignedPerm& a);

/// Grid automorphism v -> v * p + t.
struct GridAuto {
  SignedPerm p;
  Vec t;

  bool operator==(const GridAuto&) const = default;
};

GridAuto auto_identity();
bool auto_less(const GridAuto& a, const GridAuto& b);

Vec auto_act(const GridAuto& a, const Vec& v);

/// Composition in action order: auto_act(auto_compose(a, b), v) ==
/// auto_act(b, auto_act(a, v)).
GridAuto auto_compose(const GridAuto& a, const GridAuto& b);

GridAuto auto_invert(const GridAuto& a);

GridAuto auto_translation(const Vec& t);

/// All 2^dim * dim! signed permutations, sorted by sp_less; element 0 is
/// the identity.
std::vector<SignedPerm> hyperoctahedral(int dim);

/// Serialization grammar: "[s1,...,sd];[t1,...,td]".
std::string print_perm(const SignedPerm& p, int dim);
std::string print_auto(const GridAuto& a, int dim);
SignedPerm parse_perm(const std::string& text, int dim);
GridAuto parse_auto(const std::string& text, int dim);

/// Direction encoding for the 2*dim grid directions:
/// dir 2k is +e_{k+1}, dir 2k+1 is -e_{k+1}.
inline Vec dir_vec(int dir) {
  Vec v = vzero();
  v[dir / 2] = (dir % 2 == 0) ? 1 : -1;
  return v;
}

/// Inverse of dir_vec; the argument must be +-e_k.
int vec_dir(const Vec& v);

inline int dir_opposite(int dir) { return dir ^ 1; }

/// Precomputed multiplication structure of the point group of one
/// dimension.  Element ids index the sorted hyperoctahedral() list, so
/// id 0 is always the identity.
class GroupTable {
 public:
  int dim;
  int n;       // group order: 2, 8 or 48
  int ndirs;   // 2 * dim
  std::vector<SignedPerm> elems;
  std::vector<uint8_t> mult;     // mult[a * n + b] = id of elems[a] * elems[b]
  std::vector<uint8_t> inv;      // inverse ids
  std::vector<uint8_t> conj;     // conj[a * n + g] = id of g^-1 * a * g
  std::vector<uint8_t> dir_act;  // dir_act[g * ndirs + dir]: direction image

  int index(const SignedPerm& p) const;

  uint8_t mul(int a, int b) const { return mult[a * n + b]; }
  uint8_t conjugate(int a, int g) const { return conj[a * n + g]; }
  uint8_t act_dir(int g, int dir) const { return dir_act[g * ndirs + dir]; }

  static const GroupTable& get(int dim);

 private:
  explicit GroupTable(int dim);
};

/// Subgroup of the point group as a bitmask over GroupTable element ids.
using PointMask = uint64_t;

PointMask point_closure(const GroupTable& gt, PointMask gens);

}  // namespace grid2x

#endif
