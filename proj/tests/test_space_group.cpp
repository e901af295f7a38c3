#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "grid2x/space_group.hpp"

using namespace grid2x;

namespace {

GridAuto A(const char* s, int dim = 3) { return parse_auto(s, dim); }

/// All products of at most len factors drawn from gens and their
/// inverses (the empty product included).
std::vector<GridAuto> words_up_to(int dim, const std::vector<GridAuto>& gens,
                                  int len) {
  std::vector<GridAuto> alphabet;
  for (const GridAuto& g : gens) {
    alphabet.push_back(g);
    alphabet.push_back(auto_invert(g));
  }
  std::vector<GridAuto> cur = {auto_identity()};
  std::vector<GridAuto> all = cur;
  for (int step = 0; step < len; ++step) {
    std::vector<GridAuto> next;
    for (const GridAuto& w : cur)
      for (const GridAuto& a : alphabet)
        next.push_back(auto_compose(w, a));
    std::sort(next.begin(), next.end(), auto_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    all.insert(all.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  std::sort(all.begin(), all.end(), auto_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<GridAuto> random_gens(std::mt19937_64& rng, int dim, int count) {
  const GroupTable& gt = GroupTable::get(dim);
  std::uniform_int_distribution<int> pick(0, gt.n - 1);
  std::uniform_int_distribution<int32_t> coord(-2, 2);
  std::vector<GridAuto> gens;
  for (int i = 0; i < count; ++i) {
    GridAuto g = {gt.elems[pick(rng)], vzero()};
    for (int k = 0; k < dim; ++k)
      g.t[k] = coord(rng);
    gens.push_back(g);
  }
  return gens;
}

}  // namespace

TEST_CASE("closure of a single translation") {
  SpaceGroupNF g = closure(3, {A("[1,2,3];[1,0,0]")});
  g.validate();
  CHECK(g.npoint() == 1);
  CHECK(g.lat.rank() == 1);
  CHECK(g.member(A("[1,2,3];[5,0,0]")));
  CHECK(!g.member(A("[1,2,3];[0,1,0]")));
  CHECK(!g.is_vertex_transitive());
}

TEST_CASE("closure saturates the lattice under point elements") {
  // A quarter turn plus a unit translation: the rotation forces the
  // perpendicular translation into the lattice.
  SpaceGroupNF g = closure(2, {A("[-2,1];[0,0]", 2), A("[1,2];[1,0]", 2)});
  g.validate();
  CHECK(g.lat.det() == 1);
  CHECK(g.npoint() == 4);
  CHECK(g.is_vertex_transitive());
  CHECK(std::popcount(g.stabilizer_origin()) == 4);
}

TEST_CASE("point reflection through a half-integer center") {
  SpaceGroupNF g = closure(1, {A("[-1];[1]", 1)});
  g.validate();
  CHECK(g.npoint() == 2);
  CHECK(g.lat.rank() == 0);
  CHECK(g.member(A("[-1];[1]", 1)));
  CHECK(!g.member(A("[-1];[0]", 1)));
  CHECK(!g.is_vertex_transitive());
}

TEST_CASE("infinite dihedral group") {
  SpaceGroupNF g = closure(1, {A("[-1];[0]", 1), A("[1];[1]", 1)});
  g.validate();
  CHECK(g.npoint() == 2);
  CHECK(g.lat.det() == 1);
  CHECK(g.is_vertex_transitive());
  CHECK(std::popcount(g.stabilizer_origin()) == 2);
}

TEST_CASE("fourfold screw group is vertex transitive with trivial stabilizer") {
  SpaceGroupNF g = closure(3, {A("[-2,1,3];[0,0,1]"), A("[1,2,3];[1,0,0]")});
  g.validate();
  CHECK(g.npoint() == 4);
  CHECK(g.lat.det() == 4);
  CHECK(g.lat.serialize() == "1,0,0;0,1,0;0,0,4");
  CHECK(g.is_vertex_transitive());
  CHECK(std::popcount(g.stabilizer_origin()) == 1);
  // tau values walk the screw axis.
  std::set<Vec> taus(g.tau.begin(), g.tau.end());
  CHECK(taus == std::set<Vec>{{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}});
}

TEST_CASE("word enumeration oracle: every short word is a member") {
  std::mt19937_64 rng(987654321);
  for (int trial = 0; trial < 40; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 3);
    auto gens = random_gens(rng, dim, 1 + static_cast<int>(rng() % 3));
    SpaceGroupNF g = closure(dim, gens);
    g.validate();
    for (const GridAuto& w : words_up_to(dim, gens, 4))
      CHECK(g.member(w));
  }
}

TEST_CASE("closure is idempotent and minimal on its own transversal") {
  std::mt19937_64 rng(55555);
  for (int trial = 0; trial < 15; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 3);
    auto gens = random_gens(rng, dim, 1 + static_cast<int>(rng() % 2));
    SpaceGroupNF g = closure(dim, gens);
    std::vector<GridAuto> regen = g.transversal();
    for (int i = 0; i < g.lat.rank(); ++i) {
      Vec r = {static_cast<int32_t>(g.lat.rows()[i][0]),
               static_cast<int32_t>(g.lat.rows()[i][1]),
               static_cast<int32_t>(g.lat.rows()[i][2])};
      regen.push_back(auto_translation(r));
    }
    CHECK(closure(dim, regen) == g);
  }
}

TEST_CASE("closure_with extends incrementally") {
  SpaceGroupNF base = closure(3, {A("[-2,1,3];[0,0,1]")});
  SpaceGroupNF ext = closure_with(base, {A("[1,2,3];[1,0,0]")});
  SpaceGroupNF direct =
      closure(3, {A("[-2,1,3];[0,0,1]"), A("[1,2,3];[1,0,0]")});
  CHECK(ext == direct);
}

TEST_CASE("serialization round trip") {
  SpaceGroupNF g = closure(3, {A("[-2,1,3];[0,0,1]"), A("[1,2,3];[1,0,0]")});
  SpaceGroupNF h = SpaceGroupNF::parse(g.serialize(), 3);
  CHECK(g == h);
  CHECK(g.hash() == h.hash());
}

TEST_CASE("conjugation") {
  std::mt19937_64 rng(777);
  const GroupTable& gt = GroupTable::get(3);
  std::uniform_int_distribution<int> pick(0, gt.n - 1);
  std::uniform_int_distribution<int32_t> coord(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    auto gens = random_gens(rng, 3, 1 + static_cast<int>(rng() % 2));
    SpaceGroupNF g = closure(3, gens);
    GridAuto a = {gt.elems[pick(rng)], {coord(rng), coord(rng), coord(rng)}};
    SpaceGroupNF h = conjugate(g, a);
    h.validate();
    CHECK(conjugate(h, auto_invert(a)) == g);
    // Members map to members.
    for (const GridAuto& t : g.transversal()) {
      GridAuto image = auto_compose(auto_compose(auto_invert(a), t), a);
      CHECK(h.member(image));
    }
    // Conjugating by one of the group's own elements fixes the group.
    if (!g.pids.empty()) {
      auto tr = g.transversal();
      CHECK(conjugate(g, tr[rng() % tr.size()]) == g);
    }
  }
}

TEST_CASE("are_conjugate finds witnesses and respects invariants") {
  std::mt19937_64 rng(424242);
  const GroupTable& gt = GroupTable::get(3);
  std::uniform_int_distribution<int> pick(0, gt.n - 1);
  std::uniform_int_distribution<int32_t> coord(-2, 2);
  int found = 0;
  for (int trial = 0; trial < 12; ++trial) {
    // Build a full-rank group: random gens plus scaled axis translations.
    auto gens = random_gens(rng, 3, 1 + static_cast<int>(rng() % 2));
    gens.push_back(A("[1,2,3];[2,0,0]"));
    gens.push_back(A("[1,2,3];[0,2,0]"));
    gens.push_back(A("[1,2,3];[0,0,2]"));
    SpaceGroupNF g = closure(3, gens);
    REQUIRE(g.lat.full_rank());
    GridAuto a = {gt.elems[pick(rng)], {coord(rng), coord(rng), coord(rng)}};
    SpaceGroupNF h = conjugate(g, a);
    auto w = are_conjugate(g, h);
    REQUIRE(w.has_value());
    CHECK(conjugate(g, *w) == h);
    CHECK(conjugacy_invariant(g) == conjugacy_invariant(h));
    ++found;
  }
  CHECK(found == 12);
}

TEST_CASE("are_conjugate separates the screw group from the symmorphic one") {
  SpaceGroupNF screw =
      closure(3, {A("[-2,1,3];[0,0,1]"), A("[1,2,3];[1,0,0]")});
  Lattice lat(3);
  lat.add({1, 0, 0});
  lat.add({0, 1, 0});
  lat.add({0, 0, 4});
  const GroupTable& gt = GroupTable::get(3);
  PointMask c4 = point_closure(gt, PointMask(1) << gt.index(parse_perm("[-2,1,3]", 3)));
  SpaceGroupNF symm = make_symmorphic(3, c4, lat);
  symm.validate();
  CHECK(screw.point_mask() == symm.point_mask());
  CHECK(screw.lat == symm.lat);
  CHECK(!are_conjugate(screw, symm).has_value());
}

TEST_CASE("index two subgroups of the translation line") {
  SpaceGroupNF g = closure(1, {A("[1];[1]", 1)});
  auto subs = index_two_subgroups(g);
  REQUIRE(subs.size() == 1);
  subs[0].validate();
  CHECK(subs[0].lat.det() == 2);
  CHECK(is_subgroup(subs[0], g));
}

TEST_CASE("index two subgroups of the infinite dihedral group") {
  SpaceGroupNF g = closure(1, {A("[-1];[0]", 1), A("[1];[1]", 1)});
  auto subs = index_two_subgroups(g);
  REQUIRE(subs.size() == 3);
  std::set<std::string> forms;
  for (auto& s : subs) {
    s.validate();
    CHECK(is_subgroup(s, g));
    // Index two: lattice index ratio times point ratio equals 2.
    int64_t ratio = (s.lat.det() / g.lat.det()) * (g.npoint() / s.npoint());
    CHECK(ratio == 2);
    forms.insert(s.serialize());
  }
  CHECK(forms.size() == 3);
}

TEST_CASE("index two subgroups of the fourfold screw group") {
  SpaceGroupNF g = closure(3, {A("[-2,1,3];[0,0,1]"), A("[1,2,3];[1,0,0]")});
  auto subs = index_two_subgroups(g);
  REQUIRE(subs.size() == 3);
  for (auto& s : subs) {
    s.validate();
    CHECK(is_subgroup(s, g));
    int64_t ratio = (s.lat.det() / g.lat.det()) * (g.npoint() / s.npoint());
    CHECK(ratio == 2);
  }
}

TEST_CASE("index two subgroups agree with a membership oracle") {
  // Every index-2 subgroup is the kernel of a parity rule; check each
  // returned subgroup is proper, closed, and its complement is one coset.
  std::mt19937_64 rng(13579);
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 1 + static_cast<int>(rng() % 3);
    auto gens = random_gens(rng, dim, 1 + static_cast<int>(rng() % 2));
    for (int k = 0; k < dim; ++k) {
      Vec v = vzero();
      v[k] = 2;
      gens.push_back(auto_translation(v));
    }
    SpaceGroupNF g = closure(dim, gens);
    REQUIRE(g.lat.full_rank());
    auto subs = index_two_subgroups(g);
    std::set<std::string> distinct;
    for (auto& s : subs) {
      s.validate();
      CHECK(is_subgroup(s, g));
      int64_t ratio = (s.lat.det() / g.lat.det()) * (g.npoint() / s.npoint());
      CHECK(ratio == 2);
      distinct.insert(s.serialize());
      // Complement is a single coset: pick any element of g not in s;
      // then every element of g is in s or in s * that element.
      GridAuto odd = auto_identity();
      bool found_odd = false;
      for (const GridAuto& t : g.transversal())
        if (!s.member(t)) {
          odd = t;
          found_odd = true;
          break;
        }
      if (!found_odd) {
        // The point parts all lie in s; the odd element is a lattice
        // basis translation outside s's lattice.
        for (int i = 0; i < g.lat.rank(); ++i) {
          Vec r = {static_cast<int32_t>(g.lat.rows()[i][0]),
                   static_cast<int32_t>(g.lat.rows()[i][1]),
                   static_cast<int32_t>(g.lat.rows()[i][2])};
          if (!s.member(auto_translation(r))) {
            odd = auto_translation(r);
            found_odd = true;
            break;
          }
        }
      }
      REQUIRE(found_odd);
      for (const GridAuto& t : g.transversal()) {
        bool in_s = s.member(t);
        bool in_coset = s.member(auto_compose(t, auto_invert(odd)));
        CHECK(in_s != in_coset);
      }
    }
    CHECK(distinct.size() == subs.size());
  }
}

TEST_CASE("point subgroup classes") {
  const GroupTable& g1 = GroupTable::get(1);
  CHECK(point_subgroup_classes(g1).size() == 2);
  const GroupTable& g2 = GroupTable::get(2);
  size_t total2 = 0;
  for (const auto& c : point_subgroup_classes(g2))
    total2 += c.members.size();
  CHECK(point_subgroup_classes(g2).size() == 8);
  CHECK(total2 == 10);
  const GroupTable& g3 = GroupTable::get(3);
  const auto& classes = point_subgroup_classes(g3);
  CHECK(classes.size() == 33);
  size_t total3 = 0;
  for (const auto& c : classes)
    total3 += c.members.size();
  CHECK(total3 == 98);
  // Every member is a genuine subgroup, classes partition, reps are least.
  std::set<PointMask> seen;
  for (const auto& c : classes) {
    CHECK(c.rep == c.members.front());
    for (PointMask m : c.members) {
      CHECK(point_closure(g3, m) == m);
      CHECK(seen.insert(m).second);
    }
  }
}

TEST_CASE("structure identification over all point subgroup classes") {
  const GroupTable& gt = GroupTable::get(3);
  std::map<std::string, int> census;
  for (const auto& c : point_subgroup_classes(gt))
    census[identify_structure(subgroup_table(gt, c.rep))]++;
  std::map<std::string, int> expected = {
      {"1", 1},      {"C2", 5},       {"C3", 1},     {"C2xC2", 7},
      {"C4", 2},     {"C6", 1},       {"S3", 2},     {"C2xC2xC2", 2},
      {"C4xC2", 1},  {"D8", 4},       {"A4", 1},     {"D12", 1},
      {"C2xD8", 1},  {"C2xA4", 1},    {"S4", 2},     {"C2xS4", 1},
  };
  CHECK(census == expected);
}

TEST_CASE("structure identification on named subgroups") {
  const GroupTable& gt = GroupTable::get(3);
  PointMask full = (PointMask(1) << gt.n) - 1;
  CHECK(identify_structure(subgroup_table(gt, full)) == "C2xS4");
  PointMask rot = point_closure(
      gt, PointMask(1) << gt.index(parse_perm("[1,3,-2]", 3)) |
              PointMask(1) << gt.index(parse_perm("[-3,2,1]", 3)));
  CHECK(identify_structure(subgroup_table(gt, rot)) == "S4");
  PointMask inv = point_closure(
      gt, PointMask(1) << gt.index(parse_perm("[-1,-2,-3]", 3)));
  CHECK(identify_structure(subgroup_table(gt, inv)) == "C2");
  PointMask c4 = point_closure(
      gt, PointMask(1) << gt.index(parse_perm("[-2,1,3]", 3)));
  CHECK(identify_structure(subgroup_table(gt, c4)) == "C4");
  PointMask c6 = point_closure(
      gt, PointMask(1) << gt.index(parse_perm("[-2,-3,-1]", 3)));
  CHECK(identify_structure(subgroup_table(gt, c6)) == "C6");
}

TEST_CASE("double coset representatives cover and are minimal") {
  const GroupTable& gt = GroupTable::get(3);
  PointMask s = point_closure(
      gt, PointMask(1) << gt.index(parse_perm("[-2,1,3]", 3)));
  PointMask t = point_closure(
      gt, PointMask(1) << gt.index(parse_perm("[1,-2,3]", 3)));
  PointMask all = (PointMask(1) << gt.n) - 1;
  auto reps = point_double_coset_reps(gt, s, t, all);
  // Double cosets partition the group; sizes sum to the order.
  std::set<int> covered;
  for (int x : reps)
    for (int a = 0; a < gt.n; ++a)
      if (s >> a & 1)
        for (int b = 0; b < gt.n; ++b)
          if (t >> b & 1)
            covered.insert(gt.mul(gt.mul(a, x), b));
  CHECK(covered.size() == static_cast<size_t>(gt.n));
  // Each rep is the least member of its double coset that is listed.
  for (int x : reps)
    for (int a = 0; a < gt.n; ++a)
      if (s >> a & 1)
        for (int b = 0; b < gt.n; ++b)
          if (t >> b & 1)
            CHECK(gt.mul(gt.mul(a, x), b) >= x);
}
