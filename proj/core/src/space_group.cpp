#include "grid2x/space_group.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <mutex>
#include <set>

#include "grid2x/error.hpp"

namespace grid2x {

namespace {

Vec row_to_vec(const Lattice::Row& r) {
  for (int64_t x : r)
    require(x >= INT32_MIN && x <= INT32_MAX, "lattice row out of vec range");
  return {static_cast<int32_t>(r[0]), static_cast<int32_t>(r[1]),
          static_cast<int32_t>(r[2])};
}

}  // namespace

// ---------------- SpaceGroupNF ----------------

PointMask SpaceGroupNF::point_mask() const {
  PointMask m = 0;
  for (uint8_t p : pids)
    m |= PointMask(1) << p;
  return m;
}

std::optional<Vec> SpaceGroupNF::tau_of(uint8_t pid) const {
  auto it = std::lower_bound(pids.begin(), pids.end(), pid);
  if (it == pids.end() || *it != pid)
    return std::nullopt;
  return tau[it - pids.begin()];
}

bool SpaceGroupNF::member(const GridAuto& g) const {
  const GroupTable& gt = GroupTable::get(dim);
  auto t = tau_of(static_cast<uint8_t>(gt.index(g.p)));
  return t && lat.reduce(g.t) == *t;
}

std::vector<GridAuto> SpaceGroupNF::transversal() const {
  const GroupTable& gt = GroupTable::get(dim);
  std::vector<GridAuto> out;
  out.reserve(pids.size());
  for (size_t i = 0; i < pids.size(); ++i)
    out.push_back({gt.elems[pids[i]], tau[i]});
  return out;
}

PointMask SpaceGroupNF::stabilizer_origin() const {
  PointMask m = 0;
  for (size_t i = 0; i < pids.size(); ++i)
    if (tau[i] == vzero())
      m |= PointMask(1) << pids[i];
  return m;
}

bool SpaceGroupNF::is_vertex_transitive() const {
  if (!lat.full_rank())
    return false;
  std::set<Vec> residues(tau.begin(), tau.end());
  return static_cast<int64_t>(residues.size()) == lat.det();
}

bool SpaceGroupNF::operator==(const SpaceGroupNF& other) const {
  return dim == other.dim && lat == other.lat && pids == other.pids &&
         tau == other.tau;
}

std::string SpaceGroupNF::serialize() const {
  const GroupTable& gt = GroupTable::get(dim);
  std::string s = lat.serialize();
  s += '|';
  for (size_t i = 0; i < pids.size(); ++i) {
    if (i)
      s += ' ';
    s += print_auto({gt.elems[pids[i]], tau[i]}, dim);
  }
  return s;
}

SpaceGroupNF SpaceGroupNF::parse(const std::string& text, int dim) {
  size_t bar = text.find('|');
  require(bar != std::string::npos,
          "SpaceGroupNF::parse: expected '|' in \"" + text + "\"");
  const GroupTable& gt = GroupTable::get(dim);
  SpaceGroupNF g;
  g.dim = dim;
  g.lat = Lattice::parse(text.substr(0, bar), dim);
  std::vector<std::pair<uint8_t, Vec>> entries;
  size_t pos = bar + 1;
  while (pos < text.size()) {
    size_t sp = text.find(' ', pos);
    if (sp == std::string::npos)
      sp = text.size();
    GridAuto a = parse_auto(text.substr(pos, sp - pos), dim);
    entries.push_back({static_cast<uint8_t>(gt.index(a.p)), g.lat.reduce(a.t)});
    pos = sp + 1;
  }
  std::sort(entries.begin(), entries.end());
  for (auto& [pid, t] : entries) {
    g.pids.push_back(pid);
    g.tau.push_back(t);
  }
  g.validate();
  return g;
}

uint64_t SpaceGroupNF::hash() const {
  uint64_t h = lat.hash() ^ 0x9e3779b97f4a7c15ull;
  auto mix = [&h](uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<uint64_t>(dim));
  for (size_t i = 0; i < pids.size(); ++i) {
    mix(pids[i]);
    for (int k = 0; k < kMaxDim; ++k)
      mix(static_cast<uint64_t>(static_cast<int64_t>(tau[i][k])));
  }
  return h;
}

void SpaceGroupNF::validate() const {
  require(dim >= 1 && dim <= kMaxDim, "NF: bad dim");
  require(lat.dim() == dim, "NF: lattice dim mismatch");
  require(!pids.empty() && pids[0] == 0, "NF: identity coset missing");
  require(tau.size() == pids.size(), "NF: tau size mismatch");
  require(tau[0] == vzero(), "NF: identity coset has nonzero tau");
  const GroupTable& gt = GroupTable::get(dim);
  for (size_t i = 0; i < pids.size(); ++i) {
    require(pids[i] < gt.n, "NF: pid out of range");
    if (i)
      require(pids[i - 1] < pids[i], "NF: pids not strictly sorted");
    require(lat.reduce(tau[i]) == tau[i], "NF: tau not reduced");
  }
  // The lattice must be invariant under every point element present.
  for (uint8_t pid : pids)
    require(lat.transformed(gt.elems[pid]) == lat,
            "NF: lattice not invariant under point element");
  // Closure under composition and inverse.
  auto tr = transversal();
  for (const GridAuto& a : tr) {
    require(member(auto_invert(a)), "NF: not closed under inverse");
    for (const GridAuto& b : tr)
      require(member(auto_compose(a, b)), "NF: not closed under product");
  }
}

// ---------------- closure ----------------

namespace {

struct ClosureState {
  int dim;
  const GroupTable& gt;
  Lattice lam;
  std::array<int16_t, 64> slot;  // pid -> index into rpids, or -1
  std::vector<uint8_t> rpids;
  std::vector<Vec> rtau;
  std::deque<int> work;
  std::vector<bool> queued;

  explicit ClosureState(int d) : dim(d), gt(GroupTable::get(d)), lam(d) {
    slot.fill(-1);
    push(0, vzero());
  }

  void enqueue(int i) {
    if (!queued[i]) {
      queued[i] = true;
      work.push_back(i);
    }
  }

  void push(uint8_t pid, const Vec& t) {
    slot[pid] = static_cast<int16_t>(rpids.size());
    rpids.push_back(pid);
    rtau.push_back(t);
    queued.push_back(false);
    enqueue(static_cast<int>(rpids.size()) - 1);
  }

  /// Makes lam invariant under every point element seen so far; returns
  /// whether lam grew.  A fixed point of L*w subset L for each w gives
  /// L*w == L because the point elements have finite order.
  bool saturate() {
    bool grew_any = false;
    bool grew = true;
    while (grew) {
      grew = false;
      for (uint8_t pid : rpids) {
        const SignedPerm& w = gt.elems[pid];
        auto rows = lam.rows();  // copy: add() mutates under us otherwise
        int rk = lam.rank();
        for (int i = 0; i < rk; ++i)
          grew |= lam.add(sp_apply(w, row_to_vec(rows[i])));
      }
      grew_any |= grew;
    }
    return grew_any;
  }

  /// After lam grows every stored representative must be re-reduced and
  /// every pairing revisited: products that previously forced lattice
  /// vectors may now collapse, and vice versa.
  void on_lattice_growth() {
    saturate();
    for (size_t i = 0; i < rpids.size(); ++i) {
      rtau[i] = lam.reduce(rtau[i]);
      enqueue(static_cast<int>(i));
    }
  }

  void incorporate(uint8_t pid, const Vec& t0) {
    Vec t = lam.reduce(t0);
    int s = slot[pid];
    if (s < 0) {
      push(pid, t);
      if (saturate())
        on_lattice_growth();
      return;
    }
    Vec diff = vsub(t, rtau[s]);
    if (!lam.contains(diff)) {
      require(lam.add(diff), "closure: lattice add failed");
      on_lattice_growth();
    }
  }

  void incorporate(const GridAuto& g) {
    incorporate(static_cast<uint8_t>(gt.index(g.p)), g.t);
  }

  void run() {
    while (!work.empty()) {
      int i = work.front();
      work.pop_front();
      queued[i] = false;
      GridAuto a = {gt.elems[rpids[i]], rtau[i]};
      incorporate(auto_invert(a));
      for (size_t j = 0; j < rpids.size(); ++j) {
        GridAuto b = {gt.elems[rpids[j]], rtau[j]};
        incorporate(auto_compose(a, b));
        incorporate(auto_compose(b, a));
      }
    }
  }

  SpaceGroupNF result() {
    SpaceGroupNF g;
    g.dim = dim;
    g.lat = lam;
    std::vector<std::pair<uint8_t, Vec>> entries;
    for (size_t i = 0; i < rpids.size(); ++i)
      entries.push_back({rpids[i], lam.reduce(rtau[i])});
    std::sort(entries.begin(), entries.end());
    for (auto& [pid, t] : entries) {
      g.pids.push_back(pid);
      g.tau.push_back(t);
    }
    return g;
  }
};

}  // namespace

SpaceGroupNF closure(int dim, const std::vector<GridAuto>& gens) {
  ClosureState st(dim);
  for (const GridAuto& g : gens)
    st.incorporate(g);
  st.run();
  return st.result();
}

SpaceGroupNF closure_with(const SpaceGroupNF& base,
                          const std::vector<GridAuto>& extra) {
  ClosureState st(base.dim);
  for (int i = 0; i < base.lat.rank(); ++i)
    st.lam.add(row_to_vec(base.lat.rows()[i]));
  for (size_t i = 0; i < base.pids.size(); ++i)
    if (base.pids[i] != 0)
      st.push(base.pids[i], base.tau[i]);
  for (const GridAuto& g : extra)
    st.incorporate(g);
  st.run();
  return st.result();
}

SpaceGroupNF make_symmorphic(int dim, PointMask mask, const Lattice& lat) {
  const GroupTable& gt = GroupTable::get(dim);
  require(mask & 1, "make_symmorphic: mask misses identity");
  require(point_closure(gt, mask) == mask, "make_symmorphic: mask not a group");
  SpaceGroupNF g;
  g.dim = dim;
  g.lat = lat;
  for (int pid = 0; pid < gt.n; ++pid)
    if (mask >> pid & 1) {
      require(lat.transformed(gt.elems[pid]) == lat,
              "make_symmorphic: lattice not invariant");
      g.pids.push_back(static_cast<uint8_t>(pid));
      g.tau.push_back(vzero());
    }
  return g;
}

SpaceGroupNF conjugate(const SpaceGroupNF& g, const GridAuto& a) {
  const GroupTable& gt = GroupTable::get(g.dim);
  int pa = gt.index(a.p);
  SpaceGroupNF out;
  out.dim = g.dim;
  out.lat = g.lat.transformed(a.p);
  std::vector<std::pair<uint8_t, Vec>> entries;
  for (size_t i = 0; i < g.pids.size(); ++i) {
    uint8_t w2 = gt.conjugate(g.pids[i], pa);
    // a^-1 (w,t) a = (p^-1 w p, t*p + s - s*(p^-1 w p))
    Vec t2 = vsub(vadd(sp_apply(a.p, g.tau[i]), a.t),
                  sp_apply(gt.elems[w2], a.t));
    entries.push_back({w2, out.lat.reduce(t2)});
  }
  std::sort(entries.begin(), entries.end());
  for (auto& [pid, t] : entries) {
    out.pids.push_back(pid);
    out.tau.push_back(t);
  }
  return out;
}

bool is_subgroup(const SpaceGroupNF& sub, const SpaceGroupNF& sup) {
  if (sub.dim != sup.dim)
    return false;
  for (int i = 0; i < sub.lat.rank(); ++i)
    if (!sup.lat.contains(row_to_vec(sub.lat.rows()[i])))
      return false;
  for (const GridAuto& a : sub.transversal())
    if (!sup.member(a))
      return false;
  return true;
}

std::optional<GridAuto> are_conjugate(const SpaceGroupNF& g1,
                                      const SpaceGroupNF& g2) {
  if (g1.dim != g2.dim || g1.npoint() != g2.npoint() ||
      g1.lat.rank() != g2.lat.rank() || g1.lat.det() != g2.lat.det())
    return std::nullopt;
  require(g2.lat.full_rank(),
          "are_conjugate: needs full-rank lattices (finite domain search)");
  const GroupTable& gt = GroupTable::get(g1.dim);
  PointMask m1 = g1.point_mask();
  PointMask m2 = g2.point_mask();
  // Translation parts may range over the fundamental domain of g2's
  // lattice: a conjugator composed on the right with any element of g2
  // is again a conjugator, so shifts only matter modulo g2's lattice.
  std::vector<Vec> shifts = fundamental_domain(g2.lat);
  for (int p = 0; p < gt.n; ++p) {
    // Point sets must correspond under conjugation by p.
    PointMask img = 0;
    for (int a = 0; a < gt.n; ++a)
      if (m1 >> a & 1)
        img |= PointMask(1) << gt.conjugate(a, p);
    if (img != m2)
      continue;
    if (!(g1.lat.transformed(gt.elems[p]) == g2.lat))
      continue;
    for (const Vec& s : shifts) {
      GridAuto cand = {gt.elems[p], s};
      if (conjugate(g1, cand) == g2)
        return cand;
    }
  }
  return std::nullopt;
}

uint64_t conjugacy_invariant(const SpaceGroupNF& g) {
  const GroupTable& gt = GroupTable::get(g.dim);
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(g.dim));
  mix(static_cast<uint64_t>(g.lat.rank()));
  mix(static_cast<uint64_t>(g.lat.det()));
  mix(static_cast<uint64_t>(g.npoint()));
  mix(static_cast<uint64_t>(point_class_of(gt, g.point_mask())));
  return h;
}

// ---------------- index-2 subgroups ----------------

std::vector<SpaceGroupNF> index_two_subgroups(const SpaceGroupNF& g) {
  require(g.lat.full_rank(), "index_two_subgroups: lattice not of full rank");
  const GroupTable& gt = GroupTable::get(g.dim);
  const int dim = g.dim;
  const int rank = g.lat.rank();

  // Any homomorphism to C2 kills squares, hence factors through G/2L.
  Lattice lat2(dim);
  std::vector<Vec> rows;
  for (int i = 0; i < rank; ++i) {
    Vec r = row_to_vec(g.lat.rows()[i]);
    rows.push_back(r);
    lat2.add(vadd(r, r));
  }

  // Elements of Q = G/2L: (pid, residue of the translation mod 2L).
  std::vector<std::pair<uint8_t, Vec>> qelems;
  std::map<std::pair<uint8_t, Vec>, int> qindex;
  for (size_t i = 0; i < g.pids.size(); ++i) {
    for (int c = 0; c < (1 << rank); ++c) {
      Vec t = g.tau[i];
      for (int j = 0; j < rank; ++j)
        if (c >> j & 1)
          t = vadd(t, rows[j]);
      std::pair<uint8_t, Vec> key = {g.pids[i], lat2.reduce(t)};
      if (qindex.emplace(key, static_cast<int>(qelems.size())).second)
        qelems.push_back(key);
    }
  }
  const int qn = static_cast<int>(qelems.size());
  require(qn == g.npoint() << rank, "index_two_subgroups: quotient size");

  auto qindex_of = [&](uint8_t pid, const Vec& t) {
    auto it = qindex.find({pid, lat2.reduce(t)});
    require(it != qindex.end(), "index_two_subgroups: element not in quotient");
    return it->second;
  };
  auto qmul = [&](int a, int b) {
    GridAuto ga = {gt.elems[qelems[a].first], qelems[a].second};
    GridAuto gb = {gt.elems[qelems[b].first], qelems[b].second};
    GridAuto gc = auto_compose(ga, gb);
    return qindex_of(static_cast<uint8_t>(gt.index(gc.p)), gc.t);
  };

  // N = subgroup generated by all squares and commutators (normal:
  // the generating family is invariant under conjugation).
  std::vector<bool> in_n(qn, false);
  std::vector<int> stack;
  auto push_n = [&](int x) {
    if (!in_n[x]) {
      in_n[x] = true;
      stack.push_back(x);
    }
  };
  push_n(qindex_of(0, vzero()));
  for (int a = 0; a < qn; ++a)
    push_n(qmul(a, a));
  // Commutators a^-1 b^-1 a b; compute inverses first.
  std::vector<int> qinv(qn);
  for (int a = 0; a < qn; ++a) {
    GridAuto ga = {gt.elems[qelems[a].first], qelems[a].second};
    GridAuto gi = auto_invert(ga);
    qinv[a] = qindex_of(static_cast<uint8_t>(gt.index(gi.p)), gi.t);
  }
  for (int a = 0; a < qn; ++a)
    for (int b = 0; b < qn; ++b)
      push_n(qmul(qmul(qinv[a], qinv[b]), qmul(a, b)));
  // Close under multiplication.
  std::vector<int> members(stack);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = 0; j < members.size(); ++j) {
      int xy = qmul(members[i], members[j]);
      if (!in_n[xy]) {
        in_n[xy] = true;
        members.push_back(xy);
      }
    }
  std::sort(members.begin(), members.end());

  // Cosets of N: canonical representative = least element of x*N.
  std::vector<int> coset_rep(qn, -1);
  std::vector<int> reps;
  for (int x = 0; x < qn; ++x) {
    if (coset_rep[x] >= 0)
      continue;
    int least = x;
    std::vector<int> orbit;
    for (int nme : members)
      orbit.push_back(qmul(x, nme));
    for (int y : orbit)
      least = std::min(least, y);
    for (int y : orbit)
      coset_rep[y] = least;
    reps.push_back(least);
  }
  std::sort(reps.begin(), reps.end());
  const int vn = static_cast<int>(reps.size());
  require(std::has_single_bit(static_cast<unsigned>(vn)),
          "index_two_subgroups: quotient by N not elementary abelian 2");
  if (vn == 1)
    return {};

  // Coordinates over F2: greedy basis of coset representatives.
  std::map<int, uint32_t> coords;  // coset rep -> coordinate bits
  coords[coset_rep[qindex_of(0, vzero())]] = 0;
  int k = 0;
  for (int r : reps) {
    if (coords.count(r))
      continue;
    uint32_t bit = 1u << k++;
    std::map<int, uint32_t> grown = coords;
    for (auto& [c, v] : coords)
      grown[coset_rep[qmul(c, r)]] = v | bit;
    coords = std::move(grown);
  }
  require(static_cast<int>(coords.size()) == vn,
          "index_two_subgroups: basis construction failed");
  require(vn == 1 << k, "index_two_subgroups: rank mismatch");

  auto phi_of = [&](int x, uint32_t functional) {
    return std::popcount(coords.at(coset_rep[x]) & functional) & 1;
  };

  std::vector<SpaceGroupNF> out;
  for (uint32_t functional = 1; functional < (1u << k); ++functional) {
    std::vector<int> phi_row(rank);
    for (int j = 0; j < rank; ++j)
      phi_row[j] = phi_of(qindex_of(0, rows[j]), functional);
    std::vector<int> phi_tr(g.npoint());
    for (int i = 0; i < g.npoint(); ++i)
      phi_tr[i] = phi_of(qindex_of(g.pids[i], g.tau[i]), functional);

    SpaceGroupNF sub;
    sub.dim = dim;
    bool lattice_trivial =
        std::all_of(phi_row.begin(), phi_row.end(), [](int v) { return !v; });
    if (lattice_trivial) {
      sub.lat = g.lat;
      for (int i = 0; i < g.npoint(); ++i)
        if (phi_tr[i] == 0) {
          sub.pids.push_back(g.pids[i]);
          sub.tau.push_back(g.tau[i]);
        }
      require(2 * sub.npoint() == g.npoint(),
              "index_two_subgroups: point half mismatch");
    } else {
      Lattice lk(dim);
      for (int i = 0; i < rank; ++i) {
        lk.add(vadd(rows[i], rows[i]));
        if (phi_row[i] == 0)
          lk.add(rows[i]);
        for (int j = i + 1; j < rank; ++j)
          if (phi_row[i] == 1 && phi_row[j] == 1)
            lk.add(vadd(rows[i], rows[j]));
      }
      require(lk.det() == 2 * g.lat.det(),
              "index_two_subgroups: lattice half mismatch");
      Vec bstar = vzero();
      for (int i = 0; i < rank; ++i)
        if (phi_row[i] == 1)
          bstar = rows[i];
      sub.lat = lk;
      for (int i = 0; i < g.npoint(); ++i) {
        Vec t = g.tau[i];
        if (phi_tr[i] == 1)
          t = vadd(t, bstar);
        sub.pids.push_back(g.pids[i]);
        sub.tau.push_back(lk.reduce(t));
      }
    }
    out.push_back(std::move(sub));
  }
  return out;
}

// ---------------- finite group machinery ----------------

int FiniteGroupTable::inverse(int a) const {
  for (int b = 0; b < n; ++b)
    if (mul(a, b) == 0)
      return b;
  fail("FiniteGroupTable: no inverse");
}

int FiniteGroupTable::order_of(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroupTable::abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a))
        return false;
  return true;
}

int FiniteGroupTable::center_size() const {
  int c = 0;
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b)
      central = mul(a, b) == mul(b, a);
    c += central;
  }
  return c;
}

namespace {

std::vector<bool> fg_closure(const FiniteGroupTable& g, std::vector<int> gens) {
  std::vector<bool> in(g.n, false);
  std::vector<int> members;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  push(0);
  for (int x : gens)
    push(x);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = 0; j < members.size(); ++j)
      push(g.mul(members[i], members[j]));
  return in;
}

}  // namespace

int FiniteGroupTable::derived_size() const {
  std::vector<int> comms;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      comms.push_back(mul(mul(inverse(a), inverse(b)), mul(a, b)));
  auto in = fg_closure(*this, comms);
  return static_cast<int>(std::count(in.begin(), in.end(), true));
}

FiniteGroupTable subgroup_table(const GroupTable& gt, PointMask mask) {
  require(mask & 1, "subgroup_table: mask misses identity");
  require(point_closure(gt, mask) == mask, "subgroup_table: mask not a group");
  std::vector<int> ids;
  for (int p = 0; p < gt.n; ++p)
    if (mask >> p & 1)
      ids.push_back(p);
  FiniteGroupTable out;
  out.n = static_cast<int>(ids.size());
  out.mult.assign(static_cast<size_t>(out.n) * out.n, 0);
  std::array<int8_t, 64> local{};
  local.fill(-1);
  for (int i = 0; i < out.n; ++i)
    local[ids[i]] = static_cast<int8_t>(i);
  for (int i = 0; i < out.n; ++i)
    for (int j = 0; j < out.n; ++j) {
      int8_t lk = local[gt.mul(ids[i], ids[j])];
      require(lk >= 0, "subgroup_table: product escapes mask");
      out.mult[i * out.n + j] = static_cast<uint8_t>(lk);
    }
  return out;
}

namespace {

struct Fingerprint {
  int n;
  bool abelian;
  std::vector<int> orders;
  int center;
  int derived;

  auto operator<=>(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const FiniteGroupTable& g) {
  Fingerprint f;
  f.n = g.n;
  f.abelian = g.abelian();
  for (int a = 0; a < g.n; ++a)
    f.orders.push_back(g.order_of(a));
  std::sort(f.orders.begin(), f.orders.end());
  f.center = g.center_size();
  f.derived = g.derived_size();
  return f;
}

FiniteGroupTable fg_cyclic(int n) {
  FiniteGroupTable g;
  g.n = n;
  g.mult.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.mult[a * n + b] = static_cast<uint8_t>((a + b) % n);
  return g;
}

FiniteGroupTable fg_direct(const FiniteGroupTable& a,
                           const FiniteGroupTable& b) {
  FiniteGroupTable g;
  g.n = a.n * b.n;
  g.mult.assign(static_cast<size_t>(g.n) * g.n, 0);
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) {
      int xa = x / b.n, xb = x % b.n;
      int ya = y / b.n, yb = y % b.n;
      g.mult[x * g.n + y] =
          static_cast<uint8_t>(a.mul(xa, ya) * b.n + b.mul(xb, yb));
    }
  return g;
}

FiniteGroupTable fg_from_perms(int npoints,
                               const std::vector<std::vector<int>>& gens) {
  std::vector<int> ident(npoints);
  for (int i = 0; i < npoints; ++i)
    ident[i] = i;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> elems = {ident};
  seen.insert(ident);
  auto compose = [npoints](const std::vector<int>& a,
                           const std::vector<int>& b) {
    std::vector<int> c(npoints);
    for (int i = 0; i < npoints; ++i)
      c[i] = b[a[i]];
    return c;
  };
  for (size_t i = 0; i < elems.size(); ++i)
    for (const auto& gperm : gens) {
      auto next = compose(elems[i], gperm);
      if (seen.insert(next).second)
        elems.push_back(next);
    }
  std::sort(elems.begin(), elems.end());  // identity is lexicographically least
  FiniteGroupTable g;
  g.n = static_cast<int>(elems.size());
  g.mult.assign(static_cast<size_t>(g.n) * g.n, 0);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < g.n; ++i)
    index[elems[i]] = i;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      g.mult[i * g.n + j] =
          static_cast<uint8_t>(index.at(compose(elems[i], elems[j])));
  return g;
}

FiniteGroupTable fg_dihedral(int m) {
  std::vector<int> rot(m), refl(m);
  for (int i = 0; i < m; ++i) {
    rot[i] = (i + 1) % m;
    refl[i] = (m - i) % m;
  }
  return fg_from_perms(m, {rot, refl});
}

const std::vector<std::pair<std::string, Fingerprint>>& structure_models() {
  static const auto* models = [] {
    auto c2 = fg_cyclic(2);
    auto a4 = fg_from_perms(4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
    auto s4 = fg_from_perms(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
    auto* v = new std::vector<std::pair<std::string, Fingerprint>>{
        {"1", fingerprint(fg_cyclic(1))},
        {"C2", fingerprint(c2)},
        {"C3", fingerprint(fg_cyclic(3))},
        {"C4", fingerprint(fg_cyclic(4))},
        {"C6", fingerprint(fg_cyclic(6))},
        {"C2xC2", fingerprint(fg_direct(c2, c2))},
        {"S3", fingerprint(fg_dihedral(3))},
        {"C2xC2xC2", fingerprint(fg_direct(c2, fg_direct(c2, c2)))},
        {"C4xC2", fingerprint(fg_direct(fg_cyclic(4), c2))},
        {"D8", fingerprint(fg_dihedral(4))},
        {"A4", fingerprint(a4)},
        {"D12", fingerprint(fg_dihedral(6))},
        {"C2xD8", fingerprint(fg_direct(c2, fg_dihedral(4)))},
        {"C2xA4", fingerprint(fg_direct(c2, a4))},
        {"S4", fingerprint(s4)},
        {"C2xS4", fingerprint(fg_direct(c2, s4))},
    };
    for (size_t i = 0; i < v->size(); ++i)
      for (size_t j = i + 1; j < v->size(); ++j)
        require((*v)[i].second != (*v)[j].second,
                "structure models not separated by fingerprint");
    return v;
  }();
  return *models;
}

}  // namespace

std::string identify_structure(const FiniteGroupTable& g) {
  Fingerprint f = fingerprint(g);
  for (const auto& [name, model] : structure_models())
    if (model == f)
      return name;
  return "unrecognized(" + std::to_string(g.n) + ")";
}

// ---------------- point subgroup classes ----------------

namespace {

PointMask conj_mask(const GroupTable& gt, PointMask m, int g) {
  PointMask out = 0;
  for (int a = 0; a < gt.n; ++a)
    if (m >> a & 1)
      out |= PointMask(1) << gt.conjugate(a, g);
  return out;
}

std::vector<PointClassInfo> compute_point_classes(const GroupTable& gt) {
  // Enumerate all subgroups by cyclic extension from the trivial one.
  std::set<PointMask> all = {PointMask(1)};
  std::vector<PointMask> frontier = {PointMask(1)};
  while (!frontier.empty()) {
    std::vector<PointMask> next;
    for (PointMask m : frontier)
      for (int e = 1; e < gt.n; ++e) {
        if (m >> e & 1)
          continue;
        PointMask c = point_closure(gt, m | PointMask(1) << e);
        if (all.insert(c).second)
          next.push_back(c);
      }
    frontier = std::move(next);
  }
  // Group into conjugacy classes.
  std::map<PointMask, std::vector<PointMask>> by_rep;
  for (PointMask m : all) {
    PointMask rep = m;
    for (int g = 0; g < gt.n; ++g)
      rep = std::min(rep, conj_mask(gt, m, g));
    by_rep[rep].push_back(m);
  }
  std::vector<PointClassInfo> classes;
  for (auto& [rep, members] : by_rep) {
    PointClassInfo info;
    info.rep = rep;
    std::sort(members.begin(), members.end());
    info.members = std::move(members);
    classes.push_back(std::move(info));
  }
  std::sort(classes.begin(), classes.end(),
            [](const PointClassInfo& a, const PointClassInfo& b) {
              int pa = std::popcount(a.rep), pb = std::popcount(b.rep);
              return pa != pb ? pa < pb : a.rep < b.rep;
            });
  return classes;
}

}  // namespace

const std::vector<PointClassInfo>& point_subgroup_classes(
    const GroupTable& gt) {
  static std::vector<PointClassInfo> cache[kMaxDim];
  static std::once_flag flags[kMaxDim];
  std::call_once(flags[gt.dim - 1],
                 [&gt] { cache[gt.dim - 1] = compute_point_classes(gt); });
  return cache[gt.dim - 1];
}

int point_class_of(const GroupTable& gt, PointMask mask) {
  const auto& classes = point_subgroup_classes(gt);
  for (size_t i = 0; i < classes.size(); ++i)
    if (std::binary_search(classes[i].members.begin(),
                           classes[i].members.end(), mask))
      return static_cast<int>(i);
  fail("point_class_of: mask is not a subgroup");
}

std::vector<int> point_double_coset_reps(const GroupTable& gt, PointMask s,
                                         PointMask t, PointMask candidates) {
  std::vector<int> out;
  PointMask seen = 0;
  for (int x = 0; x < gt.n; ++x) {
    if (!(candidates >> x & 1) || (seen >> x & 1))
      continue;
    out.push_back(x);
    for (int a = 0; a < gt.n; ++a) {
      if (!(s >> a & 1))
        continue;
      int ax = gt.mul(a, x);
      for (int b = 0; b < gt.n; ++b)
        if (t >> b & 1)
          seen |= PointMask(1) << gt.mul(ax, b);
    }
  }
  return out;
}

}  // namespace grid2x
