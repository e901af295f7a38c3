#include "grid2x/grid_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>

#include "grid2x/error.hpp"

namespace grid2x {

bool sp_less(const SignedPerm& a, const SignedPerm& b) {
  for (int k = 0; k < kMaxDim; ++k) {
    int ka = signed_key(a.img[k]);
    int kb = signed_key(b.img[k]);
    if (ka != kb)
      return ka < kb;
  }
  return false;
}

SignedPerm sp_identity() {
  SignedPerm p;
  for (int k = 0; k < kMaxDim; ++k)
    p.img[k] = static_cast<int8_t>(k + 1);
  return p;
}

bool sp_is_identity(const SignedPerm& p) { return p == sp_identity(); }

Vec sp_apply(const SignedPerm& p, const Vec& v) {
  Vec w = vzero();
  for (int k = 0; k < kMaxDim; ++k) {
    int8_t s = p.img[k];
    int j = (s < 0 ? -s : s) - 1;
    w[j] = (s < 0) ? -v[k] : v[k];
  }
  return w;
}

SignedPerm sp_compose(const SignedPerm& a, const SignedPerm& b) {
  SignedPerm c;
  for (int k = 0; k < kMaxDim; ++k) {
    int8_t s = a.img[k];
    int j = (s < 0 ? -s : s) - 1;
    c.img[k] = (s < 0) ? static_cast<int8_t>(-b.img[j]) : b.img[j];
  }
  return c;
}

SignedPerm sp_inverse(const SignedPerm& a) {
  SignedPerm c;
  for (int k = 0; k < kMaxDim; ++k) {
    int8_t s = a.img[k];
    int j = (s < 0 ? -s : s) - 1;
    c.img[j] = (s < 0) ? static_cast<int8_t>(-(k + 1)) : static_cast<int8_t>(k + 1);
  }
  return c;
}

GridAuto auto_identity() { return {sp_identity(), vzero()}; }

bool auto_less(const GridAuto& a, const GridAuto& b) {
  if (a.p != b.p)
    return sp_less(a.p, b.p);
  return a.t < b.t;
}

Vec auto_act(const GridAuto& a, const Vec& v) {
  return vadd(sp_apply(a.p, v), a.t);
}

GridAuto auto_compose(const GridAuto& a, const GridAuto& b) {
  return {sp_compose(a.p, b.p), vadd(sp_apply(b.p, a.t), b.t)};
}

GridAuto auto_invert(const GridAuto& a) {
  SignedPerm pi = sp_inverse(a.p);
  return {pi, vneg(sp_apply(pi, a.t))};
}

GridAuto auto_translation(const Vec& t) { return {sp_identity(), t}; }

std::vector<SignedPerm> hyperoctahedral(int dim) {
  require(dim >= 1 && dim <= kMaxDim, "hyperoctahedral: dim out of range");
  std::vector<int> perm(dim);
  for (int k = 0; k < dim; ++k)
    perm[k] = k + 1;
  std::vector<SignedPerm> out;
  do {
    for (int signs = 0; signs < (1 << dim); ++signs) {
      SignedPerm p = sp_identity();
      for (int k = 0; k < dim; ++k)
        p.img[k] = static_cast<int8_t>((signs >> k & 1) ? -perm[k] : perm[k]);
      out.push_back(p);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end(), sp_less);
  return out;
}

namespace {

void append_int(std::string& s, int64_t v) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, res.ptr);
}

std::string print_bracketed(const int32_t* vals, int dim) {
  std::string s = "[";
  for (int k = 0; k < dim; ++k) {
    if (k)
      s += ',';
    append_int(s, vals[k]);
  }
  s += ']';
  return s;
}

/// Parses "[a1,...,ad]" starting at text[pos]; advances pos past ']'.
std::array<int32_t, kMaxDim> parse_bracketed(const std::string& text,
                                             size_t& pos, int dim) {
  std::array<int32_t, kMaxDim> vals = {0, 0, 0};
  if (pos >= text.size() || text[pos] != '[')
    fail("expected '[' in \"" + text + "\"");
  ++pos;
  for (int k = 0; k < dim; ++k) {
    if (k) {
      if (pos >= text.size() || text[pos] != ',')
        fail("expected ',' in \"" + text + "\"");
      ++pos;
    }
    int32_t v = 0;
    auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (res.ec != std::errc())
      fail("expected integer in \"" + text + "\"");
    pos = static_cast<size_t>(res.ptr - text.data());
    vals[k] = v;
  }
  if (pos >= text.size() || text[pos] != ']')
    fail("expected ']' in \"" + text + "\"");
  ++pos;
  return vals;
}

}  // namespace

std::string print_perm(const SignedPerm& p, int dim) {
  int32_t vals[kMaxDim];
  for (int k = 0; k < dim; ++k)
    vals[k] = p.img[k];
  return print_bracketed(vals, dim);
}

std::string print_auto(const GridAuto& a, int dim) {
  return print_perm(a.p, dim) + ';' + print_bracketed(a.t.data(), dim);
}

SignedPerm parse_perm(const std::string& text, int dim) {
  size_t pos = 0;
  auto vals = parse_bracketed(text, pos, dim);
  if (pos != text.size())
    fail("trailing characters in \"" + text + "\"");
  SignedPerm p = sp_identity();
  bool seen[kMaxDim] = {false, false, false};
  for (int k = 0; k < dim; ++k) {
    int32_t s = vals[k];
    int a = s < 0 ? -s : s;
    if (a < 1 || a > dim)
      fail("image out of range in \"" + text + "\"");
    if (seen[a - 1])
      fail("repeated image in \"" + text + "\"");
    seen[a - 1] = true;
    p.img[k] = static_cast<int8_t>(s);
  }
  return p;
}

GridAuto parse_auto(const std::string& text, int dim) {
  size_t semi = text.find(';');
  if (semi == std::string::npos)
    fail("expected ';' in \"" + text + "\"");
  GridAuto a;
  a.p = parse_perm(text.substr(0, semi), dim);
  size_t pos = semi + 1;
  auto vals = parse_bracketed(text, pos, dim);
  if (pos != text.size())
    fail("trailing characters in \"" + text + "\"");
  a.t = vals;
  return a;
}

int vec_dir(const Vec& v) {
  for (int k = 0; k < kMaxDim; ++k) {
    if (v[k] == 1 && l1norm(v) == 1)
      return 2 * k;
    if (v[k] == -1 && l1norm(v) == 1)
      return 2 * k + 1;
  }
  fail("vec_dir: not a unit vector");
}

GroupTable::GroupTable(int d) : dim(d), ndirs(2 * d) {
  elems = hyperoctahedral(d);
  n = static_cast<int>(elems.size());
  mult.assign(static_cast<size_t>(n) * n, 0);
  inv.assign(n, 0);
  conj.assign(static_cast<size_t>(n) * n, 0);
  dir_act.assign(static_cast<size_t>(n) * ndirs, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      mult[a * n + b] = static_cast<uint8_t>(index(sp_compose(elems[a], elems[b])));
    inv[a] = static_cast<uint8_t>(index(sp_inverse(elems[a])));
  }
  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g)
      conj[a * n + g] = mult[mult[inv[g] * n + a] * n + g];
  for (int g = 0; g < n; ++g)
    for (int dir = 0; dir < ndirs; ++dir)
      dir_act[g * ndirs + dir] =
          static_cast<uint8_t>(vec_dir(sp_apply(elems[g], dir_vec(dir))));
}

int GroupTable::index(const SignedPerm& p) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), p, sp_less);
  if (it == elems.end() || !(*it == p))
    fail("GroupTable::index: element not in group");
  return static_cast<int>(it - elems.begin());
}

const GroupTable& GroupTable::get(int dim) {
  require(dim >= 1 && dim <= kMaxDim, "GroupTable: dim out of range");
  static std::once_flag flags[kMaxDim];
  static const GroupTable* tables[kMaxDim] = {nullptr, nullptr, nullptr};
  std::call_once(flags[dim - 1],
                 [dim] { tables[dim - 1] = new GroupTable(dim); });
  return *tables[dim - 1];
}

PointMask point_closure(const GroupTable& gt, PointMask gens) {
  PointMask cur = gens | 1;  // id 0 is the identity
  for (;;) {
    PointMask next = cur;
    for (int a = 0; a < gt.n; ++a) {
      if (!(cur >> a & 1))
        continue;
      for (int b = 0; b < gt.n; ++b)
        if (cur >> b & 1)
          next |= PointMask(1) << gt.mul(a, b);
    }
    if (next == cur)
      return cur;
    cur = next;
  }
}

}  // namespace grid2x
