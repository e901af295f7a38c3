#include "grid2x/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "grid2x/error.hpp"

namespace grid2x {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  return (a % b < 0) ? q - 1 : q;
}

void row_sub(Lattice::Row& a, const Lattice::Row& b, int64_t q) {
  for (int k = 0; k < kMaxDim; ++k)
    a[k] -= q * b[k];
}

bool row_zero(const Lattice::Row& r) {
  return r[0] == 0 && r[1] == 0 && r[2] == 0;
}

Lattice::Row apply_perm(const SignedPerm& p, const Lattice::Row& v) {
  Lattice::Row w = {0, 0, 0};
  for (int k = 0; k < kMaxDim; ++k) {
    int8_t s = p.img[k];
    int j = (s < 0 ? -s : s) - 1;
    w[j] = (s < 0) ? -v[k] : v[k];
  }
  return w;
}

}  // namespace

Lattice::Lattice(int dim) : dim_(dim), rank_(0) {
  require(dim >= 1 && dim <= kMaxDim, "Lattice: dim out of range");
  for (auto& r : rows_)
    r = {0, 0, 0};
}

void Lattice::normalize() {
  normalize_rows(rows_.data(), kMaxDim);
}

void Lattice::normalize_rows(Row* w, int nrows) {
  int r = 0;
  for (int col = 0; col < dim_ && r < nrows; ++col) {
    // Euclidean elimination in column col over rows r..nrows-1.
    for (;;) {
      int best = -1;
      for (int i = r; i < nrows; ++i)
        if (w[i][col] != 0 &&
            (best < 0 || std::abs(w[i][col]) < std::abs(w[best][col])))
          best = i;
      if (best < 0)
        break;
      std::swap(w[r], w[best]);
      bool clean = true;
      for (int i = r + 1; i < nrows; ++i) {
        if (w[i][col] == 0)
          continue;
        row_sub(w[i], w[r], w[i][col] / w[r][col]);
        if (w[i][col] != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (w[r][col] == 0)
      continue;
    if (w[r][col] < 0)
      for (int k = 0; k < kMaxDim; ++k)
        w[r][k] = -w[r][k];
    for (int i = 0; i < r; ++i)
      row_sub(w[i], w[r], floor_div(w[i][col], w[r][col]));
    ++r;
  }
  // Rows w[r..nrows-1] are fully zero now: every column was processed and
  // each processing step clears the column below its pivot.
  require(r <= dim_, "Lattice: rank exceeds dimension");
  rank_ = r;
  for (int i = 0; i < rank_; ++i) {
    require(!row_zero(w[i]), "Lattice: zero pivot row");
    rows_[i] = w[i];
  }
  for (int i = rank_; i < kMaxDim; ++i)
    rows_[i] = {0, 0, 0};
}

bool Lattice::add(const Vec& v) {
  if (contains(v))
    return false;
  std::array<Row, kMaxDim + 1> w;
  for (int i = 0; i < kMaxDim; ++i)
    w[i] = rows_[i];
  w[kMaxDim] = {v[0], v[1], v[2]};
  normalize_rows(w.data(), kMaxDim + 1);
  return true;
}

bool Lattice::add(const Lattice& other) {
  bool grew = false;
  for (int i = 0; i < other.rank_; ++i) {
    Vec v = {static_cast<int32_t>(other.rows_[i][0]),
             static_cast<int32_t>(other.rows_[i][1]),
             static_cast<int32_t>(other.rows_[i][2])};
    grew |= add(v);
  }
  return grew;
}

Vec Lattice::reduce(const Vec& v) const {
  Row w = {v[0], v[1], v[2]};
  for (int i = 0; i < rank_; ++i) {
    int col = 0;
    while (rows_[i][col] == 0)
      ++col;
    row_sub(w, rows_[i], floor_div(w[col], rows_[i][col]));
  }
  return {static_cast<int32_t>(w[0]), static_cast<int32_t>(w[1]),
          static_cast<int32_t>(w[2])};
}

bool Lattice::contains(const Vec& v) const { return reduce(v) == vzero(); }

int64_t Lattice::det() const {
  if (rank_ != dim_)
    return 0;
  int64_t d = 1;
  for (int i = 0; i < dim_; ++i)
    d *= rows_[i][i];
  return d;
}

Lattice Lattice::transformed(const SignedPerm& p) const {
  Lattice out(dim_);
  for (int i = 0; i < rank_; ++i)
    out.rows_[i] = apply_perm(p, rows_[i]);
  out.rank_ = rank_;
  out.normalize();
  return out;
}

Vec Lattice::diag() const {
  require(full_rank(), "Lattice::diag: lattice not of full rank");
  Vec d = {1, 1, 1};
  for (int i = 0; i < dim_; ++i)
    d[i] = static_cast<int32_t>(rows_[i][i]);
  return d;
}

Vec Lattice::diagonal_periods() const {
  require(full_rank(), "diagonal_periods: lattice not of full rank");
  int64_t n = det();
  Vec out = {1, 1, 1};
  for (int k = 0; k < dim_; ++k) {
    for (int32_t p = 1; p <= n; ++p) {
      Vec v = vzero();
      v[k] = p;
      if (contains(v)) {
        out[k] = p;
        break;
      }
    }
  }
  return out;
}

bool Lattice::operator==(const Lattice& other) const {
  return dim_ == other.dim_ && rank_ == other.rank_ && rows_ == other.rows_;
}

std::string Lattice::serialize() const {
  std::string s;
  for (int i = 0; i < rank_; ++i) {
    if (i)
      s += ';';
    for (int k = 0; k < dim_; ++k) {
      if (k)
        s += ',';
      char buf[24];
      auto res = std::to_chars(buf, buf + sizeof buf, rows_[i][k]);
      s.append(buf, res.ptr);
    }
  }
  return s;
}

Lattice Lattice::parse(const std::string& text, int dim) {
  Lattice out(dim);
  if (text.empty())
    return out;
  size_t pos = 0;
  while (pos <= text.size()) {
    Vec v = vzero();
    for (int k = 0; k < dim; ++k) {
      if (k) {
        require(pos < text.size() && text[pos] == ',',
                "Lattice::parse: expected ',' in \"" + text + "\"");
        ++pos;
      }
      int32_t val = 0;
      auto res =
          std::from_chars(text.data() + pos, text.data() + text.size(), val);
      require(res.ec == std::errc(),
              "Lattice::parse: expected integer in \"" + text + "\"");
      pos = static_cast<size_t>(res.ptr - text.data());
      v[k] = val;
    }
    out.add(v);
    if (pos == text.size())
      break;
    require(text[pos] == ';',
            "Lattice::parse: expected ';' in \"" + text + "\"");
    ++pos;
  }
  return out;
}

uint64_t Lattice::hash() const {
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(rank_));
  for (int i = 0; i < rank_; ++i)
    for (int k = 0; k < kMaxDim; ++k)
      mix(static_cast<uint64_t>(rows_[i][k]));
  return h;
}

std::vector<Vec> fundamental_domain(const Lattice& lat) {
  require(lat.full_rank(), "fundamental_domain: lattice not of full rank");
  Vec d = lat.diag();
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(lat.det()));
  // Full-rank canonical representatives are exactly the box points.
  Vec v = vzero();
  for (v[0] = 0; v[0] < d[0]; ++v[0])
    for (v[1] = 0; v[1] < d[1]; ++v[1])
      for (v[2] = 0; v[2] < d[2]; ++v[2])
        out.push_back(v);
  return out;
}

}  // namespace grid2x
