#include "slopeci/geometry.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "slopeci/errors.hpp"
#include "slopeci/rng.hpp"

namespace slopeci::geometry {

namespace {

using int128 = __int128;

// The machine-integer fast path covers the library's own instances (d = 5,
// 23 halfspaces, small coefficients); anything outside its limits falls back
// to the identical algorithm in arbitrary-precision rationals.
constexpr int kFastMaxDim = 7;
constexpr int kFastMaxRows = 64;
constexpr int kFastWidth = kFastMaxDim + 1;
const int128 kEntryCap = int128(1) << 30;  // cap on scaled input coefficients
const int128 kValueCap = int128(1) << 60;  // cap on intermediate magnitudes

struct FastBail {};  // thrown to restart the computation on the rational path

int128 iabs(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt bigint_from_int128(int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  BigInt hi = static_cast<std::uint64_t>(u >> 64);
  BigInt out = (hi << 64) + static_cast<std::uint64_t>(u);
  return neg ? -out : out;
}

// Reduced fraction over int128 with overflow guards.  Values are kept
// canonical (reduced, d > 0), so component comparison doubles as value
// comparison and as the ordering for dedup map keys.
struct Frac {
  int128 n = 0;
  int128 d = 1;

  bool operator==(const Frac& o) const { return n == o.n && d == o.d; }
  bool operator<(const Frac& o) const { return n != o.n ? n < o.n : d < o.d; }
};

Frac frac_make(int128 n, int128 d) {
  if (d == 0) throw FastBail{};
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (iabs(n) > kValueCap || d > kValueCap) throw FastBail{};
  return {n, d};
}

Frac frac_add(const Frac& a, const Frac& b) {
  return frac_make(a.n * b.d + b.n * a.d, a.d * b.d);
}

Frac frac_mul_int(const Frac& a, int128 k) {
  if (iabs(k) > kValueCap) throw FastBail{};
  return frac_make(a.n * k, a.d);
}

Frac frac_div_int(const Frac& a, int128 k) { return frac_make(a.n, a.d * k); }

Rational frac_to_rational(const Frac& f) {
  return Rational(bigint_from_int128(f.n), bigint_from_int128(f.d));
}

// Internal vertex record: exact coordinates, the set of tight constraints,
// and (when available) an integer form coords = num / den used by the
// integer rank/determinant routines.
struct VRec {
  std::vector<Rational> coords;
  std::vector<std::uint64_t> active;
  bool has_int_form = false;
  std::array<int128, kFastMaxDim> num{};
  int128 den = 1;
};

void validate_polytope(const Polytope& p) {
  if (p.dimension < 1) throw invalid_parameter("polytope dimension must be >= 1");
  if (p.halfspaces.empty()) throw invalid_parameter("polytope needs at least one halfspace");
  for (const auto& h : p.halfspaces) {
    if (static_cast<int>(h.coefficients.size()) != p.dimension)
      throw invalid_parameter("halfspace coefficient count must equal the dimension");
    bool all_zero = true;
    for (const auto& c : h.coefficients)
      if (c != 0) all_zero = false;
    if (all_zero) throw invalid_parameter("halfspace coefficients must not all be zero");
  }
}

// ---------------------------------------------------------------------------
// Integer fast path.  Constraint rows are scaled to integers; vertex
// candidates are enumerated by a DFS over independent subsets of constraint
// hyperplanes with fraction-free (Bareiss) elimination, then solved by back-
// substitution in int128 fractions.  Any overflow or oversized coefficient
// throws FastBail and the caller redoes the polytope in rationals.
// ---------------------------------------------------------------------------

struct FastRows {
  int d = 0;
  int m = 0;
  std::vector<std::array<int128, kFastWidth>> rows;  // coefficients, then rhs
};

bool scale_to_integers(const Polytope& p, FastRows& out) {
  int d = p.dimension;
  int m = static_cast<int>(p.halfspaces.size());
  if (d > kFastMaxDim || m > kFastMaxRows) return false;
  out.d = d;
  out.m = m;
  out.rows.assign(m, {});
  for (int i = 0; i < m; ++i) {
    const auto& h = p.halfspaces[i];
    BigInt lcm = 1;
    auto fold = [&lcm](const Rational& v) {
      BigInt den = boost::multiprecision::denominator(v);
      lcm = boost::multiprecision::lcm(lcm, den);
    };
    for (const auto& c : h.coefficients) fold(c);
    fold(h.bound);
    auto scaled = [&lcm](const Rational& v) {
      return boost::multiprecision::numerator(v) *
             (lcm / boost::multiprecision::denominator(v));
    };
    for (int j = 0; j <= d; ++j) {
      BigInt e = scaled(j < d ? h.coefficients[j] : h.bound);
      if (boost::multiprecision::abs(e) > bigint_from_int128(kEntryCap)) return false;
      out.rows[i][j] = static_cast<long long>(e);
    }
  }
  return true;
}

struct FastEnum {
  const FastRows& in;
  int width;  // d + 1 columns: coefficients plus rhs
  std::array<std::array<int128, kFastWidth>, kFastMaxDim> red{};  // pivot rows
  std::array<int, kFastMaxDim> pivcol{};
  std::map<std::array<Frac, kFastMaxDim>, bool> seen;  // coords -> feasible
  std::vector<VRec>* out;

  explicit FastEnum(const FastRows& rows, std::vector<VRec>* sink)
      : in(rows), width(rows.d + 1), out(sink) {}

  void guard(const std::array<int128, kFastWidth>& r) const {
    for (int c = 0; c < width; ++c)
      if (iabs(r[c]) > kValueCap) throw FastBail{};
  }

  // Reduces `row` against the first `rank` pivot rows, fraction-free.
  // Returns the column of the first nonzero coefficient, or -1 when the
  // coefficient part vanished (dependent or inconsistent row).
  int reduce(std::array<int128, kFastWidth>& row, int rank) const {
    for (int t = 0; t < rank; ++t) {
      int128 a = red[t][pivcol[t]];
      int128 b = row[pivcol[t]];
      int128 div = t > 0 ? red[t - 1][pivcol[t - 1]] : 1;
      for (int c = 0; c < width; ++c) row[c] = (a * row[c] - b * red[t][c]) / div;
      guard(row);
    }
    for (int c = 0; c < width - 1; ++c)
      if (row[c] != 0) return c;
    return -1;
  }

  void solve_and_record(int rank) {
    std::array<Frac, kFastMaxDim> x{};
    for (int t = rank - 1; t >= 0; --t) {
      Frac acc{red[t][width - 1], 1};
      for (int c = 0; c < width - 1; ++c) {
        if (c == pivcol[t] || red[t][c] == 0) continue;
        acc = frac_add(acc, frac_mul_int(x[c], -red[t][c]));
      }
      x[pivcol[t]] = frac_div_int(acc, red[t][pivcol[t]]);
    }

    auto it = seen.find(x);
    if (it != seen.end()) return;

    // Exact feasibility against every constraint; equality marks activity.
    std::uint64_t mask = 0;
    bool feasible = true;
    for (int i = 0; i < in.m && feasible; ++i) {
      Frac acc{0, 1};
      for (int j = 0; j < in.d; ++j)
        if (in.rows[i][j] != 0) acc = frac_add(acc, frac_mul_int(x[j], in.rows[i][j]));
      int128 lhs = acc.n;
      int128 rhs = in.rows[i][width - 1];
      if (iabs(rhs) > kEntryCap || acc.d > kValueCap) throw FastBail{};
      int128 scaled_rhs = rhs * acc.d;
      if (lhs > scaled_rhs)
        feasible = false;
      else if (lhs == scaled_rhs)
        mask |= std::uint64_t(1) << i;
    }
    seen.emplace(x, feasible);
    if (!feasible) return;

    VRec rec;
    rec.coords.reserve(in.d);
    rec.has_int_form = true;
    int128 den = 1;
    for (int j = 0; j < in.d; ++j) {
      rec.coords.push_back(frac_to_rational(x[j]));
      int128 g = gcd128(den, x[j].d);
      if (den / g > kValueCap / x[j].d) throw FastBail{};
      den = den / g * x[j].d;
    }
    rec.den = den;
    for (int j = 0; j < in.d; ++j) {
      int128 scale = den / x[j].d;
      if (x[j].n != 0 && iabs(x[j].n) > kValueCap / scale) throw FastBail{};
      rec.num[j] = x[j].n * scale;
    }
    rec.active.assign(1, mask);
    out->push_back(std::move(rec));
  }

  void dfs(int rank, int next) {
    if (rank == in.d) {
      solve_and_record(rank);
      return;
    }
    for (int i = next; i < in.m; ++i) {
      std::array<int128, kFastWidth> row = in.rows[i];
      int pc = reduce(row, rank);
      if (pc < 0) continue;  // dependent on the chosen rows: skip this row
      red[rank] = row;
      pivcol[rank] = pc;
      dfs(rank + 1, i + 1);
    }
  }
};

// ---------------------------------------------------------------------------
// Rational path: the same subset-DFS, in exact rationals, no size limits
// other than active-set masks (any m).
// ---------------------------------------------------------------------------

struct RatEnum {
  int d;
  int m;
  std::vector<std::vector<Rational>> rows;  // coefficients, then rhs
  std::vector<std::vector<Rational>> red;
  std::vector<int> pivcol;
  std::map<std::vector<Rational>, bool> seen;
  std::vector<VRec>* out;

  RatEnum(const Polytope& p, std::vector<VRec>* sink)
      : d(p.dimension), m(static_cast<int>(p.halfspaces.size())), out(sink) {
    rows.reserve(m);
    for (const auto& h : p.halfspaces) {
      std::vector<Rational> r = h.coefficients;
      r.push_back(h.bound);
      rows.push_back(std::move(r));
    }
    red.assign(d, {});
    pivcol.assign(d, -1);
  }

  int reduce(std::vector<Rational>& row, int rank) const {
    for (int t = 0; t < rank; ++t) {
      const Rational& b = row[pivcol[t]];
      if (b == 0) continue;
      Rational factor = b / red[t][pivcol[t]];
      for (int c = 0; c <= d; ++c) row[c] -= factor * red[t][c];
    }
    for (int c = 0; c < d; ++c)
      if (row[c] != 0) return c;
    return -1;
  }

  void solve_and_record(int rank) {
    std::vector<Rational> x(d);
    for (int t = rank - 1; t >= 0; --t) {
      Rational acc = red[t][d];
      for (int c = 0; c < d; ++c) {
        if (c == pivcol[t] || red[t][c] == 0) continue;
        acc -= red[t][c] * x[c];
      }
      x[pivcol[t]] = acc / red[t][pivcol[t]];
    }

    auto it = seen.find(x);
    if (it != seen.end()) return;

    std::vector<std::uint64_t> mask((m + 63) / 64, 0);
    bool feasible = true;
    for (int i = 0; i < m && feasible; ++i) {
      Rational acc = 0;
      for (int j = 0; j < d; ++j)
        if (rows[i][j] != 0) acc += rows[i][j] * x[j];
      if (acc > rows[i][d])
        feasible = false;
      else if (acc == rows[i][d])
        mask[i / 64] |= std::uint64_t(1) << (i % 64);
    }
    seen.emplace(x, feasible);
    if (!feasible) return;

    VRec rec;
    rec.coords = std::move(x);
    rec.active = std::move(mask);
    out->push_back(std::move(rec));
  }

  void dfs(int rank, int next) {
    if (rank == d) {
      solve_and_record(rank);
      return;
    }
    for (int i = next; i < m; ++i) {
      std::vector<Rational> row = rows[i];
      int pc = reduce(row, rank);
      if (pc < 0) continue;
      red[rank] = std::move(row);
      pivcol[rank] = pc;
      dfs(rank + 1, i + 1);
    }
  }
};

std::vector<VRec> enumerate_vertices(const Polytope& p, bool force_rational) {
  validate_polytope(p);
  std::vector<VRec> recs;
  bool done = false;
  if (!force_rational) {
    FastRows rows;
    if (scale_to_integers(p, rows)) {
      try {
        FastEnum fe(rows, &recs);
        fe.dfs(0, 0);
        done = true;
      } catch (const FastBail&) {
        recs.clear();
      }
    }
  }
  if (!done) {
    RatEnum re(p, &recs);
    re.dfs(0, 0);
  }
  std::sort(recs.begin(), recs.end(),
            [](const VRec& a, const VRec& b) { return a.coords < b.coords; });
  return recs;
}

// ---------------------------------------------------------------------------
// Volume: facet identification from activity sets, recursive triangulation
// of each facet, coning from the vertex centroid, exact determinants.
// ---------------------------------------------------------------------------

bool active_bit(const VRec& v, int i) {
  return (v.active[i / 64] >> (i % 64)) & 1;
}

// Rank of the affine hull of the selected vertices (0 for a single point).
// Integer Bareiss when every vertex carries an integer form, exact rational
// elimination otherwise.
int affine_rank(const std::vector<VRec>& verts, const std::vector<int>& ids, int d) {
  if (ids.size() <= 1) return 0;
  bool ints = true;
  for (int id : ids)
    if (!verts[id].has_int_form) ints = false;

  if (ints) {
    try {
      const VRec& v0 = verts[ids[0]];
      std::vector<std::array<int128, kFastMaxDim>> rows;
      rows.reserve(ids.size() - 1);
      for (std::size_t r = 1; r < ids.size(); ++r) {
        const VRec& v = verts[ids[r]];
        std::array<int128, kFastMaxDim> row{};
        for (int j = 0; j < d; ++j) {
          int128 a = v.num[j] * v0.den;
          int128 b = v0.num[j] * v.den;
          row[j] = a - b;
          if (iabs(row[j]) > kValueCap) throw FastBail{};
        }
        rows.push_back(row);
      }
      int rank = 0;
      int128 prev = 1;
      for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
          if (rows[r][col] != 0) {
            pivot = r;
            break;
          }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
          for (int c = col + 1; c < d; ++c) {
            rows[r][c] = (rows[rank][col] * rows[r][c] - rows[r][col] * rows[rank][c]) / prev;
            if (iabs(rows[r][c]) > kValueCap) throw FastBail{};
          }
          rows[r][col] = 0;
        }
        prev = rows[rank][col];
        ++rank;
      }
      return rank;
    } catch (const FastBail&) {
      // fall through to the rational version
    }
  }

  std::vector<std::vector<Rational>> rows;
  rows.reserve(ids.size() - 1);
  const auto& base = verts[ids[0]].coords;
  for (std::size_t r = 1; r < ids.size(); ++r) {
    std::vector<Rational> row(d);
    for (int j = 0; j < d; ++j) row[j] = verts[ids[r]].coords[j] - base[j];
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] == 0) continue;
      Rational factor = rows[r][col] / rows[rank][col];
      for (int c = col; c < d; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

struct Triangulator {
  const std::vector<VRec>& verts;
  int d;
  int m;
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo;
  std::map<std::vector<int>, int> rank_cache;

  int rank_of(const std::vector<int>& ids) {
    auto it = rank_cache.find(ids);
    if (it != rank_cache.end()) return it->second;
    int r = affine_rank(verts, ids, d);
    rank_cache.emplace(ids, r);
    return r;
  }

  // Simplices (as vertex-id lists of size k+1) triangulating the k-face
  // spanned by `ids`.
  const std::vector<std::vector<int>>& triangulate(const std::vector<int>& ids, int k) {
    auto it = memo.find(ids);
    if (it != memo.end()) return it->second;

    std::vector<std::vector<int>> result;
    if (static_cast<int>(ids.size()) == k + 1) {
      result.push_back(ids);
    } else {
      if (k <= 1)
        throw std::logic_error("face with more vertices than its dimension allows");
      int apex = ids[0];
      std::set<std::vector<int>> candidates;
      for (int c = 0; c < m; ++c) {
        std::vector<int> sub;
        for (int id : ids)
          if (active_bit(verts[id], c)) sub.push_back(id);
        if (sub.empty() || static_cast<int>(sub.size()) == static_cast<int>(ids.size()))
          continue;
        if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
        if (static_cast<int>(sub.size()) < k) continue;  // too small for a facet
        candidates.insert(std::move(sub));
      }
      for (const auto& sub : candidates) {
        if (rank_of(sub) != k - 1) continue;
        for (const auto& s : triangulate(sub, k - 1)) {
          std::vector<int> simplex = s;
          simplex.push_back(apex);
          result.push_back(std::move(simplex));
        }
      }
      if (result.empty())
        throw std::logic_error("facet triangulation found no subfaces");
    }
    return memo.emplace(ids, std::move(result)).first->second;
  }
};

Rational determinant(std::vector<std::vector<Rational>> mat) {
  int n = static_cast<int>(mat.size());
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (mat[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(mat[pivot], mat[col]);
      det = -det;
    }
    det *= mat[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (mat[r][col] == 0) continue;
      Rational factor = mat[r][col] / mat[col][col];
      for (int c = col; c < n; ++c) mat[r][c] -= factor * mat[col][c];
    }
  }
  return det;
}

}  // namespace

VertexEnumeration vertices(const Polytope& p) {
  auto recs = enumerate_vertices(p, /*force_rational=*/false);
  VertexEnumeration out;
  out.feasible = !recs.empty();
  out.vertices.reserve(recs.size());
  for (auto& r : recs) out.vertices.push_back(std::move(r.coords));
  return out;
}

VertexEnumeration detail::vertices_rational_fallback(const Polytope& p) {
  auto recs = enumerate_vertices(p, /*force_rational=*/true);
  VertexEnumeration out;
  out.feasible = !recs.empty();
  out.vertices.reserve(recs.size());
  for (auto& r : recs) out.vertices.push_back(std::move(r.coords));
  return out;
}

Rational volume(const Polytope& p) {
  auto verts = enumerate_vertices(p, /*force_rational=*/false);
  int d = p.dimension;
  int m = static_cast<int>(p.halfspaces.size());
  if (static_cast<int>(verts.size()) < d + 1) return 0;

  std::vector<int> all_ids(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) all_ids[i] = static_cast<int>(i);
  if (affine_rank(verts, all_ids, d) < d) return 0;

  std::vector<Rational> centroid(d, 0);
  for (const auto& v : verts)
    for (int j = 0; j < d; ++j) centroid[j] += v.coords[j];
  for (int j = 0; j < d; ++j) centroid[j] /= static_cast<int>(verts.size());

  Triangulator tri{verts, d, m, {}, {}};
  std::set<std::vector<int>> facet_sets;
  for (int c = 0; c < m; ++c) {
    std::vector<int> ids;
    for (int v = 0; v < static_cast<int>(verts.size()); ++v)
      if (active_bit(verts[v], c)) ids.push_back(v);
    if (static_cast<int>(ids.size()) < d) continue;
    facet_sets.insert(std::move(ids));
  }

  Rational total = 0;
  bool any_facet = false;
  for (const auto& ids : facet_sets) {
    if (tri.rank_of(ids) != d - 1) continue;
    any_facet = true;
    for (const auto& simplex : tri.triangulate(ids, d - 1)) {
      std::vector<std::vector<Rational>> mat(d, std::vector<Rational>(d));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          mat[r][c] = verts[simplex[r]].coords[c] - centroid[c];
      Rational det = determinant(std::move(mat));
      total += det < 0 ? -det : det;
    }
  }
  if (!any_facet) throw std::logic_error("full-dimensional polytope with no facets");
  return total / factorial(static_cast<unsigned>(d));
}

McVolume mc_volume(const Polytope& p, const Polytope& box, std::uint64_t samples,
                   std::uint64_t seed) {
  validate_polytope(p);
  validate_polytope(box);
  if (samples == 0) throw invalid_parameter("mc_volume needs at least one sample");
  int d = p.dimension;
  if (box.dimension != d) throw invalid_parameter("box dimension mismatch");

  // The box must consist of single-coordinate bounds.
  std::vector<Rational> lo(d), hi(d);
  std::vector<bool> has_lo(d, false), has_hi(d, false);
  for (const auto& h : box.halfspaces) {
    int idx = -1;
    for (int j = 0; j < d; ++j) {
      if (h.coefficients[j] == 0) continue;
      if (idx >= 0) throw invalid_parameter("box halfspaces must bound single coordinates");
      idx = j;
    }
    Rational bound = h.bound / h.coefficients[idx];
    if (h.coefficients[idx] > 0) {
      if (!has_hi[idx] || bound < hi[idx]) hi[idx] = bound;
      has_hi[idx] = true;
    } else {
      if (!has_lo[idx] || bound > lo[idx]) lo[idx] = bound;
      has_lo[idx] = true;
    }
  }
  Rational box_volume = 1;
  for (int j = 0; j < d; ++j) {
    if (!has_lo[j] || !has_hi[j] || !(lo[j] < hi[j]))
      throw invalid_parameter("box must bound every coordinate from both sides");
    box_volume *= hi[j] - lo[j];
  }

  std::vector<double> dlo(d), dhi(d);
  for (int j = 0; j < d; ++j) {
    dlo[j] = to_double(lo[j]);
    dhi[j] = to_double(hi[j]);
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& h : p.halfspaces) {
    std::vector<double> r(d);
    for (int j = 0; j < d; ++j) r[j] = to_double(h.coefficients[j]);
    rows.push_back(std::move(r));
    rhs.push_back(to_double(h.bound));
  }

  rng::Stream stream = rng::replicate_stream(seed, 0);
  std::uint64_t hits = 0;
  std::vector<double> point(d);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < d; ++j) point[j] = stream.next_uniform(dlo[j], dhi[j]);
    bool inside = true;
    for (std::size_t i = 0; i < rows.size() && inside; ++i) {
      double acc = 0.0;
      for (int j = 0; j < d; ++j) acc += rows[i][j] * point[j];
      if (acc > rhs[i]) inside = false;
    }
    if (inside) ++hits;
  }

  McVolume out;
  out.hits = hits;
  out.samples = samples;
  double rate = static_cast<double>(hits) / static_cast<double>(samples);
  double bv = to_double(box_volume);
  out.estimate = bv * rate;
  out.std_error = bv * std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples));
  return out;
}

Polytope make_box(int dimension, const Rational& lo, const Rational& hi) {
  if (dimension < 1) throw invalid_parameter("box dimension must be >= 1");
  if (!(lo < hi)) throw invalid_parameter("box needs lo < hi");
  Polytope box;
  box.dimension = dimension;
  for (int j = 0; j < dimension; ++j) {
    Halfspace up;
    up.coefficients.assign(dimension, Rational(0));
    up.coefficients[j] = 1;
    up.bound = hi;
    box.halfspaces.push_back(up);
    Halfspace down;
    down.coefficients.assign(dimension, Rational(0));
    down.coefficients[j] = -1;
    down.bound = -lo;
    box.halfspaces.push_back(down);
  }
  return box;
}

void write_hrep(const Polytope& p, std::ostream& out) {
  out << p.dimension << " " << p.halfspaces.size() << "\n";
  for (const auto& h : p.halfspaces) {
    for (const auto& c : h.coefficients) out << c << " ";
    out << h.bound << "\n";
  }
}

Polytope read_hrep(std::istream& in) {
  int d = 0;
  long long m = 0;
  if (!(in >> d >> m) || d < 1 || m < 1)
    throw invalid_dataset("malformed H-representation header (want 'd m')");
  Polytope p;
  p.dimension = d;
  p.halfspaces.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    Halfspace h;
    h.coefficients.resize(d);
    for (int j = 0; j <= d; ++j) {
      std::string token;
      if (!(in >> token))
        throw invalid_dataset("truncated H-representation row " + std::to_string(i + 1));
      // Validate by hand: GMP aborts on a zero denominator instead of throwing.
      auto bad = [&]() { throw invalid_dataset("bad rational '" + token + "' in H-representation"); };
      std::size_t slash = token.find('/');
      std::string num = token.substr(0, slash);
      std::string den = slash == std::string::npos ? "1" : token.substr(slash + 1);
      // Normalizing away leading zeros also avoids the big-integer string
      // constructor reading "0..." as an octal prefix.
      auto canon_int = [&](std::string t) {
        bool neg = !t.empty() && t[0] == '-';
        if (neg) t.erase(0, 1);
        if (t.empty()) bad();
        for (char c : t)
          if (!std::isdigit(static_cast<unsigned char>(c))) bad();
        std::size_t first = t.find_first_not_of('0');
        t = first == std::string::npos ? "0" : t.substr(first);
        return neg ? "-" + t : t;
      };
      BigInt den_value(canon_int(den));
      if (den_value == 0) bad();
      Rational v(BigInt(canon_int(num)), den_value);
      if (j < d)
        h.coefficients[j] = v;
      else
        h.bound = v;
    }
    p.halfspaces.push_back(std::move(h));
  }
  validate_polytope(p);
  return p;
}

}  // namespace slopeci::geometry
