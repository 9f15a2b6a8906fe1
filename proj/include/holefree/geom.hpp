// Exact affine and convex-position predicates over integer and rational
// coordinates. Rational inputs are cleared to integers by one global positive
// scale, which leaves every predicate here invariant. The generic-dimension
// algorithms are fraction-free (Bareiss); d = 2 gets dedicated hull-based
// fast paths.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "holefree/numeric.hpp"

namespace holefree::geom {

template <class Coord>
using Point = std::vector<Coord>;
template <class Coord>
using PointSet = std::vector<Point<Coord>>;

namespace detail {

inline void require_uniform(const PointSet<Int>& S) {
  for (std::size_t i = 1; i < S.size(); ++i)
    if (S[i].size() != S[0].size())
      throw std::invalid_argument("point set with mixed dimensions");
}

// Bareiss determinant, exact over Int
inline Int det(std::vector<std::vector<Int>> M) {
  const std::size_t n = M.size();
  for (const auto& r : M)
    if (r.size() != n) throw std::invalid_argument("det: matrix not square");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && M[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(M[piv], M[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / prev;
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]);
}

// Bareiss row reduction; returns rank, optionally records pivot columns
inline int rank(std::vector<std::vector<Int>> M,
                std::vector<std::size_t>* pivots = nullptr) {
  if (M.empty()) return 0;
  const std::size_t rows = M.size(), cols = M[0].size();
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap(M[piv], M[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) / prev;
      M[i][c] = 0;
    }
    prev = M[r][c];
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return static_cast<int>(r);
}

// vector orthogonal to the d-1 rows of V; zero exactly when rank(V) < d-1
inline std::vector<Int> cross_null(const std::vector<std::vector<Int>>& V,
                                   std::size_t d) {
  if (V.size() + 1 != d) throw std::invalid_argument("cross_null: need d-1 rows");
  std::vector<Int> N(d);
  int sign = (d % 2 == 1) ? 1 : -1;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<Int>> M;
    M.reserve(V.size());
    for (const auto& row : V) {
      std::vector<Int> r;
      r.reserve(d - 1);
      for (std::size_t c = 0; c < d; ++c)
        if (c != j) r.push_back(row[c]);
      M.push_back(std::move(r));
    }
    N[j] = Int(sign) * det(std::move(M));
    sign = -sign;
  }
  return N;
}

inline bool is_zero(const std::vector<Int>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace detail

// ----------------------------------------------------------------------------
// coordinate normalization

inline PointSet<Int> to_integer_points(const PointSet<Int>& S) { return S; }

// one positive scale for the whole set keeps every affine predicate intact
inline PointSet<Int> to_integer_points(const PointSet<Rat>& S) {
  Int L = 1;
  for (const auto& p : S)
    for (const auto& x : p) L = boost::multiprecision::lcm(L, rat_den(x));
  PointSet<Int> out;
  out.reserve(S.size());
  for (const auto& p : S) {
    Point<Int> q;
    q.reserve(p.size());
    for (const auto& x : p) q.push_back(rat_num(x) * (L / rat_den(x)));
    out.push_back(std::move(q));
  }
  return out;
}

// ----------------------------------------------------------------------------
// affine rank

// dimension of the affine hull; -1 for the empty set
inline int affine_rank_int(const PointSet<Int>& S) {
  if (S.empty()) return -1;
  detail::require_uniform(S);
  std::vector<std::vector<Int>> rows;
  rows.reserve(S.size() - 1);
  for (std::size_t i = 1; i < S.size(); ++i) {
    std::vector<Int> r(S[0].size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = S[i][j] - S[0][j];
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return 0;
  return detail::rank(std::move(rows));
}

template <class Coord>
int affine_rank(const PointSet<Coord>& S) {
  return affine_rank_int(to_integer_points(S));
}

// ----------------------------------------------------------------------------
// 2d primitives

// twice the signed area of (o,a,b); positive for a left turn
inline Int cross2(const Point<Int>& o, const Point<Int>& a, const Point<Int>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// strict convex hull, counterclockwise; collinear edge points and duplicates
// are dropped
inline PointSet<Int> hull2d(PointSet<Int> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  PointSet<Int> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// strictly inside a counterclockwise convex polygon
inline bool inside_convex_polygon(const Point<Int>& p, const PointSet<Int>& hull) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    if (cross2(a, b, p) <= 0) return false;
  }
  return true;
}

// ----------------------------------------------------------------------------
// strict interior, generic dimension

namespace detail {

// p lies in the topological interior of conv(S) iff aff(S) is full-dimensional
// and no nonzero direction c has <s - p, c> >= 0 for all s. The feasible set
// of such c is a pointed polyhedral cone, so when nonempty it has an extreme
// ray supported by d-1 linearly independent constraints; enumerating the
// cross-product direction of every (d-1)-subset of {s - p} and testing both
// signs is therefore complete.
inline bool strict_interior_generic(const Point<Int>& p, const PointSet<Int>& S) {
  const std::size_t d = p.size();
  if (d == 0) throw std::invalid_argument("strict_interior: zero-dimensional point");
  for (const auto& s : S)
    if (s.size() != d)
      throw std::invalid_argument("strict_interior: dimension mismatch");
  if (affine_rank_int(S) < static_cast<int>(d)) return false;

  std::vector<std::vector<Int>> Q;
  Q.reserve(S.size());
  for (const auto& s : S) {
    std::vector<Int> q(d);
    for (std::size_t j = 0; j < d; ++j) q[j] = s[j] - p[j];
    Q.push_back(std::move(q));
  }

  auto dominated = [&](const std::vector<Int>& c) {
    // true when every q lies weakly on the positive side of c
    for (const auto& q : Q) {
      Int dot = 0;
      for (std::size_t j = 0; j < d; ++j) dot += q[j] * c[j];
      if (dot < 0) return false;
    }
    return true;
  };

  std::vector<std::size_t> idx(d - 1);
  std::vector<std::vector<Int>> V(d - 1);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> bool {
    if (pos == d - 1) {
      for (std::size_t i = 0; i < d - 1; ++i) V[i] = Q[idx[i]];
      std::vector<Int> c = cross_null(V, d);
      if (is_zero(c)) return false;
      if (dominated(c)) return true;
      for (auto& x : c) x = -x;
      return dominated(c);
    }
    const std::size_t slots = d - 1 - pos;
    for (std::size_t i = start; i + slots <= Q.size(); ++i) {
      idx[pos] = i;
      if (self(self, pos + 1, i + 1)) return true;
    }
    return false;
  };
  if (d == 1) {
    std::vector<Int> c{Int(1)};
    if (dominated(c)) return false;
    c[0] = -1;
    return !dominated(c);
  }
  return !rec(rec, 0, 0);
}

}  // namespace detail

template <class Coord>
bool strict_interior(const Point<Coord>& p, const PointSet<Coord>& S) {
  if constexpr (std::is_same_v<Coord, Int>) {
    if (p.size() == 2) {
      for (const auto& s : S)
        if (s.size() != 2)
          throw std::invalid_argument("strict_interior: dimension mismatch");
      return inside_convex_polygon(p, hull2d(S));
    }
    return detail::strict_interior_generic(p, S);
  } else {
    PointSet<Coord> all = S;
    all.push_back(p);
    PointSet<Int> scaled = to_integer_points(all);
    Point<Int> pi = std::move(scaled.back());
    scaled.pop_back();
    return strict_interior<Int>(pi, scaled);
  }
}

// ----------------------------------------------------------------------------
// convex hull membership, generic dimension

namespace detail {

// closed membership p ∈ conv(S) by Caratheodory: some affinely independent
// subset of size <= d+1 contains p in its simplex
inline bool in_convex_hull_generic(const Point<Int>& p, const PointSet<Int>& S) {
  const std::size_t d = p.size();
  for (const auto& s : S)
    if (s.size() != d)
      throw std::invalid_argument("in_convex_hull: dimension mismatch");
  if (S.empty()) return false;

  auto simplex_contains = [&](const std::vector<std::size_t>& T) -> bool {
    const std::size_t k = T.size() - 1;
    std::vector<std::vector<Int>> A;
    A.reserve(k + 1);
    for (std::size_t j = 1; j <= k; ++j) {
      std::vector<Int> r(d);
      for (std::size_t c = 0; c < d; ++c) r[c] = S[T[j]][c] - S[T[0]][c];
      A.push_back(std::move(r));
    }
    std::vector<std::size_t> pivots;
    if (detail::rank(A, &pivots) != static_cast<int>(k)) return false;  // not independent

    std::vector<Int> b(d);
    for (std::size_t c = 0; c < d; ++c) b[c] = p[c] - S[T[0]][c];
    {
      auto ext = A;
      ext.push_back(b);
      if (detail::rank(std::move(ext)) != static_cast<int>(k)) return false;  // p off aff(T)
    }
    if (k == 0) return true;  // single point, and p lies in its affine hull

    // restrict to pivot columns and solve by Cramer; row j of M is the
    // restricted j-th edge vector, so lambda solves M^T lambda = b
    std::vector<std::vector<Int>> M(k, std::vector<Int>(k));
    std::vector<Int> rb(k);
    for (std::size_t jj = 0; jj < k; ++jj) {
      for (std::size_t cc = 0; cc < k; ++cc) M[jj][cc] = A[jj][pivots[cc]];
      rb[jj] = b[pivots[jj]];
    }
    Int D = detail::det(M);
    Int sum = 0;
    for (std::size_t jj = 0; jj < k; ++jj) {
      auto Mj = M;
      Mj[jj] = rb;
      Int Nj = detail::det(std::move(Mj));
      if (D > 0 && Nj < 0) return false;
      if (D < 0 && Nj > 0) return false;
      sum += Nj;
    }
    if (D > 0 && sum > D) return false;
    if (D < 0 && sum < D) return false;
    return true;
  };

  const std::size_t cap = std::min(S.size(), d + 1);
  std::vector<std::size_t> T;
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (!T.empty() && simplex_contains(T)) return true;
    if (T.size() == cap) return false;
    for (std::size_t i = start; i < S.size(); ++i) {
      T.push_back(i);
      if (self(self, i + 1)) return true;
      T.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace detail

template <class Coord>
bool in_convex_hull(const Point<Coord>& p, const PointSet<Coord>& S) {
  if constexpr (std::is_same_v<Coord, Int>) {
    return detail::in_convex_hull_generic(p, S);
  } else {
    PointSet<Coord> all = S;
    all.push_back(p);
    PointSet<Int> scaled = to_integer_points(all);
    Point<Int> pi = std::move(scaled.back());
    scaled.pop_back();
    return in_convex_hull<Int>(pi, scaled);
  }
}

// ----------------------------------------------------------------------------
// convex position

struct ConvexPositionResult {
  bool ok = true;
  std::optional<std::size_t> witness;  // index of a point inside the others' hull
};

namespace detail {

inline ConvexPositionResult convex_position_2d(const PointSet<Int>& S) {
  ConvexPositionResult res;
  {
    auto sorted = S;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      // second occurrence by index
      std::size_t first = S.size();
      for (std::size_t i = 0; i < S.size(); ++i)
        if (S[i] == *dup) {
          if (first == S.size()) first = i;
          else {
            res.ok = false;
            res.witness = i;
            return res;
          }
        }
    }
  }
  if (S.size() <= 2) return res;
  PointSet<Int> h = hull2d(S);
  if (h.size() == S.size()) return res;
  std::sort(h.begin(), h.end());
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!std::binary_search(h.begin(), h.end(), S[i])) {
      res.ok = false;
      res.witness = i;
      return res;
    }
  res.ok = false;  // unreachable with distinct points
  return res;
}

inline ConvexPositionResult convex_position_generic(const PointSet<Int>& S) {
  ConvexPositionResult res;
  for (std::size_t i = 0; i < S.size(); ++i) {
    PointSet<Int> rest;
    rest.reserve(S.size() - 1);
    for (std::size_t j = 0; j < S.size(); ++j)
      if (j != i) rest.push_back(S[j]);
    if (in_convex_hull_generic(S[i], rest)) {
      res.ok = false;
      res.witness = i;
      return res;
    }
  }
  return res;
}

}  // namespace detail

// every point is a vertex of the common hull
template <class Coord>
ConvexPositionResult convex_position(const PointSet<Coord>& S) {
  PointSet<Int> P = to_integer_points(S);
  if (P.empty()) return {};
  detail::require_uniform(P);
  if (P[0].size() == 2) return detail::convex_position_2d(P);
  return detail::convex_position_generic(P);
}

// ----------------------------------------------------------------------------
// general position

struct GeneralPositionResult {
  bool ok = true;
  std::vector<std::size_t> witness;  // minimal affinely dependent subset
};

namespace detail {

inline bool dependent(const PointSet<Int>& P, const std::vector<std::size_t>& idx) {
  PointSet<Int> sub;
  sub.reserve(idx.size());
  for (auto i : idx) sub.push_back(P[i]);
  return affine_rank_int(sub) < static_cast<int>(idx.size()) - 1;
}

}  // namespace detail

// every subset of size min(n, d+1) is affinely independent; this already
// forbids any j+2 points sharing a j-flat, since a dependent set extends to a
// dependent set of the checked size
template <class Coord>
GeneralPositionResult general_position(const PointSet<Coord>& S) {
  GeneralPositionResult res;
  PointSet<Int> P = to_integer_points(S);
  if (P.empty()) return res;
  detail::require_uniform(P);
  const std::size_t d = P[0].size();
  const std::size_t k = std::min(P.size(), d + 1);
  if (k < 2) return res;

  std::vector<std::size_t> idx(k);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> bool {
    if (pos == k) return !detail::dependent(P, idx);
    for (std::size_t i = start; i < P.size(); ++i) {
      idx[pos] = i;
      if (!self(self, pos + 1, i + 1)) return false;
    }
    return true;
  };
  if (rec(rec, 0, 0)) return res;

  // shrink the offending subset to a minimal dependent one
  std::vector<std::size_t> w = idx;
  bool shrunk = true;
  while (shrunk && w.size() > 2) {
    shrunk = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<std::size_t> trial = w;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (detail::dependent(P, trial)) {
        w = std::move(trial);
        shrunk = true;
        break;
      }
    }
  }
  res.ok = false;
  res.witness = std::move(w);
  return res;
}

}  // namespace holefree::geom
