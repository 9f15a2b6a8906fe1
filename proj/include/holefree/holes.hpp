// Hole predicates and searches. A hole of a finite set A is a subset of at
// least d+1 points in convex position whose hull contains no further point of
// A strictly inside. Hole-freeness at threshold l is the stronger property
// that every l-subset has some point of A strictly interior to its hull; it
// implies the absence of holes of size l or larger, and is equivalent to it
// in general position.
//
// All searches are exact, deterministic, and budgeted: enumeration order is
// fixed, and a predicate-call cap turns an oversized run into a reproducible
// cap_exceeded result instead of an open-ended one.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "holefree/geom.hpp"
#include "holefree/numeric.hpp"

namespace holefree::holes {

using geom::Point;
using geom::PointSet;

struct Caps {
  std::uint64_t max_predicate_calls = 100'000'000;
};

struct Counters {
  std::uint64_t predicate_calls = 0;
  std::uint64_t subsets_visited = 0;
};

enum class SearchStatus { ok, cap_exceeded };

struct HoleSearchResult {
  SearchStatus status = SearchStatus::ok;
  std::size_t size = 0;                // 0 when no hole exists
  std::vector<std::size_t> witness;    // indices into A, ascending
  bool witness_verified = false;       // witness re-checked through is_hole
  Counters counters;
};

struct HoleFreeResult {
  SearchStatus status = SearchStatus::ok;
  bool hole_free = false;
  std::vector<std::size_t> witness;    // l-subset with no interior point
  Counters counters;
};

struct CountResult {
  SearchStatus status = SearchStatus::ok;
  Int count = 0;
  Counters counters;
};

enum class HoleAlgo { brute, dp2d, automatic };

namespace detail {

struct Budget {
  const Caps& caps;
  Counters& ctr;
  bool exhausted = false;
  bool spend() {
    if (exhausted || ctr.predicate_calls >= caps.max_predicate_calls) {
      exhausted = true;
      return false;
    }
    ++ctr.predicate_calls;
    return true;
  }
};

inline PointSet<Int> select(const PointSet<Int>& A, const std::vector<std::size_t>& idx) {
  PointSet<Int> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(A[i]);
  return out;
}

// emptiness of conv(S) against A, skipping the member indices themselves
inline bool empty_of_points(const PointSet<Int>& A, const std::vector<std::size_t>& sidx,
                            const PointSet<Int>& spts, Budget& budget, bool* decided) {
  *decided = true;
  std::size_t cursor = 0;
  std::optional<PointSet<Int>> hull;
  if (!spts.empty() && spts[0].size() == 2) hull = geom::hull2d(spts);
  for (std::size_t i = 0; i < A.size(); ++i) {
    while (cursor < sidx.size() && sidx[cursor] < i) ++cursor;
    if (cursor < sidx.size() && sidx[cursor] == i) continue;
    if (!budget.spend()) {
      *decided = false;
      return false;
    }
    bool inside = hull ? geom::inside_convex_polygon(A[i], *hull)
                       : geom::detail::strict_interior_generic(A[i], spts);
    if (inside) return false;
  }
  return true;
}

}  // namespace detail

// ----------------------------------------------------------------------------
// basic predicates

// S is a hole of A: at least d+1 points, convex position, and no point of A
// outside S strictly interior to conv(S)
template <class Coord>
bool is_hole(const PointSet<Coord>& S, const PointSet<Coord>& A) {
  PointSet<Int> Si = geom::to_integer_points(S);
  PointSet<Int> Ai;
  {
    // scale S and A together so rational inputs stay consistent
    PointSet<Coord> all = S;
    for (const auto& a : A) all.push_back(a);
    PointSet<Int> scaled = geom::to_integer_points(all);
    Si.assign(scaled.begin(), scaled.begin() + static_cast<std::ptrdiff_t>(S.size()));
    Ai.assign(scaled.begin() + static_cast<std::ptrdiff_t>(S.size()), scaled.end());
  }
  if (Si.empty()) return false;
  const std::size_t d = Si[0].size();
  if (Si.size() < d + 1) return false;
  if (!geom::convex_position(Si).ok) return false;
  std::optional<PointSet<Int>> hull;
  if (d == 2) hull = geom::hull2d(Si);
  for (const auto& a : Ai) {
    if (std::find(Si.begin(), Si.end(), a) != Si.end()) continue;
    bool inside = hull ? geom::inside_convex_polygon(a, *hull)
                       : geom::detail::strict_interior_generic(a, Si);
    if (inside) return false;
  }
  return true;
}

// ----------------------------------------------------------------------------
// hole-freeness

namespace detail {

inline HoleFreeResult hole_free_int(const PointSet<Int>& A, std::size_t l, const Caps& caps) {
  HoleFreeResult res;
  if (l == 0) throw std::invalid_argument("is_hole_free: threshold must be positive");
  if (A.size() < l) {
    res.hole_free = true;  // nothing to check
    return res;
  }
  geom::detail::require_uniform(A);
  Budget budget{caps, res.counters};

  std::vector<std::size_t> idx(l);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> bool {
    if (pos == l) {
      ++res.counters.subsets_visited;
      PointSet<Int> spts = select(A, idx);
      std::optional<PointSet<Int>> hull;
      if (spts[0].size() == 2) hull = geom::hull2d(spts);
      for (std::size_t v = 0; v < A.size(); ++v) {
        if (!budget.spend()) return false;
        bool inside = hull ? geom::inside_convex_polygon(A[v], *hull)
                           : geom::detail::strict_interior_generic(A[v], spts);
        if (inside) return true;
      }
      res.witness = idx;
      return false;
    }
    const std::size_t slots = l - pos;
    for (std::size_t i = start; i + slots <= A.size(); ++i) {
      idx[pos] = i;
      if (!self(self, pos + 1, i + 1)) return false;
    }
    return true;
  };
  bool all_ok = rec(rec, 0, 0);
  if (budget.exhausted) {
    res.status = SearchStatus::cap_exceeded;
    res.witness.clear();
    return res;
  }
  res.hole_free = all_ok;
  return res;
}

}  // namespace detail

// every l-subset of A has a point of A strictly interior to its hull
template <class Coord>
HoleFreeResult is_hole_free(const PointSet<Coord>& A, std::size_t l, const Caps& caps = {}) {
  return detail::hole_free_int(geom::to_integer_points(A), l, caps);
}

// ----------------------------------------------------------------------------
// largest hole, exhaustive

namespace detail {

// subset DFS in ascending index order; extensions prune on convex position
// only, emptiness is evaluated per candidate
inline void max_hole_brute_generic(const PointSet<Int>& A, std::size_t d,
                                   std::size_t cap_size, HoleSearchResult& res,
                                   Budget& budget) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (cur.size() >= cap_size) return true;
    for (std::size_t i = start; i < A.size(); ++i) {
      cur.push_back(i);
      ++res.counters.subsets_visited;
      if (!budget.spend()) return false;
      if (geom::convex_position(select(A, cur)).ok) {
        if (cur.size() >= d + 1) {
          bool decided = true;
          PointSet<Int> spts = select(A, cur);
          if (empty_of_points(A, cur, spts, budget, &decided) && decided) {
            if (cur.size() > res.size) {
              res.size = cur.size();
              res.witness = cur;
            }
          }
          if (!decided) return false;
        }
        if (!self(self, i + 1)) return false;
      }
      cur.pop_back();
    }
    return true;
  };
  rec(rec, 0);
}

// anchor-and-chain search in the plane: for each anchor, points after it in
// (y, x) order are sorted by angle and chains of strict left turns are grown;
// a chain that also turns left when closing back to the anchor is a candidate
// polygon, re-verified from scratch
inline void max_hole_brute_2d(const PointSet<Int>& A, std::size_t cap_size,
                              HoleSearchResult& res, Budget& budget) {
  auto yx_less = [&](std::size_t u, std::size_t v) {
    if (A[u][1] != A[v][1]) return A[u][1] < A[v][1];
    return A[u][0] < A[v][0];
  };
  for (std::size_t ai = 0; ai < A.size(); ++ai) {
    const Point<Int>& a = A[ai];
    std::vector<std::size_t> W;
    for (std::size_t i = 0; i < A.size(); ++i)
      if (i != ai && yx_less(ai, i)) W.push_back(i);
    std::sort(W.begin(), W.end(), [&](std::size_t u, std::size_t v) {
      Int cr = geom::cross2(a, A[u], A[v]);
      if (cr != 0) return cr > 0;
      Int du = (A[u][0] - a[0]) * (A[u][0] - a[0]) + (A[u][1] - a[1]) * (A[u][1] - a[1]);
      Int dv = (A[v][0] - a[0]) * (A[v][0] - a[0]) + (A[v][1] - a[1]) * (A[v][1] - a[1]);
      if (du != dv) return du < dv;
      return u < v;
    });

    std::vector<std::size_t> chain;  // positions into W
    auto candidate = [&]() -> bool {
      // chain plus anchor closes into a polygon; verify it independently
      std::vector<std::size_t> sidx;
      sidx.push_back(ai);
      for (auto p : chain) sidx.push_back(W[p]);
      std::sort(sidx.begin(), sidx.end());
      if (sidx.size() <= res.size) return true;  // cannot improve
      if (!budget.spend()) return false;
      PointSet<Int> spts = select(A, sidx);
      if (!geom::convex_position(spts).ok) return true;
      bool decided = true;
      if (empty_of_points(A, sidx, spts, budget, &decided) && decided) {
        res.size = sidx.size();
        res.witness = sidx;
      }
      return decided;
    };

    // the turn at the chain's last vertex v between u->v and v->p equals
    // cross2(u, v, p), with the anchor standing in for u on the first turn
    auto rec = [&](auto&& self, std::size_t start) -> bool {
      if (chain.size() + 2 > cap_size) return true;  // anchor + chain + one more
      for (std::size_t p = start; p < W.size(); ++p) {
        const std::size_t k = chain.size();
        if (k >= 1) {
          const auto& u = (k == 1) ? a : A[W[chain[k - 2]]];
          const auto& v = A[W[chain[k - 1]]];
          if (geom::cross2(u, v, A[W[p]]) <= 0) continue;
        }
        chain.push_back(p);
        ++res.counters.subsets_visited;
        if (chain.size() >= 2) {
          const auto& v = A[W[chain[chain.size() - 2]]];
          const auto& w = A[W[chain.back()]];
          if (geom::cross2(v, w, a) > 0) {
            if (!candidate()) {
              chain.pop_back();
              return false;
            }
          }
        }
        if (!self(self, p + 1)) {
          chain.pop_back();
          return false;
        }
        chain.pop_back();
      }
      return true;
    };
    if (!rec(rec, 0)) return;
  }
}

// largest empty convex polygon in the plane, dynamic program over angular
// chains per anchor; assumes general position
inline void max_hole_dp2d(const PointSet<Int>& A, HoleSearchResult& res, Budget& budget) {
  auto yx_less = [&](std::size_t u, std::size_t v) {
    if (A[u][1] != A[v][1]) return A[u][1] < A[v][1];
    return A[u][0] < A[v][0];
  };
  for (std::size_t ai = 0; ai < A.size(); ++ai) {
    const Point<Int>& a = A[ai];
    std::vector<std::size_t> W;
    for (std::size_t i = 0; i < A.size(); ++i)
      if (i != ai && yx_less(ai, i)) W.push_back(i);
    std::sort(W.begin(), W.end(), [&](std::size_t u, std::size_t v) {
      Int cr = geom::cross2(a, A[u], A[v]);
      if (cr != 0) return cr > 0;
      Int du = (A[u][0] - a[0]) * (A[u][0] - a[0]) + (A[u][1] - a[1]) * (A[u][1] - a[1]);
      Int dv = (A[v][0] - a[0]) * (A[v][0] - a[0]) + (A[v][1] - a[1]) * (A[v][1] - a[1]);
      if (du != dv) return du < dv;
      return u < v;
    });
    const std::size_t nw = W.size();
    if (nw < 2) continue;

    // tri_empty[i][j]: no point of A strictly inside triangle (a, W[i], W[j])
    std::vector<std::vector<char>> tri(nw, std::vector<char>(nw, 0));
    for (std::size_t i = 0; i < nw; ++i)
      for (std::size_t j = i + 1; j < nw; ++j) {
        if (!budget.spend()) return;
        const auto& b = A[W[i]];
        const auto& c = A[W[j]];
        if (geom::cross2(a, b, c) <= 0) continue;  // degenerate or misordered
        bool empty = true;
        for (std::size_t v = 0; v < A.size() && empty; ++v) {
          if (v == ai || v == W[i] || v == W[j]) continue;
          const auto& p = A[v];
          if (geom::cross2(a, b, p) > 0 && geom::cross2(b, c, p) > 0 &&
              geom::cross2(c, a, p) > 0)
            empty = false;
        }
        tri[i][j] = empty ? 1 : 0;
      }

    std::vector<std::vector<std::size_t>> dp(nw, std::vector<std::size_t>(nw, 0));
    std::vector<std::vector<std::ptrdiff_t>> parent(
        nw, std::vector<std::ptrdiff_t>(nw, -1));
    auto consider = [&](std::size_t i, std::size_t j) {
      ++res.counters.subsets_visited;
      if (dp[i][j] == 0) return;
      if (geom::cross2(A[W[i]], A[W[j]], a) > 0 && dp[i][j] > res.size) {
        res.size = dp[i][j];
        std::vector<std::size_t> poly;
        poly.push_back(ai);
        std::size_t ci = i, cj = j;
        poly.push_back(W[cj]);
        while (true) {
          poly.push_back(W[ci]);
          std::ptrdiff_t h = parent[ci][cj];
          if (h < 0) break;
          cj = ci;
          ci = static_cast<std::size_t>(h);
        }
        std::sort(poly.begin(), poly.end());
        res.witness = std::move(poly);
      }
    };
    for (std::size_t j = 1; j < nw; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!tri[i][j]) continue;
        dp[i][j] = 3;
        for (std::size_t h = 0; h < i; ++h) {
          if (dp[h][i] == 0) continue;
          if (geom::cross2(A[W[h]], A[W[i]], A[W[j]]) <= 0) continue;
          if (dp[h][i] + 1 > dp[i][j]) {
            dp[i][j] = dp[h][i] + 1;
            parent[i][j] = static_cast<std::ptrdiff_t>(h);
          }
        }
        consider(i, j);
      }
    }
  }
}

}  // namespace detail

template <class Coord>
HoleSearchResult max_hole(const PointSet<Coord>& A, HoleAlgo algo = HoleAlgo::automatic,
                          std::size_t cap_size = 0, const Caps& caps = {}) {
  HoleSearchResult res;
  PointSet<Int> P = geom::to_integer_points(A);
  if (P.empty()) return res;
  geom::detail::require_uniform(P);
  const std::size_t d = P[0].size();
  if (d < 1) throw std::invalid_argument("max_hole: zero-dimensional points");
  if (cap_size == 0) cap_size = P.size();

  HoleAlgo chosen = algo;
  if (chosen == HoleAlgo::automatic)
    chosen = (d == 2 && geom::general_position(P).ok) ? HoleAlgo::dp2d : HoleAlgo::brute;
  if (chosen == HoleAlgo::dp2d && d != 2)
    throw std::invalid_argument("max_hole: dp2d requires planar input");

  detail::Budget budget{caps, res.counters};
  if (chosen == HoleAlgo::dp2d) {
    detail::max_hole_dp2d(P, res, budget);
    // dp chains may overshoot the cap; a vertex subset of an empty convex
    // polygon is again a hole, so truncate instead of discarding
    if (res.size > cap_size) {
      if (cap_size >= d + 1) {
        res.size = cap_size;
        res.witness.resize(cap_size);
      } else {
        res.size = 0;
        res.witness.clear();
      }
    }
  } else if (d == 2) {
    detail::max_hole_brute_2d(P, cap_size, res, budget);
  } else {
    detail::max_hole_brute_generic(P, d, cap_size, res, budget);
  }
  if (budget.exhausted) res.status = SearchStatus::cap_exceeded;
  if (!res.witness.empty())
    res.witness_verified = is_hole(detail::select(P, res.witness), P);
  return res;
}

// ----------------------------------------------------------------------------
// hole counting

template <class Coord>
CountResult count_holes(const PointSet<Coord>& A, std::size_t l, const Caps& caps = {}) {
  CountResult res;
  PointSet<Int> P = geom::to_integer_points(A);
  if (l == 0) throw std::invalid_argument("count_holes: size must be positive");
  if (P.size() < l) return res;
  geom::detail::require_uniform(P);
  const std::size_t d = P[0].size();
  detail::Budget budget{caps, res.counters};

  std::vector<std::size_t> idx(l);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> bool {
    if (pos == l) {
      ++res.counters.subsets_visited;
      if (l < d + 1) return true;
      if (!budget.spend()) return false;
      PointSet<Int> spts = detail::select(P, idx);
      if (!geom::convex_position(spts).ok) return true;
      bool decided = true;
      if (detail::empty_of_points(P, idx, spts, budget, &decided) && decided) ++res.count;
      return decided;
    }
    const std::size_t slots = l - pos;
    for (std::size_t i = start; i + slots <= P.size(); ++i) {
      idx[pos] = i;
      if (!self(self, pos + 1, i + 1)) return false;
    }
    return true;
  };
  rec(rec, 0, 0);
  if (budget.exhausted) res.status = SearchStatus::cap_exceeded;
  return res;
}

}  // namespace holefree::holes
