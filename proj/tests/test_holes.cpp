#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "holefree/holes.hpp"
#include "holefree/rng.hpp"

using namespace holefree;
using geom::Point;
using geom::PointSet;

namespace {

PointSet<Int> square_center() { return {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}}; }

// blunt reference: walk every subset by bitmask, test the hole definition
// through the public predicates only
struct NaiveBest {
  std::size_t size = 0;
  std::vector<std::size_t> witness;
};

bool naive_is_hole(const PointSet<Int>& A, const std::vector<std::size_t>& idx) {
  const std::size_t d = A[0].size();
  if (idx.size() < d + 1) return false;
  PointSet<Int> S;
  for (auto i : idx) S.push_back(A[i]);
  if (!geom::convex_position(S).ok) return false;
  for (std::size_t v = 0; v < A.size(); ++v) {
    if (std::find(idx.begin(), idx.end(), v) != idx.end()) continue;
    if (geom::strict_interior(A[v], S)) return false;
  }
  return true;
}

NaiveBest naive_max_hole(const PointSet<Int>& A) {
  NaiveBest best;
  const std::size_t n = A.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    if (idx.size() <= best.size) continue;
    if (naive_is_hole(A, idx)) {
      best.size = idx.size();
      best.witness = idx;
    }
  }
  return best;
}

std::uint64_t naive_count(const PointSet<Int>& A, std::size_t ell) {
  std::uint64_t c = 0;
  const std::size_t n = A.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    if (idx.size() == ell && naive_is_hole(A, idx)) ++c;
  }
  return c;
}

PointSet<Int> random_points(std::uint64_t seed, std::size_t n, unsigned d,
                            std::int64_t box) {
  PointSet<Int> pts;
  std::size_t i = 0;
  while (pts.size() < n) {
    Point<Int> p;
    for (unsigned a = 0; a < d; ++a)
      p.push_back(Int(keyed_rand(seed, i, a) % (2 * box + 1)) - box);
    ++i;
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return pts;
}

PointSet<Int> random_gp(std::uint64_t seed, std::size_t n, unsigned d, std::int64_t box) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto pts = random_points(splitmix64(seed + attempt * 1315423911ull), n, d, box);
    if (geom::general_position(pts).ok) return pts;
  }
}

}  // namespace

TEST_CASE("a triangle with its interior point occupied is no hole") {
  auto A = square_center();
  CHECK(holes::is_hole(PointSet<Int>{{0, 0}, {2, 0}, {0, 2}}, A));
  // the full square contains the center strictly
  CHECK_FALSE(holes::is_hole(PointSet<Int>{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, A));
  // too small for dimension 2
  CHECK_FALSE(holes::is_hole(PointSet<Int>{{0, 0}, {2, 0}}, A));
  // not in convex position: center on the diagonal
  CHECK_FALSE(holes::is_hole(PointSet<Int>{{0, 0}, {1, 1}, {2, 2}, {2, 0}}, A));
}

TEST_CASE("largest hole of the centered square is a triangle") {
  auto A = square_center();
  auto naive = naive_max_hole(A);
  CHECK(naive.size == 3);
  // degenerate set: automatic must fall back to the brute search
  auto r = holes::max_hole(A);
  CHECK(r.status == holes::SearchStatus::ok);
  CHECK(r.size == 3);
  CHECK(r.witness_verified);
  auto rb = holes::max_hole(A, holes::HoleAlgo::brute);
  CHECK(rb.size == 3);
  CHECK_FALSE(holes::is_hole_free(A, 3).hole_free);
  // out of general position the subset-witness condition is stricter than
  // "no hole of size 4": the degenerate subset square-minus-corner-plus-center
  // has a triangle hull with nothing strictly inside, yet is no hole itself
  auto r4 = holes::is_hole_free(A, 4);
  CHECK_FALSE(r4.hole_free);
  CHECK_FALSE(naive_is_hole(A, r4.witness));
  CHECK_FALSE(geom::convex_position([&] {
                PointSet<Int> S;
                for (auto i : r4.witness) S.push_back(A[i]);
                return S;
              }())
                  .ok);
}

TEST_CASE("brute, planar dynamic program, and the naive reference agree") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto A = random_gp(seed, 3 + seed % 8, 2, 8);
    auto naive = naive_max_hole(A);
    auto brute = holes::max_hole(A, holes::HoleAlgo::brute);
    auto dp = holes::max_hole(A, holes::HoleAlgo::dp2d);
    auto autom = holes::max_hole(A);
    CAPTURE(seed, A.size());
    CHECK(brute.size == naive.size);
    CHECK(dp.size == naive.size);
    CHECK(autom.size == naive.size);
    CHECK(brute.witness_verified);
    CHECK(dp.witness_verified);
    CHECK(naive_is_hole(A, brute.witness));
    CHECK(naive_is_hole(A, dp.witness));
  }
}

TEST_CASE("three-dimensional brute search matches the naive reference") {
  for (std::uint64_t seed = 60; seed < 72; ++seed) {
    auto A = random_gp(seed, 7, 3, 4);
    auto naive = naive_max_hole(A);
    auto brute = holes::max_hole(A);
    CAPTURE(seed);
    CHECK(brute.size == naive.size);
    CHECK(naive_is_hole(A, brute.witness));
  }
}

TEST_CASE("hole-freeness thresholds bracket the maximum hole size") {
  for (std::uint64_t seed = 30; seed < 42; ++seed) {
    auto A = random_gp(seed, 9, 2, 7);
    auto mx = holes::max_hole(A);
    REQUIRE(mx.size >= 3);
    auto at = holes::is_hole_free(A, mx.size);
    REQUIRE(at.status == holes::SearchStatus::ok);
    CHECK_FALSE(at.hole_free);
    CHECK(at.witness.size() == mx.size);
    auto above = holes::is_hole_free(A, mx.size + 1);
    CHECK(above.hole_free);
  }
}

TEST_CASE("hole-free witness is itself a hole") {
  auto A = random_gp(77, 10, 2, 9);
  auto mx = holes::max_hole(A);
  auto at = holes::is_hole_free(A, mx.size);
  REQUIRE_FALSE(at.hole_free);
  CHECK(naive_is_hole(A, at.witness));
}

TEST_CASE("counting matches the reference and the convex layers intuition") {
  PointSet<Int> tri{{0, 0}, {4, 0}, {0, 4}};
  CHECK(holes::count_holes(tri, 3).count == 1);
  CHECK(holes::count_holes(tri, 2).count == 0);  // below d+1 nothing counts
  auto A = square_center();
  for (std::size_t ell = 3; ell <= 5; ++ell) {
    CAPTURE(ell);
    CHECK(holes::count_holes(A, ell).count == Int(naive_count(A, ell)));
  }
  for (std::uint64_t seed = 50; seed < 56; ++seed) {
    auto R = random_gp(seed, 8, 2, 6);
    for (std::size_t ell = 3; ell <= 6; ++ell)
      CHECK(holes::count_holes(R, ell).count == Int(naive_count(R, ell)));
  }
}

TEST_CASE("vacuous and invalid thresholds") {
  auto A = square_center();
  CHECK(holes::is_hole_free(A, 6).hole_free);    // more than |A| points wanted
  CHECK(holes::is_hole_free(A, 100).hole_free);
  CHECK_THROWS_AS(holes::is_hole_free(A, 0), std::invalid_argument);
  CHECK_THROWS_AS(holes::count_holes(A, 0), std::invalid_argument);
  CHECK(holes::count_holes(A, 6).count == 0);
  // size-d+1 threshold below any hole: 1-subsets and 2-subsets cannot be holes
  CHECK_FALSE(holes::is_hole_free(A, 1).hole_free);
}

TEST_CASE("search size caps truncate honestly") {
  auto A = random_gp(91, 11, 2, 9);
  auto full = holes::max_hole(A);
  REQUIRE(full.size >= 5);
  auto capped = holes::max_hole(A, holes::HoleAlgo::brute, 4);
  CHECK(capped.size == 4);
  CHECK(naive_is_hole(A, capped.witness));
  auto capped_dp = holes::max_hole(A, holes::HoleAlgo::dp2d, 4);
  CHECK(capped_dp.size == 4);
  CHECK(capped_dp.witness.size() == 4);
  CHECK(capped_dp.witness_verified);  // vertex subsets of holes are holes
}

TEST_CASE("predicate budget exhaustion is reported and reproducible") {
  auto A = random_gp(101, 12, 2, 9);
  holes::Caps tiny;
  tiny.max_predicate_calls = 25;
  auto a = holes::max_hole(A, holes::HoleAlgo::brute, 0, tiny);
  auto b = holes::max_hole(A, holes::HoleAlgo::brute, 0, tiny);
  CHECK(a.status == holes::SearchStatus::cap_exceeded);
  CHECK(a.counters.predicate_calls == b.counters.predicate_calls);
  CHECK(a.size == b.size);
  CHECK(a.witness == b.witness);
  // a passing threshold forces the full subset walk into the budget wall;
  // a failing one may return its witness before the wall
  auto mx = holes::max_hole(A);
  auto hf = holes::is_hole_free(A, mx.size + 1, tiny);
  CHECK(hf.status == holes::SearchStatus::cap_exceeded);
  CHECK(hf.witness.empty());
  auto ct = holes::count_holes(A, 4, tiny);
  CHECK(ct.status == holes::SearchStatus::cap_exceeded);
}

TEST_CASE("the planar dynamic program refuses non-planar input") {
  auto A = random_gp(5, 6, 3, 5);
  CHECK_THROWS_AS(holes::max_hole(A, holes::HoleAlgo::dp2d), std::invalid_argument);
}

TEST_CASE("rational point sets go through the same oracle") {
  PointSet<Rat> A;
  for (const auto& p : square_center()) A.push_back({Rat(p[0], 3), Rat(p[1], 7)});
  auto r = holes::max_hole(A);
  CHECK(r.size == 3);  // affine images preserve hole structure
  CHECK_FALSE(holes::is_hole_free(A, 3).hole_free);
  CHECK(holes::is_hole_free(A, 6).hole_free);
}

TEST_CASE("collinear-heavy grids still produce sound answers") {
  PointSet<Int> grid;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) grid.push_back({x, y});
  auto naive = naive_max_hole(grid);
  auto brute = holes::max_hole(grid);
  CHECK(brute.size == naive.size);
  CHECK(naive_is_hole(grid, brute.witness));
  auto cnt = holes::count_holes(grid, 4);
  CHECK(cnt.count == Int(naive_count(grid, 4)));
}
