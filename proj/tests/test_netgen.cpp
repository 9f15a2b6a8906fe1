#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "holefree/netgen.hpp"
#include "holefree/numeric.hpp"

using namespace holefree;
using netgen::NetPoint;

namespace {

// independent box-count oracle: exact rational point values against exact
// rational box bounds, no digit tricks shared with the verifier
bool oracle_net_property(const std::vector<NetPoint>& pts, unsigned t, unsigned m,
                         unsigned s) {
  const std::uint64_t want = std::uint64_t{1} << t;
  std::vector<unsigned> k(s, 0);
  // enumerate all compositions of m - t into s non-negative parts
  std::vector<std::vector<unsigned>> comps;
  std::vector<unsigned> cur(s, 0);
  auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
    if (pos + 1 == s) {
      cur[pos] = left;
      comps.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, m - t);
  for (const auto& comp : comps) {
    std::vector<std::uint64_t> b(s, 0);
    while (true) {
      std::uint64_t inside = 0;
      for (const auto& p : pts) {
        bool in = true;
        for (unsigned i = 0; i < s && in; ++i) {
          Rat x = p.value(i);
          Rat lo = Rat(Int(b[i]), pow2(comp[i]));
          Rat hi = Rat(Int(b[i] + 1), pow2(comp[i]));
          in = x >= lo && x < hi;
        }
        if (in) ++inside;
      }
      if (inside != want) return false;
      unsigned axis = 0;
      while (axis < s) {
        if (++b[axis] < (std::uint64_t{1} << comp[axis])) break;
        b[axis] = 0;
        ++axis;
      }
      if (axis == s) break;
    }
  }
  return true;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("van der Corput digits are the index bits reversed") {
  auto pts = netgen::vdc_points(3);
  REQUIRE(pts.size() == 8);
  // classical values: phi(1)=1/2, phi(2)=1/4, phi(3)=3/4, phi(5)=5/8
  CHECK(pts[0].value(0) == Rat(0));
  CHECK(pts[1].value(0) == Rat(1, 2));
  CHECK(pts[2].value(0) == Rat(1, 4));
  CHECK(pts[3].value(0) == Rat(3, 4));
  CHECK(pts[5].value(0) == Rat(5, 8));
  for (const auto& p : pts) CHECK(p.digit_count(0) == 3);
}

TEST_CASE("van der Corput is a (0,m,1)-net, oracle and verifier agree") {
  for (unsigned m : {1u, 3u, 5u}) {
    auto pts = netgen::vdc_points(m);
    auto r = netgen::verify_net(pts, 0, m, 1);
    CHECK(r.pass);
    CHECK(oracle_net_property(pts, 0, m, 1));
  }
}

TEST_CASE("Sobol' points in two dimensions form a (0,m,2)-net") {
  for (unsigned m : {2u, 4u, 6u}) {
    auto pts = netgen::sobol_points(2, m);
    auto r = netgen::verify_net(pts, 0, m, 2);
    CHECK(r.pass);
    CHECK(oracle_net_property(pts, 0, m, 2));
    CHECK(netgen::minimal_t(pts, m, 2) == 0u);
  }
}

TEST_CASE("first Sobol' coordinate is van der Corput") {
  auto so = netgen::sobol_points(2, 4);
  auto vd = netgen::vdc_points(4);
  for (std::size_t i = 0; i < so.size(); ++i) CHECK(so[i].value(0) == vd[i].value(0));
}

TEST_CASE("sequence lift appends the index in binary") {
  const unsigned m = 3;
  auto net = netgen::sequence_to_net(netgen::vdc_points(m), 0, m);
  REQUIRE(net.size() == 8);
  for (std::size_t i = 0; i < net.size(); ++i) {
    CHECK(net[i].value(1) == Rat(Int(i), 8));
    CHECK(net[i].dim() == 2);
    CHECK(net[i].digit_count(1) == m);
  }
  CHECK(netgen::verify_net(net, 0, m, 2).pass);
  CHECK(oracle_net_property(net, 0, m, 2));
}

TEST_CASE("lift rejects bad parameters") {
  auto seq = netgen::vdc_points(3);
  CHECK_THROWS_AS(netgen::sequence_to_net(seq, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(netgen::sequence_to_net(seq, 0, 4), std::invalid_argument);
}

TEST_CASE("verifier box iterator is exhaustive and duplicate-free") {
  for (unsigned m : {3u, 4u}) {
    for (unsigned t : {0u, 1u}) {
      auto pts = netgen::sobol_points(2, m);
      auto r = netgen::verify_net(pts, t, m, 2);
      const unsigned K = m - t;
      CHECK(r.stats.compositions == binom(K + 1, 1));
      CHECK(r.stats.box_checks == binom(K + 1, 1) * (std::uint64_t{1} << K));
    }
  }
  // s = 3: C(K+2, 2) compositions
  auto pts3 = netgen::sobol_points(3, 4);
  auto r3 = netgen::verify_net(pts3, 1, 4, 3);
  CHECK(r3.stats.compositions == binom(3 + 2, 2));
  CHECK(r3.stats.box_checks == binom(3 + 2, 2) * 8);
}

TEST_CASE("a duplicated point is caught with a concrete box") {
  auto pts = netgen::vdc_points(3);
  pts[3] = pts[5];
  auto r = netgen::verify_net(pts, 0, 3, 1);
  REQUIRE_FALSE(r.pass);
  REQUIRE(r.violation.has_value());
  CHECK((r.violation->count == 0 || r.violation->count == 2));
  CHECK(oracle_net_property(pts, 0, 3, 1) == r.pass);
  // the sweep can only settle above 0 now, and its answer is minimal
  auto t = netgen::minimal_t(pts, 3, 1);
  REQUIRE(t.has_value());
  CHECK(*t == 2);  // volume-1/2 boxes still balance, volume-1/4 boxes do not
  CHECK(netgen::verify_net(pts, *t, 3, 1).pass);
  CHECK_FALSE(netgen::verify_net(pts, *t - 1, 3, 1).pass);
}

TEST_CASE("net property at t implies the net property at larger t") {
  auto pts = netgen::sobol_points(2, 5);
  for (unsigned t : {0u, 1u, 2u, 5u}) CHECK(netgen::verify_net(pts, t, 5, 2).pass);
}

TEST_CASE("truncate and pad round-trip digits") {
  auto pts = netgen::vdc_points(4);
  auto tr = netgen::truncate(pts, 2);
  CHECK(tr[3].digit_count(0) == 2);
  CHECK(tr[3].value(0) == Rat(3, 4));
  auto pd = netgen::pad_digits(tr, 4);
  CHECK(pd[3].digit_count(0) == 4);
  CHECK(pd[3].value(0) == Rat(3, 4));  // zero digits do not move the value
  auto tr2 = netgen::truncate(netgen::truncate(pts, 3), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(tr2[i].value(0) == tr[i].value(0));
    CHECK(tr2[i].value(0) <= pts[i].value(0));
  }
}

TEST_CASE("net property transfers to the almost-net window") {
  auto pts = netgen::sobol_points(2, 5);
  // a (t,m,s)-net is a (2^t, 0)-almost net at n = m - t
  for (unsigned t : {0u, 1u, 2u}) {
    netgen::AlmostNetParams p{std::uint64_t{1} << t, 0, 5 - t};
    CHECK(netgen::verify_almost_net(pts, p, 2).pass);
  }
}

TEST_CASE("almost-net windows accept slack and reject violations") {
  // four points on one axis, two per half: a (2,0)-almost net at n=1
  std::vector<NetPoint> pts;
  for (auto v : {0u, 2u, 4u, 6u})
    pts.emplace_back(std::vector<std::vector<std::uint8_t>>{
        {static_cast<std::uint8_t>(v >> 2 & 1), static_cast<std::uint8_t>(v >> 1 & 1),
         static_cast<std::uint8_t>(v & 1)}});
  CHECK(netgen::verify_almost_net(pts, {2, 0, 1}, 1).pass);

  // clustered points break the exact window but fit a looser one
  std::vector<NetPoint> skew;
  for (auto v : {0u, 1u, 2u, 6u})
    skew.emplace_back(std::vector<std::vector<std::uint8_t>>{
        {static_cast<std::uint8_t>(v >> 2 & 1), static_cast<std::uint8_t>(v >> 1 & 1),
         static_cast<std::uint8_t>(v & 1)}});
  auto tight = netgen::verify_almost_net(skew, {2, 0, 1}, 1);
  REQUIRE_FALSE(tight.pass);
  CHECK(tight.violation->count == 3);
  CHECK(netgen::verify_almost_net(skew, {2, Rat(1, 2), 1}, 1).pass);
}

TEST_CASE("almost-net verifier validates its inputs") {
  auto pts = netgen::vdc_points(3);
  CHECK_THROWS_AS(netgen::verify_almost_net(pts, {0, 0, 3}, 1), std::invalid_argument);
  CHECK_THROWS_AS(netgen::verify_almost_net(pts, {1, 1, 3}, 1), std::invalid_argument);
  CHECK_THROWS_AS(netgen::verify_almost_net(pts, {3, 0, 3}, 1), std::invalid_argument);
}

TEST_CASE("degenerate single-box case m = 0") {
  std::vector<NetPoint> one;
  one.emplace_back(std::vector<std::vector<std::uint8_t>>{{}, {}});
  CHECK(netgen::verify_net(one, 0, 0, 2).pass);
}

TEST_CASE("higher-dimensional Sobol' nets verify at a recorded quality") {
  auto pts = netgen::sobol_points(3, 6);
  auto t = netgen::minimal_t(pts, 6, 3);
  REQUIRE(t.has_value());
  CHECK(*t <= 2);
  CHECK(netgen::verify_net(pts, *t, 6, 3).pass);
  if (*t > 0) CHECK_FALSE(netgen::verify_net(pts, *t - 1, 6, 3).pass);
}
