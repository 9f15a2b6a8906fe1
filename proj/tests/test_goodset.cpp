#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "holefree/goodset.hpp"
#include "holefree/netgen.hpp"

using namespace holefree;
using goodset::BinaryAlmostNet;

namespace {

netgen::NetPoint np(std::initializer_list<std::initializer_list<int>> words) {
  std::vector<std::vector<std::uint8_t>> digits;
  for (auto w : words) {
    std::vector<std::uint8_t> bits;
    for (int b : w) bits.push_back(static_cast<std::uint8_t>(b));
    digits.push_back(std::move(bits));
  }
  return netgen::NetPoint(digits);
}

PointKey key(std::initializer_list<const char*> words) {
  PointKey k;
  for (auto w : words) k.comp.push_back(BitString::from_string(w));
  return k;
}

BinaryAlmostNet pipeline_Y(unsigned n) {
  auto net = netgen::sequence_to_net(netgen::vdc_points(n), 0, n);
  netgen::AlmostNetParams ap{1, 0, n};
  return goodset::to_binary_almost_net(netgen::pad_digits(net, n + 1), ap, 2);
}

}  // namespace

TEST_CASE("tail width is one more than the bits of T") {
  CHECK(goodset::tail_bits(1) == 1);
  CHECK(goodset::tail_bits(2) == 2);
  CHECK(goodset::tail_bits(3) == 3);
  CHECK(goodset::tail_bits(4) == 3);
  CHECK(goodset::tail_bits(8) == 4);
}

TEST_CASE("two clean points map without any tail fix") {
  std::vector<netgen::NetPoint> X{np({{0, 0}, {0, 0}}), np({{1, 0}, {1, 0}})};
  auto Y = goodset::to_binary_almost_net(X, {1, 0, 1}, 2);
  CHECK(Y.m == 2);
  REQUIRE(Y.keys.size() == 2);
  CHECK(Y.keys[0] == key({"00", "00"}));
  CHECK(Y.keys[1] == key({"10", "10"}));
  CHECK(goodset::check_structure(Y).ok);
}

TEST_CASE("colliding coordinates become injective through the reserved tail") {
  // both coordinates collide pairwise at full precision; T=2 reserves 2 bits
  std::vector<netgen::NetPoint> X{
      np({{0, 0, 0}, {0, 0, 0}}),
      np({{0, 0, 0}, {1, 0, 0}}),
      np({{1, 0, 0}, {0, 1, 0}}),
      np({{1, 0, 0}, {1, 1, 0}}),
  };
  netgen::AlmostNetParams ap{2, 0, 1};
  REQUIRE(netgen::verify_almost_net(X, ap, 2).pass);
  auto Y = goodset::to_binary_almost_net(X, ap, 2);
  CHECK(Y.m == 3);
  REQUIRE(Y.keys.size() == 4);
  // canonical order fixes the tails: 000 and 001 in the low half, 100 and 101
  // in the high half of the first coordinate
  CHECK(Y.keys[0] == key({"000", "000"}));
  CHECK(Y.keys[1] == key({"001", "100"}));
  CHECK(Y.keys[2] == key({"100", "010"}));
  CHECK(Y.keys[3] == key({"101", "110"}));
  auto rep = goodset::check_structure(Y);
  CHECK(rep.ok);
}

TEST_CASE("pipeline key set satisfies every structural invariant") {
  for (unsigned n : {3u, 4u}) {
    auto Y = pipeline_Y(n);
    CHECK(Y.m == n + 1);
    CHECK(Y.keys.size() == (std::size_t{1} << n));
    CHECK(goodset::check_structure(Y).ok);
    CHECK(std::is_sorted(Y.keys.begin(), Y.keys.end()));
    for (unsigned i = 0; i < Y.d; ++i) {
      std::set<std::string> words;
      for (const auto& k : Y.keys) words.insert(k.comp[i].str());
      CHECK(words.size() == Y.keys.size());
    }
  }
}

TEST_CASE("prefix filter matches hand counts") {
  auto Y = pipeline_Y(3);
  std::vector<BitString> empty2(2);
  CHECK(goodset::prefix_set(Y.keys, empty2).size() == Y.keys.size());
  std::vector<BitString> half{BitString::from_string("0"), BitString()};
  CHECK(goodset::prefix_set(Y.keys, half).size() == 4);
  std::vector<BitString> quad{BitString::from_string("0"), BitString::from_string("10")};
  // prefix tuple of total length 3 = n on an exact net: exactly T = 1 point
  CHECK(goodset::prefix_set(Y.keys, quad).size() == 1);
  std::vector<BitString> full{Y.keys[5].comp[0], BitString()};
  auto hits = goodset::prefix_set(Y.keys, full);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == Y.keys[5]);
}

TEST_CASE("structure checker spots a broken window") {
  auto Y = pipeline_Y(3);
  Y.keys.pop_back();
  CHECK_FALSE(goodset::check_structure(Y).ok);
}

TEST_CASE("goodness bound formula, exact before the floor") {
  CHECK(goodset::goodness_bound(1, 0, 2) == 4);
  CHECK(goodset::goodness_bound(1, 0, 3) == 8);
  CHECK(goodset::goodness_bound(2, 0, 4) == 30);
  // 2^{t+d} - 2^{t+1} + 2 for T = 2^t
  for (unsigned t = 0; t <= 5; ++t)
    for (unsigned d = 2; d <= 6; ++d)
      CHECK(goodset::goodness_bound(std::uint64_t{1} << t, 0, d) ==
            pow2(t + d) - pow2(t + 1) + 2);
  // fractional eps exercises the rational floor: 4*(3/2) - 2*(1/2) + 2 = 7
  CHECK(goodset::goodness_bound(1, Rat(1, 2), 2) == 7);
  // 4*(4/3)*3 - 2*(2/3)*3 + 2 = 16 - 4 + 2 = 14
  CHECK(goodset::goodness_bound(3, Rat(1, 3), 2) == 14);
  // a genuinely fractional pre-floor value: 4*(5/4) - 2*(3/4) + 2 = 11/2
  CHECK(goodset::goodness_bound(1, Rat(1, 4), 2) == 5);
}

TEST_CASE("pipeline key sets are 4-good and the bound is not tight from below") {
  for (unsigned n : {3u, 4u}) {
    auto Y = pipeline_Y(n);
    auto r = goodset::verify_good(Y, 4);
    CHECK(r.status == goodset::GoodStatus::pass);
    CHECK(r.tuples_enumerated > 0);
    auto minimal = goodset::minimal_good_q(Y, 4);
    REQUIRE(minimal.has_value());
    CHECK(*minimal <= 4);
    if (*minimal > 1) {
      auto below = goodset::verify_good(Y, *minimal - 1);
      CHECK(below.status == goodset::GoodStatus::violation);
    }
  }
}

TEST_CASE("two keys can never bracket a third") {
  BinaryAlmostNet Y;
  Y.d = 2;
  Y.m = 2;
  Y.T = 1;
  Y.eps = 0;
  Y.n = 1;
  Y.keys = {key({"00", "10"}), key({"10", "11"})};
  auto r = goodset::verify_good(Y, 1);
  REQUIRE(r.status == goodset::GoodStatus::violation);
  CHECK(r.zset.size() == 2);
  // q = 0 admits singleton Z, betweenness around one point is impossible
  CHECK(goodset::verify_good(Y, 0).status == goodset::GoodStatus::violation);
}

TEST_CASE("vacuous pass when no subset meets the prefix condition") {
  auto Y = pipeline_Y(3);
  const std::uint64_t sz = Y.keys.size();
  CHECK(goodset::verify_good(Y, sz).status == goodset::GoodStatus::pass);
  // q = |Y| - 1 needs all keys in one condition class; the empty-parent tuple
  // (single bit a^2) puts all of Y in class only if all second words share no
  // constraint: parent of "0"/"1" is empty, so the class is Y and betweenness
  // over min/max of Y needs an interior witness
  auto r = goodset::verify_good(Y, sz - 1);
  CHECK(r.status == goodset::GoodStatus::pass);
}

TEST_CASE("distinctness is rechecked before enumeration") {
  BinaryAlmostNet Y;
  Y.d = 2;
  Y.m = 2;
  Y.T = 1;
  Y.eps = 0;
  Y.n = 1;
  Y.keys = {key({"00", "10"}), key({"01", "10"})};
  CHECK_THROWS_AS(goodset::verify_good(Y, 1), std::invalid_argument);
}

TEST_CASE("subset cap reports instead of sampling") {
  auto Y = pipeline_Y(4);
  goodset::GoodLimits tiny;
  tiny.max_subsets_per_class = 3;
  auto r = goodset::verify_good(Y, 2, tiny);
  CHECK(r.status == goodset::GoodStatus::cap_exceeded);
  CHECK_FALSE(r.cap.empty());
  goodset::GoodLimits narrow;
  narrow.max_dm = 4;
  CHECK(goodset::verify_good(Y, 4, narrow).status == goodset::GoodStatus::cap_exceeded);
}

TEST_CASE("witness descent halves slowly enough and brackets strictly") {
  auto Y = pipeline_Y(4);  // 16 keys, 4-good
  const std::uint64_t q = 4;
  // |U| = 2^{d-1} q + 1 = 9
  std::vector<PointKey> U(Y.keys.begin(), Y.keys.begin() + 9);
  auto w = goodset::find_interior_witness(Y, q, U);
  REQUIRE(w.found);
  REQUIRE(w.trace.size() == 1);
  const auto& lvl = w.trace[0];
  CHECK(lvl.axis == 2);
  CHECK(lvl.survivors.size() * 2 >= U.size());
  CHECK(lvl.a.size() >= 1);
  // postconditions: prefix on the second axis, strict betweenness on the first
  CHECK(lvl.a.is_prefix_of(w.witness.comp[1]));
  CHECK(w.x_small.comp[0] < w.witness.comp[0]);
  CHECK(w.witness.comp[0] < w.x_big.comp[0]);
  for (const auto& u : w.trace[0].survivors) {
    CHECK(w.x_small.comp[0] <= u.comp[0]);
    CHECK(u.comp[0] <= w.x_big.comp[0]);
  }
}

TEST_CASE("both tie resolutions produce valid witnesses") {
  auto Y = pipeline_Y(4);
  std::vector<PointKey> U(Y.keys.begin() + 3, Y.keys.begin() + 12);
  for (auto tie : {goodset::TieBreak::prefer_zero, goodset::TieBreak::prefer_one}) {
    auto w = goodset::find_interior_witness(Y, 4, U, tie);
    REQUIRE(w.found);
    CHECK(w.trace[0].a.is_prefix_of(w.witness.comp[1]));
    CHECK(w.x_small.comp[0] < w.witness.comp[0]);
    CHECK(w.witness.comp[0] < w.x_big.comp[0]);
  }
}

TEST_CASE("toy descent at a loose q, postconditions checked directly") {
  auto Y = pipeline_Y(3);  // 8 keys
  std::vector<PointKey> U(Y.keys.begin(), Y.keys.begin() + 5);
  auto w = goodset::find_interior_witness(Y, 2, U);  // 5 > 2^{2-1} * 2
  REQUIRE(w.found);
  CHECK(w.trace[0].a.is_prefix_of(w.witness.comp[1]));
  CHECK(w.x_small.comp[0] < w.witness.comp[0]);
  CHECK(w.witness.comp[0] < w.x_big.comp[0]);
}

TEST_CASE("witness preconditions are enforced") {
  auto Y = pipeline_Y(3);
  std::vector<PointKey> U(Y.keys.begin(), Y.keys.begin() + 5);
  // |U| must exceed 2^{d-1} q = 8
  CHECK_THROWS_AS(goodset::find_interior_witness(Y, 4, U), std::invalid_argument);
  std::vector<PointKey> alien;
  for (const char* w : {"0001", "0010", "0100", "1000", "1111"})
    alien.push_back(key({w, w}));
  CHECK_THROWS_AS(goodset::find_interior_witness(Y, 1, alien), std::invalid_argument);
}

TEST_CASE("three-dimensional descent walks two levels") {
  auto net = netgen::sequence_to_net(netgen::sobol_points(2, 4), 0, 4);
  netgen::AlmostNetParams ap{1, 0, 4};
  auto Y = goodset::to_binary_almost_net(netgen::pad_digits(net, 5), ap, 3);
  REQUIRE(goodset::check_structure(Y).ok);
  // q = 1: |U| > 2^{3-1} = 4
  std::vector<PointKey> U(Y.keys.begin(), Y.keys.begin() + 5);
  auto w = goodset::find_interior_witness(Y, 1, U);
  REQUIRE(w.trace.size() == 2);
  CHECK(w.trace[0].axis == 3);
  CHECK(w.trace[1].axis == 2);
  CHECK(w.trace[1].survivors.size() * 2 >= w.trace[0].survivors.size());
  if (w.found) {
    CHECK(w.trace[0].a.is_prefix_of(w.witness.comp[2]));
    CHECK(w.trace[1].a.is_prefix_of(w.witness.comp[1]));
    CHECK(w.x_small.comp[0] < w.witness.comp[0]);
    CHECK(w.witness.comp[0] < w.x_big.comp[0]);
  }
}
