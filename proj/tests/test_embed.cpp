#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "holefree/embed.hpp"
#include "holefree/goodset.hpp"
#include "holefree/netgen.hpp"
#include "holefree/rng.hpp"

using namespace holefree;

namespace {

PointKey key(std::initializer_list<const char*> words) {
  PointKey k;
  for (auto w : words) k.comp.push_back(BitString::from_string(w));
  return k;
}

goodset::BinaryAlmostNet pipeline_Y(unsigned n) {
  auto net = netgen::sequence_to_net(netgen::vdc_points(n), 0, n);
  netgen::AlmostNetParams ap{1, 0, n};
  return goodset::to_binary_almost_net(netgen::pad_digits(net, n + 1), ap, 2);
}

BitString random_word(std::uint64_t seed, std::uint64_t idx, unsigned m) {
  BitString w;
  for (unsigned j = 0; j < m; ++j) w = w.append(static_cast<int>(keyed_rand(seed, idx, j) & 1));
  return w;
}

}  // namespace

TEST_CASE("rank order walks digits within an axis before crossing axes") {
  auto sched = embed::build_schedule(2, 3, 4);
  // axis 1 least-significant digit has the smallest rank, axis d leading
  // digit the largest
  CHECK(sched.rank(0, 2) == 1);
  CHECK(sched.rank(0, 1) == 2);
  CHECK(sched.rank(0, 0) == 3);
  CHECK(sched.rank(1, 2) == 4);
  CHECK(sched.rank(1, 0) == 6);
  CHECK_THROWS_AS(sched.rank(2, 0), std::out_of_range);
  CHECK_THROWS_AS(sched.rank(0, 3), std::out_of_range);
  CHECK(sched.weight(0, 2) == 4);
  CHECK(sched.weight(1, 0) == Int(4096));  // 4^6
}

TEST_CASE("one-axis embedding at base two reproduces doubled values") {
  auto sched = embed::build_schedule(1, 2, 2);
  std::vector<PointKey> keys{key({"00"}), key({"01"}), key({"10"}), key({"11"})};
  auto e = embed::embed_keys(keys, sched);
  REQUIRE(e.points.size() == 4);
  CHECK(e.points[0][0] == 0);
  CHECK(e.points[1][0] == 2);
  CHECK(e.points[2][0] == 4);
  CHECK(e.points[3][0] == 6);
}

TEST_CASE("two-axis embedding spreads ranks across axes") {
  auto sched = embed::build_schedule(2, 2, 16);
  auto e = embed::embed_keys({key({"11", "11"})}, sched);
  // ranks 1..4 carry weights 16, 256, 4096, 65536
  CHECK(e.points[0][0] == 16 + 256);
  CHECK(e.points[0][1] == 4096 + 65536);
}

TEST_CASE("lexicographic key order equals integer coordinate order per axis") {
  const unsigned m = 6;
  auto sched = embed::build_schedule(1, m, embed::default_base(m));
  for (std::uint64_t i = 0; i < 500; ++i) {
    BitString a = random_word(3, i, m), b = random_word(4, i, m);
    auto pa = embed::embed_keys({PointKey{{a}}}, sched).points[0][0];
    auto pb = embed::embed_keys({PointKey{{b}}}, sched).points[0][0];
    CAPTURE(a.str(), b.str());
    CHECK((a < b) == (pa < pb));
    CHECK((a == b) == (pa == pb));
  }
  // the property needs strict base growth, and holds down at base 2
  auto tight = embed::build_schedule(1, m, 2);
  for (std::uint64_t i = 0; i < 500; ++i) {
    BitString a = random_word(5, i, m), b = random_word(6, i, m);
    auto pa = embed::embed_keys({PointKey{{a}}}, tight).points[0][0];
    auto pb = embed::embed_keys({PointKey{{b}}}, tight).points[0][0];
    CHECK((a < b) == (pa < pb));
  }
}

TEST_CASE("schedule construction validates its inputs") {
  CHECK_THROWS_AS(embed::build_schedule(0, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(embed::build_schedule(2, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(embed::build_schedule(2, 3, 1), std::invalid_argument);
  auto sched = embed::build_schedule(2, 3, 4);
  CHECK_THROWS_AS(embed::embed_keys({key({"00"})}, sched), std::invalid_argument);
  CHECK_THROWS_AS(embed::embed_keys({key({"0000", "0000"})}, sched),
                  std::invalid_argument);
}

TEST_CASE("default base certifies the pipeline set in one round") {
  auto Y = pipeline_Y(4);
  auto sched = embed::build_schedule(2, Y.m, embed::default_base(Y.m));
  auto cert = embed::certify_embedding(Y, 4, sched);
  REQUIRE(cert.status == embed::CertifyStatus::certified);
  CHECK(cert.l == 9);
  CHECK(cert.rounds.size() == 1);
  CHECK(cert.rounds[0].hole_free);
  CHECK(cert.embedding.points.size() == 16);
  CHECK(cert.embedding.sched.base == embed::default_base(Y.m));
}

TEST_CASE("base two already certifies the pipeline set at the pipeline threshold") {
  // digit weights at base 2 are plain powers of two, so the embedding is the
  // raw net grid up to scaling; the n=4 grid has no 9-hole and round one wins
  auto Y = pipeline_Y(4);
  auto cert = embed::certify_embedding(Y, 4, embed::build_schedule(2, Y.m, 2));
  REQUIRE(cert.status == embed::CertifyStatus::certified);
  CHECK(cert.rounds.size() == 1);
  CHECK(cert.embedding.sched.base == 2);
}

TEST_CASE("an unreachable threshold escalates by squaring the base") {
  // q=1 demands an interior witness for every triple; no planar set of 16
  // distinct points can do that, so every round fails and the base climbs
  auto Y = pipeline_Y(4);
  embed::CertifyOptions opt;
  opt.max_rounds = 3;
  auto cert = embed::certify_embedding(Y, 1, embed::build_schedule(2, Y.m, 2), opt);
  REQUIRE(cert.status == embed::CertifyStatus::cap_exceeded);
  CHECK(cert.l == 3);
  REQUIRE(cert.rounds.size() == 3);
  CHECK(cert.rounds[0].base == 2);
  CHECK(cert.rounds[1].base == 4);
  CHECK(cert.rounds[2].base == 16);
  for (const auto& r : cert.rounds) {
    CHECK_FALSE(r.hole_free);
    CHECK(r.oracle.witness.size() == 3);
  }
  CHECK(cert.cap.find("rounds exhausted") != std::string::npos);
  CHECK(cert.embedding.sched.base == 16);  // last base tried is kept for inspection
}

TEST_CASE("round budget exhaustion is reported as a cap") {
  auto Y = pipeline_Y(4);
  embed::CertifyOptions opt;
  opt.max_rounds = 1;
  auto cert = embed::certify_embedding(Y, 1, embed::build_schedule(2, Y.m, 2), opt);
  REQUIRE(cert.status == embed::CertifyStatus::cap_exceeded);
  CHECK_FALSE(cert.cap.empty());
  CHECK(cert.rounds.size() == 1);
}

TEST_CASE("planar fast oracle agrees with the exhaustive one") {
  auto Y = pipeline_Y(4);
  embed::CertifyOptions fast;
  fast.fast_planar_oracle = true;
  for (Int base : {Int(2), Int(16), embed::default_base(Y.m)}) {
    auto slow = embed::certify_embedding(Y, 4, embed::build_schedule(2, Y.m, base));
    auto quick = embed::certify_embedding(Y, 4, embed::build_schedule(2, Y.m, base), fast);
    CHECK(slow.status == quick.status);
    CHECK(slow.rounds.size() == quick.rounds.size());
    for (std::size_t i = 0; i < slow.rounds.size(); ++i)
      CHECK(slow.rounds[i].hole_free == quick.rounds[i].hole_free);
  }
}

TEST_CASE("threshold beyond the point count certifies vacuously") {
  auto Y = pipeline_Y(3);  // 8 keys, ell = 9
  auto cert = embed::certify_embedding(Y, 4, embed::build_schedule(2, Y.m, 2));
  CHECK(cert.status == embed::CertifyStatus::certified);
  CHECK(cert.rounds.size() == 1);
  CHECK(cert.rounds[0].oracle.counters.predicate_calls == 0);
}

TEST_CASE("perturbation stays below the gap bound and is reproducible") {
  geom::PointSet<Int> pts{{0, 0}, {8, 0}, {0, 8}, {8, 8}, {16, 24}};
  auto a = embed::perturb_to_general_position(pts, 42);
  auto b = embed::perturb_to_general_position(pts, 42);
  REQUIRE(a.ok);
  CHECK(a.gap == 8);
  CHECK(a.bound == Rat(8, 4 * 25));
  CHECK(a.points == b.points);
  CHECK(a.offsets == b.offsets);
  CHECK(a.attempts == b.attempts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Rat off = a.offsets[i][j];
      CHECK(off < a.bound);
      CHECK(off > -a.bound);
      CHECK(a.points[i][j] == Rat(pts[i][j]) + off);
    }
  CHECK(geom::general_position(a.points).ok);
  auto c = embed::perturb_to_general_position(pts, 43);
  CHECK(c.offsets != a.offsets);
}

TEST_CASE("perturbation rejects unusable inputs") {
  CHECK_THROWS_AS(embed::perturb_to_general_position({}, 1), std::invalid_argument);
  geom::PointSet<Int> dup{{1, 1}, {1, 1}};
  CHECK_THROWS_AS(embed::perturb_to_general_position(dup, 1), std::invalid_argument);
  geom::PointSet<Int> nogap{{3, 5}};
  CHECK_THROWS_AS(embed::perturb_to_general_position(nogap, 1), std::invalid_argument);
}

TEST_CASE("collinear integer points land in general position after the nudge") {
  geom::PointSet<Int> line;
  for (int i = 0; i < 6; ++i) line.push_back({4 * i, 4 * i});
  REQUIRE_FALSE(geom::general_position(line).ok);
  auto p = embed::perturb_to_general_position(line, 7);
  REQUIRE(p.ok);
  CHECK(geom::general_position(p.points).ok);
  CHECK(p.attempts >= 1);
}

TEST_CASE("certified embedding stays hole-free through perturbation") {
  auto Y = pipeline_Y(4);
  auto cert = embed::certify_embedding(
      Y, 4, embed::build_schedule(2, Y.m, embed::default_base(Y.m)));
  REQUIRE(cert.status == embed::CertifyStatus::certified);
  auto p = embed::perturb_to_general_position(cert.embedding.points, 1);
  REQUIRE(p.ok);
  CHECK(geom::general_position(p.points).ok);
  auto hf = holes::is_hole_free(p.points, 9);
  CHECK(hf.hole_free);
}
